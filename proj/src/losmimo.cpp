#include "eband/losmimo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "eband/errors.hpp"

namespace eband {

namespace {

constexpr double kResidualTolerance = 1e-8;
constexpr double kEdofRatioSlack = 1e-9;    // guards the exact-equality boundary
constexpr double kBisectRelTolerance = 1e-4;
constexpr int kMaxBracketExpansions = 60;

// Excess path length d - D for one element pair, where w is the offset
// between the two elements about the center-to-center separation D along
// the unit link axis. Formulated without cancellation so that eigenvalue
// spectra stay invariant under common scaling of all lengths.
double excess_path_m(PhaseModel model, double separation_m, Vec3 link_axis, Vec3 w) {
  const double along = dot(link_axis, w);
  const double w2 = dot(w, w);
  if (model == PhaseModel::Paraxial) {
    const double lateral2 = std::max(0.0, w2 - along * along);
    return along + lateral2 / (2.0 * separation_m);
  }
  const double s2 = 2.0 * separation_m * along + w2;
  const double dsq = separation_m * separation_m + s2;
  if (dsq <= 0.0)
    throw GeometryError("coincident transmit/receive antenna positions");
  const double d = std::sqrt(dsq);
  return s2 / (d + separation_m);
}

}  // namespace

void UlaGeometry::validate() const {
  if (count < 1) throw GeometryError("ULA needs at least one element");
  if (count > 1 && !(spacing_m > 0.0))
    throw GeometryError("ULA spacing must be > 0 for multi-element arrays");
  if (std::abs(norm(axis) - 1.0) > 1e-12)
    throw GeometryError("ULA axis must have unit norm");
}

double EigenSpectrum::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

std::vector<Vec3> antenna_positions(const UlaGeometry& g) {
  g.validate();
  std::vector<Vec3> points;
  points.reserve(g.count);
  const double mid = (g.count - 1) / 2.0;
  for (int i = 0; i < g.count; ++i)
    points.push_back(g.center + ((i - mid) * g.spacing_m) * g.axis);
  return points;
}

Eigen::MatrixXcd los_channel_matrix(const LosMimoLink& link) {
  link.tx.validate();
  link.rx.validate();
  const Vec3 span = link.rx.center - link.tx.center;
  const double separation = norm(span);
  if (!(separation > 0.0))
    throw GeometryError("array centers must be separated by a positive distance");
  const Vec3 link_axis = (1.0 / separation) * span;

  const double mid_t = (link.tx.count - 1) / 2.0;
  const double mid_r = (link.rx.count - 1) / 2.0;
  std::vector<Vec3> tx_off(link.tx.count), rx_off(link.rx.count);
  for (int i = 0; i < link.tx.count; ++i)
    tx_off[i] = ((i - mid_t) * link.tx.spacing_m) * link.tx.axis;
  for (int j = 0; j < link.rx.count; ++j)
    rx_off[j] = ((j - mid_r) * link.rx.spacing_m) * link.rx.axis;

  const double lambda = link.lambda.m();
  // Common bulk factor exp(-j 2 pi D / lambda); per-entry phases carry only
  // the excess path beyond D, keeping them small and well conditioned.
  const std::complex<double> bulk = std::polar(1.0, -2.0 * M_PI * separation / lambda);

  Eigen::MatrixXcd h(link.rx.count, link.tx.count);
  for (int j = 0; j < link.rx.count; ++j) {
    for (int i = 0; i < link.tx.count; ++i) {
      const Vec3 w = rx_off[j] - tx_off[i];
      const double excess = excess_path_m(link.phase_model, separation, link_axis, w);
      if (link.phase_model == PhaseModel::Exact && separation + excess <= 0.0)
        throw GeometryError("coincident transmit/receive antenna positions");
      h(j, i) = bulk * std::polar(1.0, -2.0 * M_PI * excess / lambda);
    }
  }
  return h;
}

EigenSpectrum gram_eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0 || h.cols() == 0) throw DomainError("empty channel matrix");

  const Eigen::MatrixXcd gram =
      (h.rows() <= h.cols()) ? Eigen::MatrixXcd(h * h.adjoint())
                             : Eigen::MatrixXcd(h.adjoint() * h);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Hermitian eigensolve failed to converge for a " +
                         std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) +
                         " Gram matrix");

  const double gram_norm = gram.norm();
  const Eigen::VectorXd mu = solver.eigenvalues();
  const Eigen::MatrixXcd v = solver.eigenvectors();
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double residual = (gram * v.col(k) - mu(k) * v.col(k)).norm();
    if (residual > kResidualTolerance * gram_norm)
      throw NumericalError("eigenpair residual " + std::to_string(residual) +
                           " exceeds contract " +
                           std::to_string(kResidualTolerance * gram_norm));
  }

  EigenSpectrum spectrum;
  spectrum.values.assign(mu.data(), mu.data() + mu.size());
  std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<>());
  for (double& value : spectrum.values) {
    if (value < 0.0) {
      if (value < -1e-6 * gram_norm)
        throw NumericalError("significantly negative eigenvalue from a Gram matrix: " +
                             std::to_string(value));
      value = 0.0;
    }
  }
  return spectrum;
}

double rayleigh_distance_m(int nt, int nr, double dt_m, double dr_m, Wavelength lambda) {
  if (nt < 1 || nr < 1) throw DomainError("antenna counts must be >= 1");
  if (!(dt_m > 0.0) || !(dr_m > 0.0)) throw DomainError("antenna spacings must be > 0");
  return std::max(nt, nr) * dt_m * dr_m / lambda.m();
}

int edof(const EigenSpectrum& spectrum, double gamma) {
  if (spectrum.values.empty()) throw DomainError("empty eigenvalue spectrum");
  if (!(gamma > 0.0) || gamma > 1.0) throw DomainError("EDOF threshold gamma must be in (0, 1]");
  const double mu1 = spectrum.values.front();
  if (!(mu1 > 0.0)) throw DomainError("leading eigenvalue must be positive");
  const double cut = gamma * mu1 * (1.0 - kEdofRatioSlack);
  int count = 0;
  for (double mu : spectrum.values)
    if (mu >= cut) ++count;
  return count;
}

LosMimoLink broadside_link(const LinkTemplate& t, double distance_m) {
  if (!(distance_m > 0.0)) throw DomainError("link separation must be > 0 m");
  LosMimoLink link;
  link.tx = UlaGeometry{t.nt, t.dt_m, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0}};
  link.rx = UlaGeometry{t.nr, t.dr_m, Vec3{0.0, 0.0, distance_m}, Vec3{1.0, 0.0, 0.0}};
  link.lambda = t.lambda;
  link.phase_model = t.phase_model;
  return link;
}

std::vector<double> geometric_grid(double dmin, double dmax, int points,
                                   std::optional<double> anchor) {
  if (points < 1) throw DomainError("grid needs at least one point");
  if (!(dmin > 0.0) || dmax < dmin) throw DomainError("grid range must satisfy 0 < dmin <= dmax");

  std::vector<double> grid;
  grid.reserve(points);
  if (points == 1) {
    grid.push_back(dmin);
  } else {
    const double log_lo = std::log(dmin);
    const double log_hi = std::log(dmax);
    for (int i = 0; i < points; ++i)
      grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (points - 1)));
    grid.front() = dmin;
    grid.back() = dmax;
  }

  if (anchor && points >= 2 && *anchor >= dmin && *anchor <= dmax) {
    auto nearest = std::min_element(grid.begin(), grid.end(), [&](double a, double b) {
      return std::abs(a - *anchor) < std::abs(b - *anchor);
    });
    *nearest = *anchor;
    std::sort(grid.begin(), grid.end());
  }
  return grid;
}

SweepTable eigen_curve_sweep(const LinkTemplate& t, std::span<const double> distances,
                             double gamma) {
  if (distances.empty()) throw DomainError("sweep needs at least one distance");
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!(distances[i] > 0.0)) throw DomainError("sweep distances must be > 0");
    if (i > 0 && distances[i] < distances[i - 1])
      throw DomainError("sweep distances must be sorted ascending");
  }

  SweepTable table;
  table.gamma = gamma;
  table.rayleigh_distance_m = t.rayleigh_m();
  table.rows.reserve(distances.size());
  for (double d : distances) {
    const EigenSpectrum spectrum = gram_eigenvalues(los_channel_matrix(broadside_link(t, d)));
    SweepRow row;
    row.distance_m = d;
    row.eigenvalues = spectrum.values;
    row.ratios.reserve(spectrum.values.size());
    const double mu1 = spectrum.values.front();
    for (double mu : spectrum.values) row.ratios.push_back(mu / mu1);
    row.edof = edof(spectrum, gamma);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  if (table.rows.empty()) return;
  const std::size_t k = table.rows.front().eigenvalues.size();
  os << "D_m";
  for (std::size_t m = 1; m <= k; ++m) os << ",mu_" << m;
  os << ",edof\n";
  char buf[32];
  for (const SweepRow& row : table.rows) {
    std::snprintf(buf, sizeof buf, "%.12g", row.distance_m);
    os << buf;
    for (double mu : row.eigenvalues) {
      std::snprintf(buf, sizeof buf, "%.12g", mu);
      os << ',' << buf;
    }
    os << ',' << row.edof << '\n';
  }
}

double effective_multiplexing_distance_m(const LinkTemplate& t, int m, double gamma) {
  const int max_edof = std::min(t.nt, t.nr);
  if (m < 2 || m > max_edof)
    throw DomainError("multiplexing order m must be in [2, min(Nt, Nr)]");
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw DomainError("gamma must be in (0, 1) for multiplexing-distance search");

  auto edof_at = [&](double d) {
    return edof(gram_eigenvalues(los_channel_matrix(broadside_link(t, d))), gamma);
  };

  const double d_ray = t.rayleigh_m();
  const double start = 10.0 * std::max(t.tx_aperture_m(), t.rx_aperture_m());

  // Expand geometrically; beyond the Rayleigh distance the EDOF decays
  // monotonically, so the final feasible->infeasible transition brackets
  // the farthest feasible separation.
  double lo = 0.0, hi = 0.0;
  bool have_lo = false;
  double d = start;
  for (int k = 0; k <= kMaxBracketExpansions; ++k, d *= 2.0) {
    const int e = edof_at(d);
    if (e >= m) {
      lo = d;
      have_lo = true;
    } else if (have_lo && d >= d_ray) {
      hi = d;
      break;
    }
  }
  if (!have_lo)
    throw InfeasibleError("EDOF " + std::to_string(m) +
                          " is unattainable anywhere in the search range");
  if (hi == 0.0)
    throw BracketRangeError("no EDOF transition found within the configured bracket range");

  while (hi - lo > kBisectRelTolerance * lo) {
    const double mid = 0.5 * (lo + hi);
    if (edof_at(mid) >= m)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

CmEstimate estimate_cm(std::span<const LinkTemplate> family, int m, double gamma) {
  if (family.empty()) throw DomainError("geometry family must be non-empty");
  CmEstimate est;
  est.values.reserve(family.size());
  for (const LinkTemplate& t : family) {
    const double d_max = effective_multiplexing_distance_m(t, m, gamma);
    est.values.push_back(d_max * t.lambda.m() / (t.tx_aperture_m() * t.rx_aperture_m()));
  }
  const auto [lo, hi] = std::minmax_element(est.values.begin(), est.values.end());
  double sum = 0.0;
  for (double c : est.values) sum += c;
  est.mean = sum / est.values.size();
  est.relative_spread = (est.mean > 0.0) ? (*hi - *lo) / est.mean : 0.0;
  return est;
}

}  // namespace eband
