#ifndef EBAND_LOSMIMO_HPP
#define EBAND_LOSMIMO_HPP

#include <Eigen/Dense>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "eband/units.hpp"

namespace eband {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Phase model for the LoS channel entries. Exact Euclidean distances are
/// the engineering default; the paraxial (second-order lateral) expansion
/// makes the equal-eigenvalue property at the Rayleigh distance exact.
enum class PhaseModel { Exact, Paraxial };

/// Uniform linear array: n elements spaced along a unit axis about a center.
struct UlaGeometry {
  int count = 1;
  double spacing_m = 0.0;
  Vec3 center;
  Vec3 axis{1.0, 0.0, 0.0};

  double aperture_m() const { return (count - 1) * spacing_m; }
  void validate() const;
};

struct LosMimoLink {
  UlaGeometry tx;
  UlaGeometry rx;
  Wavelength lambda = Wavelength::meters(1.0);
  PhaseModel phase_model = PhaseModel::Exact;

  double center_distance_m() const { return norm(rx.center - tx.center); }
  bool far_field() const {
    return center_distance_m() >= 10.0 * std::max(tx.aperture_m(), rx.aperture_m());
  }
};

/// Gram-matrix eigenvalues, sorted descending, all non-negative.
struct EigenSpectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double sum() const;
};

/// Element positions: center + (i - (n-1)/2) * spacing * axis.
std::vector<Vec3> antenna_positions(const UlaGeometry& g);

/// Nr x Nt channel matrix with unit-modulus entries exp(-j 2 pi d / lambda).
Eigen::MatrixXcd los_channel_matrix(const LosMimoLink& link);

/// Eigenvalues of H H^H (or H^H H when Nt < Nr), with a per-pair residual
/// check ||G v - mu v|| <= 1e-8 ||G||_F on the solve.
EigenSpectrum gram_eigenvalues(const Eigen::MatrixXcd& h);

/// Rayleigh distance max(Nt, Nr) * dt * dr / lambda.
double rayleigh_distance_m(int nt, int nr, double dt_m, double dr_m, Wavelength lambda);

/// Number of eigenmodes with mu_m / mu_1 >= gamma, gamma in (0, 1].
int edof(const EigenSpectrum& spectrum, double gamma);

/// Geometry family member for sweeps: broadside-aligned ULA pair at a
/// variable separation.
struct LinkTemplate {
  int nt = 20;
  int nr = 20;
  double dt_m = 0.05;
  double dr_m = 0.05;
  Wavelength lambda = Wavelength::meters(1.0);
  PhaseModel phase_model = PhaseModel::Exact;

  double tx_aperture_m() const { return (nt - 1) * dt_m; }
  double rx_aperture_m() const { return (nr - 1) * dr_m; }
  double rayleigh_m() const {
    return rayleigh_distance_m(nt, nr, dt_m, dr_m, lambda);
  }
};

/// Realizes the template at a given separation: both arrays along x,
/// broadside to a z-directed link axis.
LosMimoLink broadside_link(const LinkTemplate& t, double distance_m);

struct SweepRow {
  double distance_m = 0.0;
  std::vector<double> eigenvalues;  // descending
  std::vector<double> ratios;       // mu_m / mu_1
  int edof = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double rayleigh_distance_m = 0.0;
  double gamma = 0.1;
};

/// Log-spaced grid of `points` distances over [dmin, dmax]. When an anchor
/// inside the range is given and the grid has at least two points, the
/// nearest grid point is snapped to the anchor exactly.
std::vector<double> geometric_grid(double dmin, double dmax, int points,
                                   std::optional<double> anchor = std::nullopt);

/// One row per distance: eigenvalues, ratios to mu_1, and the EDOF count.
SweepTable eigen_curve_sweep(const LinkTemplate& t, std::span<const double> distances,
                             double gamma);

/// CSV columns: D_m, mu_1..mu_k, edof.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

/// Farthest separation with EDOF >= m (2 <= m <= min(Nt, Nr)), located by
/// geometric bracket expansion from 10x the larger aperture followed by
/// bisection to 1e-4 relative tolerance.
double effective_multiplexing_distance_m(const LinkTemplate& t, int m, double gamma);

/// Normalized multiplexing-distance constants c_m = D_max * lambda / (Dt * Dr)
/// across a geometry family, with their mean and relative spread.
struct CmEstimate {
  std::vector<double> values;
  double mean = 0.0;
  double relative_spread = 0.0;  // (max - min) / mean
};

CmEstimate estimate_cm(std::span<const LinkTemplate> family, int m, double gamma);

}  // namespace eband

#endif  // EBAND_LOSMIMO_HPP
