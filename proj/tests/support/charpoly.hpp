#ifndef EBAND_TESTS_CHARPOLY_HPP
#define EBAND_TESTS_CHARPOLY_HPP

// Test-side eigenvalue oracle for small Hermitian matrices: expand the
// characteristic polynomial with Faddeev-LeVerrier, then root it with
// Durand-Kerner. Shares no code with the library's eigensolve path.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

namespace eband_tests {

/// Monic characteristic polynomial coefficients c[0..n], c[n] = 1, for
/// p(x) = sum c[k] x^k. Real for Hermitian input.
inline std::vector<double> charpoly_coefficients(const Eigen::MatrixXcd& g) {
  const Eigen::Index n = g.rows();
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
  coeff[static_cast<std::size_t>(n)] = 1.0;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::MatrixXcd gm = g * m;
    const double c = -gm.trace().real() / static_cast<double>(k);
    coeff[static_cast<std::size_t>(n - k)] = c;
    m = gm + c * Eigen::MatrixXcd::Identity(n, n);
  }
  return coeff;
}

/// All roots of a monic real-coefficient polynomial via Durand-Kerner.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeff) {
  const std::size_t n = coeff.size() - 1;
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    acc *= seed;
    z[i] = acc;
  }

  auto eval = [&](std::complex<double> x) {
    std::complex<double> p(coeff[n], 0.0);
    for (std::size_t k = n; k-- > 0;) p = p * x + coeff[k];
    return p;
  };

  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      const std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

/// Eigenvalues of a small Hermitian matrix, sorted descending.
inline std::vector<double> charpoly_eigenvalues(const Eigen::MatrixXcd& g) {
  const auto roots = polynomial_roots(charpoly_coefficients(g));
  std::vector<double> values;
  values.reserve(roots.size());
  for (const auto& r : roots) values.push_back(r.real());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace eband_tests

#endif  // EBAND_TESTS_CHARPOLY_HPP
