#ifndef EBAND_UNITS_HPP
#define EBAND_UNITS_HPP

#include <cmath>

#include "eband/errors.hpp"

namespace eband {

/// Propagation speed used for wavelength and path-gain arithmetic, m/s.
inline constexpr double kSpeedOfLightMps = 2.998e8;

/// Carrier frequency, strictly positive.
class Frequency {
 public:
  static Frequency hertz(double hz) {
    if (!(hz > 0.0)) throw DomainError("frequency must be > 0 Hz");
    return Frequency(hz);
  }
  static Frequency gigahertz(double ghz) { return hertz(ghz * 1e9); }

  double hz() const { return hz_; }
  double ghz() const { return hz_ / 1e9; }

 private:
  explicit Frequency(double hz) : hz_(hz) {}
  double hz_;
};

/// Signal wavelength, strictly positive.
class Wavelength {
 public:
  static Wavelength meters(double m) {
    if (!(m > 0.0)) throw DomainError("wavelength must be > 0 m");
    return Wavelength(m);
  }

  double m() const { return m_; }

 private:
  explicit Wavelength(double m) : m_(m) {}
  double m_;
};

/// Link separation, strictly positive.
class Distance {
 public:
  static Distance meters(double m) {
    if (!(m > 0.0)) throw DomainError("distance must be > 0 m");
    return Distance(m);
  }
  static Distance kilometers(double km) { return meters(km * 1e3); }

  double m() const { return m_; }
  double km() const { return m_ / 1e3; }

 private:
  explicit Distance(double m) : m_(m) {}
  double m_;
};

/// A value on the decibel scale (may be negative).
struct DbValue {
  double db = 0.0;
};

inline Wavelength wavelength_of(Frequency f) {
  return Wavelength::meters(kSpeedOfLightMps / f.hz());
}

inline DbValue db_from_linear(double x) {
  if (!(x > 0.0)) throw DomainError("dB conversion requires a positive linear value");
  return DbValue{10.0 * std::log10(x)};
}

inline double linear_from_db(DbValue d) { return std::pow(10.0, d.db / 10.0); }

inline double linear_from_db(double db) { return linear_from_db(DbValue{db}); }

}  // namespace eband

#endif  // EBAND_UNITS_HPP
