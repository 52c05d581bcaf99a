#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eohom {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

inline constexpr double kMmToM = 1e-3;
inline constexpr double kNmToM = 1e-9;
inline constexpr double kUmToM = 1e-6;
inline constexpr double kSToPs = 1e12;
inline constexpr double kS2ToFs2 = 1e30;

/// Angular frequency (rad/s) of light with the given vacuum wavelength (nm).
inline double omega_from_nm(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * kNmToM);
}

inline double nm_from_omega(double omega) {
  return 2.0 * kPi * kSpeedOfLight / omega / kNmToM;
}

/// Sign convention used throughout: sinc(0) = 1, sinc(x) = sin(x)/x.
inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

/// Polarization of a guided mode. H is the TE-like (ordinary) mode of the
/// z-cut substrate, V the TM-like (extraordinary) mode.
enum class Polarization { H = 0, V = 1 };

inline Polarization other(Polarization p) {
  return p == Polarization::H ? Polarization::V : Polarization::H;
}

std::string to_string(Polarization p);

/// Base class of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A wavelength or parameter outside the range a model supports.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a text input, carries the 1-based location.
class ParseError : public Error {
 public:
  ParseError(std::string source, int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

/// A well-formed input whose values break a model invariant.
class SemanticError : public Error {
 public:
  SemanticError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace eohom
