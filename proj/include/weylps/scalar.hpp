#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "weylps/rat.hpp"

namespace weylps {

/// Raised when a rational map is evaluated on the polar locus of one of its
/// denominators ("outside transition domain").
class SingularError : public std::domain_error {
 public:
  explicit SingularError(const std::string& what) : std::domain_error(what) {}
};

/// Glue that lets the same map code run over exact rationals, doubles,
/// complex doubles, dual numbers and truncated Laurent series.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static Rat from_rat(const Rat& r) { return r; }
  static bool is_zero(const Rat& r) { return r.is_zero(); }
};

template <>
struct ScalarTraits<double> {
  static double from_rat(const Rat& r) { return r.to_double(); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static std::complex<double> from_rat(const Rat& r) { return {r.to_double(), 0.0}; }
  static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
};

template <class S>
S from_rat(const Rat& r) {
  return ScalarTraits<S>::from_rat(r);
}

template <class S>
bool exactly_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

/// 1/x, throwing SingularError when x vanishes identically.
template <class S>
S checked_inverse(const S& x, const char* what = "outside transition domain") {
  if (exactly_zero(x)) throw SingularError(what);
  return from_rat<S>(Rat(1)) / x;
}

}  // namespace weylps
