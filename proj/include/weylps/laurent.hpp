#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "weylps/rat.hpp"
#include "weylps/scalar.hpp"

namespace weylps {

/// Truncated Laurent series in one variable T with exact coefficients.
///
/// The series is known through T^order; everything above is O(T^{order+1}).
/// Exact series (polynomials, constants) carry order == kExact and never lose
/// precision under ring operations. Leading zeros are always stripped, so
/// coeffs.front() is the first nonzero coefficient when coeffs is nonempty.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;
  /// Relative precision used when inverting an exact non-monomial series.
  static constexpr int kDefaultInverseOrder = 24;

  LaurentSeries() = default;
  LaurentSeries(int start, std::vector<Rat> coeffs, int order);

  static LaurentSeries constant(const Rat& c, int order = kExact);
  static LaurentSeries monomial(const Rat& c, int exponent, int order = kExact);
  static LaurentSeries zero(int order = kExact) { return LaurentSeries(0, {}, order); }
  /// a + b·T, exact.
  static LaurentSeries linear(const Rat& a, const Rat& b);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] bool is_exact() const { return order_ >= kExact; }
  /// Exponent of the first nonzero known coefficient; order()+1 for a series
  /// with no known nonzero coefficient.
  [[nodiscard]] int valuation() const;
  [[nodiscard]] int pole_order() const;
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// Highest stored exponent (start when empty).
  [[nodiscard]] int last_exponent() const { return start_ + static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of T^n. Throws std::out_of_range beyond the known order.
  [[nodiscard]] Rat coeff(int n) const;
  [[nodiscard]] Rat leading() const;

  [[nodiscard]] LaurentSeries truncated(int order) const;
  [[nodiscard]] LaurentSeries derivative() const;
  [[nodiscard]] LaurentSeries inverse(int relative_order = kDefaultInverseOrder) const;
  [[nodiscard]] LaurentSeries shifted(int k) const;  // multiply by T^k

  template <class V>
  V evaluate(const V& t) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const LaurentSeries& o);
  LaurentSeries& operator/=(const LaurentSeries& o) { return *this *= o.inverse(); }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

  /// Equality of all coefficients up to the smaller of the two orders.
  [[nodiscard]] bool agrees_with(const LaurentSeries& o) const;

  [[nodiscard]] std::string str(const std::string& var = "T") const;

 private:
  void normalize();

  int start_ = 0;
  std::vector<Rat> coeffs_;
  int order_ = kExact;
};

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

template <class V>
V LaurentSeries::evaluate(const V& t) const {
  V acc = from_rat<V>(Rat(0));
  if (coeffs_.empty()) return acc;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = acc * t + from_rat<V>(coeffs_[k]);
  }
  V scale = from_rat<V>(Rat(1));
  const int e = start_;
  const V base = e >= 0 ? t : from_rat<V>(Rat(1)) / t;
  for (int k = 0; k < (e >= 0 ? e : -e); ++k) scale = scale * base;
  return acc * scale;
}

template <>
struct ScalarTraits<LaurentSeries> {
  static LaurentSeries from_rat(const Rat& r) { return LaurentSeries::constant(r); }
  static bool is_zero(const LaurentSeries& s) { return s.is_zero(); }
};

}  // namespace weylps
