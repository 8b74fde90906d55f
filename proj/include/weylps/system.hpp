#pragma once

#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

#include "weylps/linalg.hpp"
#include "weylps/scalar.hpp"

namespace weylps {

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

/// Throws std::invalid_argument unless l is even and >= 2.
void require_even_l(int l);
/// Throws std::invalid_argument unless l is 2 or 4.
void require_supported_l(int l);

/// Parameter vector alpha = (alpha_0..alpha_l) with exact unit sum.
struct ParamPoint {
  int l = 0;
  RatVector alpha;

  ParamPoint() = default;
  /// Validates length and the unit-sum constraint.
  ParamPoint(int l, RatVector alpha);
  /// Skips the unit-sum check (diagnostics only).
  static ParamPoint unchecked(int l, RatVector alpha);

  [[nodiscard]] const Rat& operator[](int i) const { return alpha[static_cast<std::size_t>(wrap(i, l + 1))]; }
  [[nodiscard]] std::vector<double> to_double() const;
  friend bool operator==(const ParamPoint& a, const ParamPoint& b) = default;
};

/// Parses "a0,a1,...". Throws std::invalid_argument on malformed input or
/// when the entries do not sum to 1.
ParamPoint parse_params(int l, const std::string& text);

/// Generalized Cartan matrix of affine type A_l^(1).
std::vector<std::vector<int>> cartan_matrix(int l);
/// Orientation matrix: +1 at (i,i+1), -1 at (i,i-1).
std::vector<std::vector<int>> orientation_matrix(int l);

inline int cartan(int l, int i, int j) {
  const int n = l + 1;
  const int d = wrap(j - i, n);
  if (d == 0) return 2;
  if (d == 1 || d == n - 1) return -1;
  return 0;
}

inline int orientation(int l, int i, int j) {
  const int n = l + 1;
  const int d = wrap(j - i, n);
  if (d == 1) return 1;
  if (d == n - 1) return -1;
  return 0;
}

/// Alternating neighbour sum sum_{k=1}^{l} (-1)^{k-1} f_{i+k}.
template <class S>
S alternating_sum(const std::vector<S>& f, int i) {
  const int n = static_cast<int>(f.size());
  S acc = from_rat<S>(Rat(0));
  for (int k = 1; k < n; ++k) {
    const S& v = f[static_cast<std::size_t>(wrap(i + k, n))];
    if (k % 2 == 1)
      acc = acc + v;
    else
      acc = acc - v;
  }
  return acc;
}

/// f_i' = f_i * alternating_sum(f, i) + alpha_i.
template <class S, class A>
std::vector<S> vector_field(const std::vector<A>& alpha, const std::vector<S>& f) {
  const int l = static_cast<int>(f.size()) - 1;
  require_even_l(l);
  if (alpha.size() != f.size()) throw std::invalid_argument("parameter and phase vectors differ in length");
  std::vector<S> out;
  out.reserve(f.size());
  for (int i = 0; i <= l; ++i) {
    S a;
    if constexpr (std::is_same_v<A, Rat>)
      a = from_rat<S>(alpha[static_cast<std::size_t>(i)]);
    else
      a = S(alpha[static_cast<std::size_t>(i)]);
    out.push_back(f[static_cast<std::size_t>(i)] * alternating_sum(f, i) + a);
  }
  return out;
}

template <class S>
std::vector<S> vector_field(const ParamPoint& p, const std::vector<S>& f) {
  return vector_field(p.alpha, f);
}

/// True iff the components of the vector field add up to exactly 1.
bool sum_identity_check(const RatVector& alpha, const RatVector& f);

/// r'_j = r_{j-m}.
template <class T>
std::vector<T> rotate(const std::vector<T>& r, int m) {
  const int n = static_cast<int>(r.size());
  std::vector<T> out(r.size());
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(wrap(j - m, n))];
  return out;
}

}  // namespace weylps
