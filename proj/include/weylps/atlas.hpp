#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "weylps/dual.hpp"
#include "weylps/laurent.hpp"
#include "weylps/polynomial.hpp"
#include "weylps/report.hpp"
#include "weylps/residue.hpp"
#include "weylps/system.hpp"

namespace weylps {

/// Label of one coordinate chart. For l = 4 the labels are the empty chart,
/// i+/i-, (i-1,i+1)+/- and (i-1,i+1,i)+/-; `center` stores i. For l = 2 only
/// the empty chart and i+/i- exist.
struct ChartId {
  enum class Kind { Empty = 0, Single = 1, Pair = 2, Triple = 3 };
  int l = 4;
  Kind kind = Kind::Empty;
  int center = 0;
  int sign = 0;  // +1 or -1; 0 for the empty chart

  static ChartId empty(int l) { return {l, Kind::Empty, 0, 0}; }
  static ChartId single(int l, int i, int sign) { return {l, Kind::Single, wrap(i, l + 1), sign}; }
  static ChartId pair(int l, int i, int sign) { return {l, Kind::Pair, wrap(i, l + 1), sign}; }
  static ChartId triple(int l, int i, int sign) { return {l, Kind::Triple, wrap(i, l + 1), sign}; }

  /// Parses "empty" / "∅" / "1-" / "13+" / "132-". Throws std::invalid_argument.
  static ChartId parse(int l, const std::string& label);

  /// Digits of the label: "1", "13", "132" ("" for the empty chart).
  [[nodiscard]] std::string digits() const;
  /// "empty", "1-", "13+", "132+".
  [[nodiscard]] std::string str() const;
  [[nodiscard]] bool is_empty() const { return kind == Kind::Empty; }
  /// Rotated by m: every index shifted by m.
  [[nodiscard]] ChartId rotated(int m) const { return {l, kind, kind == Kind::Empty ? 0 : wrap(center + m, l + 1), sign}; }

  friend bool operator==(const ChartId&, const ChartId&) = default;
  friend bool operator<(const ChartId& a, const ChartId& b) { return a.str() < b.str(); }
};

/// All labels of the atlas (7 for l = 2, 31 for l = 4), empty chart first.
std::vector<ChartId> all_charts(int l);

template <class S>
struct ChartPointT {
  ChartId chart;
  std::vector<S> x;
};
using ChartPoint = ChartPointT<Rat>;

// ---------------------------------------------------------------------------
// Primitive gluing maps. Both families are involutions for fixed alpha.

/// Psi_{i,sign}: eta^{i+s} = 1/xi^{i+s}, eta^i = xi^{i+s}(-s alpha_i - xi^i xi^{i+s}),
/// remaining coordinates by the linear relations (sum preserved).
template <class S>
std::vector<S> psi(int i, int sign, const RatVector& alpha, const std::vector<S>& xi) {
  const int n = static_cast<int>(xi.size());
  const int l = n - 1;
  const auto idx = [&](int j) { return static_cast<std::size_t>(wrap(j, n)); };
  const int s = sign;
  const std::size_t ii = idx(i), a = idx(i + s), b = idx(i - s);
  std::vector<S> eta = xi;
  const S inv = checked_inverse(xi[a]);
  const S ai = from_rat<S>(s > 0 ? -alpha[ii] : alpha[ii]);
  eta[a] = inv;
  eta[ii] = xi[a] * (ai - xi[ii] * xi[a]);
  if (l == 2) {
    eta[b] = xi[a] + xi[ii] + xi[b] - eta[a] - eta[ii];
  } else {
    // eta^{i-2s} = xi^{i-2s}; eta^{i+2s} closes the sum
    const std::size_t c = idx(i + 2 * s);
    eta[b] = xi[a] + xi[b] - inv;
    eta[c] = xi[c] + xi[ii] - eta[ii];
  }
  return eta;
}

/// Psi-bar_{i,sign} (l = 4): eta^{i+3s} + eta^{i+s} = 1/(xi^{i+3s} + xi^{i+s}),
/// eta^i (eta^{i+3s} + eta^{i+s}) = -s alpha_i - xi^i (xi^{i+3s} + xi^{i+s}).
template <class S>
std::vector<S> psibar(int i, int sign, const RatVector& alpha, const std::vector<S>& xi) {
  const int n = static_cast<int>(xi.size());
  if (n != 5) throw std::invalid_argument("psibar is defined for l = 4 only");
  const auto idx = [&](int j) { return static_cast<std::size_t>(wrap(j, n)); };
  const int s = sign;
  const std::size_t i3 = idx(i + 3 * s), i1 = idx(i + s), im = idx(i - s), ii = idx(i);
  std::vector<S> eta = xi;
  const S sum = xi[i3] + xi[i1];
  const S inv = checked_inverse(sum);
  const S ai = from_rat<S>(s > 0 ? -alpha[ii] : alpha[ii]);
  eta[i1] = inv - xi[i3];
  eta[ii] = sum * (ai - xi[ii] * sum);
  eta[im] = xi[im] + xi[i1] + xi[ii] - eta[i1] - eta[ii];
  return eta;
}

/// One edge of the chart tree: the primitive map taking parent coordinates
/// to child coordinates (and back, being an involution).
struct GlueStep {
  bool bar = false;
  int index = 0;
  int sign = 0;

  template <class S>
  std::vector<S> apply(const RatVector& alpha, const std::vector<S>& x) const {
    return bar ? psibar(index, sign, alpha, x) : psi(index, sign, alpha, x);
  }
  [[nodiscard]] std::string str() const;
};

/// Parent chart in the gluing tree (the empty chart has none).
std::optional<ChartId> parent_chart(const ChartId& c);
/// Map taking parent coordinates to c's coordinates.
GlueStep glue_step(const ChartId& c);
/// Sequence of primitive maps realising the transition from -> to
/// (through the lowest common ancestor in the gluing tree).
std::vector<GlueStep> transition_path(const ChartId& from, const ChartId& to);

template <class S>
std::vector<S> apply_path(const std::vector<GlueStep>& path, const RatVector& alpha, std::vector<S> x) {
  for (const auto& st : path) x = st.apply(alpha, x);
  return x;
}

/// Exact transition. Composes the primitive maps; when an intermediate step
/// is singular, falls back to the limit along generic lines through the
/// point (the transition extends holomorphically wherever the target chart
/// contains the point). Throws SingularError("outside transition domain").
RatVector transition(const ChartId& from, const ChartId& to, const RatVector& alpha, const RatVector& x);

/// Same as transition but returns nullopt instead of throwing.
std::optional<RatVector> try_transition(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                        const RatVector& x);

/// Limit of a rational map g at x along two generic lines x + eps d. Throws
/// SingularError when a negative power of eps survives.
RatVector limit_along_lines(const std::function<std::vector<LaurentSeries>(const std::vector<LaurentSeries>&)>& g,
                            const RatVector& x);

/// Floating transition along the tree path (no limit fallback).
std::vector<double> transition_numeric(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                       const std::vector<double>& x);
std::vector<std::complex<double>> transition_numeric(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                                     const std::vector<std::complex<double>>& x);

// ---------------------------------------------------------------------------
// Strata

struct StratumId {
  ChartId::Kind kind = ChartId::Kind::Empty;
  int center = 0;
  int l = 4;

  /// "E_∅", "E_1", "E_13", "E_132".
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::string digits() const;
  [[nodiscard]] StratumId rotated(int m) const {
    return {kind, kind == ChartId::Kind::Empty ? 0 : wrap(center + m, l + 1), l};
  }
  static StratumId parse(int l, const std::string& name);
  friend bool operator==(const StratumId&, const StratumId&) = default;
};

std::vector<StratumId> all_strata(int l);

/// Chart in which the stratum is a coordinate subspace, and the coordinates
/// that vanish on it. `alternate` selects the second description.
struct StratumChart {
  ChartId chart;
  std::vector<int> zero_coords;
};
StratumChart stratum_chart(const StratumId& s, bool alternate = false);

StratumId stratum_of(const ChartPoint& p, const RatVector& alpha);

/// Stratum parametrising the solutions of a pole class.
StratumId stratum_of_class(const ResidueClass& cls);

/// Laurent series f (empty-chart components) expressed in chart c.
std::vector<LaurentSeries> series_in_chart(const std::vector<LaurentSeries>& f, const RatVector& alpha,
                                           const ChartId& c);

/// Point where the solution f passes through the canonical stratum chart of
/// `stratum` at T = 0. Throws SingularError if the series is not regular there.
ChartPoint point_at_pole(const std::vector<LaurentSeries>& f, const RatVector& alpha, const StratumId& stratum);

/// Membership in D_i, the closure of {x_empty^i = 0}.
bool in_divisor(int i, const ChartPoint& p, const RatVector& alpha);

// ---------------------------------------------------------------------------
// Vector fields

/// Exact polynomial right-hand side of the flow in one chart.
struct ChartVectorField {
  ChartId chart;
  RatVector alpha;
  std::vector<ExactPolynomial> rhs;

  template <class S>
  std::vector<S> operator()(const std::vector<S>& x) const {
    std::vector<S> out;
    out.reserve(rhs.size());
    for (const auto& p : rhs) out.push_back(p.evaluate(x));
    return out;
  }
};

constexpr int kDefaultDegreeBound = 8;

/// Chain-rule pushforward of the flow into chart c at x (exact).
RatVector pushforward(const ChartId& c, const RatVector& alpha, const RatVector& x);

/// Interpolates the pushforward on a lattice and verifies on held-out
/// points. Throws InterpolationError("vector field not polynomial at degree
/// bound") if the degree bound is too small.
ChartVectorField reconstruct_vector_field(const ChartId& c, const RatVector& alpha,
                                          int degree_bound = kDefaultDegreeBound, std::uint64_t seed = 0x5eed);

/// Reconstructs every chart field of rank l and compares it with the
/// pushforward at `samples` random exact points per chart; also checks that
/// the components sum to 1.
CheckReport verify_vector_fields(int l, const RatVector& alpha, int samples, std::uint64_t seed);

/// Per-alpha cache of reconstructed chart fields (thread-safe).
class FieldCache {
 public:
  explicit FieldCache(RatVector alpha, int degree_bound = kDefaultDegreeBound)
      : alpha_(std::move(alpha)), degree_bound_(degree_bound) {}
  const ChartVectorField& get(const ChartId& c);
  [[nodiscard]] const RatVector& alpha() const { return alpha_; }

 private:
  RatVector alpha_;
  int degree_bound_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<ChartVectorField>> fields_;
};

// ---------------------------------------------------------------------------
// Chart selection

struct ChartHealth {
  double score = 0.0;  // max |x| in the current chart
  ChartId recommended;
  double recommended_score = 0.0;
};

/// Score of the current chart and the regular chart of smallest score (ties
/// broken by label order).
ChartHealth chart_health(const ChartPointT<double>& p, const RatVector& alpha);
ChartHealth chart_health(const ChartPointT<std::complex<double>>& p, const RatVector& alpha);

}  // namespace weylps
