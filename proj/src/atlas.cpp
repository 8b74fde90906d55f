#include "weylps/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace weylps {

namespace {

std::string digit(int i) { return std::to_string(i); }

std::string label_digits(int l, ChartId::Kind kind, int center) {
  const int n = l + 1;
  switch (kind) {
    case ChartId::Kind::Empty:
      return "";
    case ChartId::Kind::Single:
      return digit(center);
    case ChartId::Kind::Pair:
      return digit(wrap(center - 1, n)) + digit(wrap(center + 1, n));
    case ChartId::Kind::Triple:
      return digit(wrap(center - 1, n)) + digit(wrap(center + 1, n)) + digit(center);
  }
  return "";
}

std::vector<ChartId> ancestry(const ChartId& c) {
  std::vector<ChartId> out{c};
  while (auto p = parent_chart(out.back())) out.push_back(*p);
  return out;
}

void check_dimension(const ChartId& c, std::size_t n) {
  if (n != static_cast<std::size_t>(c.l + 1)) throw std::invalid_argument("chart point of wrong dimension");
}

}  // namespace

ChartId ChartId::parse(int l, const std::string& label) {
  require_supported_l(l);
  if (label == "empty" || label == "∅" || label == "void") return empty(l);
  for (const auto& c : all_charts(l))
    if (c.str() == label) return c;
  throw std::invalid_argument("unknown chart label '" + label + "'");
}

std::string ChartId::digits() const { return label_digits(l, kind, center); }

std::string ChartId::str() const {
  if (kind == Kind::Empty) return "empty";
  return digits() + (sign > 0 ? "+" : "-");
}

std::vector<ChartId> all_charts(int l) {
  require_supported_l(l);
  std::vector<ChartId> out{ChartId::empty(l)};
  std::vector<ChartId::Kind> kinds{ChartId::Kind::Single};
  if (l == 4) {
    kinds.push_back(ChartId::Kind::Pair);
    kinds.push_back(ChartId::Kind::Triple);
  }
  for (auto k : kinds)
    for (int i = 0; i <= l; ++i)
      for (int s : {+1, -1}) out.push_back({l, k, i, s});
  return out;
}

std::string GlueStep::str() const {
  return std::string(bar ? "psibar" : "psi") + "_" + std::to_string(index) + (sign > 0 ? "+" : "-");
}

std::optional<ChartId> parent_chart(const ChartId& c) {
  const int l = c.l, i = c.center;
  switch (c.kind) {
    case ChartId::Kind::Empty:
      return std::nullopt;
    case ChartId::Kind::Single:
      return ChartId::empty(l);
    case ChartId::Kind::Pair:
      return c.sign > 0 ? ChartId::single(l, i + 1, +1) : ChartId::single(l, i - 1, -1);
    case ChartId::Kind::Triple:
      return ChartId::pair(l, i, -c.sign);
  }
  return std::nullopt;
}

GlueStep glue_step(const ChartId& c) {
  const int n = c.l + 1, i = c.center;
  switch (c.kind) {
    case ChartId::Kind::Empty:
      throw std::invalid_argument("the empty chart has no gluing step");
    case ChartId::Kind::Single:
      return {false, i, c.sign};
    case ChartId::Kind::Pair:
      return {true, wrap(i - c.sign, n), c.sign};
    case ChartId::Kind::Triple:
      return {false, i, c.sign};
  }
  throw std::logic_error("bad chart kind");
}

std::vector<GlueStep> transition_path(const ChartId& from, const ChartId& to) {
  if (from.l != to.l) throw std::invalid_argument("charts of different rank");
  const auto up = ancestry(from);
  const auto down = ancestry(to);
  std::size_t ia = 0, ib = 0;
  // lowest common ancestor: first node of `up` that occurs in `down`
  for (ia = 0; ia < up.size(); ++ia) {
    auto it = std::find(down.begin(), down.end(), up[ia]);
    if (it != down.end()) {
      ib = static_cast<std::size_t>(it - down.begin());
      break;
    }
  }
  std::vector<GlueStep> path;
  for (std::size_t k = 0; k < ia; ++k) path.push_back(glue_step(up[k]));
  for (std::size_t k = ib; k-- > 0;) path.push_back(glue_step(down[k]));
  return path;
}

RatVector limit_along_lines(const std::function<std::vector<LaurentSeries>(const std::vector<LaurentSeries>&)>& g,
                            const RatVector& x) {
  RationalSampler rs(0x11e5);
  std::optional<RatVector> first;
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<LaurentSeries> line;
    for (const auto& xi : x) {
      Rat d = rs.rational(9, 7);
      if (d.is_zero()) d = Rat(trial + 2);
      line.push_back(LaurentSeries::linear(xi, d));
    }
    const auto out = g(line);
    RatVector value;
    for (const auto& s : out) {
      if (s.valuation() < 0) throw SingularError("outside transition domain");
      if (s.order() < 0) throw std::logic_error("limit along line lost all precision");
      value.push_back(s.coeff(0));
    }
    if (first && *first != value) throw SingularError("outside transition domain");
    first = value;
  }
  return *first;
}

RatVector transition(const ChartId& from, const ChartId& to, const RatVector& alpha, const RatVector& x) {
  check_dimension(from, x.size());
  if (from == to) return x;
  const auto path = transition_path(from, to);
  try {
    return apply_path(path, alpha, x);
  } catch (const SingularError&) {
    return limit_along_lines([&](const std::vector<LaurentSeries>& s) { return apply_path(path, alpha, s); }, x);
  }
}

std::optional<RatVector> try_transition(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                        const RatVector& x) {
  try {
    return transition(from, to, alpha, x);
  } catch (const SingularError&) {
    return std::nullopt;
  }
}

namespace {

template <class S>
std::vector<S> transition_numeric_impl(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                       const std::vector<S>& x) {
  check_dimension(from, x.size());
  if (from == to) return x;
  return apply_path(transition_path(from, to), alpha, x);
}

}  // namespace

std::vector<double> transition_numeric(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                       const std::vector<double>& x) {
  return transition_numeric_impl(from, to, alpha, x);
}

std::vector<std::complex<double>> transition_numeric(const ChartId& from, const ChartId& to, const RatVector& alpha,
                                                     const std::vector<std::complex<double>>& x) {
  return transition_numeric_impl(from, to, alpha, x);
}

// ---------------------------------------------------------------------------

std::string StratumId::digits() const { return label_digits(l, kind, center); }

std::string StratumId::str() const { return kind == ChartId::Kind::Empty ? "E_∅" : "E_" + digits(); }

std::vector<StratumId> all_strata(int l) {
  require_supported_l(l);
  std::vector<StratumId> out{{ChartId::Kind::Empty, 0, l}};
  // table order: representative label first, then its rotations
  for (int m = 0; m <= l; ++m) out.push_back({ChartId::Kind::Single, wrap(1 + m, l + 1), l});
  if (l == 4) {
    for (int m = 0; m <= l; ++m) out.push_back({ChartId::Kind::Pair, wrap(2 + m, 5), l});
    for (int m = 0; m <= l; ++m) out.push_back({ChartId::Kind::Triple, wrap(2 + m, 5), l});
  }
  return out;
}

StratumId StratumId::parse(int l, const std::string& name) {
  std::string s = name;
  if (s.rfind("E_", 0) == 0) s = s.substr(2);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty() || s == "∅" || s == "empty") return {ChartId::Kind::Empty, 0, l};
  for (const auto& st : all_strata(l))
    if (st.digits() == s) return st;
  throw std::invalid_argument("unknown stratum '" + name + "'");
}

StratumChart stratum_chart(const StratumId& s, bool alternate) {
  const int l = s.l, i = s.center, n = l + 1;
  const int sg = alternate ? +1 : -1;
  switch (s.kind) {
    case ChartId::Kind::Empty:
      return {ChartId::empty(l), {}};
    case ChartId::Kind::Single:
      // E_i = {x_{i-}^{i-1} = 0} = {x_{i+}^{i+1} = 0}
      return {ChartId::single(l, i, sg), {wrap(i + sg, n)}};
    case ChartId::Kind::Pair:
      // E_{i-1,i+1} = {x_-^{i-2} = x_-^i = 0} = {x_+^{i+2} = x_+^i = 0}
      return {ChartId::pair(l, i, sg), {wrap(i + 2 * sg, n), i}};
    case ChartId::Kind::Triple:
      // E_{i-1,i+1,i} = {x_+^{i-2} = x_+^{i+1} = 0} = {x_-^{i+2} = x_-^{i-1} = 0}
      return {ChartId::triple(l, i, -sg), {wrap(i + 2 * sg, n), wrap(i - sg, n)}};
  }
  throw std::logic_error("bad stratum kind");
}

StratumId stratum_of(const ChartPoint& p, const RatVector& alpha) {
  const int l = p.chart.l;
  check_dimension(p.chart, p.x.size());
  for (const auto& s : all_strata(l)) {
    const auto sc = stratum_chart(s);
    const auto y = try_transition(p.chart, sc.chart, alpha, p.x);
    if (!y) continue;
    if (std::all_of(sc.zero_coords.begin(), sc.zero_coords.end(),
                    [&](int j) { return (*y)[static_cast<std::size_t>(j)].is_zero(); }))
      return s;
  }
  throw std::logic_error("point lies in no stratum of the decomposition");
}

StratumId stratum_of_class(const ResidueClass& cls) {
  const int l = cls.l;
  switch (cls.kind) {
    case PoleKind::Holomorphic:
      return {ChartId::Kind::Empty, 0, l};
    case PoleKind::Single:
      return {ChartId::Kind::Single, wrap(1 + cls.rotation, l + 1), l};
    case PoleKind::Pair:
      return {ChartId::Kind::Pair, wrap(2 + cls.rotation, l + 1), l};
    case PoleKind::Triple:
      return {ChartId::Kind::Triple, wrap(2 + cls.rotation, l + 1), l};
  }
  throw std::logic_error("bad pole kind");
}

std::vector<LaurentSeries> series_in_chart(const std::vector<LaurentSeries>& f, const RatVector& alpha,
                                           const ChartId& c) {
  check_dimension(c, f.size());
  return apply_path(transition_path(ChartId::empty(c.l), c), alpha, f);
}

ChartPoint point_at_pole(const std::vector<LaurentSeries>& f, const RatVector& alpha, const StratumId& stratum) {
  const auto sc = stratum_chart(stratum);
  const auto x = series_in_chart(f, alpha, sc.chart);
  ChartPoint p{sc.chart, {}};
  for (const auto& s : x) {
    if (s.valuation() < 0) throw SingularError("series not regular in the stratum chart");
    p.x.push_back(s.coeff(0));
  }
  return p;
}

bool in_divisor(int i, const ChartPoint& p, const RatVector& alpha) {
  const int l = p.chart.l;
  std::vector<ChartId> charts{ChartId::empty(l)};
  if (l == 4) {
    charts.push_back(ChartId::single(l, i - 2, -1));
    charts.push_back(ChartId::single(l, i + 2, +1));
    charts.push_back(ChartId::pair(l, i, -1));
  }
  const auto j = static_cast<std::size_t>(wrap(i, l + 1));
  for (const auto& c : charts) {
    const auto y = try_transition(p.chart, c, alpha, p.x);
    if (y && (*y)[j].is_zero()) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

RatVector pushforward(const ChartId& c, const RatVector& alpha, const RatVector& x) {
  check_dimension(c, x.size());
  const auto f = apply_path(transition_path(c, ChartId::empty(c.l)), alpha, x);
  const auto F = vector_field(alpha, f);
  if (c.is_empty()) return F;
  std::vector<Dual<Rat>> fd;
  fd.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fd.emplace_back(f[i], F[i]);
  const auto out = apply_path(transition_path(ChartId::empty(c.l), c), alpha, fd);
  RatVector xdot;
  xdot.reserve(out.size());
  for (const auto& d : out) xdot.push_back(d.d);
  return xdot;
}

ChartVectorField reconstruct_vector_field(const ChartId& c, const RatVector& alpha, int degree_bound,
                                          std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(c.l + 1);
  if (alpha.size() != n) throw std::invalid_argument("parameter vector of wrong length");
  ChartVectorField out{c, alpha, {}};
  if (c.is_empty()) {
    const int ni = static_cast<int>(n);
    for (int i = 0; i < ni; ++i) {
      ExactPolynomial g(n);
      for (int k = 1; k < ni; ++k) {
        const auto xk = ExactPolynomial::variable(n, static_cast<std::size_t>(wrap(i + k, ni)));
        g += k % 2 == 1 ? xk : -xk;
      }
      out.rhs.push_back(ExactPolynomial::variable(n, static_cast<std::size_t>(i)) * g +
                        ExactPolynomial::constant(n, alpha[static_cast<std::size_t>(i)]));
    }
    return out;
  }
  RationalSampler sampler(seed);
  try {
    out.rhs = interpolate_polynomial_map([&](const RatVector& x) { return pushforward(c, alpha, x); }, n, n,
                                         degree_bound, sampler);
  } catch (const InterpolationError& e) {
    throw InterpolationError("vector field not polynomial at degree bound " + std::to_string(degree_bound) +
                             " (" + e.what() + ")");
  }
  return out;
}

CheckReport verify_vector_fields(int l, const RatVector& alpha, int samples, std::uint64_t seed) {
  CheckReport rep;
  RationalSampler rs(seed);
  const auto n = static_cast<std::size_t>(l + 1);
  for (const auto& c : all_charts(l)) {
    const auto fld = reconstruct_vector_field(c, alpha);
    ExactPolynomial sum(n);
    for (const auto& p : fld.rhs) sum += p;
    ++rep.checks;
    if (!(sum == ExactPolynomial::constant(n, Rat(1)))) rep.violations.push_back(c.str() + ": components do not sum to 1");
    for (int k = 0; k < samples; ++k) {
      ++rep.samples;
      RatVector x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(rs.rational() + rs.generic_offset());
      RatVector expected;
      try {
        expected = pushforward(c, alpha, x);
      } catch (const SingularError&) {
        ++rep.skipped;
        continue;
      }
      ++rep.checks;
      if (!(fld(x) == expected)) rep.violations.push_back(c.str() + ": field differs from the pushforward");
    }
  }
  return rep;
}

const ChartVectorField& FieldCache::get(const ChartId& c) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = fields_[c.str()];
  if (!slot) slot = std::make_unique<ChartVectorField>(reconstruct_vector_field(c, alpha_, degree_bound_));
  return *slot;
}

// ---------------------------------------------------------------------------

namespace {

template <class S>
ChartHealth chart_health_impl(const ChartPointT<S>& p, const RatVector& alpha) {
  const auto score_of = [](const std::vector<S>& x) {
    double m = 0.0;
    for (const auto& v : x) {
      const double a = std::abs(v);
      if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
      m = std::max(m, a);
    }
    return m;
  };
  ChartHealth h;
  h.score = score_of(p.x);
  h.recommended = p.chart;
  h.recommended_score = h.score;
  for (const auto& c : all_charts(p.chart.l)) {
    if (c == p.chart) continue;
    double s = std::numeric_limits<double>::infinity();
    try {
      s = score_of(transition_numeric(p.chart, c, alpha, p.x));
    } catch (const SingularError&) {
      continue;
    }
    // the current chart wins ties; otherwise the smaller label
    const bool better = s < h.recommended_score ||
                        (s == h.recommended_score && h.recommended != p.chart && c.str() < h.recommended.str());
    if (better) {
      h.recommended = c;
      h.recommended_score = s;
    }
  }
  return h;
}

}  // namespace

ChartHealth chart_health(const ChartPointT<double>& p, const RatVector& alpha) { return chart_health_impl(p, alpha); }

ChartHealth chart_health(const ChartPointT<std::complex<double>>& p, const RatVector& alpha) {
  return chart_health_impl(p, alpha);
}

}  // namespace weylps
