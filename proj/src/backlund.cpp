#include "weylps/backlund.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace weylps {

namespace {

enum class FastPath { None, Formula, Identity };

// Closed-form cases: the generator acts on the chart coordinates either by
// the same formula as on the empty chart or as the identity.
FastPath fast_path(const ChartId& c, int i) {
  const int n = c.l + 1;
  const auto rel = [&](int base) { return wrap(i - (c.center - base), n); };
  if (c.is_empty()) return FastPath::Formula;
  if (c.l == 2) {
    if (c.kind != ChartId::Kind::Single) return FastPath::None;
    if (c.center == wrap(i, n)) return FastPath::Formula;
    if ((c.sign > 0 && c.center == wrap(i - 1, n)) || (c.sign < 0 && c.center == wrap(i + 1, n)))
      return FastPath::Identity;
    return FastPath::None;
  }
  if (c.kind == ChartId::Kind::Single && c.sign < 0) {
    const int r = rel(1);
    if (r == 1 || r == 3) return FastPath::Formula;
    if (r == 0) return FastPath::Identity;
  } else if (c.kind == ChartId::Kind::Pair && c.sign < 0) {
    const int r = rel(2);
    if (r == 1 || r == 2 || r == 3) return FastPath::Formula;
    if (r == 0) return FastPath::Identity;
  } else if (c.kind == ChartId::Kind::Triple && c.sign > 0) {
    const int r = rel(2);
    if (r == 2) return FastPath::Formula;
    if (r == 0 || r == 3) return FastPath::Identity;
  }
  return FastPath::None;
}

FiberPoint rotate_point(const FiberPoint& p, bool inverse) {
  const int n = p.point.chart.l + 1;
  FiberPoint q;
  const Letter g = inverse ? Letter::pi_inv() : Letter::pi();
  q.alpha = apply_letter_to_params(g, p.alpha);
  q.point.chart = p.point.chart.rotated(inverse ? +1 : -1);
  q.point.x.resize(p.point.x.size());
  for (int j = 0; j < n; ++j)
    q.point.x[static_cast<std::size_t>(j)] = p.point.x[static_cast<std::size_t>(wrap(inverse ? j - 1 : j + 1, n))];
  return q;
}

std::vector<ChartId> target_order(const ChartId& c) {
  std::vector<ChartId> out{c};
  for (const auto& d : all_charts(c.l))
    if (d != c) out.push_back(d);
  return out;
}

// Compares two points of the same fiber given in possibly different charts.
bool same_point(const FiberPoint& a, const FiberPoint& b) {
  if (a.alpha != b.alpha) return false;
  const auto y = try_transition(b.point.chart, a.point.chart, b.alpha, b.point.x);
  return y && *y == a.point.x;
}

std::string describe(const FiberPoint& p) {
  std::ostringstream os;
  os << "chart " << p.point.chart.str() << " x = (";
  for (std::size_t k = 0; k < p.point.x.size(); ++k) os << (k ? ", " : "") << p.point.x[k].str();
  os << ")";
  return os.str();
}

RatVector generic_vector(RationalSampler& rs, std::size_t n) {
  RatVector x;
  for (std::size_t k = 0; k < n; ++k) x.push_back(rs.rational() + rs.generic_offset());
  return x;
}

// Small nonzero rationals keep the exact limit computations cheap.
RatVector nonzero_vector(RationalSampler& rs, std::size_t n) {
  RatVector x;
  while (x.size() < n) {
    Rat r = rs.rational(12, 7);
    if (!r.is_zero()) x.push_back(r);
  }
  return x;
}

}  // namespace

FiberPoint apply_letter_generic(const Letter& g, const FiberPoint& p) {
  if (g.kind != Letter::Kind::S) return rotate_point(p, g.kind == Letter::Kind::PiInv);
  const ChartId& c = p.point.chart;
  const RatVector beta = apply_letter_to_params(g, p.alpha);
  const auto up = transition_path(c, ChartId::empty(c.l));
  for (const auto& d : target_order(c)) {
    const auto down = transition_path(ChartId::empty(c.l), d);
    const auto composite = [&](const auto& x) {
      const auto f = apply_path(up, p.alpha, x);
      return apply_path(down, beta, apply_letter_to_f(g, p.alpha, f));
    };
    try {
      return {beta, {d, composite(p.point.x)}};
    } catch (const SingularError&) {
    }
    try {
      return {beta, {d, limit_along_lines([&](const std::vector<LaurentSeries>& s) { return composite(s); },
                                          p.point.x)}};
    } catch (const SingularError&) {
    }
  }
  throw std::logic_error("action undefined at point in all attempted charts");
}

FiberPoint apply_letter_to_point(const Letter& g, const FiberPoint& p) {
  if (g.kind != Letter::Kind::S) return rotate_point(p, g.kind == Letter::Kind::PiInv);
  const int n = p.point.chart.l + 1;
  const int i = wrap(g.index, n);
  const Rat& ai = p.alpha[static_cast<std::size_t>(i)];
  const RatVector beta = apply_letter_to_params(g, p.alpha);
  // alpha_i = 0 leaves the parameters fixed and acts as the identity
  if (ai.is_zero()) return {beta, p.point};
  switch (fast_path(p.point.chart, i)) {
    case FastPath::Identity:
      return {beta, p.point};
    case FastPath::Formula:
      if (!p.point.x[static_cast<std::size_t>(i)].is_zero())
        return {beta, {p.point.chart, apply_letter_to_f(g, p.alpha, p.point.x)}};
      break;
    case FastPath::None:
      break;
  }
  return apply_letter_generic(g, p);
}

FiberPoint act_on_point(const GroupWord& w, const FiberPoint& p) {
  if (p.alpha.size() != p.point.x.size()) throw std::invalid_argument("parameter vector of wrong length");
  FiberPoint q = p;
  for (const auto& g : w.letters()) q = apply_letter_to_point(g, q);
  return q;
}

CheckReport verify_relations(int l, int samples, std::uint64_t seed) {
  require_supported_l(l);
  const auto n = static_cast<std::size_t>(l + 1);
  RationalSampler rs(seed);
  std::vector<std::pair<GroupWord, GroupWord>> rels;
  const auto s = [](int i) { return Letter::s(i); };
  for (int i = 0; i <= l; ++i) {
    rels.push_back({GroupWord({s(i), s(i)}), GroupWord()});
    for (int j = 0; j <= l; ++j) {
      if (j == i) continue;
      if (wrap(j - i, l + 1) == 1 || wrap(i - j, l + 1) == 1) {
        if (j == wrap(i + 1, l + 1)) rels.push_back({GroupWord({s(i), s(j), s(i)}), GroupWord({s(j), s(i), s(j)})});
      } else if (i < j) {
        rels.push_back({GroupWord({s(i), s(j)}), GroupWord({s(j), s(i)})});
      }
    }
    rels.push_back({GroupWord({Letter::pi(), s(i)}), GroupWord({s(i + 1), Letter::pi()})});
  }
  rels.push_back({GroupWord(std::vector<Letter>(n, Letter::pi())), GroupWord()});
  rels.push_back({GroupWord({Letter::pi(), Letter::pi_inv()}), GroupWord()});

  const auto charts = all_charts(l);
  CheckReport rep;
  for (int k = 0; k < samples; ++k) {
    ++rep.samples;
    const auto alpha = rs.unit_sum(n);
    const auto& c = charts[static_cast<std::size_t>(rs.engine()() % charts.size())];
    const FiberPoint p{alpha, {c, transition(ChartId::empty(l), c, alpha, generic_vector(rs, n))}};
    for (const auto& [a, b] : rels) {
      try {
        const auto qa = act_on_point(a, p);
        const auto qb = act_on_point(b, p);
        ++rep.checks;
        if (!same_point(qa, qb))
          rep.violations.push_back(a.str() + " != " + b.str() + " at " + describe(p));
      } catch (const SingularError&) {
        ++rep.skipped;
      }
    }
  }
  return rep;
}

CheckReport verify_equivariance(const GroupWord& w, const RatVector& alpha, int samples, std::uint64_t seed) {
  RationalSampler rs(seed);
  CheckReport rep;
  const RatVector beta = act_on_params(w, alpha);
  for (int k = 0; k < samples; ++k) {
    ++rep.samples;
    const auto f = generic_vector(rs, alpha.size());
    try {
      const auto X = vector_field(alpha, f);
      std::vector<Dual<Rat>> fd;
      for (std::size_t j = 0; j < f.size(); ++j) fd.emplace_back(f[j], X[j]);
      RatVector a = alpha;
      const auto out = act_on_f(w, a, fd);
      RatVector image, lhs;
      for (const auto& d : out) {
        image.push_back(d.v);
        lhs.push_back(d.d);
      }
      ++rep.checks;
      if (lhs != vector_field(beta, image)) rep.violations.push_back("equivariance fails for " + w.str());
    } catch (const SingularError&) {
      ++rep.skipped;
    }
  }
  return rep;
}

StratumImage stratum_image(int i, const StratumId& s, bool in_div, bool alpha_pivot_nonzero) {
  const int l = s.l;
  const int n = l + 1;
  i = wrap(i, n);
  const auto degenerate = [&] {
    if (!alpha_pivot_nonzero) throw std::domain_error("degenerate: table does not apply");
  };
  using K = ChartId::Kind;
  const StratumId empty{K::Empty, 0, l};
  if (l == 2) {
    if (s.kind == K::Empty) {
      if (!in_div) return {empty, false};
      degenerate();
      return {{K::Single, i, l}, std::nullopt};
    }
    if (s.center == i) {
      degenerate();
      return {empty, true};
    }
    return {s, std::nullopt};
  }
  // the table is written for i = 2; other generators by rotation
  const int m = i - 2;
  const StratumId r = s.rotated(-m);
  const auto back = [&](K kind, int center) { return StratumId{kind, center, l}.rotated(m); };
  const std::string d = r.digits();
  if (d.empty()) {
    if (!in_div) return {empty, false};
    degenerate();
    return {back(K::Single, 2), std::nullopt};
  }
  if (d == "2") {
    degenerate();
    return {empty, true};
  }
  if (d == "0" || d == "4") {
    if (!in_div) return {s, false};
    degenerate();
    return {back(K::Pair, d == "0" ? 1 : 3), std::nullopt};
  }
  if (d == "02" || d == "24") {
    degenerate();
    return {back(K::Single, d == "02" ? 0 : 4), true};
  }
  if (d == "13") {
    if (!in_div) throw std::invalid_argument("E_13 lies inside D_2; point not in the stratum");
    degenerate();
    return {back(K::Triple, 2), std::nullopt};
  }
  if (d == "132") {
    degenerate();
    return {back(K::Pair, 2), true};
  }
  return {s, std::nullopt};
}

CheckReport verify_strata(int l, int samples, std::uint64_t seed) {
  require_supported_l(l);
  const auto n = static_cast<std::size_t>(l + 1);
  RationalSampler rs(seed);
  CheckReport rep;
  for (int k = 0; k < samples; ++k) {
    RatVector alpha = rs.unit_sum(n);
    while (std::any_of(alpha.begin(), alpha.end(), [](const Rat& a) { return a.is_zero(); })) alpha = rs.unit_sum(n);
    for (int i = 0; i <= l; ++i) {
      // points of every stratum, and the same with coordinate i forced to 0
      std::vector<ChartPoint> pts;
      for (const auto& st : all_strata(l))
        for (bool alt : {false, true}) {
          const auto sc = stratum_chart(st, alt);
          auto x = nonzero_vector(rs, n);
          for (int z : sc.zero_coords) x[static_cast<std::size_t>(z)] = Rat(0);
          pts.push_back({sc.chart, x});
          x[static_cast<std::size_t>(i)] = Rat(0);
          pts.push_back({sc.chart, x});
        }
      for (const auto& pt : pts) {
        ++rep.samples;
        const auto src = stratum_of(pt, alpha);
        const bool in_div = in_divisor(i, pt, alpha);
        const auto expected = stratum_image(i, src, in_div);
        const auto q = act_on_point(GroupWord({Letter::s(i)}), {alpha, pt});
        ++rep.checks;
        const auto got = stratum_of(q.point, q.alpha);
        std::string why;
        if (!(got == expected.stratum)) why = "image in " + got.str() + ", table says " + expected.stratum.str();
        if (expected.in_divisor && in_divisor(i, q.point, q.alpha) != *expected.in_divisor)
          why = "image divisor membership differs from the table";
        if (!why.empty())
          rep.violations.push_back("s" + std::to_string(i) + " on " + src.str() + (in_div ? " in D" : "") + ": " + why);
      }
    }
  }
  return rep;
}

}  // namespace weylps
