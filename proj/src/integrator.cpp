#include "weylps/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <type_traits>
#include <utility>

#include "weylps/series.hpp"

namespace weylps {

// ---------------------------------------------------------------------------
// Compiled fields

namespace {
constexpr int kMaxVars = 5;
constexpr int kMaxPower = 16;
}  // namespace

CompiledField::CompiledField(const ChartVectorField& exact) : nvars_(exact.chart.l + 1) {
  for (const auto& p : exact.rhs) {
    std::vector<Term> terms;
    for (const auto& [e, c] : p.terms()) {
      for (int k : e) maxdeg_ = std::max(maxdeg_, k);
      terms.push_back({c.to_double(), e});
    }
    rhs_.push_back(std::move(terms));
  }
  if (maxdeg_ >= kMaxPower || nvars_ > static_cast<std::size_t>(kMaxVars))
    throw std::invalid_argument("chart field too large to compile");
}

template <class S>
void CompiledField::eval(const std::vector<S>& x, std::vector<S>& out) const {
  std::array<std::array<S, kMaxPower>, kMaxVars> pw;
  for (std::size_t v = 0; v < nvars_; ++v) {
    pw[v][0] = S(1);
    for (int k = 1; k <= maxdeg_; ++k) pw[v][static_cast<std::size_t>(k)] = pw[v][static_cast<std::size_t>(k - 1)] * x[v];
  }
  out.resize(rhs_.size());
  for (std::size_t i = 0; i < rhs_.size(); ++i) {
    S acc(0);
    for (const auto& t : rhs_[i]) {
      S m(t.c);
      for (std::size_t v = 0; v < nvars_; ++v)
        if (t.e[v] != 0) m *= pw[v][static_cast<std::size_t>(t.e[v])];
      acc += m;
    }
    out[i] = acc;
  }
}

NumericAtlas::NumericAtlas(int l, RatVector alpha, int degree_bound)
    : l_(l), alpha_(std::move(alpha)), degree_bound_(degree_bound) {
  require_supported_l(l);
  if (alpha_.size() != static_cast<std::size_t>(l + 1)) throw std::invalid_argument("alpha has wrong length");
}

const CompiledField& NumericAtlas::field(const ChartId& c) const {
  const auto key = c.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = fields_.find(key);
    if (it != fields_.end()) return *it->second;
  }
  // reconstruct outside the lock; a concurrent duplicate is harmless
  auto f = std::make_unique<CompiledField>(reconstruct_vector_field(c, alpha_, degree_bound_));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = fields_.emplace(key, std::move(f));
  return *it->second;
}

IntegratorOptions default_options() {
  IntegratorOptions o;
  if (const char* r = std::getenv("WEYLPS_RTOL")) o.rtol = std::strtod(r, nullptr);
  if (const char* a = std::getenv("WEYLPS_ATOL")) o.atol = std::strtod(a, nullptr);
  return o;
}

std::vector<double> to_empty_chart(const NumericAtlas& atlas, const ChartPointT<double>& p) {
  return transition_numeric(p.chart, ChartId::empty(atlas.l()), atlas.alpha(), p.x);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

template <class S>
bool all_finite(const std::vector<S>& x) {
  for (const auto& v : x)
    if (!std::isfinite(std::abs(v))) return false;
  return true;
}

template <class S>
double max_abs(const std::vector<S>& x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

// One step of dx/ds = dir * F(x) with real step h. Returns the scaled error
// norm (infinite if anything overflowed).
template <class S>
struct DP5 {
  const CompiledField* field = nullptr;
  S dir{1.0};
  std::vector<S> k1, k2, k3, k4, k5, k6, k7, tmp;

  void f(const std::vector<S>& x, std::vector<S>& out) {
    (*field)(x, out);
    for (auto& v : out) v *= dir;
  }

  double step(const std::vector<S>& x, double h, std::vector<S>& y, double rtol, double atol) {
    const std::size_t n = x.size();
    tmp.resize(n);
    y.resize(n);
    const auto stage = [&](std::initializer_list<std::pair<double, const std::vector<S>*>> ks) {
      for (std::size_t i = 0; i < n; ++i) {
        S acc = x[i];
        for (const auto& [c, k] : ks) acc += h * c * (*k)[i];
        tmp[i] = acc;
      }
    };
    f(x, k1);
    stage({{a21, &k1}});
    f(tmp, k2);
    stage({{a31, &k1}, {a32, &k2}});
    f(tmp, k3);
    stage({{a41, &k1}, {a42, &k2}, {a43, &k3}});
    f(tmp, k4);
    stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    f(tmp, k5);
    stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    f(tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (!all_finite(y)) return std::numeric_limits<double>::infinity();
    f(y, k7);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const S err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(x[i]), std::abs(y[i]));
      const double r = std::abs(err) / sc;
      acc += r * r;
    }
    const double e = std::sqrt(acc / static_cast<double>(n));
    return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
  }
};

template <class S>
class Runner {
 public:
  Runner(const NumericAtlas& atlas, const IntegratorOptions& opt, ChartPointT<S> p, S t)
      : atlas_(atlas), opt_(opt), p_(std::move(p)), t_(t) {
    if (!all_finite(p_.x)) throw std::invalid_argument("initial point is not finite in its chart");
    maybe_switch(false);
  }

  [[nodiscard]] const ChartPointT<S>& point() const { return p_; }
  [[nodiscard]] S t() const { return t_; }

  long steps = 0;
  long rejected = 0;
  int switches = 0;
  std::vector<TrajectorySampleT<S>> samples;
  std::vector<PoleHint> hints;

  void advance(S target) {
    const S start = t_;
    const double length = std::abs(target - start);
    if (length == 0.0) return;
    const S dir = (target - start) / length;
    double s = 0.0;
    if (h_ <= 0.0) h_ = opt_.initial_step > 0.0 ? opt_.initial_step : initial_step(dir, length);
    double err_prev = 1e-4;
    while (s < length) {
      if (++steps > opt_.max_steps) throw IntegrationError("step limit exceeded");
      const bool last = s + h_ >= length * (1.0 - 1e-15);
      const double h = last ? length - s : h_;
      dp_.field = &atlas_.field(p_.chart);
      dp_.dir = dir;
      const double err = dp_.step(p_.x, h, y_, opt_.rtol, opt_.atol);
      if (err <= 1.0) {
        const auto x_old = p_.x;
        const S t_old = t_;
        p_.x = y_;
        s = last ? length : s + h;
        t_ = last ? target : start + dir * s;
        if constexpr (std::is_same_v<S, double>) {
          if (opt_.detect_poles) watch(x_old, t_old, dir * h);
        }
        samples.push_back({t_, p_});
        const double fac = std::clamp(0.9 * std::pow(err, -0.7 / 5) * std::pow(err_prev, 0.4 / 5), 0.2, 5.0);
        if (!last || h >= h_) h_ = h * (err == 0.0 ? 5.0 : fac);
        err_prev = std::max(err, 1e-4);
        maybe_switch(false);
      } else {
        ++rejected;
        h_ = h * std::max(0.2, std::isfinite(err) ? 0.9 * std::pow(err, -0.2) : 0.2);
        if (h_ < 1e-14 * std::max(1.0, std::abs(t_))) {
          if (!maybe_switch(true)) throw IntegrationError("stiff/singular configuration");
          h_ = 1e-8 * std::max(1.0, length);
        }
      }
    }
  }

  // Chart switching with hysteresis. In rescue mode (step-size underflow) any
  // chart with a smaller score is accepted. Returns true if the chart changed.
  bool maybe_switch(bool rescue) {
    const double score = max_abs(p_.x);
    if (!rescue && score <= opt_.switch_threshold) return false;
    const auto health = chart_health(p_, atlas_.alpha());
    if (health.recommended == p_.chart) return false;
    const double target = health.recommended_score;
    const bool ok = target < opt_.switch_threshold / opt_.hysteresis || target < score / opt_.hysteresis ||
                    (rescue && target < score);
    if (!ok) return false;
    p_ = {health.recommended, transition_numeric(p_.chart, health.recommended, atlas_.alpha(), p_.x)};
    ++switches;
    samples.push_back({t_, p_});
    return true;
  }

 private:
  double initial_step(S dir, double length) {
    const auto& f = atlas_.field(p_.chart);
    std::vector<S> f0;
    f(p_.x, f0);
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < p_.x.size(); ++i) {
      const double sc = opt_.atol + opt_.rtol * std::abs(p_.x[i]);
      d0 = std::max(d0, std::abs(p_.x[i]) / sc);
      d1 = std::max(d1, std::abs(f0[i]) / sc);
    }
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    std::vector<S> x1(p_.x.size()), f1;
    for (std::size_t i = 0; i < x1.size(); ++i) x1[i] = p_.x[i] + h0 * dir * f0[i];
    f(x1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
      const double sc = opt_.atol + opt_.rtol * std::abs(p_.x[i]);
      d2 = std::max(d2, std::abs(f1[i] - f0[i]) / sc / h0);
    }
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
    const double h = std::min(100 * h0, h1);
    return std::isfinite(h) && h > 0.0 ? std::min(h, length) : std::min(1e-6, length);
  }

  void watch(const std::vector<S>& x_old, S t_old, S h) {
    if (p_.chart.is_empty()) return;
    std::vector<double> fa, fb;
    try {
      fa = transition_numeric(p_.chart, ChartId::empty(atlas_.l()), atlas_.alpha(), x_old);
      fb = transition_numeric(p_.chart, ChartId::empty(atlas_.l()), atlas_.alpha(), p_.x);
    } catch (const SingularError&) {
      // an endpoint sits exactly on the polar locus; the neighbouring step catches it
      return;
    }
    for (std::size_t j = 0; j < fa.size(); ++j) {
      if (!(std::abs(fa[j]) >= 1.0 && std::abs(fb[j]) >= 1.0) || (fa[j] > 0.0) == (fb[j] > 0.0)) continue;
      hints.push_back({{p_.chart, x_old}, t_old, h, static_cast<int>(j)});
    }
  }

  const NumericAtlas& atlas_;
  const IntegratorOptions& opt_;
  ChartPointT<S> p_;
  S t_;
  double h_ = 0.0;
  DP5<S> dp_;
  std::vector<S> y_;
};

// A single accepted-size DP5 step from x (signed step h).
std::vector<double> sub_step(const NumericAtlas& atlas, const ChartPointT<double>& p, double h,
                             const IntegratorOptions& opt) {
  DP5<double> dp;
  dp.field = &atlas.field(p.chart);
  dp.dir = h < 0.0 ? -1.0 : 1.0;
  std::vector<double> y;
  if (h == 0.0) return p.x;
  dp.step(p.x, std::abs(h), y, opt.rtol, opt.atol);
  return y;
}

// Adaptive integration over a short time dt that stays in the chart of p.
std::vector<double> short_flow(const NumericAtlas& atlas, const ChartPointT<double>& p, double dt,
                               const IntegratorOptions& opt) {
  IntegratorOptions o = opt;
  o.detect_poles = false;
  o.output_times.clear();
  o.switch_threshold = std::numeric_limits<double>::infinity();
  o.initial_step = std::abs(dt) / 8;
  o.max_steps = 20'000;  // a chart that turns singular on the way fails fast
  return integrate(atlas, p, 0.0, dt, o).back().point.x;
}

// The same instant expressed in another chart. Transition maps are singular
// on the exceptional locus, so the point is moved off it by a short flow,
// mapped, and flowed back.
ChartPointT<double> at_same_time(const NumericAtlas& atlas, const ChartPointT<double>& p, const ChartId& target,
                                 const IntegratorOptions& opt) {
  if (p.chart == target) return p;
  for (double delta : {1e-2, -1e-2}) {
    try {
      const auto q = transition_numeric(p.chart, target, atlas.alpha(), short_flow(atlas, p, delta, opt));
      if (!all_finite(q)) continue;
      auto back = short_flow(atlas, {target, q}, -delta, opt);
      if (all_finite(back)) return {target, std::move(back)};
    } catch (const SingularError&) {
    } catch (const IntegrationError&) {
    }
  }
  throw SingularError("outside transition domain");
}

bool same_pole(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)); }

// Empty-chart values after a real flow with chart switching and no detection.
std::vector<double> flow_to_empty(const NumericAtlas& atlas, const ChartPointT<double>& p, double dt,
                                  const IntegratorOptions& opt) {
  IntegratorOptions o = opt;
  o.detect_poles = false;
  o.output_times.clear();
  return to_empty_chart(atlas, integrate(atlas, p, 0.0, dt, o).back().point);
}

// Nearest class in max norm.
std::pair<ResidueClass, double> nearest_class(int l, const std::vector<double>& r) {
  ResidueClass out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cls : all_classes(l)) {
    double d = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) d = std::max(d, std::abs(r[i] - cls.residue[i].to_double()));
    if (d < best) {
      best = d;
      out = cls;
    }
  }
  return {out, best};
}

// Poles closer than this cannot be told apart from one singularity of higher
// codimension: an O(rtol) perturbation of a solution through a codimension-2
// stratum splits its pole into a cluster of width O(rtol^(1/2)) or below.
double cluster_radius(const IntegratorOptions& opt) { return 10.0 * std::sqrt(std::max(opt.rtol, 1e-16)); }

// Replaces a cluster of real events by one event classified at a scale well
// above the cluster width, where the residue seen is the cluster total
// (including poles off the real axis). Returns nullopt if that total is not a
// class.
std::optional<PoleEvent> merge_cluster(const NumericAtlas& atlas, const std::vector<PoleEvent>& members,
                                       const IntegratorOptions& opt) {
  const double lo = members.front().t0, hi = members.back().t0;
  const double tc = (lo + hi) / 2;
  const double eps = std::max(1e-3, 20 * (hi - lo));
  const auto& p = members.front().point;
  const double shift = tc - lo;
  std::vector<double> rich;
  try {
    const auto R = [&](double e) {
      const auto fp = flow_to_empty(atlas, p, shift + e, opt);
      const auto fm = flow_to_empty(atlas, p, shift - e, opt);
      std::vector<double> r(fp.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = e * (fp[i] - fm[i]) / 2;
      return r;
    };
    const auto big = R(4 * eps), small = R(eps);
    for (std::size_t i = 0; i < big.size(); ++i) rich.push_back((16 * small[i] - big[i]) / 15);
  } catch (const SingularError&) {
    return std::nullopt;
  } catch (const IntegrationError&) {
    return std::nullopt;
  }
  auto [cls, err] = nearest_class(atlas.l(), rich);
  if (err > kPoleClassTolerance || cls.kind == PoleKind::Holomorphic) return std::nullopt;
  PoleEvent ev;
  ev.t0 = tc;
  ev.residue_estimate = std::move(rich);
  ev.type = std::move(cls);
  ev.local_error = err;
  ev.point = p;
  try {
    IntegratorOptions o = opt;
    o.detect_poles = false;
    o.output_times.clear();
    const auto at = integrate(atlas, p, lo, tc, o).back().point;
    const auto rec = chart_health(at, atlas.alpha()).recommended;
    ev.point = {rec, transition_numeric(at.chart, rec, atlas.alpha(), at.x)};
    ev.point = at_same_time(atlas, ev.point, stratum_chart(stratum_of_class(ev.type)).chart, opt);
  } catch (const SingularError&) {
  } catch (const IntegrationError&) {
  }
  return ev;
}

std::vector<PoleEvent> merge_clusters(const NumericAtlas& atlas, std::vector<PoleEvent> events,
                                      const IntegratorOptions& opt) {
  std::sort(events.begin(), events.end(), [](const PoleEvent& a, const PoleEvent& b) { return a.t0 < b.t0; });
  const double width = cluster_radius(opt);
  std::vector<PoleEvent> out;
  std::size_t i = 0;
  while (i < events.size()) {
    std::size_t j = i + 1;
    while (j < events.size() && events[j].t0 - events[j - 1].t0 < width) ++j;
    if (j - i > 1) {
      const std::vector<PoleEvent> members(events.begin() + static_cast<std::ptrdiff_t>(i),
                                           events.begin() + static_cast<std::ptrdiff_t>(j));
      if (auto merged = merge_cluster(atlas, members, opt)) {
        out.push_back(std::move(*merged));
        i = j;
        continue;
      }
    }
    out.insert(out.end(), events.begin() + static_cast<std::ptrdiff_t>(i),
               events.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<PoleEvent> locate_and_classify_pole(const NumericAtlas& atlas, const PoleHint& hint,
                                                  const IntegratorOptions& opt) {
  const auto& alpha = atlas.alpha();
  const auto x_at = [&](double tau) { return sub_step(atlas, hint.start, tau, opt); };
  const auto g_at = [&](double tau) {
    try {
      return 1.0 / to_empty_chart(atlas, {hint.start.chart, x_at(tau)})[static_cast<std::size_t>(hint.component)];
    } catch (const SingularError&) {
      return 0.0;
    }
  };
  // a zero of f_j also flips the sign; 1/f_j must stay bounded across the step
  double a = 0.0, b = hint.h;
  double za = g_at(a), zb = g_at(b);
  const double mid = g_at(hint.h / 2);
  if (za * zb > 0.0 || std::abs(mid) > 2.0 * std::max(std::abs(za), std::abs(zb))) return std::nullopt;
  // Illinois-modified regula falsi on [0, h]
  int side = 0;
  double c = b;
  for (int it = 0; it < 200; ++it) {
    c = (a * zb - b * za) / (zb - za);
    const double zc = g_at(c);
    if (zc == 0.0) break;
    if (zc * zb < 0.0) {
      a = b;
      za = zb;
      side = 0;
    } else if (side == 1) {
      za *= 0.5;
    } else {
      side = 1;
    }
    b = c;
    zb = zc;
    if (std::abs(b - a) < 4e-16 * std::max(1.0, std::abs(hint.t + c))) break;
  }
  PoleEvent ev;
  ev.t0 = hint.t + c;
  const ChartPointT<double> at{hint.start.chart, x_at(c)};
  const auto health = chart_health(at, alpha);
  ev.point = {health.recommended, transition_numeric(at.chart, health.recommended, alpha, at.x)};

  // symmetric samples: R(eps) = eps (f(t0+eps) - f(t0-eps)) / 2 = Res + O(eps^2).
  // eps shrinks geometrically; the Richardson pair that agrees best wins, so
  // a neighbouring pole closer than the largest eps does not spoil the value.
  const auto R = [&](double eps) {
    const auto fp = to_empty_chart(atlas, {ev.point.chart, short_flow(atlas, ev.point, eps, opt)});
    const auto fm = to_empty_chart(atlas, {ev.point.chart, short_flow(atlas, ev.point, -eps, opt)});
    std::vector<double> r(fp.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = eps * (fp[i] - fm[i]) / 2;
    return r;
  };
  std::vector<std::vector<double>> rich;
  std::vector<double> prev = R(1e-3);
  for (int k = 1; k <= 5; ++k) {
    auto cur = R(1e-3 / std::pow(4.0, k));
    std::vector<double> a(cur.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (16 * cur[i] - prev[i]) / 15;
    rich.push_back(std::move(a));
    prev = std::move(cur);
  }
  double spread = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rich.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < rich[k].size(); ++i) d = std::max(d, std::abs(rich[k][i] - rich[k - 1][i]));
    if (d < spread) {
      spread = d;
      ev.residue_estimate = rich[k];
    }
  }
  auto [cls, best] = nearest_class(atlas.l(), ev.residue_estimate);
  ev.type = std::move(cls);
  ev.local_error = best;
  if (best > kPoleClassTolerance) throw IntegrationError("unclassified pole");
  if (ev.type.kind == PoleKind::Holomorphic) return std::nullopt;
  // report the point in the chart where the family's stratum is read off
  try {
    ev.point = at_same_time(atlas, ev.point, stratum_chart(stratum_of_class(ev.type)).chart, opt);
  } catch (const SingularError&) {
  }
  return ev;
}

Trajectory integrate(const NumericAtlas& atlas, const ChartPointT<double>& init, double t0, double t1,
                     const IntegratorOptions& opt) {
  if (init.chart.l != atlas.l()) throw std::invalid_argument("chart belongs to another system");
  Trajectory tr;
  tr.alpha = atlas.alpha();
  tr.rtol = opt.rtol;
  tr.atol = opt.atol;
  tr.samples.push_back({t0, init});
  Runner<double> run(atlas, opt, init, t0);
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  std::vector<double> stops;
  for (double t : opt.output_times)
    if ((t - t0) * dir >= 0.0 && (t1 - t) * dir >= 0.0) stops.push_back(t);
  std::sort(stops.begin(), stops.end(), [dir](double a, double b) { return a * dir < b * dir; });
  stops.push_back(t1);
  for (std::size_t k = 0; k < stops.size(); ++k) {
    run.advance(stops[k]);
    if (k + 1 < stops.size()) tr.outputs.push_back({stops[k], run.point()});
  }
  // the switch performed at construction is recorded after the initial sample
  tr.samples.insert(tr.samples.end(), run.samples.begin(), run.samples.end());
  tr.steps = run.steps;
  tr.rejected = run.rejected;
  tr.chart_switches = run.switches;
  for (const auto& h : run.hints) {
    auto ev = locate_and_classify_pole(atlas, h, opt);
    if (!ev) continue;
    const bool dup =
        std::any_of(tr.events.begin(), tr.events.end(), [&](const PoleEvent& e) { return same_pole(e.t0, ev->t0); });
    if (!dup) tr.events.push_back(std::move(*ev));
  }
  tr.events = merge_clusters(atlas, std::move(tr.events), opt);
  std::sort(tr.events.begin(), tr.events.end(),
            [dir](const PoleEvent& a, const PoleEvent& b) { return a.t0 * dir < b.t0 * dir; });
  return tr;
}

ComplexTrajectory integrate_contour(const NumericAtlas& atlas, const ChartPointT<std::complex<double>>& init,
                                    const std::vector<std::complex<double>>& contour, const IntegratorOptions& opt) {
  if (contour.empty()) throw std::invalid_argument("empty contour");
  ComplexTrajectory tr;
  tr.alpha = atlas.alpha();
  IntegratorOptions o = opt;
  o.detect_poles = false;
  Runner<std::complex<double>> run(atlas, o, init, contour.front());
  tr.vertices.push_back({contour.front(), run.point()});
  for (std::size_t k = 1; k < contour.size(); ++k) {
    run.advance(contour[k]);
    tr.vertices.push_back({contour[k], run.point()});
  }
  tr.steps = run.steps;
  tr.chart_switches = run.switches;
  return tr;
}

LaurentFamily local_family(const NumericAtlas& atlas, const PoleEvent& event, int order,
                           const IntegratorOptions& opt) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  const auto& alpha = atlas.alpha();
  const auto& cls = event.type;
  const auto sc = stratum_chart(stratum_of_class(cls));
  auto h = at_same_time(atlas, event.point, sc.chart, opt).x;
  // the vanishing coordinates carry no information and are ignored
  for (int k : sc.zero_coords) h[static_cast<std::size_t>(k)] = 0.0;
  RatVector hr;
  for (double v : h) hr.push_back(Rat::from_double(v));
  return expand(ParamPoint(atlas.l(), alpha), cls, correspondence_free_constants(cls, alpha, hr), order);
}

LocalDeviation local_expansion_deviation(const NumericAtlas& atlas, const PoleEvent& event, int order,
                                         double radius, const IntegratorOptions& opt, int vertices) {
  if (!(radius > 0.0) || radius > 0.5) throw std::invalid_argument("disc radius must lie in (0, 0.5]");
  const auto fam = local_family(atlas, event, order, opt);

  IntegratorOptions o = opt;
  o.detect_poles = false;
  o.output_times.clear();
  const auto back = integrate(atlas, event.point, event.t0, event.t0 - radius, o);
  const auto& start = back.back().point;
  ChartPointT<std::complex<double>> zstart{start.chart, {}};
  for (double v : start.x) zstart.x.emplace_back(v, 0.0);
  const double pi = std::acos(-1.0);
  std::vector<std::complex<double>> contour;
  for (int k = 0; k <= vertices; ++k)
    contour.push_back(event.t0 + std::polar(radius, pi + 2 * pi * k / vertices));
  contour.front() = event.t0 - radius;
  const auto ring = integrate_contour(atlas, zstart, contour, o);

  LocalDeviation worst;
  for (const auto& v : ring.vertices) {
    const auto f = transition_numeric(v.point.chart, ChartId::empty(atlas.l()), atlas.alpha(), v.point.x);
    const std::complex<double> T = v.t - event.t0;
    double dev = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto s = fam.f[i].evaluate(T);
      dev = std::max(dev, std::abs(f[i] - s));
      scale = std::max(scale, std::abs(s));
    }
    worst.absolute = std::max(worst.absolute, dev);
    worst.relative = std::max(worst.relative, dev / scale);
  }
  return worst;
}

double compare_local_expansion(const NumericAtlas& atlas, const PoleEvent& event, int order, double radius,
                               const IntegratorOptions& opt, int vertices) {
  return local_expansion_deviation(atlas, event, order, radius, opt, vertices).relative;
}

double coefficient_radius(const LaurentFamily& family, int from) {
  double rho = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= family.l(); ++i)
    for (int n = std::max(from, 1); n <= family.order; ++n) {
      const double c = std::abs(family.coeff(n, i).to_double());
      if (c > 0.0) rho = std::min(rho, std::pow(c, -1.0 / n));
    }
  return rho;
}

double crossing_reversibility(const NumericAtlas& atlas, const PoleEvent& event, double span,
                              const IntegratorOptions& opt) {
  IntegratorOptions o = opt;
  o.detect_poles = false;
  o.output_times.clear();
  const auto start = integrate(atlas, event.point, event.t0, event.t0 - span, o).back().point;
  const auto ahead = integrate(atlas, start, event.t0 - span, event.t0 + span, o).back().point;
  const auto again = integrate(atlas, ahead, event.t0 + span, event.t0 - span, o).back().point;
  const auto x = transition_numeric(again.chart, start.chart, atlas.alpha(), again.x);
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - start.x[i]));
  return d / std::max(1.0, max_abs(start.x));
}

}  // namespace weylps
