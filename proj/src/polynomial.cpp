#include "weylps/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weylps {

namespace {

int degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void enumerate(std::size_t nvars, int remaining, Exponent& cur, std::size_t pos, std::vector<Exponent>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    enumerate(nvars, remaining - k, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

// Coefficients (in x) of binomial(x - b, k) for k = 0..degree.
std::vector<std::vector<Rat>> shifted_binomials(const Rat& b, int degree) {
  std::vector<std::vector<Rat>> out;
  std::vector<Rat> cur{Rat(1)};
  out.push_back(cur);
  for (int k = 1; k <= degree; ++k) {
    // multiply by (x - b - (k-1)) / k
    const Rat shift = -(b + Rat(k - 1));
    std::vector<Rat> next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] += cur[i] * shift;
    }
    const Rat inv_k(1, k);
    for (auto& c : next) c *= inv_k;
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

const long kOffsetPrimes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069,
                              1087, 1091, 1093, 1097, 1103, 1109, 1117, 1123, 1129, 1151, 1153, 1163};

}  // namespace

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  const int da = degree_of(a);
  const int db = degree_of(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Exponent> out;
  Exponent cur(nvars, 0);
  enumerate(nvars, degree, cur, 0, out);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

ExactPolynomial ExactPolynomial::constant(std::size_t nvars, const Rat& c) {
  ExactPolynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

ExactPolynomial ExactPolynomial::variable(std::size_t nvars, std::size_t i) {
  ExactPolynomial p(nvars);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rat(1));
  return p;
}

int ExactPolynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

Rat ExactPolynomial::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void ExactPolynomial::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent of wrong dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactPolynomial ExactPolynomial::derivative(std::size_t var) const {
  ExactPolynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    d.add_term(f, c * Rat(e[var]));
  }
  return d;
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  ExactPolynomial r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

ExactPolynomial operator*(const Rat& c, const ExactPolynomial& p) {
  ExactPolynomial r(p.nvars_);
  for (const auto& [e, v] : p.terms_) r.add_term(e, c * v);
  return r;
}

std::string ExactPolynomial::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest degree first reads more naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = c;
    if (first) {
      if (c.sign() < 0) {
        os << '-';
        mag = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) mag = -c;
    }
    first = false;
    const bool unit = mag == Rat(1);
    bool wrote = false;
    if (!unit || degree_of(e) == 0) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

CompiledPolynomial::CompiledPolynomial(const ExactPolynomial& p) : nvars_(p.nvars()) {
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(c.to_double());
    for (int k : e) {
      exps_.push_back(static_cast<std::uint8_t>(k));
      max_exp_ = std::max(max_exp_, k);
    }
  }
}

Rat RationalSampler::rational(long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return Rat(num(rng_), den(rng_));
}

RatVector RationalSampler::vector(std::size_t n, long num_bound, long den_bound) {
  RatVector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(rational(num_bound, den_bound));
  return v;
}

Rat RationalSampler::generic_offset() {
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kOffsetPrimes) - 1);
  const long p = kOffsetPrimes[pick(rng_)];
  long q = kOffsetPrimes[pick(rng_)];
  while (q == p) q = kOffsetPrimes[pick(rng_)];
  std::uniform_int_distribution<long> num(1, p * q - 1);
  long n = num(rng_);
  while (n % p == 0 || n % q == 0) n = num(rng_);
  return Rat(n, p * q) + rational(3, 1);
}

RatVector RationalSampler::unit_sum(std::size_t n, long num_bound, long den_bound) {
  RatVector v = vector(n - 1, num_bound, den_bound);
  Rat rest(1);
  for (const auto& x : v) rest -= x;
  v.push_back(rest);
  return v;
}

double RationalSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

ExactPolynomial interpolate_polynomial(const std::vector<PolySample>& samples, std::size_t nvars, int degree_bound) {
  const auto monos = monomials_up_to(nvars, degree_bound);
  if (samples.size() < monos.size()) {
    throw InterpolationError("need at least " + std::to_string(monos.size()) + " samples, got " +
                             std::to_string(samples.size()));
  }
  RatMatrix a(samples.size(), monos.size());
  RatVector b(samples.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto& s = samples[r];
    if (s.point.size() != nvars) throw std::invalid_argument("sample point of wrong dimension");
    for (std::size_t c = 0; c < monos.size(); ++c) {
      Rat m(1);
      for (std::size_t i = 0; i < nvars; ++i) m *= pow(s.point[i], monos[c][i]);
      a(r, c) = m;
    }
    b[r] = s.value;
  }
  if (rank(a) < monos.size()) throw InterpolationError("samples not in general position");
  const LinearSolution sol = solve_linear(a, b);
  if (!sol.consistent) {
    throw InterpolationError("value function is not polynomial of degree <= " + std::to_string(degree_bound));
  }
  ExactPolynomial p(nvars);
  for (std::size_t c = 0; c < monos.size(); ++c) p.add_term(monos[c], sol.x[c]);
  return p;
}

std::vector<ExactPolynomial> interpolate_polynomial_map(const RatMap& f, std::size_t nvars, std::size_t nout,
                                                        int degree_bound, RationalSampler& sampler,
                                                        int verify_points) {
  const int D = degree_bound;
  const auto pts = monomials_up_to(nvars, D);
  // dense index of lattice offsets a with |a| <= D
  std::vector<std::size_t> stride(nvars, 1);
  for (std::size_t i = 1; i < nvars; ++i) stride[i] = stride[i - 1] * static_cast<std::size_t>(D + 1);
  const std::size_t dense = stride.back() * static_cast<std::size_t>(D + 1);
  std::vector<int> slot(dense, -1);
  auto key = [&](const Exponent& a) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < nvars; ++i) k += stride[i] * static_cast<std::size_t>(a[i]);
    return k;
  };
  for (std::size_t p = 0; p < pts.size(); ++p) slot[key(pts[p])] = static_cast<int>(p);

  RatVector base;
  std::vector<std::vector<Rat>> g;  // g[out][point]
  constexpr int kAttempts = 6;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kAttempts) throw SingularError("could not place interpolation lattice at regular points");
    base.clear();
    for (std::size_t i = 0; i < nvars; ++i) base.push_back(sampler.generic_offset());
    g.assign(nout, std::vector<Rat>(pts.size()));
    try {
      for (std::size_t p = 0; p < pts.size(); ++p) {
        RatVector x = base;
        for (std::size_t i = 0; i < nvars; ++i) x[i] += Rat(pts[p][i]);
        const RatVector y = f(x);
        if (y.size() != nout) throw std::invalid_argument("map returned wrong number of components");
        for (std::size_t o = 0; o < nout; ++o) g[o][p] = y[o];
      }
      break;
    } catch (const SingularError&) {
      continue;
    }
  }

  // forward differences along each axis
  for (std::size_t j = 0; j < nvars; ++j) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a][j] > pts[b][j]; });
    for (int r = 1; r <= D; ++r) {
      for (std::size_t p : order) {
        if (pts[p][j] < r) break;
        Exponent prev = pts[p];
        prev[j] -= 1;
        const auto q = static_cast<std::size_t>(slot[key(prev)]);
        for (std::size_t o = 0; o < nout; ++o) g[o][p] -= g[o][q];
      }
    }
  }

  // binomial basis in (x - base) -> monomial basis in x, one axis at a time
  for (std::size_t j = 0; j < nvars; ++j) {
    const auto m = shifted_binomials(base[j], D);
    std::vector<std::vector<Rat>> next(nout, std::vector<Rat>(pts.size()));
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const int k = pts[p][j];
      for (int e = 0; e <= k; ++e) {
        const Rat& c = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)];
        if (c.is_zero()) continue;
        Exponent target = pts[p];
        target[j] = e;
        const auto q = static_cast<std::size_t>(slot[key(target)]);
        for (std::size_t o = 0; o < nout; ++o)
          if (!g[o][p].is_zero()) next[o][q] += g[o][p] * c;
      }
    }
    g = std::move(next);
  }

  std::vector<ExactPolynomial> out(nout, ExactPolynomial(nvars));
  for (std::size_t o = 0; o < nout; ++o)
    for (std::size_t p = 0; p < pts.size(); ++p) out[o].add_term(pts[p], g[o][p]);

  int checked = 0;
  int tries = 0;
  while (checked < verify_points) {
    if (++tries > 20 * (verify_points + 1)) throw SingularError("no regular verification points found");
    const RatVector x = sampler.vector(nvars, 40, 17);
    RatVector y;
    try {
      y = f(x);
    } catch (const SingularError&) {
      continue;
    }
    for (std::size_t o = 0; o < nout; ++o) {
      if (out[o].evaluate(x) != y[o]) {
        throw InterpolationError("value function is not polynomial of degree <= " + std::to_string(D));
      }
    }
    ++checked;
  }
  return out;
}

}  // namespace weylps
