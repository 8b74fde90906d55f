#include "weylps/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace weylps {

namespace {

int clamp_order(long long n) {
  if (n >= LaurentSeries::kExact) return LaurentSeries::kExact;
  return static_cast<int>(n);
}

long long order_or_inf(const LaurentSeries& s) {
  return s.is_exact() ? (1LL << 40) : s.order();
}

long long valuation_or_inf(const LaurentSeries& s) {
  if (s.is_zero()) return s.is_exact() ? (1LL << 40) : s.order() + 1LL;
  return s.valuation();
}

}  // namespace

LaurentSeries::LaurentSeries(int start, std::vector<Rat> coeffs, int order)
    : start_(start), coeffs_(std::move(coeffs)), order_(std::min(order, kExact)) {
  normalize();
}

LaurentSeries LaurentSeries::constant(const Rat& c, int order) { return LaurentSeries(0, {c}, order); }

LaurentSeries LaurentSeries::monomial(const Rat& c, int exponent, int order) {
  return LaurentSeries(exponent, {c}, order);
}

LaurentSeries LaurentSeries::linear(const Rat& a, const Rat& b) { return LaurentSeries(0, {a, b}, kExact); }

void LaurentSeries::normalize() {
  if (!is_exact()) {
    const long long keep = static_cast<long long>(order_) - start_ + 1;
    if (keep <= 0) {
      coeffs_.clear();
    } else if (static_cast<long long>(coeffs_.size()) > keep) {
      coeffs_.resize(static_cast<std::size_t>(keep));
    }
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    start_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    start_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int LaurentSeries::valuation() const {
  if (coeffs_.empty()) return is_exact() ? kExact : order_ + 1;
  return start_;
}

int LaurentSeries::pole_order() const {
  if (coeffs_.empty()) return 0;
  return std::max(0, -start_);
}

Rat LaurentSeries::coeff(int n) const {
  if (n > order_) throw std::out_of_range("series coefficient beyond truncation order");
  if (coeffs_.empty() || n < start_ || n > last_exponent()) return Rat(0);
  return coeffs_[static_cast<std::size_t>(n - start_)];
}

Rat LaurentSeries::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero series");
  return coeffs_.front();
}

LaurentSeries LaurentSeries::truncated(int order) const {
  LaurentSeries r = *this;
  r.order_ = std::min(order_, order);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<Rat> out;
  out.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * Rat(start_ + static_cast<int>(k)));
  }
  return LaurentSeries(start_ - 1, std::move(out), is_exact() ? kExact : order_ - 1);
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r = *this;
  if (!r.coeffs_.empty()) r.start_ += k;
  if (!is_exact()) r.order_ = order_ + k;
  return r;
}

LaurentSeries LaurentSeries::inverse(int relative_order) const {
  if (coeffs_.empty()) throw SingularError("inverse of a series with no nonzero known coefficient");
  const int v = start_;
  const Rat inv_lead = Rat(1) / coeffs_.front();
  if (is_exact() && coeffs_.size() == 1) return monomial(inv_lead, -v);
  const int rel = is_exact() ? relative_order : order_ - v;
  std::vector<Rat> b(static_cast<std::size_t>(rel) + 1);
  b[0] = inv_lead;
  for (int k = 1; k <= rel; ++k) {
    Rat acc(0);
    const int jmax = std::min<int>(k, static_cast<int>(coeffs_.size()) - 1);
    for (int j = 1; j <= jmax; ++j) {
      const Rat& a = coeffs_[static_cast<std::size_t>(j)];
      if (!a.is_zero()) acc += a * b[static_cast<std::size_t>(k - j)];
    }
    b[static_cast<std::size_t>(k)] = -(acc * inv_lead);
  }
  return LaurentSeries(-v, std::move(b), -v + rel);
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  const int order = std::min(order_, o.order_);
  if (o.coeffs_.empty()) {
    order_ = order;
    normalize();
    return *this;
  }
  if (coeffs_.empty()) {
    *this = LaurentSeries(o.start_, o.coeffs_, order);
    return *this;
  }
  const int lo = std::min(start_, o.start_);
  int hi = std::max(last_exponent(), o.last_exponent());
  if (order < kExact) hi = std::min(hi, order);
  if (hi < lo) {
    *this = zero(order);
    return *this;
  }
  std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const int e = start_ + static_cast<int>(k);
    if (e <= hi) out[static_cast<std::size_t>(e - lo)] += coeffs_[k];
  }
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
    const int e = o.start_ + static_cast<int>(k);
    if (e <= hi) out[static_cast<std::size_t>(e - lo)] += o.coeffs_[k];
  }
  *this = LaurentSeries(lo, std::move(out), order);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const long long t1 = order_or_inf(a) + valuation_or_inf(b);
  const long long t2 = order_or_inf(b) + valuation_or_inf(a);
  const int order = clamp_order(std::min(t1, t2));
  if (a.coeffs_.empty() || b.coeffs_.empty()) return LaurentSeries::zero(order);
  const int lo = a.start_ + b.start_;
  int hi = a.last_exponent() + b.last_exponent();
  if (order < LaurentSeries::kExact) hi = std::min(hi, order);
  if (hi < lo) return LaurentSeries::zero(order);
  std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    const int ei = a.start_ + static_cast<int>(i);
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      const int e = ei + b.start_ + static_cast<int>(j);
      if (e > hi) break;
      if (b.coeffs_[j].is_zero()) continue;
      out[static_cast<std::size_t>(e - lo)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return LaurentSeries(lo, std::move(out), order);
}

LaurentSeries& LaurentSeries::operator*=(const LaurentSeries& o) {
  *this = *this * o;
  return *this;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  const int order = std::min(order_, o.order_);
  int lo = std::min(coeffs_.empty() ? o.start_ : start_, o.coeffs_.empty() ? start_ : o.start_);
  int hi = std::max(last_exponent(), o.last_exponent());
  if (order < kExact) hi = std::min(hi, order);
  for (int n = lo; n <= hi; ++n) {
    if (coeff(n) != o.coeff(n)) return false;
  }
  return true;
}

std::string LaurentSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const int e = start_ + static_cast<int>(k);
    if (!first) os << " + ";
    first = false;
    os << '(' << coeffs_[k] << ')';
    if (e != 0) os << '*' << var << '^' << e;
  }
  if (first) os << '0';
  if (!is_exact()) os << " + O(" << var << '^' << (order_ + 1) << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.str(); }

}  // namespace weylps
