#include "weylps/system.hpp"

#include <sstream>

namespace weylps {

void require_even_l(int l) {
  if (l < 2 || l % 2 != 0) throw std::invalid_argument("l must be even and >= 2 (got " + std::to_string(l) + ")");
}

void require_supported_l(int l) {
  if (l != 2 && l != 4) throw std::invalid_argument("only l = 2 and l = 4 are supported (got " + std::to_string(l) + ")");
}

ParamPoint::ParamPoint(int l_, RatVector alpha_) : l(l_), alpha(std::move(alpha_)) {
  require_even_l(l);
  if (alpha.size() != static_cast<std::size_t>(l + 1)) {
    throw std::invalid_argument("expected " + std::to_string(l + 1) + " parameters, got " +
                                std::to_string(alpha.size()));
  }
  Rat s(0);
  for (const auto& a : alpha) s += a;
  if (s != Rat(1)) throw std::invalid_argument("parameters must sum to 1 (sum is " + s.str() + ")");
}

ParamPoint ParamPoint::unchecked(int l, RatVector alpha) {
  ParamPoint p;
  p.l = l;
  p.alpha = std::move(alpha);
  return p;
}

std::vector<double> ParamPoint::to_double() const {
  std::vector<double> out;
  out.reserve(alpha.size());
  for (const auto& a : alpha) out.push_back(a.to_double());
  return out;
}

ParamPoint parse_params(int l, const std::string& text) {
  RatVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(Rat::parse(item));
  return ParamPoint(l, std::move(v));
}

std::vector<std::vector<int>> cartan_matrix(int l) {
  require_even_l(l);
  std::vector<std::vector<int>> a(static_cast<std::size_t>(l + 1), std::vector<int>(static_cast<std::size_t>(l + 1)));
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= l; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cartan(l, i, j);
  return a;
}

std::vector<std::vector<int>> orientation_matrix(int l) {
  require_even_l(l);
  std::vector<std::vector<int>> u(static_cast<std::size_t>(l + 1), std::vector<int>(static_cast<std::size_t>(l + 1)));
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= l; ++j) u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = orientation(l, i, j);
  return u;
}

bool sum_identity_check(const RatVector& alpha, const RatVector& f) {
  const auto d = vector_field(alpha, f);
  Rat s(0);
  for (const auto& v : d) s += v;
  return s == Rat(1);
}

}  // namespace weylps
