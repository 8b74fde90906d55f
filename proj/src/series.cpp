#include "weylps/series.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace weylps {

namespace {

struct RepSlot {
  int n;
  int index;
};

std::vector<RepSlot> rep_slots(int l, PoleKind kind) {
  switch (kind) {
    case PoleKind::Holomorphic: {
      std::vector<RepSlot> s;
      for (int i = 0; i <= l; ++i) s.push_back({0, i});
      return s;
    }
    case PoleKind::Single:
      if (l == 2) return {{0, 0}, {2, 1}};
      return {{0, 0}, {0, 2}, {0, 3}, {2, 1}};
    case PoleKind::Pair:
      return {{0, 0}, {2, 1}, {2, 3}};
    case PoleKind::Triple:
      return {{0, 0}, {2, 3}, {4, 2}};
  }
  return {};
}

// G_n^i for the coefficient row c[n] (n >= -1 stored at offset n + 1)
Rat g_coeff(const std::vector<RatVector>& c, int n, int i) { return alternating_sum(c[static_cast<std::size_t>(n + 1)], i); }

}  // namespace

std::string free_name(int n, int index) { return "c" + std::to_string(n) + "^" + std::to_string(index); }

std::vector<FreeSlot> free_slots(const ResidueClass& cls) {
  std::vector<FreeSlot> out;
  for (const auto& s : rep_slots(cls.l, cls.kind)) {
    const int idx = wrap(s.index + cls.rotation, cls.l + 1);
    out.push_back({free_name(s.n, idx), s.n, idx});
  }
  return out;
}

RatVector LaurentFamily::residue() const {
  RatVector r;
  for (const auto& s : f) r.push_back(s.coeff(-1));
  return r;
}

LaurentFamily expand(const ParamPoint& alpha, const ResidueClass& cls, const FreeBindings& free, int order) {
  const int l = cls.l;
  if (alpha.l != l) throw std::invalid_argument("parameter point and residue class disagree on l");
  Rat sum(0);
  for (const auto& a : alpha.alpha) sum += a;
  if (sum != Rat(1)) throw std::invalid_argument("parameters must sum to 1");
  const auto slots = free_slots(cls);
  {
    std::vector<std::string> want, got;
    for (const auto& s : slots) want.push_back(s.name);
    for (const auto& [k, v] : free) got.push_back(k);
    std::sort(want.begin(), want.end());
    if (want != got) {
      std::string msg = "wrong free-constant names for type " + cls.type_label + "; expected {";
      for (std::size_t i = 0; i < want.size(); ++i) msg += (i ? ", " : "") + want[i];
      throw std::invalid_argument(msg + "}");
    }
  }
  if (order < 0) throw std::invalid_argument("series order must be non-negative");

  const std::size_t dim = static_cast<std::size_t>(l + 1);
  std::vector<RatVector> c;
  c.push_back(cls.residue);
  for (int n = 0; n <= order; ++n) {
    RatVector rhs(dim);
    for (int i = 0; i <= l; ++i) {
      Rat acc(0);
      for (int k = 0; k < n; ++k) {
        const Rat& ck = c[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(i)];
        if (!ck.is_zero()) acc += ck * g_coeff(c, n - k - 1, i);
      }
      if (n == 1) acc += alpha.alpha[static_cast<std::size_t>(i)];
      rhs[static_cast<std::size_t>(i)] = acc;
    }
    const RatMatrix p = resonance_matrix(cls.residue, n);
    std::vector<std::optional<Rat>> fixed(dim);
    bool resonant = false;
    for (const auto& s : slots) {
      if (s.n != n) continue;
      fixed[static_cast<std::size_t>(s.index)] = free.at(s.name);
      resonant = true;
    }
    if (!resonant && determinant(p).is_zero()) {
      throw std::logic_error("unexpected resonance at n = " + std::to_string(n) + " for type " + cls.type_label);
    }
    const auto x = solve_with_fixed(p, rhs, fixed);
    if (!x) {
      throw std::logic_error("inconsistent resonant system at n = " + std::to_string(n) + " for type " +
                             cls.type_label);
    }
    c.push_back(*x);
  }

  LaurentFamily fam;
  fam.alpha = alpha;
  fam.cls = cls;
  fam.order = order;
  fam.free = free;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rat> coeffs;
    for (const auto& row : c) coeffs.push_back(row[i]);
    fam.f.emplace_back(-1, std::move(coeffs), order);
  }
  return fam;
}

bool satisfies_recursion(const LaurentFamily& family) {
  const auto rhs = vector_field(family.alpha.alpha, family.f);
  for (std::size_t i = 0; i < family.f.size(); ++i) {
    const LaurentSeries r = family.f[i].derivative() - rhs[i];
    if (!r.is_zero()) return false;
    if (r.order() < family.order - 1) return false;
  }
  return true;
}

LaurentFamily apply_bt_to_family(const GroupWord& word, const LaurentFamily& family) {
  RatVector alpha = family.alpha.alpha;
  std::vector<LaurentSeries> f = family.f;
  for (const auto& g : word.letters()) {
    if (g.kind == Letter::Kind::S && alpha[static_cast<std::size_t>(wrap(g.index, family.l() + 1))].is_zero()) {
      throw std::domain_error("degenerate Bäcklund pivot: alpha_" + std::to_string(g.index) + " = 0");
    }
    f = apply_letter_to_f(g, alpha, f);
    alpha = apply_letter_to_params(g, alpha);
  }
  LaurentFamily out;
  out.alpha = ParamPoint(family.l(), alpha);
  out.f = std::move(f);
  out.order = out.f.front().order();
  for (const auto& s : out.f) out.order = std::min(out.order, s.order());
  for (auto& s : out.f) s = s.truncated(out.order);
  out.cls = classify_family(out);
  return out;
}

ResidueClass classify_residue(int l, const RatVector& residue) {
  for (const auto& c : all_classes(l))
    if (c.residue == residue) return c;
  std::string v;
  for (const auto& r : residue) v += (v.empty() ? "" : ",") + r.str();
  throw std::invalid_argument("not a valid pole type: (" + v + ")");
}

ResidueClass classify_family(const LaurentFamily& family) {
  for (const auto& s : family.f) {
    if (s.pole_order() > 1) throw std::invalid_argument("not a valid pole type: pole of order > 1");
  }
  return classify_residue(family.l(), family.residue());
}

FreeBindings correspondence_free_constants(const ResidueClass& cls, const RatVector& alpha, const RatVector& h) {
  const int l = cls.l;
  const int m = cls.rotation;
  const int n = l + 1;
  auto H = [&](int j) { return h[static_cast<std::size_t>(wrap(j + m, n))]; };
  auto A = [&](int j) { return alpha[static_cast<std::size_t>(wrap(j + m, n))]; };
  auto name = [&](int nn, int idx) { return free_name(nn, wrap(idx + m, n)); };
  const Rat half(1, 2);
  FreeBindings out;
  switch (cls.kind) {
    case PoleKind::Holomorphic:
      for (int i = 0; i < n; ++i) out[free_name(0, i)] = h[static_cast<std::size_t>(i)];
      break;
    case PoleKind::Single: {
      if (l == 2) {
        const Rat k = H(1) + H(2);
        out[name(0, 0)] = half * k;
        out[name(2, 1)] = -H(1) - half * A(1) * k;
      } else {
        const Rat k = H(1) + H(2) - H(3) + H(4);
        out[name(0, 0)] = half * k;
        out[name(2, 1)] = -H(1) - half * A(1) * k;
        out[name(0, 2)] = H(2) - half * k;
        out[name(0, 3)] = H(3);
      }
      break;
    }
    case PoleKind::Pair: {
      const Rat k = H(1) + H(3) + H(4);
      out[name(0, 0)] = half * k;
      out[name(2, 1)] = -H(1) - half * A(1) * k;
      out[name(2, 3)] = -H(3) - half * A(3) * k;
      break;
    }
    case PoleKind::Triple: {
      const Rat k = H(1) + H(2) + H(4);
      const Rat s = A(0) + A(1) + Rat(5) * A(2) + Rat(5) * A(3) + A(4);
      out[name(0, 0)] = half * k;
      out[name(2, 3)] = -half * H(1) + Rat(1, 8) * k;
      out[name(4, 2)] = Rat(1, 9) * H(2) - Rat(1, 18) * A(2) * H(1) + Rat(1, 72) * A(2) * s * k;
      break;
    }
  }
  return out;
}

}  // namespace weylps
