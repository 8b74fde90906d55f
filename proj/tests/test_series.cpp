#include "doctest.h"
#include "printed_series.hpp"
#include "weylps/polynomial.hpp"
#include "weylps/series.hpp"

using namespace weylps;

namespace {

ResidueClass class_by_label(int l, const std::string& label) {
  for (const auto& c : all_classes(l))
    if (c.type_label == label) return c;
  FAIL("no class " << label);
  return {};
}

FreeBindings random_bindings(const ResidueClass& cls, RationalSampler& rs) {
  FreeBindings fb;
  for (const auto& s : free_slots(cls)) fb[s.name] = rs.rational();
  return fb;
}

void check_table(const LaurentFamily& fam, const printed::Table& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& [n, v] : t[i]) {
      INFO("component " << i << " order " << n);
      CHECK(fam.coeff(n, static_cast<int>(i)) == v);
    }
}

}  // namespace

TEST_CASE("free slot naming") {
  auto names = [](const ResidueClass& c) {
    std::vector<std::string> out;
    for (const auto& s : free_slots(c)) out.push_back(s.name);
    return out;
  };
  using S = std::vector<std::string>;
  CHECK(names(class_by_label(2, "(1)")) == S{"c0^0", "c2^1"});
  CHECK(names(class_by_label(4, "(1)")) == S{"c0^0", "c0^2", "c0^3", "c2^1"});
  CHECK(names(class_by_label(4, "(13)")) == S{"c0^0", "c2^1", "c2^3"});
  CHECK(names(class_by_label(4, "(132)")) == S{"c0^0", "c2^3", "c4^2"});
  CHECK(names(class_by_label(4, "(2)")) == S{"c0^1", "c0^3", "c0^4", "c2^2"});
  CHECK(names(class_by_label(4, "(∅)")).size() == 5);
}

TEST_CASE("reference examples for expand") {
  const ParamPoint a2(2, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
  const auto fam = expand(a2, class_by_label(2, "(1)"), {{"c0^0", Rat(0)}, {"c2^1", Rat(0)}});
  CHECK(fam.coeff(1, 0) == Rat(2, 3));
  CHECK(fam.coeff(1, 1) == -Rat(1, 4));

  RationalSampler rs(3);
  for (int k = 0; k < 5; ++k) {
    const ParamPoint a(2, rs.unit_sum(3));
    const Rat c21 = rs.rational();
    const auto g = expand(a, class_by_label(2, "(1)"), {{"c0^0", rs.rational()}, {"c2^1", c21}});
    CHECK(g.coeff(1, 1) == -a.alpha[1]);
    CHECK(g.coeff(2, 1) == c21);
  }

  const ParamPoint a4(4, RatVector(5, Rat(1, 5)));
  const auto f13 = expand(a4, class_by_label(4, "(13)"),
                          {{"c0^0", Rat(1)}, {"c2^1", Rat(2)}, {"c2^3", Rat(-1, 3)}});
  CHECK(f13.coeff(1, 2) == Rat(1, 15));
  CHECK(f13.coeff(2, 2) == Rat(0));
  CHECK(f13.coeff(-1, 2) == Rat(0));
}

TEST_CASE("printed expansions") {
  RationalSampler rs(17);
  for (int trial = 0; trial < 10; ++trial) {
    const ParamPoint a2(2, rs.unit_sum(3));
    const auto c1 = class_by_label(2, "(1)");
    const auto fb2 = random_bindings(c1, rs);
    check_table(expand(a2, c1, fb2), printed::a2_type1(a2.alpha, fb2));

    const ParamPoint a4(4, rs.unit_sum(5));
    const auto t1 = class_by_label(4, "(1)");
    const auto fb1 = random_bindings(t1, rs);
    check_table(expand(a4, t1, fb1), printed::a4_type1(a4.alpha, fb1));

    const auto t13 = class_by_label(4, "(13)");
    const auto fb13 = random_bindings(t13, rs);
    check_table(expand(a4, t13, fb13), printed::a4_type13(a4.alpha, fb13));

    const auto t132 = class_by_label(4, "(132)");
    const auto fb132 = random_bindings(t132, rs);
    check_table(expand(a4, t132, fb132), printed::a4_type132(a4.alpha, fb132));
  }
}

TEST_CASE("every family satisfies the recursion") {
  RationalSampler rs(23);
  for (int l : {2, 4}) {
    for (const auto& cls : all_classes(l)) {
      const ParamPoint a(l, rs.unit_sum(static_cast<std::size_t>(l + 1)));
      const auto fam = expand(a, cls, random_bindings(cls, rs), 10);
      CHECK(fam.residue() == cls.residue);
      CHECK(satisfies_recursion(fam));
      CHECK(classify_family(fam).type_label == cls.type_label);
    }
  }
}

TEST_CASE("recursion check detects a corrupted coefficient") {
  RationalSampler rs(5);
  const auto cls = class_by_label(4, "(13)");
  auto fam = expand(ParamPoint(4, rs.unit_sum(5)), cls, random_bindings(cls, rs), 8);
  fam.f[2] = fam.f[2] + LaurentSeries::monomial(Rat(1, 7), 5, fam.order);
  CHECK_FALSE(satisfies_recursion(fam));
}

TEST_CASE("free-constant faithfulness") {
  RationalSampler rs(31);
  for (const auto& label : {"(1)", "(13)", "(132)", "(3)", "(304)"}) {
    const auto cls = class_by_label(4, label);
    const ParamPoint a(4, rs.unit_sum(5));
    const auto fb = random_bindings(cls, rs);
    const auto base = expand(a, cls, fb, 8);
    for (const auto& slot : free_slots(cls)) {
      auto fb2 = fb;
      fb2[slot.name] += Rat(1);
      const auto moved = expand(a, cls, fb2, 8);
      for (int n = -1; n < slot.n; ++n)
        for (int i = 0; i <= 4; ++i) CHECK(moved.coeff(n, i) == base.coeff(n, i));
      CHECK(moved.coeff(slot.n, slot.index) == base.coeff(slot.n, slot.index) + Rat(1));
    }
  }
}

TEST_CASE("wrong free constant names") {
  const ParamPoint a(2, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
  CHECK_THROWS_WITH_AS(expand(a, class_by_label(2, "(1)"), {{"c0^0", Rat(0)}}),
                       doctest::Contains("wrong free-constant names"), std::invalid_argument);
  CHECK_THROWS_AS(expand(a, class_by_label(2, "(1)"), {{"c0^0", Rat(0)}, {"c2^2", Rat(0)}}),
                  std::invalid_argument);
}

TEST_CASE("Backlund transformations on series") {
  RationalSampler rs(41);
  const ParamPoint a(4, {Rat(1, 3), Rat(1, 7), Rat(2, 9), Rat(1, 11), Rat(1) - Rat(1, 3) - Rat(1, 7) - Rat(2, 9) - Rat(1, 11)});
  const auto t132 = class_by_label(4, "(132)");
  const auto fam = expand(a, t132, random_bindings(t132, rs), 12);

  const auto g = apply_bt_to_family(GroupWord::parse("s2"), fam);
  CHECK(g.residue() == RatVector{Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)});
  CHECK(g.cls.type_label == "(13)");
  CHECK(satisfies_recursion(g));

  const auto h = apply_bt_to_family(GroupWord::parse("s2 s3 s1"), fam);
  CHECK(h.cls.type_label == "(∅)");
  for (const auto& s : h.f) CHECK(s.valuation() >= 0);
  CHECK(satisfies_recursion(h));

  CHECK(apply_bt_to_family(GroupWord(), fam).f == fam.f);

  // l = 2: type (1) under s1 becomes holomorphic; g_1 = f_1
  const ParamPoint b(2, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
  const auto f1 = expand(b, class_by_label(2, "(1)"), {{"c0^0", Rat(2)}, {"c2^1", Rat(3)}}, 10);
  const auto g1 = apply_bt_to_family(GroupWord::parse("s1"), f1);
  CHECK(g1.cls.type_label == "(∅)");
  CHECK(g1.alpha.alpha[1] == -Rat(1, 4));
  CHECK(g1.coeff(1, 1) == -Rat(1, 4));
  CHECK(g1.coeff(2, 1) == Rat(3));
  CHECK(g1.coeff(0, 0) == Rat(2) + Rat(3) / Rat(1, 4));
  CHECK(g1.coeff(0, 2) == Rat(2) - Rat(3) / Rat(1, 4));

  const ParamPoint z(4, {Rat(1, 2), Rat(1, 4), Rat(0), Rat(1, 8), Rat(1, 8)});
  const auto fz = expand(z, t132, random_bindings(t132, rs), 8);
  CHECK_THROWS_WITH_AS(apply_bt_to_family(GroupWord::parse("s2"), fz), doctest::Contains("degenerate"),
                       std::domain_error);
}

TEST_CASE("classification") {
  CHECK(classify_residue(4, {Rat(-1), Rat(0), Rat(1), Rat(0), Rat(0)}).bt_word.str() == "s1");
  CHECK(classify_residue(4, RatVector(5)).type_label == "(∅)");
  CHECK_THROWS_WITH_AS(classify_residue(4, {Rat(2), Rat(0), Rat(0), Rat(0), Rat(0)}),
                       doctest::Contains("not a valid pole type"), std::invalid_argument);
}
