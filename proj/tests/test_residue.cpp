#include <algorithm>
#include <set>

#include "doctest.h"
#include "weylps/residue.hpp"

using namespace weylps;

namespace {

RatVector rv(std::initializer_list<int> xs) {
  RatVector v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

Rat ipow(long n, int e) { return pow(Rat(n), e); }

}  // namespace

TEST_CASE("l = 2 residues") {
  const auto cls = enumerate_residues(2);
  REQUIRE(cls.size() == 3);
  CHECK(cls[0].residue == rv({-1, 0, 1}));
  CHECK(cls[1].residue == rv({1, -1, 0}));
  CHECK(cls[2].residue == rv({0, 1, -1}));
  CHECK(cls[0].type_label == "(1)");
  CHECK(cls[1].type_label == "(2)");
  CHECK(cls[2].type_label == "(0)");
  CHECK(cls[0].bt_word.str() == "s1");
  CHECK(cls[2].bt_word.str() == "s0");
  for (const auto& c : cls) CHECK(c.n_free == 2);
  CHECK(holomorphic_class(2).n_free == 3);
}

TEST_CASE("l = 4 residues match the classification table") {
  const auto cls = enumerate_residues(4);
  REQUIRE(cls.size() == 15);
  const std::vector<std::pair<std::string, RatVector>> table{
      {"(1)", rv({-1, 0, 1, 0, 0})},    {"(2)", rv({0, -1, 0, 1, 0})},    {"(3)", rv({0, 0, -1, 0, 1})},
      {"(4)", rv({1, 0, 0, -1, 0})},    {"(0)", rv({0, 1, 0, 0, -1})},    {"(13)", rv({-1, 0, 0, 0, 1})},
      {"(24)", rv({1, -1, 0, 0, 0})},   {"(30)", rv({0, 1, -1, 0, 0})},   {"(41)", rv({0, 0, 1, -1, 0})},
      {"(02)", rv({0, 0, 0, 1, -1})},   {"(132)", rv({-1, -3, 0, 3, 1})}, {"(243)", rv({1, -1, -3, 0, 3})},
      {"(304)", rv({3, 1, -1, -3, 0})}, {"(410)", rv({0, 3, 1, -1, -3})}, {"(021)", rv({-3, 0, 3, 1, -1})}};
  const std::vector<std::string> words{"s1",    "s2",    "s3",    "s4",    "s0",
                                       "s3 s1", "s4 s2", "s0 s3", "s1 s4", "s2 s0",
                                       "s2 s3 s1", "s3 s4 s2", "s4 s0 s3", "s0 s1 s4", "s1 s2 s0"};
  for (std::size_t k = 0; k < 15; ++k) {
    CHECK(cls[k].type_label == table[k].first);
    CHECK(cls[k].residue == table[k].second);
    CHECK(cls[k].bt_word.str() == words[k]);
    CHECK(cls[k].n_free == (k < 5 ? 4 : 3));
  }
  CHECK(holomorphic_class(4).n_free == 5);
  CHECK_THROWS_AS(enumerate_residues(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_residues(6), std::invalid_argument);
}

TEST_CASE("residue invariants") {
  for (int l : {2, 4}) {
    const auto cls = enumerate_residues(l);
    std::set<std::string> seen;
    for (const auto& c : cls) {
      CHECK(satisfies_leading_balance(c.residue));
      std::string key;
      for (const auto& r : rotate(c.residue, 1)) key += r.str() + ",";
      seen.insert(key);
    }
    // closed under rotation
    for (const auto& c : cls) {
      std::string key;
      for (const auto& r : c.residue) key += r.str() + ",";
      CHECK(seen.count(key) == 1);
    }
    CHECK(satisfies_leading_balance(RatVector(static_cast<std::size_t>(l + 1))));
  }
  CHECK_FALSE(satisfies_leading_balance(rv({2, 0, 0, 0, 0})));
}

TEST_CASE("resonance determinants against printed factorizations") {
  for (int n = -5; n <= 10; ++n) {
    CHECK(resonance_det(rv({-1, 0, 1}), n) == Rat(n + 2) * Rat(n) * Rat(n - 2));
    CHECK(resonance_det(rv({-1, 0, 1, 0, 0}), n) == Rat(n + 2) * ipow(n, 3) * Rat(n - 2));
    CHECK(resonance_det(rv({-1, 0, 0, 0, 1}), n) == ipow(n + 2, 2) * Rat(n) * ipow(n - 2, 2));
    CHECK(resonance_det(rv({-1, -3, 0, 3, 1}), n) ==
          Rat(n + 4) * Rat(n + 2) * Rat(n) * Rat(n - 2) * Rat(n - 4));
  }
  CHECK(resonance_det(rv({-1, 0, 1}), 3) == Rat(15));
  CHECK(resonance_det(rv({-1, 0, 1, 0, 0}), 1) == Rat(-3));
}

TEST_CASE("resonance matrix pattern") {
  const auto p = resonance_matrix(rv({-1, -3, 0, 3, 1}), 2);
  // row 1: diagonal n - G^1 with G^1 = c2 - c3 + c4 - c0 = 0 - 3 + 1 + 1 = -1
  CHECK(p(1, 1) == Rat(3));
  CHECK(p(1, 2) == Rat(3));
  CHECK(p(1, 3) == Rat(-3));
  CHECK(p(1, 4) == Rat(3));
  CHECK(p(1, 0) == Rat(-3));
}

TEST_CASE("resonance structure") {
  using V = std::vector<std::pair<int, int>>;
  CHECK(resonance_structure(rv({-1, 0, 1})) == V{{0, 1}, {2, 1}});
  CHECK(resonance_structure(rv({-1, 0, 1, 0, 0})) == V{{0, 3}, {2, 1}});
  CHECK(resonance_structure(rv({-1, 0, 0, 0, 1})) == V{{0, 1}, {2, 2}});
  CHECK(resonance_structure(rv({-1, -3, 0, 3, 1})) == V{{0, 1}, {2, 1}, {4, 1}});
  for (int l : {2, 4}) {
    for (const auto& c : enumerate_residues(l)) {
      int total = 0;
      for (const auto& [n, k] : resonance_structure(c.residue)) total += k;
      CHECK(total == c.n_free);
    }
  }
}
