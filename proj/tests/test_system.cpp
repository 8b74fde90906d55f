#include "doctest.h"
#include "weylps/polynomial.hpp"
#include "weylps/system.hpp"

using namespace weylps;

TEST_CASE("cartan and orientation matrices") {
  const auto a = cartan_matrix(4);
  const auto u = orientation_matrix(4);
  for (int i = 0; i <= 4; ++i) {
    CHECK(a[i][i] == 2);
    CHECK(a[i][(i + 1) % 5] == -1);
    CHECK(a[i][(i + 4) % 5] == -1);
    CHECK(a[i][(i + 2) % 5] == 0);
    CHECK(u[i][(i + 1) % 5] == 1);
    CHECK(u[i][(i + 4) % 5] == -1);
    CHECK(u[i][i] == 0);
  }
  CHECK(orientation(2, 1, 0) == -1);
  CHECK(orientation(2, 1, 2) == 1);
}

TEST_CASE("vector field hand evaluations") {
  const RatVector zero3(3);
  const RatVector alpha{Rat(1, 2), Rat(1, 4), Rat(1, 4)};
  CHECK(vector_field(alpha, zero3) == alpha);
  CHECK(vector_field(RatVector{1, 0, 0}, RatVector{1, 1, 1}) == RatVector{1, 0, 0});

  const RatVector a5(5, Rat(1, 5));
  const RatVector f{1, 2, 3, 4, 5};
  const auto d = vector_field(a5, f);
  // f_i (f_{i+1} - f_{i+2} + f_{i+3} - f_{i+4}) + 1/5 written out by hand
  CHECK(d[0] == Rat(1) * (2 - 3 + 4 - 5) + Rat(1, 5));
  CHECK(d[1] == Rat(2) * (3 - 4 + 5 - 1) + Rat(1, 5));
  CHECK(d[2] == Rat(3) * (4 - 5 + 1 - 2) + Rat(1, 5));
  CHECK(d[3] == Rat(4) * (5 - 1 + 2 - 3) + Rat(1, 5));
  CHECK(d[4] == Rat(5) * (1 - 2 + 3 - 4) + Rat(1, 5));
  CHECK(d[0] == Rat(-9, 5));
}

TEST_CASE("odd l rejected") {
  CHECK_THROWS_AS(vector_field(RatVector(4, Rat(1, 4)), RatVector(4)), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(3, RatVector(4, Rat(1, 4))), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(2, RatVector{1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(parse_params(2, "1/2,1/4,x"), std::invalid_argument);
  CHECK(parse_params(2, "1/2,1/4,1/4").alpha[1] == Rat(1, 4));
}

TEST_CASE("sum identity") {
  RationalSampler rs(1);
  for (int k = 0; k < 100; ++k) {
    const auto alpha = rs.unit_sum(5);
    const auto f = rs.vector(5);
    CHECK(sum_identity_check(alpha, f));
  }
  // linearity in alpha when the constraint is bypassed
  const RatVector a2{1, 1, 0};
  const auto d = vector_field(a2, RatVector{3, 5, 7});
  CHECK(d[0] + d[1] + d[2] == Rat(2));
  CHECK_FALSE(sum_identity_check(a2, RatVector{3, 5, 7}));
}

TEST_CASE("rotation equivariance") {
  RationalSampler rs(2);
  for (int l : {2, 4, 6}) {
    for (int k = 0; k < 20; ++k) {
      const auto alpha = rs.unit_sum(static_cast<std::size_t>(l + 1));
      const auto f = rs.vector(static_cast<std::size_t>(l + 1));
      CHECK(vector_field(rotate(alpha, 1), rotate(f, 1)) == rotate(vector_field(alpha, f), 1));
    }
  }
}
