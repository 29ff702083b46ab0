#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "clusterx/elements.hpp"
#include "clusterx/error.hpp"
#include "clusterx/upper.hpp"

using namespace clusterx;

namespace {

// Rewrites p in the cluster adjacent in direction k by substituting
// x_k = A / x'_k with x'_k stored in slot k. Returns false when some
// coefficient is not divisible by the needed power of A.
bool substitutes_cleanly(const LaurentPoly& p, const ExtendedMatrix& M, std::size_t k) {
  const LaurentPoly A = exchange_binomial(M, k);
  for (const auto& [d, c] : coefficients_in_variable(p, k)) {
    if (d >= 0) continue;
    if (!exact_divide(c, A.pow(static_cast<unsigned>(-d)))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("adjacency divisor is the exchange binomial") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  CHECK(adjacency_divisor(M, 0) == LaurentPoly::parse("x2^2 + x3", 3));
  CHECK(adjacency_divisor(M, 1) == LaurentPoly::parse("x1^2 + x3", 3));
}

TEST_CASE("inverse of a mutable variable fails at degree -1") {
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  const auto p = LaurentPoly::parse("x1^-1", 2);
  const AdjacentCheck c = in_adjacent_ring(p, M, 0);
  CHECK_FALSE(c.passes);
  REQUIRE(c.failing_degree.has_value());
  CHECK(*c.failing_degree == -1);
  REQUIRE(c.remainder.has_value());
  CHECK_FALSE(c.remainder->is_zero());
  const MembershipReport r = check_Ux_membership(p, M);
  CHECK_FALSE(r.verdict);
  CHECK(r.per_direction[1].check.passes);
}

TEST_CASE("the most negative failing degree is reported") {
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  const auto p = LaurentPoly::parse("x1^-3 + x1^-1*x2 + x1^-1", 2);
  const AdjacentCheck c = in_adjacent_ring(p, M, 0);
  CHECK_FALSE(c.passes);
  CHECK(*c.failing_degree == -3);
}

TEST_CASE("monomials in non-negative powers and cluster variables pass") {
  const auto M = ExtendedMatrix::from_rows({{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}, {1, 0, 2}}, 3);
  CHECK(check_Ux_membership(LaurentPoly::parse("x1^2*x2*x4^-3", 4), M).verdict);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(check_Ux_membership(adjacent_variable(M, k), M).verdict);
  }
  Seed s = Seed::initial(M);
  for (std::size_t k : {0u, 1u, 2u, 1u}) {
    s = mutate_seed(s, k);
    for (const auto& v : s.cluster) CHECK(check_Ux_membership(v, M).verdict);
  }
}

TEST_CASE("membership matches direct substitution") {
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> ex(-2, 2), co(-3, 3);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 1 + rng() % 3, frozen = rng() % 2;
    const auto M = oracle::random_matrix(rng, n, frozen, 2, 2);
    const std::size_t m = M.m();
    LaurentPoly p(m);
    if (it % 2 == 0) {
      std::vector<LaurentPoly::Term> terms;
      for (int t = 0; t < 3; ++t) {
        ExponentVector e(m);
        for (auto& v : e) v = ex(rng);
        terms.push_back({e, co(rng)});
      }
      p = LaurentPoly::from_terms(m, std::move(terms));
    } else {
      AVector a(n);
      for (auto& v : a) v = ex(rng);
      p = xtilde(a, M);
    }
    const MembershipReport r = check_Ux_membership(p, M);
    bool expected = true;
    for (std::size_t k = 0; k < n; ++k) {
      const bool direct = substitutes_cleanly(p, M, k);
      CHECK(r.per_direction[k].check.passes == direct);
      expected = expected && direct;
    }
    CHECK(r.verdict == expected);
  }
}

TEST_CASE("remainder certifies the failure") {
  const auto M = ExtendedMatrix::square({{0, 2}, {-2, 0}});
  const auto p = LaurentPoly::parse("x1^-2*x2^2 + x1^-2", 2);
  const AdjacentCheck c = in_adjacent_ring(p, M, 0);
  CHECK_FALSE(c.passes);
  CHECK(*c.failing_degree == -2);
  CHECK(c.remainder.has_value());
}

TEST_CASE("errors") {
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(in_adjacent_ring(LaurentPoly::one(2), M, 2), DomainError);
  CHECK_THROWS_AS(check_Ux_membership(LaurentPoly::one(3), M), DimensionError);
}

TEST_CASE("report flags") {
  const auto M = ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  const MembershipReport r = check_Ux_membership(LaurentPoly::one(3), M);
  CHECK(r.verdict);
  CHECK_FALSE(r.full_rank);
  CHECK(r.per_direction.size() == 3);
}
