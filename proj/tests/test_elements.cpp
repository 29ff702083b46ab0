#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "clusterx/elements.hpp"
#include "clusterx/error.hpp"

using namespace clusterx;

namespace {

std::vector<long> to_long(const AVector& a) { return std::vector<long>(a.begin(), a.end()); }

AVector random_a(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  AVector a(n);
  for (auto& v : a) v = d(rng);
  return a;
}

std::size_t positive_sum(const AVector& a) {
  std::size_t s = 0;
  for (auto v : a) s += v > 0 ? static_cast<std::size_t>(v) : 0;
  return s;
}

}  // namespace

TEST_CASE("sequence helpers") {
  const BitSeq t{1, 0, 1};
  CHECK(complement(t) == BitSeq{0, 1, 0});
  CHECK(weight(t) == 2);
  CHECK(dot(t, BitSeq{1, 1}) == 1);
}

TEST_CASE("S_all is lex ordered and complete") {
  const auto all = enumerate_S_all({2, 0, 1});
  REQUIRE(all.size() == 8);
  CHECK(all.front().s == std::vector<BitSeq>{{0, 0}, {}, {0}});
  CHECK(all[1].s == std::vector<BitSeq>{{0, 0}, {}, {1}});
  CHECK(all.back().s == std::vector<BitSeq>{{1, 1}, {}, {1}});
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("S_gcc filter") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  const auto gcc = enumerate_S_gcc({1, 1}, M);
  REQUIRE(gcc.size() == 3);
  for (const auto& s : gcc) CHECK(is_gcc(s, M));
  CHECK_FALSE(is_gcc(GccTuple{{{1}, {0}}}, M));
}

TEST_CASE("the size cap is enforced") {
  EnumerationLimits limits;
  limits.max_total_length = 4;
  CHECK_THROWS_AS(enumerate_S_all({3, 2}, limits), CapExceeded);
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(xtilde({3, 2}, M, limits), CapExceeded);
}

TEST_CASE("xtilde matches the brute force sum") {
  std::mt19937 rng(31);
  for (int it = 0; it < 120; ++it) {
    const std::size_t n = 1 + rng() % 3, frozen = rng() % 3;
    const auto M = oracle::random_matrix(rng, n, frozen, 3, 2);
    const AVector a = random_a(rng, n, -2, 3);
    if (positive_sum(a) > 8) continue;
    const auto expected = oracle::brute_sequence_sum(to_long(a), oracle::rows_of(M), n, true);
    CHECK(xtilde(a, M) == expected);
  }
}

TEST_CASE("sum over S_all equals the standard monomial") {
  std::mt19937 rng(32);
  for (int it = 0; it < 120; ++it) {
    const std::size_t n = 1 + rng() % 3, frozen = rng() % 3;
    const auto M = oracle::random_matrix(rng, n, frozen, 3, 2);
    const AVector a = random_a(rng, n, -3, 3);
    const auto rows = oracle::rows_of(M);
    const auto z = z_element(a, M);
    CHECK(z == oracle::naive_z(to_long(a), rows, n));
    if (positive_sum(a) <= 8) CHECK(z == oracle::brute_sequence_sum(to_long(a), rows, n, false));
  }
}

TEST_CASE("xtilde has positive coefficients") {
  std::mt19937 rng(33);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const auto M = oracle::random_matrix(rng, n, rng() % 2, 3, 2);
    const AVector a = random_a(rng, n, -2, 3);
    for (const auto& t : xtilde(a, M).terms()) CHECK(t.coefficient > 0);
  }
}

TEST_CASE("non-positive vectors give cluster monomials") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  const auto x = xtilde({-1, -3}, M);
  CHECK(x == LaurentPoly::parse("x1*x2^3", 3));
  CHECK(x == z_element({-1, -3}, M));
}

TEST_CASE("closed form for 0/1 vectors") {
  std::mt19937 rng(34);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 1 + rng() % 4;
    const auto M = oracle::random_matrix(rng, n, rng() % 3, 3, 2);
    const AVector a = random_a(rng, n, 0, 1);
    CHECK(xtilde_01_formula(a, M) == xtilde(a, M));
  }
}

TEST_CASE("positive factorization") {
  const auto f = factor_positive({3, -1, 1});
  CHECK(f.monomial == ExponentVector{0, 1, 0});
  REQUIRE(f.layers.size() == 3);
  CHECK(f.layers[0] == AVector{1, 0, 1});
  CHECK(f.layers[1] == AVector{1, 0, 0});
  CHECK(f.layers[2] == AVector{1, 0, 0});
  std::mt19937 rng(35);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const auto M = oracle::random_matrix(rng, n, rng() % 2, 2, 2);
    const AVector a = random_a(rng, n, -2, 3);
    const auto fa = factor_positive(a);
    LaurentPoly x = LaurentPoly::monomial([&] {
      ExponentVector e(M.m(), 0);
      for (std::size_t i = 0; i < n; ++i) e[i] = fa.monomial[i];
      return e;
    }());
    LaurentPoly z = x;
    for (const auto& layer : fa.layers) {
      x *= xtilde(layer, M);
      z *= z_element(layer, M);
    }
    CHECK(x == xtilde(a, M));
    CHECK(z == z_element(a, M));
  }
}

TEST_CASE("component factorization") {
  const auto M = ExtendedMatrix::square({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  const auto comps = weak_components(M);
  CHECK(comps == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  const AVector a{1, 2, 1};
  const auto parts = factor_components(a, M);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == AVector{1, 2, 0});
  CHECK(parts[1] == AVector{0, 0, 1});
  CHECK(xtilde(parts[0], M) * xtilde(parts[1], M) == xtilde(a, M));
}

TEST_CASE("tuple exponents reproduce xtilde") {
  const auto M = ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  const AVector a{1, 1, 1};
  TermAccumulator acc(3);
  for (const auto& s : enumerate_S_gcc(a, M)) acc.add(tuple_exponents(s, a, M));
  CHECK(std::move(acc).finish() == xtilde(a, M));
  CHECK(xtilde(a, M) == LaurentPoly::parse("2*x1*x2*x3", 3));
}

TEST_CASE("length mismatch is rejected") {
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(xtilde({1}, M), DimensionError);
  CHECK_THROWS_AS(z_element({1, 1, 1}, M), DimensionError);
}
