#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "clusterx/basis.hpp"
#include "clusterx/error.hpp"

using namespace clusterx;

namespace {

ExtendedMatrix random_acyclic(std::mt19937& rng, std::size_t n, std::size_t frozen, long bound) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<long> d(0, bound), f(-1, 1);
  std::vector<std::vector<Entry>> rows(n + frozen, std::vector<Entry>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long v = d(rng);
      rows[perm[i]][perm[j]] = v;
      rows[perm[j]][perm[i]] = -v;
    }
  }
  for (std::size_t i = n; i < n + frozen; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = f(rng);
  }
  return ExtendedMatrix::from_rows(rows, n);
}

// Lowest mutable exponent by a direct scan over the terms in the given
// variable priority.
ExponentVector scan_lowest(const LaurentPoly& p, const std::vector<std::size_t>& order) {
  ExponentVector best;
  bool first = true;
  for (const auto& t : p.terms()) {
    ExponentVector e(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) e[i] = t.exponents[order[i]];
    if (first || e < best) best = e;
    first = false;
  }
  ExponentVector out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = best[i];
  return out;
}

// Every a with sum |a_i| <= total.
std::vector<AVector> vectors_up_to(std::size_t n, long total) {
  std::vector<AVector> out;
  AVector a(n, -total);
  while (true) {
    long s = 0;
    for (auto v : a) s += v < 0 ? -v : v;
    if (s <= total) out.push_back(a);
    std::size_t i = 0;
    while (i < n && a[i] == total) a[i++] = -total;
    if (i == n) break;
    ++a[i];
  }
  return out;
}

AVector to_avector(const ExponentVector& e) { return AVector(e.begin(), e.end()); }

}  // namespace

TEST_CASE("image table for a rank 2 seed") {
  const auto M = ExtendedMatrix::square({{0, 2}, {-2, 0}});
  const auto img = lowest_map_images(M);
  CHECK(img.order == std::vector<std::size_t>{0, 1});
  CHECK(img.positive[0] == AVector{-1, 0});
  CHECK(img.positive[1] == AVector{0, -1});
  CHECK(img.negative[0] == AVector{1, 0});
  CHECK(img.negative[1] == AVector{0, 1});
}

TEST_CASE("lowest monomials of z and xtilde agree with the map") {
  std::mt19937 rng(71);
  for (int it = 0; it < 12; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const auto M = random_acyclic(rng, n, rng() % 2, 2);
    const auto img = lowest_map_images(M);
    for (const AVector& a : vectors_up_to(n, 3 * static_cast<long>(n))) {
      if (std::any_of(a.begin(), a.end(), [](long v) { return v < -3 || v > 3; })) continue;
      const auto fz = to_avector(scan_lowest(z_element(a, M), img.order));
      const auto fx = to_avector(scan_lowest(xtilde(a, M), img.order));
      CHECK(fz == apply_lowest_map(img, a));
      CHECK(fx == fz);
      CHECK(invert_lowest(img, fz) == a);
    }
  }
}

TEST_CASE("the map is additive on sign-compatible vectors") {
  std::mt19937 rng(72);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 1 + rng() % 4;
    const auto M = random_acyclic(rng, n, 0, 3);
    const auto img = lowest_map_images(M);
    std::uniform_int_distribution<int> d(0, 3);
    AVector u(n), v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int sign = (rng() % 2) ? 1 : -1;
      u[i] = sign * d(rng);
      v[i] = sign * d(rng);
      w[i] = u[i] + v[i];
    }
    AVector sum = apply_lowest_map(img, u);
    const AVector fv = apply_lowest_map(img, v);
    for (std::size_t i = 0; i < n; ++i) sum[i] += fv[i];
    CHECK(apply_lowest_map(img, w) == sum);
  }
}

TEST_CASE("images are triangular along the order") {
  std::mt19937 rng(73);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 1 + rng() % 4;
    const auto M = random_acyclic(rng, n, 0, 3);
    const auto img = lowest_map_images(M);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t k = img.order[pos];
      for (int sign : {1, -1}) {
        AVector diff = sign > 0 ? img.positive[k] : img.negative[k];
        diff[k] += sign;
        for (std::size_t earlier = 0; earlier <= pos; ++earlier) {
          CHECK(diff[img.order[earlier]] == 0);
        }
      }
    }
  }
}

TEST_CASE("rank 2 expansion") {
  const auto M = ExtendedMatrix::square({{0, 2}, {-2, 0}});
  const Expansion e = expand_standard(xtilde({1, 2}, M), M);
  REQUIRE(e.terms.size() == 3);
  CHECK(e.terms.at({1, 2}) == LaurentPoly::one(2));
  CHECK(e.terms.at({-1, 0}) == LaurentPoly::constant(2, -1));
  CHECK(e.terms.at({-3, 0}) == LaurentPoly::constant(2, -1));
  CHECK(check_expansion_support(e, {1, 2}));
  CHECK(reassemble(e, M) == xtilde({1, 2}, M));
}

TEST_CASE("basis elements and cluster monomials expand trivially") {
  const auto M = ExtendedMatrix::from_rows({{0, 1, 0}, {-1, 0, 2}, {0, -2, 0}, {1, 0, -1}}, 3);
  for (const AVector& a : vectors_up_to(3, 2)) {
    const Expansion e = expand_standard(z_element(a, M), M);
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms.begin()->first == a);
    CHECK(e.terms.begin()->second == LaurentPoly::one(4));
  }
  const Expansion e = expand_standard(xtilde({-1, 0, -2}, M), M);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms.begin()->first == AVector{-1, 0, -2});
}

TEST_CASE("expansions are unitriangular and reassemble exactly") {
  std::mt19937 rng(74);
  for (int it = 0; it < 10; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const auto M = random_acyclic(rng, n, rng() % 2, 2);
    for (const AVector& a : vectors_up_to(n, 3)) {
      const LaurentPoly x = xtilde(a, M);
      const Expansion e = expand_standard(x, M);
      CHECK(reassemble(e, M) == x);
      CHECK(check_expansion_support(e, a));
      CHECK(expand_standard(reassemble(e, M), M) == e);
    }
  }
}

TEST_CASE("standard monomials in the xtilde basis") {
  std::mt19937 rng(75);
  for (int it = 0; it < 6; ++it) {
    const std::size_t n = 1 + rng() % 3;
    const auto M = random_acyclic(rng, n, 0, 2);
    for (const AVector& a : vectors_up_to(n, 2)) {
      const auto combo = z_in_xtilde_basis(a, M);
      LaurentPoly sum(M.m());
      for (const auto& [b, v] : combo) sum += v * xtilde(b, M);
      CHECK(sum == z_element(a, M));
    }
  }
}

TEST_CASE("support check rejects bad expansions") {
  Expansion e;
  e.terms[{1, 2}] = LaurentPoly::one(2);
  e.terms[{2, -3}] = LaurentPoly::one(2);
  CHECK_FALSE(check_expansion_support(e, {1, 2}));
  Expansion f;
  f.terms[{1, 2}] = LaurentPoly::constant(2, 2);
  CHECK_FALSE(check_expansion_support(f, {1, 2}));
}

TEST_CASE("non-members and cyclic seeds are rejected") {
  const auto M = ExtendedMatrix::square({{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(expand_standard(LaurentPoly::parse("x1^-1*x2^3 + 2", 2), M), NotInSpan);
  const auto markov = ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  CHECK_THROWS_AS(lowest_map_images(markov), NotAcyclic);
  CHECK_THROWS_AS(expand_standard(xtilde({1, 1, 1}, markov), markov), NotAcyclic);
}
