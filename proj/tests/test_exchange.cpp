#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "clusterx/error.hpp"
#include "clusterx/exchange.hpp"

using namespace clusterx;

TEST_CASE("validation") {
  CHECK_THROWS_AS(ExtendedMatrix::square({{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(ExtendedMatrix::square({{1, 1}, {-1, 0}}), ValidationError);
  CHECK_THROWS_AS(ExtendedMatrix(2, 3, {0, 1, 0, -1, 0, 0}), ValidationError);
  CHECK_NOTHROW(ExtendedMatrix::square({{0, 2}, {-1, 0}}));
}

TEST_CASE("matrix mutation on a rank 2 example") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  const auto M0 = mutate_matrix(M, 0);
  CHECK(M0.rows() == std::vector<std::vector<Entry>>{{0, -2}, {2, 0}, {-1, 1}});
  const auto M1 = mutate_matrix(M, 1);
  CHECK(M1.rows() == std::vector<std::vector<Entry>>{{0, -2}, {2, 0}, {-1, 1}});
}

TEST_CASE("matrix mutation is an involution") {
  std::mt19937 rng(17);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 4, frozen = rng() % 3;
    const auto M = oracle::random_matrix(rng, n, frozen, 3, 3);
    for (std::size_t k = 0; k < n; ++k) {
      const auto once = mutate_matrix(M, k);
      CHECK(once.is_skew_symmetric());
      CHECK(mutate_matrix(once, k) == M);
    }
  }
}

TEST_CASE("seed mutation is an involution") {
  std::mt19937 rng(18);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng() % 3, frozen = rng() % 3;
    const auto M = oracle::random_matrix(rng, n, frozen, 2, 2);
    const Seed s = Seed::initial(M);
    for (std::size_t k = 0; k < n; ++k) {
      const Seed back = mutate_seed(mutate_seed(s, k), k);
      CHECK(back == s);
      CHECK(back.cluster == s.cluster);
    }
  }
}

TEST_CASE("mutation sequences agree with numeric evaluation") {
  std::mt19937 rng(19);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 2 + rng() % 2, frozen = rng() % 2;
    const auto M = oracle::random_matrix(rng, n, frozen, 2, 2);
    const auto point = oracle::random_point(rng, M.m());
    auto b = oracle::rows_of(M);
    auto values = point;
    Seed s = Seed::initial(M);
    std::size_t last = n;
    for (int step = 0; step < 4; ++step) {
      std::size_t k = rng() % n;
      if (k == last) k = (k + 1) % n;
      last = k;
      s = mutate_seed(s, k);
      oracle::numeric_mutate(b, n, values, k);
      CHECK(oracle::rows_of(s.matrix) == b);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(oracle::evaluate(s.cluster[i], point) == values[i]);
      }
    }
  }
}

TEST_CASE("Laurent phenomenon on random short mutation words") {
  std::mt19937 rng(20);
  for (int it = 0; it < 30; ++it) {
    const auto M = oracle::random_matrix(rng, 3, 1, 2, 1);
    Seed s = Seed::initial(M);
    for (std::size_t k : {0u, 1u, 2u, 0u}) s = mutate_seed(s, k);
    for (const auto& v : s.cluster) CHECK_FALSE(v.is_zero());
  }
}

TEST_CASE("digraphs") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  const Digraph qb = digraph_QB(M);
  CHECK(qb.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  const Digraph qbt = digraph_QBtilde(M);
  CHECK(qbt.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(M.extended(2, 0) == 1);
  CHECK(M.extended(0, 2) == -1);
  CHECK(M.extended(2, 2) == 0);
}

TEST_CASE("acyclicity and topological order") {
  const auto markov = ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  CHECK_FALSE(is_acyclic(markov));
  CHECK_THROWS_AS(topological_relabel(markov), NotAcyclic);
  const auto chain = ExtendedMatrix::square({{0, 0, -1}, {0, 0, 1}, {1, -1, 0}});
  CHECK(is_acyclic(chain));
  const auto order = topological_relabel(chain);
  CHECK(order == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("coprimality and rank") {
  CHECK(is_coprime_seed(ExtendedMatrix::square({{0, 1}, {-1, 0}})));
  CHECK_FALSE(is_coprime_seed(ExtendedMatrix::from_rows({{0, 0}, {0, 0}, {1, 1}}, 2)));
  CHECK(is_coprime_seed(ExtendedMatrix::from_rows({{0, 0}, {0, 0}, {1, 2}}, 2)));
  CHECK(is_coprime_seed(ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2)));
  CHECK(matrix_rank(ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}})) == 2);
  CHECK(matrix_rank(ExtendedMatrix::from_rows({{0, 1}, {-1, 0}, {3, 5}}, 2)) == 2);
}

TEST_CASE("exchange binomial and adjacent variable") {
  const auto M = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  CHECK(exchange_binomial(M, 0) == LaurentPoly::parse("x2^2 + x3", 3));
  CHECK(adjacent_variable(M, 1) == LaurentPoly::parse("x1^2*x2^-1 + x2^-1*x3", 3));
  const auto y = coefficient_tuple(M);
  CHECK(y[0] == LaurentPoly::parse("x3", 3));
  CHECK(y[1] == LaurentPoly::parse("x3^-1", 3));
}
