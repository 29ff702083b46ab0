#include <deque>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"

#include "clusterx/error.hpp"
#include "clusterx/rank3.hpp"

using namespace clusterx;

namespace {

ExtendedMatrix cyclic(std::int64_t b12, std::int64_t b23, std::int64_t b31) {
  return ExtendedMatrix::square({{0, b12, -b31}, {-b12, 0, b23}, {b31, -b23, 0}});
}

// Explores matrix mutations breadth first and reports whether an acyclic
// matrix shows up within `depth` steps.
bool reaches_acyclic(const ExtendedMatrix& M, int depth) {
  std::deque<std::pair<ExtendedMatrix, int>> q{{M, 0}};
  std::set<std::vector<Entry>> seen;
  while (!q.empty()) {
    auto [cur, d] = q.front();
    q.pop_front();
    const auto key = std::vector<Entry>(cur.entries().begin(), cur.entries().end());
    if (!seen.insert(key).second) continue;
    if (is_acyclic(cur)) return true;
    if (d == depth) continue;
    for (std::size_t k = 0; k < 3; ++k) q.push_back({mutate_matrix(cur, k), d + 1});
  }
  return false;
}

// Smallest element of the orbit among everything reachable in `depth` steps
// without ever exceeding the sum of the starting triple.
Rank3Triple orbit_min(const Rank3Triple& t, int depth) {
  std::set<Rank3Triple> seen{t};
  std::vector<Rank3Triple> layer{t};
  Rank3Triple best = t;
  for (int d = 0; d < depth; ++d) {
    std::vector<Rank3Triple> next;
    for (const auto& u : layer) {
      for (std::size_t i = 0; i < 3; ++i) {
        const Rank3Triple v = gamma_mu(u, i);
        if (v.p < 0 || v.q < 0 || v.r < 0 || v.sum() > t.sum()) continue;
        if (!seen.insert(v).second) continue;
        if (v.sum() < best.sum()) best = v;
        next.push_back(v);
      }
    }
    layer = std::move(next);
  }
  return best;
}

}  // namespace

TEST_CASE("tau and the Gamma generators") {
  const auto M = cyclic(4, 3, 3);
  CHECK(tau(M) == Rank3Triple{3, 3, 4});
  CHECK(gamma_mu({2, 2, 2}, 0) == Rank3Triple{2, 2, 2});
  CHECK(gamma_mu({3, 3, 4}, 2) == Rank3Triple{9, 3, 4});
  CHECK(gamma_mu({3, 3, 4}, 0) == Rank3Triple{3, 9, 4});
  CHECK(gamma_mu({3, 3, 4}, 1) == Rank3Triple{3, 3, 5});
}

TEST_CASE("Gamma generators are involutions") {
  for (std::int64_t p = 0; p <= 50; p += 7) {
    for (std::int64_t q = 0; q <= 50; q += 5) {
      for (std::int64_t r = 0; r <= 50; r += 3) {
        for (std::size_t i = 0; i < 3; ++i) {
          CHECK(gamma_mu(gamma_mu({p, q, r}, i), i) == Rank3Triple{p, q, r});
        }
      }
    }
  }
}

TEST_CASE("matrix mutation mirrors the Gamma action on cyclic seeds") {
  for (std::int64_t a = 2; a <= 6; ++a) {
    for (std::int64_t b = 2; b <= 6; ++b) {
      for (std::int64_t c = 2; c <= 6; ++c) {
        const auto M = cyclic(a, b, c);
        if (!classify_nonacyclic(tau(M))) continue;
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(tau(mutate_matrix(M, k)) == gamma_mu(tau(M), gamma_index_for_vertex(k)));
        }
      }
    }
  }
}

TEST_CASE("classification agrees with a search for acyclic seeds") {
  for (std::int64_t a = 0; a <= 4; ++a) {
    for (std::int64_t b = 0; b <= 4; ++b) {
      for (std::int64_t c = 0; c <= 4; ++c) {
        const auto M = cyclic(a, b, c);
        const bool nonacyclic = classify_nonacyclic(tau(M));
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(nonacyclic == !reaches_acyclic(M, 6));
      }
    }
  }
  CHECK(classify_nonacyclic({2, 2, 2}));
  CHECK_FALSE(classify_nonacyclic({1, 1, 1}));
  CHECK_FALSE(classify_nonacyclic({2, 2, 3}));
  CHECK(classify_nonacyclic({3, 3, 5}));
}

TEST_CASE("roots are the orbit minima") {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> d(2, 9);
  int tested = 0;
  while (tested < 60) {
    Rank3Triple t{d(rng), d(rng), d(rng)};
    if (!classify_nonacyclic(t)) continue;
    ++tested;
    const Rank3Triple start = t;
    for (int s = 0; s < 3; ++s) t = gamma_mu(t, rng() % 3);
    const Rank3Triple root = find_root(t);
    CHECK(is_root(root));
    CHECK(find_root(start) == root);
    CHECK(orbit_min(t, 8) == root);
    for (std::size_t i = 0; i < 3; ++i) CHECK(coordinatewise_leq(root, gamma_mu(root, i)));
  }
  CHECK_THROWS_AS(find_root({1, 1, 1}), NotInScope);
}

TEST_CASE("grading and homogeneity") {
  const auto M = cyclic(4, 3, 3);
  const auto g = grading_vector(M);
  CHECK(g == std::vector<std::int64_t>{3, 3, 4});
  Seed s = Seed::initial(M);
  for (std::size_t k0 : {0u, 1u, 2u}) {
    s = mutate_seed(s, k0);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK_NOTHROW(degree_of(s.cluster[k], g));
      CHECK_NOTHROW(degree_of(exchange_binomial(s.matrix, k), std::vector<std::int64_t>{
                                  degree_of(s.cluster[0], g), degree_of(s.cluster[1], g),
                                  degree_of(s.cluster[2], g)}));
    }
  }
  CHECK_THROWS_AS(degree_of(LaurentPoly::parse("x1 + x3", 3), g), InhomogeneousError);
  CHECK_THROWS_AS(degree_of(LaurentPoly(3), g), EmptyPolynomial);
  CHECK_THROWS_AS(grading_vector(cyclic(1, 1, 1)), NotInScope);
}

TEST_CASE("normal form") {
  const auto n1 = normalize_rank3(cyclic(3, 4, 3));
  CHECK(n1.a == 4);
  CHECK(n1.b == 3);
  CHECK(n1.c == 3);
  CHECK(n1.matrix.at(0, 1) == 4);
  CHECK(n1.matrix.at(1, 2) == 3);
  CHECK(n1.matrix.at(2, 0) == 3);
  const auto n2 = normalize_rank3(cyclic(-2, -3, -4));
  CHECK(n2.a == 4);
  CHECK(n2.b == 3);
  CHECK(n2.c == 2);
  CHECK(n2.matrix.at(0, 1) == 4);
  CHECK(n2.matrix.at(1, 2) == 3);
  CHECK(n2.matrix.at(2, 0) == 2);
  const auto original = n2.negated ? n2.matrix.negated() : n2.matrix;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(original.at(i, j) == cyclic(-2, -3, -4).at(n2.permutation[i], n2.permutation[j]));
    }
  }
}

TEST_CASE("witness for the Markov matrix") {
  const auto M = cyclic(2, 2, 2);
  const WitnessReport w = construct_Y(M);
  CHECK(w.degree == 0);
  CHECK(w.membership.verdict);
  CHECK(w.depth_audit.passed());
}

TEST_CASE("witness and audit on random roots") {
  std::mt19937 rng(63);
  std::uniform_int_distribution<int> d(2, 4);
  int tested = 0;
  while (tested < 5) {
    const auto M = cyclic(d(rng), d(rng), d(rng));
    const Rank3Triple t = tau(M);
    if (!classify_nonacyclic(t) || !is_root(t)) continue;
    ++tested;
    const WitnessReport w = construct_Y(M, 2);
    const auto& nf = w.normalized;
    CHECK(w.degree == nf.a * nf.c - nf.b - nf.a);
    CHECK(degree_of(w.y, grading_vector(nf.matrix)) == w.degree);
    CHECK(w.membership.verdict);
    CHECK(w.depth_audit.passed());
    for (const auto& row : w.depth_audit.rows) {
      if (!row.exceptional) CHECK(row.new_variable_degree > w.depth_audit.threshold);
    }
  }
}

TEST_CASE("audit requires a root seed") {
  CHECK_THROWS_AS(degree_audit(cyclic(5, 3, 3), 2), RootRequired);
  CHECK_THROWS_AS(degree_audit(cyclic(1, 1, 1), 2), NotInScope);
}
