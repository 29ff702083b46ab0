#include "clusterx/rank3.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "clusterx/elements.hpp"
#include "clusterx/error.hpp"

namespace clusterx {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw OverflowError("triple entry overflows int64");
  return out;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(x, y, &out)) throw OverflowError("triple entry overflows int64");
  return out;
}

std::string triple_string(const Rank3Triple& t) {
  return "(" + std::to_string(t.p) + "," + std::to_string(t.q) + "," + std::to_string(t.r) + ")";
}

std::string word_string(const std::vector<std::size_t>& word) {
  std::string out = "[";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(word[i] + 1);
  }
  return out + "]";
}

std::int64_t positive_part(std::int64_t v) { return v > 0 ? v : 0; }

void require_rank3(const ExtendedMatrix& matrix) {
  if (matrix.n() != 3) {
    throw DomainError("rank 3 operations need n = 3, got n = " + std::to_string(matrix.n()));
  }
  if (!matrix.is_skew_symmetric()) {
    throw DomainError("rank 3 operations need a skew-symmetric principal part");
  }
}

// Root and non-acyclic, or the matching error.
void require_root(const ExtendedMatrix& matrix) {
  const Rank3Triple t = tau(matrix);
  if (!classify_nonacyclic(t)) {
    throw NotInScope("tau " + triple_string(t) + " lies in an acyclic mutation class");
  }
  if (!is_root(t)) {
    throw RootRequired("tau " + triple_string(t) + " is not a root; mutate to the root " +
                       triple_string(find_root(t)) + " first");
  }
}

std::vector<std::int64_t> tau_grading(const Rank3Triple& t, std::size_t m) {
  std::vector<std::int64_t> g(m, 0);
  g[0] = t.p;
  g[1] = t.q;
  g[2] = t.r;
  return g;
}

// Upper bound on the term count of prod cluster_i^{[b_ik]_+} (and the minus
// side), used to decide whether materializing the next variable is cheap.
double exchange_size_bound(const Seed& seed, std::size_t k) {
  double plus = 1, minus = 1;
  for (std::size_t i = 0; i < seed.matrix.n(); ++i) {
    const Entry v = seed.matrix.at(i, k);
    if (v == 0) continue;
    const double factor =
        std::pow(static_cast<double>(seed.cluster[i].size()), static_cast<double>(v > 0 ? v : -v));
    (v > 0 ? plus : minus) *= factor;
  }
  return plus + minus;
}

std::string seed_key(const Seed& seed) {
  std::string key;
  for (Entry e : seed.matrix.entries()) key += std::to_string(e) + ",";
  std::vector<std::string> vars;
  for (const auto& p : seed.cluster) vars.push_back(p.to_string());
  std::sort(vars.begin(), vars.end());
  for (const auto& v : vars) key += "|" + v;
  return key;
}

}  // namespace

bool coordinatewise_leq(const Rank3Triple& s, const Rank3Triple& t) {
  return s.p <= t.p && s.q <= t.q && s.r <= t.r;
}

Rank3Triple tau(const ExtendedMatrix& matrix) {
  require_rank3(matrix);
  auto abs = [](Entry v) { return v < 0 ? -v : v; };
  return {abs(matrix.at(1, 2)), abs(matrix.at(2, 0)), abs(matrix.at(0, 1))};
}

Rank3Triple gamma_mu(const Rank3Triple& t, std::size_t i) {
  switch (i) {
    case 0: return {t.p, checked_sub(checked_mul(t.p, t.r), t.q), t.r};
    case 1: return {t.p, t.q, checked_sub(checked_mul(t.p, t.q), t.r)};
    case 2: return {checked_sub(checked_mul(t.q, t.r), t.p), t.q, t.r};
    default: throw DomainError("Gamma generator index must be 1, 2 or 3");
  }
}

std::size_t gamma_index_for_vertex(std::size_t k) {
  switch (k) {
    case 0: return 2;
    case 1: return 0;
    case 2: return 1;
    default: throw DomainError("rank 3 vertex index must be 1, 2 or 3");
  }
}

bool classify_nonacyclic(const Rank3Triple& t) {
  if (t.p < 2 || t.q < 2 || t.r < 2) return false;
  const Integer a = t.p, b = t.q, c = t.r;
  return a * b * c + 4 >= a * a + b * b + c * c;
}

bool is_root(const Rank3Triple& t) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!coordinatewise_leq(t, gamma_mu(t, i))) return false;
  }
  return true;
}

Rank3Triple find_root(const Rank3Triple& t) {
  if (!classify_nonacyclic(t)) {
    throw NotInScope("tau " + triple_string(t) + " lies in an acyclic mutation class");
  }
  Rank3Triple current = t;
  while (true) {
    std::optional<Rank3Triple> best;
    for (std::size_t i = 0; i < 3; ++i) {
      const Rank3Triple image = gamma_mu(current, i);
      if (image.sum() >= current.sum()) continue;
      if (!best || image.sum() < best->sum()) best = image;
    }
    if (!best) return current;
    current = *best;
  }
}

std::vector<std::int64_t> grading_vector(const ExtendedMatrix& matrix) {
  const Rank3Triple t = tau(matrix);
  if (!classify_nonacyclic(t)) {
    throw NotInScope("tau " + triple_string(t) + " lies in an acyclic mutation class");
  }
  std::vector<std::int64_t> g = tau_grading(t, matrix.m());
  for (std::size_t i = 0; i < 3; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < 3; ++j) row += matrix.at(i, j) * g[j];
    if (row != 0) throw InternalError("B G != 0 in row " + std::to_string(i + 1));
  }
  return g;
}

std::int64_t degree_of(const LaurentPoly& p, std::span<const std::int64_t> grading) {
  if (p.is_zero()) throw EmptyPolynomial("the zero polynomial has no degree");
  if (grading.size() != p.nvars()) {
    throw DimensionError("grading has " + std::to_string(grading.size()) + " entries, ring has " +
                         std::to_string(p.nvars()) + " variables");
  }
  auto degree = [&](const LaurentPoly::Term& term) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < grading.size(); ++i) d += term.exponents[i] * grading[i];
    return d;
  };
  const auto terms = p.terms();
  const std::int64_t first = degree(terms.front());
  for (const auto& term : terms) {
    if (degree(term) != first) {
      throw InhomogeneousError(
          LaurentPoly::monomial(terms.front().exponents).to_string() + " has degree " +
          std::to_string(first) + " but " + LaurentPoly::monomial(term.exponents).to_string() +
          " has degree " + std::to_string(degree(term)));
    }
  }
  return first;
}

NormalizedRank3 normalize_rank3(const ExtendedMatrix& matrix) {
  require_rank3(matrix);
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    const ExtendedMatrix candidate = matrix.permuted(perm);
    const Entry b12 = candidate.at(0, 1), b23 = candidate.at(1, 2), b31 = candidate.at(2, 0);
    const bool positive = b12 > 0 && b23 > 0 && b31 > 0;
    const bool negative = b12 < 0 && b23 < 0 && b31 < 0;
    if (!positive && !negative) continue;
    const std::int64_t a = positive ? b12 : -b12;
    const std::int64_t b = positive ? b23 : -b23;
    const std::int64_t c = positive ? b31 : -b31;
    if (a >= b && b >= c) {
      return {positive ? candidate : candidate.negated(), perm, negative, a, b, c};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw NotInScope("the principal part is not an oriented 3-cycle");
}

DegreeAudit degree_audit(const ExtendedMatrix& matrix, std::size_t depth, std::size_t term_cap) {
  require_rank3(matrix);
  require_root(matrix);
  const NormalizedRank3 norm = normalize_rank3(matrix);

  DegreeAudit audit;
  audit.depth = depth;
  audit.threshold = norm.a * norm.c - norm.b - norm.a;
  audit.initial_degrees = {norm.b, norm.c, norm.a};
  audit.exceptions = {"x1", "x2", "x3"};
  if (depth >= 1) audit.exceptions.push_back("z3");

  struct Node {
    ExtendedMatrix matrix;
    std::vector<std::int64_t> degrees;  // mutable variables only
    std::optional<Seed> seed;
    std::vector<std::size_t> word;
  };

  const std::vector<std::int64_t> grading = grading_vector(norm.matrix);
  std::set<std::string> seen;
  Seed initial = Seed::initial(norm.matrix);
  seen.insert(seed_key(initial));
  std::deque<Node> frontier;
  frontier.push_back({norm.matrix, audit.initial_degrees, std::move(initial), {}});

  auto fail = [&](const std::vector<std::size_t>& word, const std::string& what) {
    audit.failures.push_back(word_string(word) + ": " + what);
  };

  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (node.word.size() >= depth) continue;
    const Rank3Triple parent_tau = tau(node.matrix);
    for (std::size_t k = 0; k < 3; ++k) {
      if (!node.word.empty() && node.word.back() == k) continue;
      Node child;
      child.word = node.word;
      child.word.push_back(k);
      child.matrix = mutate_matrix(node.matrix, k);

      std::int64_t plus = 0, minus = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        plus += positive_part(node.matrix.at(i, k)) * node.degrees[i];
        minus += positive_part(-node.matrix.at(i, k)) * node.degrees[i];
      }
      if (plus != minus) {
        fail(child.word, "exchange relation is not homogeneous (" + std::to_string(plus) +
                             " vs " + std::to_string(minus) + ")");
      }
      const std::int64_t degree = plus - node.degrees[k];
      child.degrees = node.degrees;
      child.degrees[k] = degree;

      const Rank3Triple child_tau = tau(child.matrix);
      if (child.degrees != std::vector<std::int64_t>{child_tau.p, child_tau.q, child_tau.r}) {
        fail(child.word, "grading is not tau(B')^T");
      }
      if (!coordinatewise_leq(parent_tau, child_tau)) {
        fail(child.word, "tau decreased from " + triple_string(parent_tau) + " to " +
                             triple_string(child_tau));
      }
      AuditRow row{child.word, child_tau, degree, child.word == std::vector<std::size_t>{2}, false};
      if (!row.exceptional) {
        if (degree <= audit.threshold) {
          fail(child.word, "degree " + std::to_string(degree) + " does not exceed " +
                               std::to_string(audit.threshold));
        }
        if (!audit.min_other_degree || degree < *audit.min_other_degree) {
          audit.min_other_degree = degree;
        }
      }

      bool duplicate = false;
      if (node.seed && exchange_size_bound(*node.seed, k) <= static_cast<double>(term_cap)) {
        Seed next = mutate_seed(*node.seed, k);
        try {
          const std::int64_t actual = degree_of(next.cluster[k], grading);
          if (actual != degree) {
            fail(child.word, "materialized degree " + std::to_string(actual) + " differs from " +
                                 std::to_string(degree));
          }
        } catch (const InhomogeneousError& e) {
          fail(child.word, e.what());
        }
        row.materialized = true;
        duplicate = !seen.insert(seed_key(next)).second;
        child.seed = std::move(next);
      }
      audit.rows.push_back(std::move(row));
      if (!duplicate) frontier.push_back(std::move(child));
    }
  }
  return audit;
}

WitnessReport construct_Y(const ExtendedMatrix& matrix, std::size_t audit_depth) {
  require_rank3(matrix);
  require_root(matrix);
  WitnessReport report;
  report.normalized = normalize_rank3(matrix);
  const NormalizedRank3& norm = report.normalized;
  const ExtendedMatrix& b = norm.matrix;
  const std::size_t m = b.m();
  const std::int64_t a_ = norm.a, b_ = norm.b, c_ = norm.c;

  const LaurentPoly numerator = xtilde({1, 0, 1}, b);
  auto y = exact_divide(numerator, LaurentPoly::variable(m, 1, checked_exponent(b_)));
  if (!y) throw InternalError("x~[(1,0,1)] is not divisible by x2^b");
  report.y = std::move(*y);

  auto alpha = [&](std::size_t i, int sign) {
    ExponentVector e(m, 0);
    for (std::size_t j = 3; j < m; ++j) e[j] = checked_exponent(positive_part(sign * b.at(j, i)));
    return e;
  };
  auto term = [&](const ExponentVector& alpha_1, const ExponentVector& alpha_3, std::int64_t e1,
                  std::int64_t e2, std::int64_t e3) {
    ExponentVector e(m, 0);
    for (std::size_t j = 3; j < m; ++j) e[j] = alpha_1[j] + alpha_3[j];
    e[0] = checked_exponent(e1 - 1);
    e[1] = checked_exponent(e2);
    e[2] = checked_exponent(e3 - 1);
    return LaurentPoly::monomial(e);
  };
  const LaurentPoly closed = term(alpha(0, -1), alpha(2, -1), c_, a_ - b_, 0) +
                             term(alpha(0, -1), alpha(2, 1), 0, a_, 0) +
                             term(alpha(0, 1), alpha(2, 1), 0, 0, c_);
  if (closed != report.y) {
    throw InternalError("x~[(1,0,1)]/x2^b = " + report.y.to_string() +
                        " disagrees with the closed form " + closed.to_string());
  }

  std::vector<std::size_t> back(m);
  for (std::size_t i = 0; i < m; ++i) back[i] = i < 3 ? norm.permutation[i] : i;
  report.y_original = report.y.relabeled(back, m);

  report.degree = degree_of(report.y, grading_vector(b));
  if (report.degree != a_ * c_ - b_ - a_) {
    throw InternalError("Y has degree " + std::to_string(report.degree) + ", expected " +
                        std::to_string(a_ * c_ - b_ - a_));
  }
  report.membership = check_Ux_membership(report.y, b);
  report.depth_audit = degree_audit(matrix, audit_depth);
  return report;
}

}  // namespace clusterx
