#pragma once

// Rank 3 skew-symmetric seeds: the tau triple and its Gamma action, the
// non-acyclicity test, roots, the canonical grading and the element Y that
// lies in the upper cluster algebra but not in the cluster algebra.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"
#include "clusterx/upper.hpp"

namespace clusterx {

// (|b_23|, |b_31|, |b_12|).
struct Rank3Triple {
  std::int64_t p = 0, q = 0, r = 0;

  bool operator==(const Rank3Triple&) const = default;
  auto operator<=>(const Rank3Triple&) const = default;  // lex, for sorting only
  std::int64_t sum() const { return p + q + r; }
};

// Coordinatewise partial order.
bool coordinatewise_leq(const Rank3Triple& s, const Rank3Triple& t);

Rank3Triple tau(const ExtendedMatrix& matrix);

// i in {0,1,2} stands for mu_1, mu_2, mu_3:
// mu_1(x,y,z) = (x, xz-y, z), mu_2 = (x, y, xy-z), mu_3 = (yz-x, y, z).
Rank3Triple gamma_mu(const Rank3Triple& t, std::size_t i);

// The generator mirroring matrix mutation at vertex k (0-based):
// tau(mutate_matrix(M, k)) == gamma_mu(tau(M), gamma_index_for_vertex(k)).
std::size_t gamma_index_for_vertex(std::size_t k);

bool classify_nonacyclic(const Rank3Triple& t);
// Root condition: t <= mu_i(t) coordinatewise for every i.
bool is_root(const Rank3Triple& t);
// NotInScope unless classify_nonacyclic(t).
Rank3Triple find_root(const Rank3Triple& t);

// tau(B)^T followed by zeros for the frozen variables; checks B G = 0.
std::vector<std::int64_t> grading_vector(const ExtendedMatrix& matrix);
// Common degree of all monomials; InhomogeneousError names two monomials of
// different degree.
std::int64_t degree_of(const LaurentPoly& p, std::span<const std::int64_t> grading);

// The normal form used for Y: B = [[0,a,-c],[-a,0,b],[c,-b,0]] with
// a >= b >= c, obtained from the input by renaming the mutable indices
// (new index i is old permutation[i]) and possibly negating the whole matrix.
struct NormalizedRank3 {
  ExtendedMatrix matrix;
  std::array<std::size_t, 3> permutation{};
  bool negated = false;
  std::int64_t a = 0, b = 0, c = 0;
};

NormalizedRank3 normalize_rank3(const ExtendedMatrix& matrix);

struct AuditRow {
  std::vector<std::size_t> word;  // 0-based mutation indices, applied left to right
  Rank3Triple tau;                // of the seed reached by the word
  std::int64_t new_variable_degree = 0;
  bool exceptional = false;       // the variable z3 = mu_3(x3)
  bool materialized = false;      // polynomial computed and its degree confirmed
};

struct DegreeAudit {
  std::size_t depth = 0;
  std::int64_t threshold = 0;  // ac - b - a
  std::vector<std::int64_t> initial_degrees;  // (b, c, a)
  std::vector<AuditRow> rows;
  std::optional<std::int64_t> min_other_degree;
  std::vector<std::string> exceptions;  // among x1, x2, x3, z3
  std::vector<std::string> failures;    // empty when every assertion held
  bool passed() const { return failures.empty(); }
};

inline constexpr std::size_t kAuditTermCap = 4000;

// BFS over mutation words without immediate repeats, starting from the
// normalized seed. Degrees are tracked through the grading; variables are
// also materialized while their size stays under term_cap.
DegreeAudit degree_audit(const ExtendedMatrix& matrix, std::size_t depth,
                         std::size_t term_cap = kAuditTermCap);

struct WitnessReport {
  NormalizedRank3 normalized;
  LaurentPoly y;           // in the normalized variables
  LaurentPoly y_original;  // the same element in the input's variables
  std::int64_t degree = 0;
  MembershipReport membership;
  DegreeAudit depth_audit;
};

WitnessReport construct_Y(const ExtendedMatrix& matrix, std::size_t audit_depth = 3);

}  // namespace clusterx
