#pragma once

// Membership in U_x, the intersection of the initial Laurent ring with the n
// Laurent rings of the one-step adjacent clusters.

#include <cstddef>
#include <optional>
#include <vector>

#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"

namespace clusterx {

// A = x'_k x_k = prod x_i^{[b_ik]_+} + prod x_i^{[-b_ik]_+}.
LaurentPoly adjacency_divisor(const ExtendedMatrix& matrix, std::size_t k);

struct AdjacentCheck {
  bool passes = true;
  std::optional<Exponent> failing_degree;  // most negative d that fails
  // Nonzero remainder of c_d after dividing out as many copies of A as
  // possible, certifying the failure.
  std::optional<LaurentPoly> remainder;
};

// Writes p = sum_d c_d x_k^d and asks that A^{|d|} divide c_d for every
// d < 0, which is what membership in Z[x_1^{+-1}, .., x'_k^{+-1}, ..] amounts
// to after substituting x_k = A / x'_k.
AdjacentCheck in_adjacent_ring(const LaurentPoly& p, const ExtendedMatrix& matrix,
                               std::size_t k);

struct DirectionRecord {
  std::size_t k;
  LaurentPoly adjacency_divisor;
  AdjacentCheck check;
};

struct MembershipReport {
  bool is_laurent_initial = true;
  std::vector<DirectionRecord> per_direction;
  bool coprime = false;    // seed is coprime
  bool full_rank = false;  // rank of the extended matrix equals n
  bool verdict = false;
};

MembershipReport check_Ux_membership(const LaurentPoly& p, const ExtendedMatrix& matrix);

}  // namespace clusterx
