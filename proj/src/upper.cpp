#include "clusterx/upper.hpp"

#include <string>

#include "clusterx/error.hpp"

namespace clusterx {

LaurentPoly adjacency_divisor(const ExtendedMatrix& matrix, std::size_t k) {
  return exchange_binomial(matrix, k);
}

AdjacentCheck in_adjacent_ring(const LaurentPoly& p, const ExtendedMatrix& matrix,
                               std::size_t k) {
  if (k >= matrix.n()) {
    throw DomainError("direction " + std::to_string(k + 1) + " is not mutable");
  }
  if (p.nvars() != matrix.m()) {
    throw DimensionError("polynomial has " + std::to_string(p.nvars()) +
                         " variables, seed has " + std::to_string(matrix.m()));
  }
  const LaurentPoly divisor = adjacency_divisor(matrix, k);
  AdjacentCheck out;
  for (const auto& [d, coefficient] : coefficients_in_variable(p, k)) {
    if (d >= 0) break;
    LaurentPoly rest = coefficient;
    for (Exponent step = 0; step < -d; ++step) {
      DivisionResult division = divide_with_remainder(rest, divisor);
      if (!division.remainder.is_zero()) {
        if (division.quotient * divisor + division.remainder != rest) {
          throw InternalError("division witness does not recombine");
        }
        out.passes = false;
        out.failing_degree = d;
        out.remainder = std::move(division.remainder);
        return out;
      }
      rest = std::move(division.quotient);
    }
  }
  return out;
}

MembershipReport check_Ux_membership(const LaurentPoly& p, const ExtendedMatrix& matrix) {
  MembershipReport report;
  report.coprime = is_coprime_seed(matrix);
  report.full_rank = matrix_rank(matrix) == matrix.n();
  report.verdict = report.is_laurent_initial;
  for (std::size_t k = 0; k < matrix.n(); ++k) {
    DirectionRecord record{k, adjacency_divisor(matrix, k), in_adjacent_ring(p, matrix, k)};
    report.verdict = report.verdict && record.check.passes;
    report.per_direction.push_back(std::move(record));
  }
  return report;
}

}  // namespace clusterx
