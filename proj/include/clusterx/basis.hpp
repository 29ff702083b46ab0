#pragma once

// Acyclic seeds: the lowest-monomial map f(a) = exponent of the lex-lowest
// Laurent monomial of z[a], its inverse, and expansion of elements in the
// standard monomial basis {z[b]}.
//
// The lex order is x_{r_1} > x_{r_2} > ... > x_{r_n} > 1 where r is the
// topological order of Q_B (topological_relabel). Vectors are always indexed
// by the original vertex numbers.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "clusterx/elements.hpp"
#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"

namespace clusterx {

struct LowestMapImages {
  std::vector<std::size_t> order;  // r_1, ..., r_n
  std::vector<AVector> positive;   // positive[k] = f(e_k)
  std::vector<AVector> negative;   // negative[k] = f(-e_k)
};

// NotAcyclic unless Q_B is acyclic.
LowestMapImages lowest_map_images(const ExtendedMatrix& matrix);

// f(a), by coordinate-wise linearity from the image table.
AVector apply_lowest_map(const LowestMapImages& images, const AVector& a);

// The unique b with f(b) = c, by the triangular recursion along the order.
AVector invert_lowest(const LowestMapImages& images, const AVector& c);

struct Expansion {
  std::vector<std::size_t> order;
  // b -> u(b), a Laurent polynomial in the frozen variables only.
  std::map<AVector, LaurentPoly> terms;

  bool operator==(const Expansion&) const = default;
};

struct ExpansionOptions {
  // Greedy steps allowed; zero means 10 times the number of terms of the input.
  std::size_t max_iterations = 0;
};

// Greedy expansion p = sum_b u(b) z[b]: repeatedly take the lowest mutable
// monomial of p, invert f to get b and cancel it with a multiple of z[b].
// NotInSpan when the cap is hit or a coefficient does not divide.
Expansion expand_standard(const LaurentPoly& p, const ExtendedMatrix& matrix,
                          const ExpansionOptions& options = {});

// sum_b u(b) z[b].
LaurentPoly reassemble(const Expansion& expansion, const ExtendedMatrix& matrix);

// Every b != a in the support has b_i <= a_i for all i and
// sum [b_i]_+ < sum [a_i]_+, and the coefficient at a is 1.
bool check_expansion_support(const Expansion& expansion, const AVector& a);

// z[a] = sum_b v(b) x~[b], obtained by solving the unitriangular system that
// expand_standard produces for the x~'s.
std::map<AVector, LaurentPoly> z_in_xtilde_basis(const AVector& a, const ExtendedMatrix& matrix,
                                                 const EnumerationLimits& limits = {});

}  // namespace clusterx
