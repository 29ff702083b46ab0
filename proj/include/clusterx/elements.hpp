#pragma once

// The sequence-of-sequences construction. For a in Z^n, a tuple s assigns to
// every mutable vertex i a 0/1 sequence of length [a_i]_+. Summing a
// monomial weight over all tuples gives z[a]; restricting to tuples with
// s_i . complement(s_j) = 0 on every arrow i -> j of Q_B gives x~[a].

#include <cstddef>
#include <cstdint>
#include <vector>

#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"

namespace clusterx {

using AVector = std::vector<std::int64_t>;
using BitSeq = std::vector<std::uint8_t>;

BitSeq complement(const BitSeq& t);
std::int64_t weight(const BitSeq& t);
// sum_{r <= min(len)} t_r t'_r
std::int64_t dot(const BitSeq& t, const BitSeq& u);

struct GccTuple {
  std::vector<BitSeq> s;  // one sequence per mutable vertex

  bool operator==(const GccTuple&) const = default;
  auto operator<=>(const GccTuple&) const = default;
};

// Default cap on sum_i [a_i]_+; |S_all| = 2^(that sum).
inline constexpr std::size_t kDefaultGccCap = 24;

struct EnumerationLimits {
  std::size_t max_total_length = kDefaultGccCap;
};

// Lex order over the concatenation s_1 || s_2 || ... || s_n, with s_{1,1}
// the most significant bit.
std::vector<GccTuple> enumerate_S_all(const AVector& a,
                                      const EnumerationLimits& limits = {});
std::vector<GccTuple> enumerate_S_gcc(const AVector& a, const ExtendedMatrix& matrix,
                                      const EnumerationLimits& limits = {});
bool is_gcc(const GccTuple& s, const ExtendedMatrix& matrix);

// Exponent vector (length m) contributed by one tuple, including the
// prod x_l^{-a_l} prefactor.
ExponentVector tuple_exponents(const GccTuple& s, const AVector& a,
                               const ExtendedMatrix& matrix);

LaurentPoly xtilde(const AVector& a, const ExtendedMatrix& matrix,
                   const EnumerationLimits& limits = {});
// prod_i x_i^<-a_i>: x_i^{-a_i} when a_i <= 0 and (x'_i)^{a_i} otherwise.
LaurentPoly z_element(const AVector& a, const ExtendedMatrix& matrix);

struct PositiveFactorization {
  ExponentVector monomial;     // x_i^{[-a_i]_+}, length n
  std::vector<AVector> layers; // f_k(a_+) for k = 1..max a_i
};

// x~[a] = monomial * prod_k x~[layer_k], and the same for z.
PositiveFactorization factor_positive(const AVector& a);
// One vector per weakly connected component of Q_B (isolated vertices are
// components of their own), ordered by smallest vertex.
std::vector<AVector> factor_components(const AVector& a, const ExtendedMatrix& matrix);
std::vector<std::vector<std::size_t>> weak_components(const ExtendedMatrix& matrix);

// Closed form valid for a in {0,1}^n: summation over s in {0,1}^n with
// s <= a and (s_i, a_j - s_j) != (1,1) on every arrow i -> j of Q_B.
LaurentPoly xtilde_01_formula(const AVector& a, const ExtendedMatrix& matrix);

}  // namespace clusterx
