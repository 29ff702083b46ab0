#pragma once

// Sparse multivariate Laurent polynomials with arbitrary-precision integer
// coefficients. This is the ambient ring for every other module: cluster
// variables, frozen coefficients and the combinatorial elements all live here.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace clusterx {

using Integer = boost::multiprecision::cpp_int;
using Exponent = std::int32_t;
using ExponentVector = boost::container::small_vector<Exponent, 6>;

// Narrows an exponent computed in 64 bits; OverflowError outside int32.
Exponent checked_exponent(std::int64_t value);

class LaurentPoly {
 public:
  struct Term {
    ExponentVector exponents;
    Integer coefficient;

    bool operator==(const Term&) const = default;
  };

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Integer& c);
  static LaurentPoly one(std::size_t nvars) { return constant(nvars, 1); }
  // x_var^power, with var 0-based.
  static LaurentPoly variable(std::size_t nvars, std::size_t var,
                              Exponent power = 1);
  static LaurentPoly monomial(ExponentVector exponents, const Integer& c = 1);
  // Combines like terms and drops zeros; input order does not matter.
  static LaurentPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  // Terms in canonical order: ascending lex on the full exponent vector.
  std::span<const Term> terms() const { return terms_; }
  const Term& leading_term() const;  // lex-largest
  Integer coefficient(const ExponentVector& exponents) const;

  // Componentwise minimum / maximum exponent over all terms (zeros for the
  // zero polynomial).
  ExponentVector min_exponents() const;
  ExponentVector max_exponents() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  // Multiplies by the monomial x^shift (cheap, no re-sorting needed).
  LaurentPoly shifted(const ExponentVector& shift) const;
  LaurentPoly scaled(const Integer& c) const;
  LaurentPoly pow(unsigned exponent) const;

  // Renames variables: variable i of *this becomes variable mapping[i] of a
  // ring with target_nvars variables.
  LaurentPoly relabeled(std::span<const std::size_t> mapping,
                        std::size_t target_nvars) const;

  bool operator==(const LaurentPoly& other) const = default;

  // Canonical text, e.g. "x1^-1*x2^-1*x3^2 + 2*x1*x2 - 3". See README for the
  // grammar; parse() accepts exactly what to_string() emits (and a bit more
  // whitespace).
  std::string to_string() const;
  // "(numerator)/(denominator)" with a monomial denominator, for humans.
  std::string to_fraction_string() const;
  static LaurentPoly parse(std::string_view text, std::size_t nvars);

 private:
  friend class TermAccumulator;
  void require_same_ring(const LaurentPoly& other, const char* op) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Map-backed accumulator that collects terms and canonicalizes once at the end.
// Used by every summation over combinatorial index sets.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t nvars) : nvars_(nvars) {}
  void add(const ExponentVector& exponents, const Integer& c = 1);
  void add(const LaurentPoly& p);
  LaurentPoly finish() &&;

 private:
  std::size_t nvars_;
  std::map<ExponentVector, Integer> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

struct DivisionResult {
  LaurentPoly quotient;
  LaurentPoly remainder;  // p == quotient * d + remainder
};

// Multivariate division in the Laurent ring: both operands are shifted to
// ordinary polynomials with every per-variable minimum exponent equal to 0,
// then reduced by lex-leading terms. The remainder is zero iff d divides p.
DivisionResult divide_with_remainder(const LaurentPoly& p, const LaurentPoly& d);
std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& d);

// p = sum_d c_d * x_var^d, every c_d free of x_var.
std::map<Exponent, LaurentPoly> coefficients_in_variable(const LaurentPoly& p,
                                                         std::size_t var);

struct LowestMonomial {
  ExponentVector exponents;  // length = order.size(); indexed by variable
  LaurentPoly coefficient;   // involves only the remaining variables
};

// Lex-smallest monomial in the variables listed in `order` (first entry most
// significant), with the full coefficient collected from the other variables.
LowestMonomial lowest_monomial(const LaurentPoly& p,
                               std::span<const std::size_t> order);

}  // namespace clusterx
