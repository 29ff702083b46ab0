#pragma once

// Seeds of geometric type: extended exchange matrices, matrix and seed
// mutation, the digraphs Q_B and Q_B~, and the acyclicity / coprimality
// predicates.
//
// Indices are 0-based throughout the library. Variables 0..n-1 are mutable,
// n..m-1 are frozen.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "clusterx/laurent.hpp"

namespace clusterx {

using Entry = std::int64_t;

class ExtendedMatrix {
 public:
  ExtendedMatrix() = default;
  // Row-major m x n entries. Validates shape, m >= n >= 1, and
  // sign-skew-symmetry of the principal part; ValidationError names the
  // offending (i,j) (1-based, as users write them).
  ExtendedMatrix(std::size_t m, std::size_t n, std::vector<Entry> entries);
  static ExtendedMatrix from_rows(const std::vector<std::vector<Entry>>& rows,
                                  std::size_t n);
  static ExtendedMatrix square(const std::vector<std::vector<Entry>>& rows) {
    return from_rows(rows, rows.size());
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t frozen_count() const { return m_ - n_; }

  // Entry of the m x n matrix itself (i < m, j < n).
  Entry at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  // Entry of the sign-extended m x m matrix: b_ij = -b_ji for i < n <= j and
  // zero on the frozen x frozen block.
  Entry extended(std::size_t i, std::size_t j) const;

  std::span<const Entry> entries() const { return entries_; }
  std::vector<std::vector<Entry>> rows() const;

  bool is_skew_symmetric() const;
  // Same matrix with mutable indices renamed: new index i is old order[i].
  ExtendedMatrix permuted(std::span<const std::size_t> order) const;
  ExtendedMatrix negated() const;

  bool operator==(const ExtendedMatrix&) const = default;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Entry> entries_;
};

// Throws ValidationError unless the principal part is sign-skew-symmetric.
void check_sign_skew_symmetric(const ExtendedMatrix& matrix);

ExtendedMatrix mutate_matrix(const ExtendedMatrix& matrix, std::size_t k);

struct Digraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted

  bool has_edge(std::size_t i, std::size_t j) const;
  bool operator==(const Digraph&) const = default;
};

Digraph digraph_QB(const ExtendedMatrix& matrix);
Digraph digraph_QBtilde(const ExtendedMatrix& matrix);

bool is_acyclic(const ExtendedMatrix& matrix);
bool is_coprime_seed(const ExtendedMatrix& matrix);
// Rank over Q of the m x n matrix; full rank means rank == n.
std::size_t matrix_rank(const ExtendedMatrix& matrix);

// Topological order of Q_B: order[i] is the vertex that receives label i.
// Every arrow goes from an earlier to a later position; ties are broken by
// the smallest vertex index. NotAcyclic on cyclic input.
std::vector<std::size_t> topological_relabel(const ExtendedMatrix& matrix);

// y_j = prod_{i >= n} x_i^{b_ij}, as Laurent monomials in all m variables.
std::vector<LaurentPoly> coefficient_tuple(const ExtendedMatrix& matrix);

// prod_i x_i^{[b_ik]_+} + prod_i x_i^{[-b_ik]_+} over all m variables.
LaurentPoly exchange_binomial(const ExtendedMatrix& matrix, std::size_t k);
// x'_k from the initial seed, i.e. exchange_binomial / x_k.
LaurentPoly adjacent_variable(const ExtendedMatrix& matrix, std::size_t k);

struct Seed {
  ExtendedMatrix matrix;
  std::vector<LaurentPoly> cluster;  // n mutable variables in the initial ones
  std::vector<std::size_t> history;

  static Seed initial(const ExtendedMatrix& matrix);

  // Matrix equality plus equality of the cluster as a multiset. History is
  // ignored.
  bool operator==(const Seed& other) const;
};

Seed mutate_seed(const Seed& seed, std::size_t k);

}  // namespace clusterx
