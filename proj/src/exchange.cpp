#include "clusterx/exchange.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "clusterx/error.hpp"

namespace clusterx {

namespace {

std::string position(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Entry checked_entry(Integer value) {
  if (value > std::numeric_limits<Entry>::max() ||
      value < std::numeric_limits<Entry>::min()) {
    throw OverflowError("matrix entry overflow during mutation");
  }
  return static_cast<Entry>(value);
}

Entry positive_part(Entry v) { return v > 0 ? v : 0; }

}  // namespace

ExtendedMatrix::ExtendedMatrix(std::size_t m, std::size_t n, std::vector<Entry> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (n_ < 1) throw ValidationError("rank n must be at least 1");
  if (m_ < n_) {
    throw ValidationError("m = " + std::to_string(m_) + " is smaller than n = " +
                          std::to_string(n_));
  }
  if (entries_.size() != m_ * n_) {
    throw ValidationError("expected " + std::to_string(m_ * n_) + " entries, got " +
                          std::to_string(entries_.size()));
  }
  check_sign_skew_symmetric(*this);
}

ExtendedMatrix ExtendedMatrix::from_rows(const std::vector<std::vector<Entry>>& rows,
                                         std::size_t n) {
  std::vector<Entry> flat;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw ValidationError("row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return ExtendedMatrix(rows.size(), n, std::move(flat));
}

void check_sign_skew_symmetric(const ExtendedMatrix& matrix) {
  for (std::size_t i = 0; i < matrix.n(); ++i) {
    if (matrix.at(i, i) != 0) {
      throw ValidationError("diagonal entry " + position(i, i) + " is nonzero");
    }
    for (std::size_t j = i + 1; j < matrix.n(); ++j) {
      Entry a = matrix.at(i, j);
      Entry b = matrix.at(j, i);
      bool ok = (a == 0 && b == 0) || (a > 0 && b < 0) || (a < 0 && b > 0);
      if (!ok) {
        throw ValidationError("entries " + position(i, j) + " = " + std::to_string(a) +
                              " and " + position(j, i) + " = " + std::to_string(b) +
                              " are not sign-skew-symmetric");
      }
    }
  }
}

Entry ExtendedMatrix::extended(std::size_t i, std::size_t j) const {
  if (j < n_) return at(i, j);
  if (i < n_) return -at(j, i);
  return 0;
}

std::vector<std::vector<Entry>> ExtendedMatrix::rows() const {
  std::vector<std::vector<Entry>> out(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  }
  return out;
}

bool ExtendedMatrix::is_skew_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j) != -at(j, i)) return false;
    }
  }
  return true;
}

ExtendedMatrix ExtendedMatrix::permuted(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw DimensionError("permutation of wrong length");
  std::vector<std::size_t> row_source(m_);
  for (std::size_t i = 0; i < m_; ++i) row_source[i] = i < n_ ? order[i] : i;
  std::vector<Entry> out(m_ * n_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = at(row_source[i], order[j]);
  }
  return ExtendedMatrix(m_, n_, std::move(out));
}

ExtendedMatrix ExtendedMatrix::negated() const {
  std::vector<Entry> out(entries_);
  for (auto& v : out) v = -v;
  return ExtendedMatrix(m_, n_, std::move(out));
}

ExtendedMatrix mutate_matrix(const ExtendedMatrix& matrix, std::size_t k) {
  const std::size_t m = matrix.m();
  const std::size_t n = matrix.n();
  if (k >= n) {
    throw DomainError("mutation index " + std::to_string(k + 1) + " outside 1.." +
                      std::to_string(n));
  }
  std::vector<Entry> out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Entry b = matrix.at(i, j);
      if (i == k || j == k) {
        out[i * n + j] = checked_entry(-Integer(b));
        continue;
      }
      const Integer bik = matrix.at(i, k);
      const Integer bkj = matrix.at(k, j);
      Integer delta = (abs(bik) * bkj + bik * abs(bkj)) / 2;
      out[i * n + j] = checked_entry(Integer(b) + delta);
    }
  }
  try {
    return ExtendedMatrix(m, n, std::move(out));
  } catch (const ValidationError& e) {
    throw IllDefinedMutation("mutation at " + std::to_string(k + 1) +
                             " leaves a principal part that is not sign-skew-symmetric (" +
                             e.what() + ")");
  }
}

bool Digraph::has_edge(std::size_t i, std::size_t j) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Digraph digraph_QB(const ExtendedMatrix& matrix) {
  Digraph g{matrix.n(), {}};
  for (std::size_t i = 0; i < matrix.n(); ++i) {
    for (std::size_t j = 0; j < matrix.n(); ++j) {
      if (matrix.at(i, j) > 0) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Digraph digraph_QBtilde(const ExtendedMatrix& matrix) {
  Digraph g{matrix.m(), {}};
  for (std::size_t i = 0; i < matrix.m(); ++i) {
    for (std::size_t j = 0; j < matrix.m(); ++j) {
      if (matrix.extended(i, j) > 0) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

bool is_acyclic(const ExtendedMatrix& matrix) {
  try {
    topological_relabel(matrix);
    return true;
  } catch (const NotAcyclic&) {
    return false;
  }
}

std::vector<std::size_t> topological_relabel(const ExtendedMatrix& matrix) {
  const std::size_t n = matrix.n();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix.at(i, j) > 0) ++indegree[j];
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix.at(v, j) > 0 && --indegree[j] == 0) ready.push(j);
    }
  }
  if (order.size() != n) throw NotAcyclic("Q_B contains an oriented cycle");
  return order;
}

bool is_coprime_seed(const ExtendedMatrix& matrix) {
  const std::size_t m = matrix.m();
  const std::size_t n = matrix.n();
  auto is_zero_column = [&](std::size_t j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (matrix.at(i, j) != 0) return false;
    }
    return true;
  };
  for (std::size_t j1 = 0; j1 < n; ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
      const bool z1 = is_zero_column(j1);
      const bool z2 = is_zero_column(j2);
      if (z1 && z2) return false;  // ratio 1/1
      if (z1 || z2) continue;
      // Candidate ratio col1 = (p/q) col2 from the first row where col2 != 0.
      Integer p = 0, q = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (matrix.at(i, j2) != 0) {
          p = matrix.at(i, j1);
          q = matrix.at(i, j2);
          break;
        }
      }
      if (p == 0) continue;
      bool proportional = true;
      for (std::size_t i = 0; i < m && proportional; ++i) {
        proportional = Integer(matrix.at(i, j1)) * q == p * Integer(matrix.at(i, j2));
      }
      if (!proportional) continue;
      Integer g = gcd(p, q);
      p /= g;
      q /= g;
      if (p % 2 != 0 && q % 2 != 0) return false;
    }
  }
  return true;
}

std::size_t matrix_rank(const ExtendedMatrix& matrix) {
  // Fraction-free Gaussian elimination over Z.
  std::vector<std::vector<Integer>> a(matrix.m(), std::vector<Integer>(matrix.n()));
  for (std::size_t i = 0; i < matrix.m(); ++i) {
    for (std::size_t j = 0; j < matrix.n(); ++j) a[i][j] = matrix.at(i, j);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < matrix.n() && rank < matrix.m(); ++col) {
    std::size_t pivot = rank;
    while (pivot < matrix.m() && a[pivot][col] == 0) ++pivot;
    if (pivot == matrix.m()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < matrix.m(); ++r) {
      if (a[r][col] == 0) continue;
      Integer f = a[r][col];
      Integer pv = a[rank][col];
      for (std::size_t c = col; c < matrix.n(); ++c) a[r][c] = a[r][c] * pv - a[rank][c] * f;
    }
    ++rank;
  }
  return rank;
}

std::vector<LaurentPoly> coefficient_tuple(const ExtendedMatrix& matrix) {
  std::vector<LaurentPoly> out;
  out.reserve(matrix.n());
  for (std::size_t j = 0; j < matrix.n(); ++j) {
    ExponentVector e(matrix.m(), 0);
    for (std::size_t i = matrix.n(); i < matrix.m(); ++i) {
      e[i] = checked_exponent(matrix.at(i, j));
    }
    out.push_back(LaurentPoly::monomial(std::move(e)));
  }
  return out;
}

LaurentPoly exchange_binomial(const ExtendedMatrix& matrix, std::size_t k) {
  if (k >= matrix.n()) throw DomainError("exchange index out of range");
  ExponentVector plus(matrix.m(), 0), minus(matrix.m(), 0);
  for (std::size_t i = 0; i < matrix.m(); ++i) {
    plus[i] = checked_exponent(positive_part(matrix.at(i, k)));
    minus[i] = checked_exponent(positive_part(-matrix.at(i, k)));
  }
  return LaurentPoly::monomial(std::move(plus)) + LaurentPoly::monomial(std::move(minus));
}

LaurentPoly adjacent_variable(const ExtendedMatrix& matrix, std::size_t k) {
  return exchange_binomial(matrix, k) * LaurentPoly::variable(matrix.m(), k, -1);
}

Seed Seed::initial(const ExtendedMatrix& matrix) {
  Seed seed{matrix, {}, {}};
  for (std::size_t i = 0; i < matrix.n(); ++i) {
    seed.cluster.push_back(LaurentPoly::variable(matrix.m(), i));
  }
  return seed;
}

bool Seed::operator==(const Seed& other) const {
  if (!(matrix == other.matrix) || cluster.size() != other.cluster.size()) return false;
  auto sorted = [](const std::vector<LaurentPoly>& c) {
    std::vector<std::string> keys;
    for (const auto& p : c) keys.push_back(p.to_string());
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  return sorted(cluster) == sorted(other.cluster);
}

Seed mutate_seed(const Seed& seed, std::size_t k) {
  const ExtendedMatrix& b = seed.matrix;
  if (k >= b.n()) {
    throw DomainError("mutation index " + std::to_string(k + 1) + " outside 1.." +
                      std::to_string(b.n()));
  }
  ExtendedMatrix mutated = mutate_matrix(b, k);
  const std::size_t m = b.m();
  // Frozen variables contribute plain monomials; mutable ones contribute
  // powers of the current cluster expressions.
  ExponentVector frozen_plus(m, 0), frozen_minus(m, 0);
  LaurentPoly plus = LaurentPoly::one(m);
  LaurentPoly minus = LaurentPoly::one(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Entry v = b.at(i, k);
    if (v == 0) continue;
    if (i >= b.n()) {
      (v > 0 ? frozen_plus : frozen_minus)[i] = checked_exponent(v > 0 ? v : -v);
      continue;
    }
    LaurentPoly power = seed.cluster[i].pow(static_cast<unsigned>(v > 0 ? v : -v));
    (v > 0 ? plus : minus) *= power;
  }
  LaurentPoly numerator = plus.shifted(frozen_plus) + minus.shifted(frozen_minus);
  auto next = exact_divide(numerator, seed.cluster[k]);
  if (!next) {
    throw InternalError("exchange relation at " + std::to_string(k + 1) +
                        " is not Laurent; this contradicts the Laurent phenomenon");
  }
  Seed out{std::move(mutated), seed.cluster, seed.history};
  out.cluster[k] = std::move(*next);
  out.history.push_back(k);
  return out;
}

}  // namespace clusterx
