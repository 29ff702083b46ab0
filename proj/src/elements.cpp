#include "clusterx/elements.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "clusterx/error.hpp"

namespace clusterx {

namespace {

std::int64_t positive_part(std::int64_t v) { return v > 0 ? v : 0; }

void require_length(const AVector& a, const ExtendedMatrix& matrix) {
  if (a.size() != matrix.n()) {
    throw DimensionError("a has length " + std::to_string(a.size()) + ", rank is " +
                         std::to_string(matrix.n()));
  }
}

// Sequence lengths [a_i]_+ with the size cap enforced.
std::vector<std::size_t> sequence_lengths(const AVector& a, const EnumerationLimits& limits) {
  std::vector<std::size_t> lengths(a.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lengths[i] = static_cast<std::size_t>(positive_part(a[i]));
    total += lengths[i];
    if (lengths[i] > 62 || total > limits.max_total_length) {
      throw CapExceeded("sum of [a_i]_+ exceeds the enumeration cap of " +
                        std::to_string(limits.max_total_length));
    }
  }
  return lengths;
}

// Compact form of a tuple: bit r of masks[i] is s_{i,r+1}.
struct MaskTuple {
  std::vector<std::uint64_t> masks;
};

std::uint64_t low_bits(std::size_t count) {
  return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

// Walks S_all in the documented lex order, handing each tuple to visit().
template <typename Visit>
void for_each_tuple(const std::vector<std::size_t>& lengths, Visit&& visit) {
  const std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  std::vector<std::size_t> offsets(lengths.size());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    offsets[i] = offset;
    offset += lengths[i];
  }
  MaskTuple tuple{std::vector<std::uint64_t>(lengths.size(), 0)};
  const std::uint64_t count = std::uint64_t{1} << total;
  for (std::uint64_t counter = 0; counter < count; ++counter) {
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      std::uint64_t mask = 0;
      for (std::size_t r = 0; r < lengths[i]; ++r) {
        const std::size_t position = offsets[i] + r;
        if ((counter >> (total - 1 - position)) & 1U) mask |= std::uint64_t{1} << r;
      }
      tuple.masks[i] = mask;
    }
    visit(tuple);
  }
}

struct ArrowWeights {
  std::size_t tail, head;
  std::int64_t tail_power;  // b_ij, multiplies |complement(s_j)|
  std::int64_t head_power;  // -b_ji, multiplies |s_i|
};

std::vector<ArrowWeights> arrow_weights(const ExtendedMatrix& matrix) {
  std::vector<ArrowWeights> out;
  for (const auto& [i, j] : digraph_QBtilde(matrix).edges) {
    out.push_back({i, j, matrix.extended(i, j), -matrix.extended(j, i)});
  }
  return out;
}

bool masks_gcc(const MaskTuple& t, const std::vector<std::size_t>& lengths,
               const Digraph& qb) {
  for (const auto& [i, j] : qb.edges) {
    const std::uint64_t overlap =
        t.masks[i] & ~t.masks[j] & low_bits(std::min(lengths[i], lengths[j]));
    if (overlap != 0) return false;
  }
  return true;
}

ExponentVector masks_exponents(const MaskTuple& t, const std::vector<std::size_t>& lengths,
                               const AVector& a, const std::vector<ArrowWeights>& arrows,
                               std::size_t m) {
  std::vector<std::int64_t> e(m, 0);
  for (std::size_t l = 0; l < a.size(); ++l) e[l] = -a[l];
  auto ones = [&](std::size_t v) -> std::int64_t {
    return v < t.masks.size() ? std::popcount(t.masks[v]) : 0;
  };
  auto zeros = [&](std::size_t v) -> std::int64_t {
    return v < t.masks.size() ? static_cast<std::int64_t>(lengths[v]) - ones(v) : 0;
  };
  for (const auto& w : arrows) {
    e[w.tail] += w.tail_power * zeros(w.head);
    e[w.head] += w.head_power * ones(w.tail);
  }
  ExponentVector out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = checked_exponent(e[i]);
  return out;
}

MaskTuple to_masks(const GccTuple& s, const std::vector<std::size_t>& lengths) {
  if (s.s.size() != lengths.size()) throw DimensionError("tuple has the wrong number of sequences");
  MaskTuple t{std::vector<std::uint64_t>(lengths.size(), 0)};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (s.s[i].size() != lengths[i]) {
      throw DimensionError("sequence " + std::to_string(i + 1) + " has length " +
                           std::to_string(s.s[i].size()) + ", expected " +
                           std::to_string(lengths[i]));
    }
    for (std::size_t r = 0; r < lengths[i]; ++r) {
      if (s.s[i][r]) t.masks[i] |= std::uint64_t{1} << r;
    }
  }
  return t;
}

GccTuple from_masks(const MaskTuple& t, const std::vector<std::size_t>& lengths) {
  GccTuple s;
  s.s.resize(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    s.s[i].resize(lengths[i]);
    for (std::size_t r = 0; r < lengths[i]; ++r) s.s[i][r] = (t.masks[i] >> r) & 1U;
  }
  return s;
}

}  // namespace

BitSeq complement(const BitSeq& t) {
  BitSeq out(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) out[r] = t[r] ? 0 : 1;
  return out;
}

std::int64_t weight(const BitSeq& t) {
  return std::count_if(t.begin(), t.end(), [](std::uint8_t v) { return v != 0; });
}

std::int64_t dot(const BitSeq& t, const BitSeq& u) {
  std::int64_t total = 0;
  for (std::size_t r = 0; r < std::min(t.size(), u.size()); ++r) total += t[r] * u[r];
  return total;
}

std::vector<GccTuple> enumerate_S_all(const AVector& a, const EnumerationLimits& limits) {
  const auto lengths = sequence_lengths(a, limits);
  std::vector<GccTuple> out;
  for_each_tuple(lengths, [&](const MaskTuple& t) { out.push_back(from_masks(t, lengths)); });
  return out;
}

std::vector<GccTuple> enumerate_S_gcc(const AVector& a, const ExtendedMatrix& matrix,
                                      const EnumerationLimits& limits) {
  require_length(a, matrix);
  const auto lengths = sequence_lengths(a, limits);
  const Digraph qb = digraph_QB(matrix);
  std::vector<GccTuple> out;
  for_each_tuple(lengths, [&](const MaskTuple& t) {
    if (masks_gcc(t, lengths, qb)) out.push_back(from_masks(t, lengths));
  });
  return out;
}

bool is_gcc(const GccTuple& s, const ExtendedMatrix& matrix) {
  if (s.s.size() != matrix.n()) throw DimensionError("tuple length differs from rank");
  for (const auto& [i, j] : digraph_QB(matrix).edges) {
    if (dot(s.s[i], complement(s.s[j])) != 0) return false;
  }
  return true;
}

ExponentVector tuple_exponents(const GccTuple& s, const AVector& a,
                               const ExtendedMatrix& matrix) {
  require_length(a, matrix);
  std::vector<std::size_t> lengths(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) lengths[i] = static_cast<std::size_t>(positive_part(a[i]));
  return masks_exponents(to_masks(s, lengths), lengths, a, arrow_weights(matrix), matrix.m());
}

LaurentPoly xtilde(const AVector& a, const ExtendedMatrix& matrix,
                   const EnumerationLimits& limits) {
  require_length(a, matrix);
  const auto lengths = sequence_lengths(a, limits);
  const Digraph qb = digraph_QB(matrix);
  const auto arrows = arrow_weights(matrix);
  TermAccumulator sum(matrix.m());
  for_each_tuple(lengths, [&](const MaskTuple& t) {
    if (!masks_gcc(t, lengths, qb)) return;
    sum.add(masks_exponents(t, lengths, a, arrows, matrix.m()));
  });
  return std::move(sum).finish();
}

LaurentPoly z_element(const AVector& a, const ExtendedMatrix& matrix) {
  require_length(a, matrix);
  ExponentVector initial(matrix.m(), 0);
  LaurentPoly product = LaurentPoly::one(matrix.m());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0) {
      initial[i] = checked_exponent(-a[i]);
    } else {
      product *= adjacent_variable(matrix, i).pow(static_cast<unsigned>(a[i]));
    }
  }
  return product.shifted(initial);
}

PositiveFactorization factor_positive(const AVector& a) {
  PositiveFactorization out;
  out.monomial.resize(a.size());
  std::int64_t top = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.monomial[i] = checked_exponent(positive_part(-a[i]));
    top = std::max(top, a[i]);
  }
  for (std::int64_t k = 1; k <= top; ++k) {
    AVector layer(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) layer[i] = k <= a[i] ? 1 : 0;
    out.layers.push_back(std::move(layer));
  }
  return out;
}

std::vector<std::vector<std::size_t>> weak_components(const ExtendedMatrix& matrix) {
  const std::size_t n = matrix.n();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [i, j] : digraph_QB(matrix).edges) {
    std::size_t ri = find(i), rj = find(j);
    if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = find(v);
    if (slot[r] == n) {
      slot[r] = components.size();
      components.emplace_back();
    }
    components[slot[r]].push_back(v);
  }
  return components;
}

std::vector<AVector> factor_components(const AVector& a, const ExtendedMatrix& matrix) {
  require_length(a, matrix);
  std::vector<AVector> out;
  for (const auto& component : weak_components(matrix)) {
    AVector piece(a.size(), 0);
    for (std::size_t v : component) piece[v] = a[v];
    out.push_back(std::move(piece));
  }
  return out;
}

LaurentPoly xtilde_01_formula(const AVector& a, const ExtendedMatrix& matrix) {
  require_length(a, matrix);
  const std::size_t n = matrix.n();
  const std::size_t m = matrix.m();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0 && a[i] != 1) {
      throw DomainError("xtilde_01_formula needs a in {0,1}^n; a_" + std::to_string(i + 1) +
                        " = " + std::to_string(a[i]));
    }
  }
  if (n > 62) throw CapExceeded("rank too large for the 0/1 formula");
  const Digraph qb = digraph_QB(matrix);
  TermAccumulator sum(m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<std::int64_t> s(n);
    bool admissible = true;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = (bits >> i) & 1U;
      if (s[i] > a[i]) admissible = false;
    }
    if (!admissible) continue;
    for (const auto& [i, j] : qb.edges) {
      if (s[i] == 1 && a[j] - s[j] == 1) admissible = false;
    }
    if (!admissible) continue;
    ExponentVector e(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t total = i < n ? -a[i] : 0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t b = matrix.at(i, j);
        total += (a[j] - s[j]) * positive_part(b) + s[j] * positive_part(-b);
      }
      e[i] = checked_exponent(total);
    }
    sum.add(e);
  }
  return std::move(sum).finish();
}

}  // namespace clusterx
