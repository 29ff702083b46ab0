#include "clusterx/dyck.hpp"

#include <bit>
#include <numeric>

#include "clusterx/error.hpp"

namespace clusterx {

namespace {

bool has_bit(std::uint64_t mask, std::size_t label) { return (mask >> (label - 1)) & 1U; }

std::uint64_t low_bits(std::size_t count) {
  return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

// [a_i]_+ for every vertex of Q_B~, zero on frozen vertices.
std::vector<std::size_t> side_lengths(const AVector& a, const ExtendedMatrix& matrix,
                                      const EnumerationLimits& limits) {
  if (a.size() != matrix.n()) {
    throw DimensionError("a has length " + std::to_string(a.size()) + ", rank is " +
                         std::to_string(matrix.n()));
  }
  std::vector<std::size_t> out(matrix.m(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] > 0 ? static_cast<std::size_t>(a[i]) : 0;
    total += out[i];
    if (out[i] > 62 || total > limits.max_total_length) {
      throw CapExceeded("sum of [a_i]_+ exceeds the enumeration cap of " +
                        std::to_string(limits.max_total_length));
    }
  }
  return out;
}

struct Arrow {
  std::size_t tail, head;
  DyckPath path;
};

class CollectionSearch {
 public:
  CollectionSearch(std::vector<Arrow> arrows, CompatibilityMode mode)
      : arrows_(std::move(arrows)), mode_(mode), current_(arrows_.size()) {}

  template <typename Visit>
  void run(Visit&& visit) {
    descend(0, visit);
  }

 private:
  // Conditions (ii)-(iv) between the horizontal side of arrow e and the
  // already fixed arrows; a horizontal edge of (j,k) talks to vertex j.
  bool horizontal_consistent(std::size_t e, std::uint64_t s1) const {
    const std::size_t j = arrows_[e].tail;
    const std::uint64_t mask = low_bits(arrows_[e].path.width);
    for (std::size_t f = 0; f < e; ++f) {
      if (arrows_[f].tail == j && ((current_[f].horizontal ^ s1) & mask) != 0) return false;
      if (arrows_[f].head == j && ((current_[f].vertical ^ ~s1) & mask) != 0) return false;
    }
    return true;
  }

  bool vertical_consistent(std::size_t e, std::uint64_t s2) const {
    const std::size_t j = arrows_[e].head;
    const std::uint64_t mask = low_bits(arrows_[e].path.height);
    for (std::size_t f = 0; f < e; ++f) {
      if (arrows_[f].head == j && ((current_[f].vertical ^ s2) & mask) != 0) return false;
      if (arrows_[f].tail == j && ((current_[f].horizontal ^ ~s2) & mask) != 0) return false;
    }
    return true;
  }

  template <typename Visit>
  void descend(std::size_t e, Visit& visit) {
    if (e == arrows_.size()) {
      visit(static_cast<const EdgeCollection&>(current_));
      return;
    }
    const Arrow& arrow = arrows_[e];
    const std::uint64_t h_count = std::uint64_t{1} << arrow.path.width;
    const std::uint64_t v_count = std::uint64_t{1} << arrow.path.height;
    for (std::uint64_t s1 = 0; s1 < h_count; ++s1) {
      if (!horizontal_consistent(e, s1)) continue;
      for (std::uint64_t s2 = 0; s2 < v_count; ++s2) {
        if (!vertical_consistent(e, s2)) continue;
        if (mode_ == CompatibilityMode::Global && !is_locally_compatible(s1, s2, arrow.path)) {
          continue;
        }
        current_[e] = {arrow.tail, arrow.head, s1, s2};
        descend(e + 1, visit);
      }
    }
  }

  std::vector<Arrow> arrows_;
  CompatibilityMode mode_;
  EdgeCollection current_;
};

template <typename Visit>
void for_each_collection(const AVector& a, const ExtendedMatrix& matrix,
                         CompatibilityMode mode, const EnumerationLimits& limits,
                         Visit&& visit) {
  const auto lengths = side_lengths(a, matrix, limits);
  std::vector<Arrow> arrows;
  for (const auto& [i, j] : digraph_QBtilde(matrix).edges) {
    arrows.push_back({i, j, build_dyck(lengths[i], lengths[j])});
  }
  CollectionSearch search(std::move(arrows), mode);
  search.run(visit);
}

bool has_isolated_positive_vertex(const AVector& a, const ExtendedMatrix& matrix) {
  std::vector<bool> touched(matrix.m(), false);
  for (const auto& [i, j] : digraph_QBtilde(matrix).edges) touched[i] = touched[j] = true;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l] > 0 && !touched[l]) return true;
  }
  return false;
}

DyckSum dyck_sum(const AVector& a, const ExtendedMatrix& matrix, CompatibilityMode mode,
                 const EnumerationLimits& limits) {
  side_lengths(a, matrix, limits);
  const std::size_t m = matrix.m();
  std::vector<std::int64_t> base(m, 0);
  for (std::size_t l = 0; l < a.size(); ++l) base[l] = -a[l];
  TermAccumulator sum(m);
  for_each_collection(a, matrix, mode, limits, [&](const EdgeCollection& collection) {
    std::vector<std::int64_t> e = base;
    for (const auto& sel : collection) {
      e[sel.tail] += matrix.extended(sel.tail, sel.head) * std::popcount(sel.vertical);
      e[sel.head] -= matrix.extended(sel.head, sel.tail) * std::popcount(sel.horizontal);
    }
    ExponentVector exps(m);
    for (std::size_t i = 0; i < m; ++i) exps[i] = checked_exponent(e[i]);
    sum.add(exps);
  });
  return {std::move(sum).finish(), has_isolated_positive_vertex(a, matrix)};
}

}  // namespace

DyckPath build_dyck(std::size_t a1, std::size_t a2) {
  DyckPath path;
  path.width = a1;
  path.height = a2;
  std::size_t y = 0;
  if (a1 == 0) {
    for (; y < a2; ++y) path.steps.push_back({StepKind::Vertical, 0, 0, y, false});
  }
  for (std::size_t x = 1; x <= a1; ++x) {
    const std::size_t h = x * a2 / a1;
    path.steps.push_back({StepKind::Horizontal, 0, x - 1, y, h > y});
    for (bool first = true; y < h; ++y, first = false) {
      path.steps.push_back({StepKind::Vertical, 0, x, y, first});
    }
  }

  std::size_t corner_h = 0, corner_v = 0;
  for (const auto& step : path.steps) {
    if (!step.in_corner) continue;
    (step.kind == StepKind::Horizontal ? corner_h : corner_v) += 1;
  }
  path.corners = corner_h;
  std::size_t next_ch = 1, next_cv = 1, next_h = corner_h + 1, next_v = corner_v + 1;
  for (auto& step : path.steps) {
    if (step.kind == StepKind::Horizontal) {
      step.label = step.in_corner ? next_ch++ : next_h++;
    } else {
      step.label = step.in_corner ? next_cv++ : next_v++;
    }
  }
  return path;
}

bool is_locally_compatible(std::uint64_t s1, std::uint64_t s2, const DyckPath& path) {
  for (std::size_t t = 0; t + 1 < path.steps.size(); ++t) {
    const DyckStep& here = path.steps[t];
    const DyckStep& next = path.steps[t + 1];
    if (here.kind == StepKind::Horizontal && next.kind == StepKind::Vertical &&
        has_bit(s1, here.label) && has_bit(s2, next.label)) {
      return false;
    }
  }
  return true;
}

std::string render_dyck(const DyckPath& path, std::uint64_t s1, std::uint64_t s2) {
  std::string out;
  for (const auto& step : path.steps) {
    const bool horizontal = step.kind == StepKind::Horizontal;
    const bool selected = has_bit(horizontal ? s1 : s2, step.label);
    if (!out.empty()) out += ' ';
    std::string token = (horizontal ? "u" : "v") + std::to_string(step.label);
    out += selected ? "[" + token + "]" : token;
  }
  return out;
}

std::vector<EdgeCollection> enumerate_collections(const AVector& a,
                                                  const ExtendedMatrix& matrix,
                                                  CompatibilityMode mode,
                                                  const EnumerationLimits& limits) {
  std::vector<EdgeCollection> out;
  for_each_collection(a, matrix, mode, limits,
                      [&](const EdgeCollection& c) { out.push_back(c); });
  return out;
}

std::optional<GccTuple> collection_to_tuple(const EdgeCollection& collection,
                                            const AVector& a,
                                            const ExtendedMatrix& matrix) {
  if (a.size() != matrix.n()) throw DimensionError("a has the wrong length");
  GccTuple out;
  out.s.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::size_t len = a[j] > 0 ? static_cast<std::size_t>(a[j]) : 0;
    out.s[j].assign(len, 0);
    if (len == 0) continue;
    const EdgeSelection* incoming = nullptr;
    const EdgeSelection* outgoing = nullptr;
    for (const auto& sel : collection) {
      if (sel.head == j && incoming == nullptr) incoming = &sel;
      if (sel.tail == j && outgoing == nullptr) outgoing = &sel;
    }
    if (incoming == nullptr && outgoing == nullptr) return std::nullopt;
    for (std::size_t r = 0; r < len; ++r) {
      out.s[j][r] = incoming != nullptr ? !((incoming->vertical >> r) & 1U)
                                        : ((outgoing->horizontal >> r) & 1U);
    }
  }
  return out;
}

DyckSum xtilde_via_dyck(const AVector& a, const ExtendedMatrix& matrix,
                        const EnumerationLimits& limits) {
  return dyck_sum(a, matrix, CompatibilityMode::Global, limits);
}

DyckSum z_via_dyck(const AVector& a, const ExtendedMatrix& matrix,
                   const EnumerationLimits& limits) {
  return dyck_sum(a, matrix, CompatibilityMode::Quasi, limits);
}

}  // namespace clusterx
