#include "clusterx/basis.hpp"

#include <string>

#include "clusterx/error.hpp"

namespace clusterx {

namespace {

std::int64_t positive_part(std::int64_t v) { return v > 0 ? v : 0; }

std::string vector_string(const AVector& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  return out + ")";
}

AVector to_avector(const ExponentVector& e) { return AVector(e.begin(), e.end()); }

}  // namespace

LowestMapImages lowest_map_images(const ExtendedMatrix& matrix) {
  const std::size_t n = matrix.n();
  LowestMapImages images;
  images.order = topological_relabel(matrix);
  images.positive.assign(n, AVector(n, 0));
  images.negative.assign(n, AVector(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    bool source = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix.at(i, k) > 0) source = false;
    }
    images.positive[k][k] = -1;
    if (!source) {
      for (std::size_t i = 0; i < n; ++i) {
        if (matrix.at(i, k) < 0) images.positive[k][i] += -matrix.at(i, k);
      }
    }
    images.negative[k][k] = 1;
  }
  return images;
}

AVector apply_lowest_map(const LowestMapImages& images, const AVector& a) {
  const std::size_t n = images.order.size();
  if (a.size() != n) throw DimensionError("vector length differs from rank");
  AVector out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const AVector& image = a[i] >= 0 ? images.positive[i] : images.negative[i];
    const std::int64_t scale = a[i] >= 0 ? a[i] : -a[i];
    for (std::size_t j = 0; j < n; ++j) out[j] += scale * image[j];
  }
  return out;
}

AVector invert_lowest(const LowestMapImages& images, const AVector& c) {
  const std::size_t n = images.order.size();
  if (c.size() != n) throw DimensionError("vector length differs from rank");
  AVector b(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rk = images.order[k];
    std::int64_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t ri = images.order[i];
      const AVector& image = b[ri] >= 0 ? images.positive[ri] : images.negative[ri];
      total += (b[ri] >= 0 ? b[ri] : -b[ri]) * image[rk];
    }
    b[rk] = total - c[rk];
  }
  return b;
}

Expansion expand_standard(const LaurentPoly& p, const ExtendedMatrix& matrix,
                          const ExpansionOptions& options) {
  if (p.nvars() != matrix.m()) {
    throw DimensionError("polynomial has " + std::to_string(p.nvars()) +
                         " variables, seed has " + std::to_string(matrix.m()));
  }
  const LowestMapImages images = lowest_map_images(matrix);
  Expansion out;
  out.order = images.order;
  const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * p.size();

  LaurentPoly rest = p;
  for (std::size_t step = 0; !rest.is_zero(); ++step) {
    if (step >= cap) {
      throw NotInSpan("greedy expansion did not terminate within " + std::to_string(cap) +
                      " steps; the input is probably not in the cluster algebra");
    }
    const LowestMonomial low = lowest_monomial(rest, images.order);
    const AVector b = invert_lowest(images, to_avector(low.exponents));
    const LaurentPoly zb = z_element(b, matrix);
    const LowestMonomial z_low = lowest_monomial(zb, images.order);
    if (z_low.exponents != low.exponents) {
      throw InternalError("lowest monomial of z" + vector_string(b) +
                          " does not match the inverted exponent");
    }
    auto u = exact_divide(low.coefficient, z_low.coefficient);
    if (!u) {
      throw NotInSpan("coefficient " + low.coefficient.to_string() + " at z" + vector_string(b) +
                      " is not a multiple of " + z_low.coefficient.to_string());
    }
    rest -= *u * zb;
    auto [it, inserted] = out.terms.try_emplace(b, *u);
    if (!inserted) {
      it->second += *u;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

LaurentPoly reassemble(const Expansion& expansion, const ExtendedMatrix& matrix) {
  LaurentPoly out(matrix.m());
  for (const auto& [b, u] : expansion.terms) out += u * z_element(b, matrix);
  return out;
}

bool check_expansion_support(const Expansion& expansion, const AVector& a) {
  std::int64_t a_weight = 0;
  for (std::int64_t v : a) a_weight += positive_part(v);
  bool saw_a = false;
  for (const auto& [b, u] : expansion.terms) {
    if (b.size() != a.size()) return false;
    if (b == a) {
      if (u != LaurentPoly::one(u.nvars())) return false;
      saw_a = true;
      continue;
    }
    std::int64_t b_weight = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (b[i] > a[i]) return false;
      b_weight += positive_part(b[i]);
    }
    if (b_weight >= a_weight) return false;
  }
  return saw_a;
}

namespace {

using XtildeCombination = std::map<AVector, LaurentPoly>;

const XtildeCombination& z_in_xtilde_memo(const AVector& a, const ExtendedMatrix& matrix,
                                          const EnumerationLimits& limits,
                                          std::map<AVector, XtildeCombination>& memo) {
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const Expansion expansion = expand_standard(xtilde(a, matrix, limits), matrix);
  if (!check_expansion_support(expansion, a)) {
    throw NotInSpan("expansion of x~" + vector_string(a) + " is not unitriangular");
  }
  XtildeCombination out;
  out.emplace(a, LaurentPoly::one(matrix.m()));
  for (const auto& [b, u] : expansion.terms) {
    if (b == a) continue;
    for (const auto& [c, v] : z_in_xtilde_memo(b, matrix, limits, memo)) {
      auto [it, inserted] = out.try_emplace(c, -(u * v));
      if (!inserted) {
        it->second -= u * v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return memo.emplace(a, std::move(out)).first->second;
}

}  // namespace

std::map<AVector, LaurentPoly> z_in_xtilde_basis(const AVector& a, const ExtendedMatrix& matrix,
                                                 const EnumerationLimits& limits) {
  std::map<AVector, XtildeCombination> memo;
  return z_in_xtilde_memo(a, matrix, limits, memo);
}

}  // namespace clusterx
