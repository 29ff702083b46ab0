#include "clusterx/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "clusterx/error.hpp"

namespace clusterx {

namespace {

bool exponents_less(const LaurentPoly::Term& a, const LaurentPoly::Term& b) {
  return a.exponents < b.exponents;
}

// Sorts by exponent vector and merges equal keys, dropping zero sums.
std::vector<LaurentPoly::Term> canonicalize(std::vector<LaurentPoly::Term> terms) {
  std::sort(terms.begin(), terms.end(), exponents_less);
  std::vector<LaurentPoly::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coefficient += t.coefficient;
    } else {
      if (!out.empty() && out.back().coefficient == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coefficient == 0) out.pop_back();
  return out;
}

ExponentVector add_exponents(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = checked_exponent(std::int64_t{a[i]} + b[i]);
  }
  return out;
}

bool divides_monomial(const ExponentVector& d, const ExponentVector& e) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > e[i]) return false;
  }
  return true;
}

void append_integer(std::string& out, const Integer& v) { out += v.str(); }

void append_monomial(std::string& out, const ExponentVector& e) {
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) out += '*';
    first = false;
    out += 'x';
    out += std::to_string(i + 1);
    if (e[i] != 1) {
      out += '^';
      out += std::to_string(e[i]);
    }
  }
}

bool is_constant_exponent(const ExponentVector& e) {
  return std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
}

std::string render_terms(std::span<const LaurentPoly::Term> terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = t.coefficient < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Integer magnitude = negative ? Integer(-t.coefficient) : t.coefficient;
    if (is_constant_exponent(t.exponents)) {
      append_integer(out, magnitude);
      continue;
    }
    if (magnitude != 1) {
      append_integer(out, magnitude);
      out += '*';
    }
    append_monomial(out, t.exponents);
  }
  return out;
}

}  // namespace

Exponent checked_exponent(std::int64_t value) {
  if (value > std::numeric_limits<Exponent>::max() ||
      value < std::numeric_limits<Exponent>::min()) {
    throw OverflowError("exponent " + std::to_string(value) + " out of range");
  }
  return static_cast<Exponent>(value);
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Integer& c) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.push_back({ExponentVector(nvars, 0), c});
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t var,
                                  Exponent power) {
  if (var >= nvars) {
    throw DimensionError("variable index " + std::to_string(var + 1) +
                         " exceeds ring size " + std::to_string(nvars));
  }
  ExponentVector e(nvars, 0);
  e[var] = power;
  return monomial(std::move(e));
}

LaurentPoly LaurentPoly::monomial(ExponentVector exponents, const Integer& c) {
  LaurentPoly p(exponents.size());
  if (c != 0) p.terms_.push_back({std::move(exponents), c});
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponents.size() != nvars) {
      throw DimensionError("term with " + std::to_string(t.exponents.size()) +
                           " exponents in a ring of " + std::to_string(nvars) +
                           " variables");
    }
  }
  LaurentPoly p(nvars);
  p.terms_ = canonicalize(std::move(terms));
  return p;
}

const LaurentPoly::Term& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw EmptyPolynomial("leading term of 0");
  return terms_.back();
}

Integer LaurentPoly::coefficient(const ExponentVector& exponents) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exponents,
      [](const Term& t, const ExponentVector& e) { return t.exponents < e; });
  if (it != terms_.end() && it->exponents == exponents) return it->coefficient;
  return 0;
}

ExponentVector LaurentPoly::min_exponents() const {
  ExponentVector out(nvars_, 0);
  if (terms_.empty()) return out;
  out = terms_.front().exponents;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) out[i] = std::min(out[i], t.exponents[i]);
  }
  return out;
}

ExponentVector LaurentPoly::max_exponents() const {
  ExponentVector out(nvars_, 0);
  if (terms_.empty()) return out;
  out = terms_.front().exponents;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) out[i] = std::max(out[i], t.exponents[i]);
  }
  return out;
}

void LaurentPoly::require_same_ring(const LaurentPoly& other, const char* op) const {
  if (nvars_ != other.nvars_) {
    throw DimensionError(std::string(op) + ": rings of " + std::to_string(nvars_) +
                         " and " + std::to_string(other.nvars_) + " variables");
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same_ring(other, "add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exponents < b->exponents)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exponents < a->exponents) {
      merged.push_back(*b++);
    } else {
      Integer c = a->coefficient + b->coefficient;
      if (c != 0) merged.push_back({std::move(a->exponents), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  return *this += -other;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.require_same_ring(b, "mul");
  LaurentPoly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  if (a.is_monomial() && a.terms_.front().coefficient == 1) {
    return b.shifted(a.terms_.front().exponents);
  }
  if (b.is_monomial() && b.terms_.front().coefficient == 1) {
    return a.shifted(b.terms_.front().exponents);
  }
  std::vector<LaurentPoly::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      products.push_back({add_exponents(s.exponents, t.exponents),
                          s.coefficient * t.coefficient});
    }
  }
  out.terms_ = canonicalize(std::move(products));
  return out;
}

LaurentPoly LaurentPoly::shifted(const ExponentVector& shift) const {
  if (shift.size() != nvars_) throw DimensionError("shift of wrong length");
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.exponents = add_exponents(t.exponents, shift);
  return out;  // translation preserves lex order
}

LaurentPoly LaurentPoly::scaled(const Integer& c) const {
  if (c == 0) return LaurentPoly(nvars_);
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned exponent) const {
  LaurentPoly result = one(nvars_);
  LaurentPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::relabeled(std::span<const std::size_t> mapping,
                                   std::size_t target_nvars) const {
  if (mapping.size() != nvars_) throw DimensionError("relabel mapping of wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    ExponentVector e(target_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exponents[i] == 0) continue;
      if (mapping[i] >= target_nvars) throw DimensionError("relabel target out of range");
      e[mapping[i]] = checked_exponent(std::int64_t{e[mapping[i]]} + t.exponents[i]);
    }
    out.push_back({std::move(e), t.coefficient});
  }
  return from_terms(target_nvars, std::move(out));
}

std::string LaurentPoly::to_string() const { return render_terms(terms_); }

std::string LaurentPoly::to_fraction_string() const {
  if (is_zero()) return "0";
  ExponentVector lo = min_exponents();
  ExponentVector denominator(nvars_, 0);
  for (std::size_t i = 0; i < nvars_; ++i) denominator[i] = lo[i] < 0 ? -lo[i] : 0;
  if (is_constant_exponent(denominator)) return to_string();
  LaurentPoly numerator = shifted(denominator);
  std::string out = "(" + numerator.to_string() + ")/(";
  append_monomial(out, denominator);
  out += ')';
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : nvars_(nvars) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  LaurentPoly parse() {
    if (text_.empty()) fail("empty input");
    std::vector<LaurentPoly::Term> terms;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(sign));
    }
    return LaurentPoly::from_terms(nvars_, std::move(terms));
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  LaurentPoly::Term parse_term(int sign) {
    LaurentPoly::Term term{ExponentVector(nvars_, 0), Integer(sign)};
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term.coefficient *= Integer(digits());
      need_factor = false;
      if (peek() != '*') return term;
      ++pos_;
      need_factor = true;
    }
    while (need_factor) {
      if (peek() != 'x') fail("expected variable");
      ++pos_;
      std::size_t index = std::stoul(digits());
      if (index == 0 || index > nvars_) {
        fail("variable x" + std::to_string(index) + " outside ring of " +
             std::to_string(nvars_) + " variables");
      }
      std::int64_t power = 1;
      if (peek() == '^') {
        ++pos_;
        bool negative = false;
        if (peek() == '-') {
          negative = true;
          ++pos_;
        }
        power = std::stoll(digits());
        if (negative) power = -power;
      }
      auto& slot = term.exponents[index - 1];
      slot = checked_exponent(std::int64_t{slot} + power);
      need_factor = peek() == '*';
      if (need_factor) ++pos_;
    }
    return term;
  }

  std::string text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

void TermAccumulator::add(const ExponentVector& exponents, const Integer& c) {
  if (exponents.size() != nvars_) throw DimensionError("accumulator term of wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TermAccumulator::add(const LaurentPoly& p) {
  for (const auto& t : p.terms()) add(t.exponents, t.coefficient);
}

LaurentPoly TermAccumulator::finish() && {
  LaurentPoly out(nvars_);
  out.terms_.reserve(terms_.size());
  for (auto& [e, c] : terms_) out.terms_.push_back({e, std::move(c)});
  return out;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

DivisionResult divide_with_remainder(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw DivisionByZero("exact_divide by the zero polynomial");
  if (p.nvars() != d.nvars()) throw DimensionError("exact_divide: rings differ");
  const std::size_t n = p.nvars();
  if (p.is_zero()) return {LaurentPoly(n), LaurentPoly(n)};

  ExponentVector p_shift = p.min_exponents();
  ExponentVector d_shift = d.min_exponents();
  ExponentVector neg_p(n), neg_d(n);
  for (std::size_t i = 0; i < n; ++i) {
    neg_p[i] = -p_shift[i];
    neg_d[i] = -d_shift[i];
  }
  const LaurentPoly divisor = d.shifted(neg_d);
  const auto& lead = divisor.leading_term();

  std::map<ExponentVector, Integer> rest;
  const LaurentPoly dividend = p.shifted(neg_p);
  for (const auto& t : dividend.terms()) rest.emplace(t.exponents, t.coefficient);
  std::vector<LaurentPoly::Term> quotient;
  std::vector<LaurentPoly::Term> remainder;

  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    const ExponentVector& e = top->first;
    const Integer& c = top->second;
    if (!divides_monomial(lead.exponents, e) || c % lead.coefficient != 0) {
      remainder.push_back({e, c});
      rest.erase(top);
      continue;
    }
    ExponentVector qe(n);
    for (std::size_t i = 0; i < n; ++i) qe[i] = e[i] - lead.exponents[i];
    Integer qc = c / lead.coefficient;
    for (const auto& t : divisor.terms()) {
      ExponentVector key = add_exponents(qe, t.exponents);
      Integer delta = qc * t.coefficient;
      auto [it, inserted] = rest.try_emplace(std::move(key), Integer(-delta));
      if (!inserted) {
        it->second -= delta;
        if (it->second == 0) rest.erase(it);
      }
    }
    quotient.push_back({std::move(qe), std::move(qc)});
  }

  ExponentVector q_shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    q_shift[i] = checked_exponent(std::int64_t{p_shift[i]} - d_shift[i]);
  }
  return {LaurentPoly::from_terms(n, std::move(quotient)).shifted(q_shift),
          LaurentPoly::from_terms(n, std::move(remainder)).shifted(p_shift)};
}

std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_monomial()) {
    // Monomial divisors only need a coefficient check.
    const auto& t = d.terms().front();
    ExponentVector neg(t.exponents.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -t.exponents[i];
    if (p.nvars() != d.nvars()) throw DimensionError("exact_divide: rings differ");
    std::vector<LaurentPoly::Term> out;
    out.reserve(p.size());
    for (const auto& s : p.terms()) {
      if (s.coefficient % t.coefficient != 0) return std::nullopt;
      out.push_back({s.exponents, s.coefficient / t.coefficient});
    }
    return LaurentPoly::from_terms(p.nvars(), std::move(out)).shifted(neg);
  }
  auto result = divide_with_remainder(p, d);
  if (!result.remainder.is_zero()) return std::nullopt;
  return std::move(result.quotient);
}

std::map<Exponent, LaurentPoly> coefficients_in_variable(const LaurentPoly& p,
                                                         std::size_t var) {
  if (var >= p.nvars()) throw DimensionError("coefficients_in_variable: index out of range");
  std::map<Exponent, std::vector<LaurentPoly::Term>> buckets;
  for (const auto& t : p.terms()) {
    ExponentVector e = t.exponents;
    e[var] = 0;
    buckets[t.exponents[var]].push_back({std::move(e), t.coefficient});
  }
  std::map<Exponent, LaurentPoly> out;
  for (auto& [d, terms] : buckets) {
    out.emplace(d, LaurentPoly::from_terms(p.nvars(), std::move(terms)));
  }
  if (out.empty()) out.emplace(0, LaurentPoly(p.nvars()));
  return out;
}

LowestMonomial lowest_monomial(const LaurentPoly& p,
                               std::span<const std::size_t> order) {
  if (p.is_zero()) throw EmptyPolynomial("lowest monomial of 0");
  const std::size_t k = order.size();
  std::vector<bool> seen(k, false);
  for (std::size_t v : order) {
    if (v >= k || v >= p.nvars() || seen[v]) {
      throw DomainError("lowest_monomial: order must be a permutation of the first " +
                        std::to_string(k) + " variables");
    }
    seen[v] = true;
  }
  auto key = [&](const ExponentVector& e) {
    ExponentVector out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = e[order[i]];
    return out;
  };
  ExponentVector best = key(p.terms().front().exponents);
  for (const auto& t : p.terms()) best = std::min(best, key(t.exponents));

  LowestMonomial out{ExponentVector(k), LaurentPoly(p.nvars())};
  for (std::size_t i = 0; i < k; ++i) out.exponents[order[i]] = best[i];
  std::vector<LaurentPoly::Term> coeff;
  for (const auto& t : p.terms()) {
    if (key(t.exponents) != best) continue;
    ExponentVector e = t.exponents;
    for (std::size_t i = 0; i < k; ++i) e[i] = 0;
    coeff.push_back({std::move(e), t.coefficient});
  }
  out.coefficient = LaurentPoly::from_terms(p.nvars(), std::move(coeff));
  return out;
}

}  // namespace clusterx
