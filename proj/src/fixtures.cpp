#include "clusterx/fixtures.hpp"

#include <functional>
#include <optional>
#include <set>

#include "clusterx/basis.hpp"
#include "clusterx/dyck.hpp"
#include "clusterx/elements.hpp"
#include "clusterx/error.hpp"
#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"
#include "clusterx/rank3.hpp"
#include "clusterx/upper.hpp"

namespace clusterx {

namespace {

using Check = std::function<std::optional<std::string>()>;

struct Fixture {
  std::string group;
  std::string name;
  Check check;
};

// numerator / x^denominator
LaurentPoly frac(const std::string& numerator, std::vector<Exponent> denominator) {
  ExponentVector shift(denominator.size());
  for (std::size_t i = 0; i < denominator.size(); ++i) shift[i] = -denominator[i];
  return LaurentPoly::parse(numerator, denominator.size()).shifted(shift);
}

std::optional<std::string> same(const LaurentPoly& actual, const LaurentPoly& expected) {
  if (actual == expected) return std::nullopt;
  return "expected " + expected.to_fraction_string() + ", got " + actual.to_fraction_string();
}

std::optional<std::string> same_count(std::size_t actual, std::size_t expected) {
  if (actual == expected) return std::nullopt;
  return "expected " + std::to_string(expected) + ", got " + std::to_string(actual);
}

std::optional<std::string> require(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

std::optional<std::string> first_failure(std::initializer_list<std::optional<std::string>> list) {
  for (const auto& item : list) {
    if (item) return item;
  }
  return std::nullopt;
}

GccTuple tuple(std::initializer_list<BitSeq> seqs) { return GccTuple{std::vector<BitSeq>(seqs)}; }

std::string triple_text(const Rank3Triple& t) {
  return "(" + std::to_string(t.p) + "," + std::to_string(t.q) + "," + std::to_string(t.r) + ")";
}

std::vector<Fixture> build_fixtures(const FixtureOptions& options) {
  const ExtendedMatrix rank2 = ExtendedMatrix::square({{0, 2}, {-2, 0}});
  const ExtendedMatrix frozen2 = ExtendedMatrix::from_rows({{0, 2}, {-2, 0}, {1, -1}}, 2);
  // Oriented 3-cycle with unequal opposite entries: a=2, a'=1, b=3, b'=2, c=1, c'=2.
  const ExtendedMatrix cycle3 = ExtendedMatrix::square({{0, 2, -2}, {-1, 0, 3}, {1, -2, 0}});
  const ExtendedMatrix markov =
      options.perturb_markov ? ExtendedMatrix::square({{0, 3, -2}, {-3, 0, 2}, {2, -2, 0}})
                             : ExtendedMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  // Normal form with a=4, b=3, c=3 and two frozen rows.
  const ExtendedMatrix s43 = ExtendedMatrix::from_rows(
      {{0, 4, -3}, {-4, 0, 3}, {3, -3, 0}, {1, -2, 1}, {0, 1, -1}}, 3);

  const LaurentPoly rank2_xtilde = frac("1 + 2*x1^2 + x1^4 + x2^2 + x1^2*x2^2", {1, 2});
  const LaurentPoly rank2_z =
      frac("1 + 2*x1^2 + x1^4 + x2^2 + 2*x1^2*x2^2 + x1^4*x2^2", {1, 2});
  const LaurentPoly greedy = frac("1 + 2*x1^2 + x1^4 + x2^2", {1, 2});

  std::vector<Fixture> f;

  f.push_back({"laurent", "add-rank2", [] {
                 return same(LaurentPoly::parse("1 + x1^2", 2) + LaurentPoly::parse("x2^2", 2),
                             LaurentPoly::parse("1 + x1^2 + x2^2", 2));
               }});
  f.push_back({"laurent", "mul-rank2", [] {
                 return same(frac("1 + x1^2 + x2^2", {1, 1}) * frac("1 + x1^2", {0, 1}),
                             frac("1 + 2*x1^2 + x1^4 + x2^2 + x1^2*x2^2", {1, 2}));
               }});
  f.push_back({"laurent", "lowest-monomial-12", [rank2] {
                 const std::vector<std::size_t> order{0, 1};
                 for (const LaurentPoly& p : {xtilde({1, 2}, rank2), z_element({1, 2}, rank2)}) {
                   const auto low = lowest_monomial(p, order);
                   if (low.exponents != ExponentVector{-1, -2} ||
                       low.coefficient != LaurentPoly::one(2)) {
                     return std::optional<std::string>("lowest monomial is not x1^-1*x2^-2");
                   }
                 }
                 return std::optional<std::string>();
               }});

  f.push_back({"exchange", "mutate-rank2", [rank2] {
                 return same(mutate_seed(Seed::initial(rank2), 0).cluster[0],
                             frac("1 + x2^2", {1, 0}));
               }});
  f.push_back({"exchange", "mutate-z2", [s43] {
                 return same(mutate_seed(Seed::initial(s43), 1).cluster[1],
                             frac("x1^4*x5 + x3^3*x4^2", {0, 1, 0, 0, 0}));
               }});
  f.push_back({"exchange", "frozen-qbtilde", [frozen2] {
                 const Digraph g = digraph_QBtilde(frozen2);
                 const std::vector<std::pair<std::size_t, std::size_t>> expected{
                     {0, 1}, {1, 2}, {2, 0}};
                 return require(g.edges == expected, "Q_B~ is not {(1,2),(2,3),(3,1)}");
               }});
  f.push_back({"markov", "markov-not-acyclic", [markov] {
                 return require(!is_acyclic(markov), "M(2) reported acyclic");
               }});
  f.push_back({"exchange", "cycle3-not-acyclic", [cycle3] {
                 return require(!is_acyclic(cycle3), "the skew-symmetrizable 3-cycle was reported acyclic");
               }});

  f.push_back({"sequences", "dot", [] {
                 return require(dot({1}, {0}) == 0 && dot({1}, complement({0})) == 1,
                                "dot products differ");
               }});
  f.push_back({"sequences", "s-all-12", [] {
                 return same_count(enumerate_S_all({1, 2}).size(), 8);
               }});
  f.push_back({"sequences", "s-gcc-frozen", [frozen2] {
                 const std::vector<GccTuple> expected{tuple({{0}, {0}}), tuple({{0}, {1}}),
                                                      tuple({{1}, {1}})};
                 return require(enumerate_S_gcc({1, 1}, frozen2) == expected,
                                "S_gcc differs from {((0),(0)), ((0),(1)), ((1),(1))}");
               }});
  f.push_back({"sequences", "s-gcc-cycle3", [cycle3] {
                 const std::vector<GccTuple> expected{tuple({{0}, {0}, {0}}),
                                                      tuple({{1}, {1}, {1}})};
                 return require(enumerate_S_gcc({1, 1, 1}, cycle3) == expected,
                                "S_gcc differs from {((0),(0),(0)), ((1),(1),(1))}");
               }});
  f.push_back({"sequences", "s-gcc-12", [rank2] {
                 return same_count(enumerate_S_gcc({1, 2}, rank2).size(), 6);
               }});

  f.push_back({"xtilde", "frozen-11", [frozen2] {
                 return same(xtilde({1, 1}, frozen2),
                             frac("x1^2*x3 + x3^2 + x2^2*x3", {1, 1, 0}));
               }});
  f.push_back({"markov", "markov-111", [markov] {
                 return same(xtilde({1, 1, 1}, markov), LaurentPoly::parse("2*x1*x2*x3", 3));
               }});
  f.push_back({"markov", "dependence-markov", [markov] {
                 return same(xtilde({1, 1, 1}, markov),
                             xtilde({-1, -1, -1}, markov) + xtilde({-1, -1, -1}, markov));
               }});
  f.push_back({"xtilde", "dependence-cycle3", [cycle3] {
                 return first_failure(
                     {same(xtilde({1, 1, 1}, cycle3),
                           frac("x1^2*x2^3*x3 + x2*x3^2*x1^2", {1, 1, 1})),
                      same(xtilde({1, 1, 1}, cycle3),
                           xtilde({-1, -2, 0}, cycle3) + xtilde({-1, 0, -1}, cycle3))});
               }});
  f.push_back({"xtilde", "rank2-xtilde-12", [rank2, rank2_xtilde] {
                 return same(xtilde({1, 2}, rank2), rank2_xtilde);
               }});
  f.push_back({"xtilde", "rank2-not-greedy", [rank2, greedy] {
                 return require(xtilde({1, 2}, rank2) != greedy,
                                "x~[(1,2)] equals the greedy element");
               }});
  f.push_back({"xtilde", "frozen-01-formula", [frozen2] {
                 return same(xtilde_01_formula({1, 1}, frozen2), xtilde({1, 1}, frozen2));
               }});

  f.push_back({"z", "rank2-z-12", [rank2, rank2_z] {
                 return same(z_element({1, 2}, rank2), rank2_z);
               }});
  f.push_back({"z", "unit-vectors", [frozen2, s43] {
                 for (const ExtendedMatrix& m : {frozen2, s43}) {
                   for (std::size_t k = 0; k < m.n(); ++k) {
                     AVector e(m.n(), 0);
                     e[k] = 1;
                     if (auto d = same(z_element(e, m), mutate_seed(Seed::initial(m), k).cluster[k])) {
                       return d;
                     }
                   }
                 }
                 return std::optional<std::string>();
               }});
  f.push_back({"factor", "layers-213", [] {
                 const auto fp = factor_positive({2, 1, 3});
                 const std::vector<AVector> expected{{1, 1, 1}, {1, 0, 1}, {0, 0, 1}};
                 return require(fp.layers == expected && fp.monomial == ExponentVector{0, 0, 0},
                                "layers differ from [(1,1,1),(1,0,1),(0,0,1)]");
               }});
  f.push_back({"factor", "layers-12", [rank2] {
                 const auto fp = factor_positive({1, 2});
                 const std::vector<AVector> expected{{1, 1}, {0, 1}};
                 return first_failure(
                     {require(fp.layers == expected, "layers differ from [(1,1),(0,1)]"),
                      same(xtilde({1, 1}, rank2) * xtilde({0, 1}, rank2), xtilde({1, 2}, rank2))});
               }});

  f.push_back({"dyck", "path-1x2", [] {
                 const DyckPath d = build_dyck(1, 2);
                 return require(d.corners == 1 && render_dyck(d) == "u1 v1 v2" &&
                                    d.steps[1].in_corner && !d.steps[2].in_corner,
                                "D^{1x2} is not u1 v1 v2 with one corner");
               }});
  f.push_back({"dyck", "empty-side-compatible", [] {
                 for (std::size_t a1 = 0; a1 <= 3; ++a1) {
                   for (std::size_t a2 = 0; a2 <= 3; ++a2) {
                     const DyckPath d = build_dyck(a1, a2);
                     for (std::uint64_t s = 0; s < (1u << std::max(a1, a2)); ++s) {
                       if (!is_locally_compatible(s, 0, d) || !is_locally_compatible(0, s, d)) {
                         return std::optional<std::string>("empty S1 or S2 rejected");
                       }
                     }
                   }
                 }
                 return std::optional<std::string>();
               }});
  f.push_back({"dyck", "local-1x2", [] {
                 const DyckPath d = build_dyck(1, 2);
                 std::size_t count = 0;
                 for (std::uint64_t s1 = 0; s1 < 2; ++s1) {
                   for (std::uint64_t s2 = 0; s2 < 4; ++s2) count += is_locally_compatible(s1, s2, d);
                 }
                 return same_count(count, 6);
               }});
  f.push_back({"fig2", "quasi-count", [rank2] {
                 return same_count(
                     enumerate_collections({1, 2}, rank2, CompatibilityMode::Quasi).size(), 8);
               }});
  f.push_back({"fig2", "gcc-count", [rank2] {
                 return same_count(
                     enumerate_collections({1, 2}, rank2, CompatibilityMode::Global).size(), 6);
               }});
  f.push_back({"dyck", "bijection-12", [rank2] {
                 for (auto mode : {CompatibilityMode::Quasi, CompatibilityMode::Global}) {
                   std::set<GccTuple> images;
                   for (const auto& c : enumerate_collections({1, 2}, rank2, mode)) {
                     auto s = collection_to_tuple(c, {1, 2}, rank2);
                     if (!s) return std::optional<std::string>("collection has no tuple");
                     images.insert(*s);
                   }
                   const auto target = mode == CompatibilityMode::Quasi
                                           ? enumerate_S_all({1, 2})
                                           : enumerate_S_gcc({1, 2}, rank2);
                   if (images != std::set<GccTuple>(target.begin(), target.end())) {
                     return std::optional<std::string>("collections do not map onto the tuples");
                   }
                 }
                 return std::optional<std::string>();
               }});
  f.push_back({"dyck", "frozen-count", [frozen2] {
                 return same_count(
                     enumerate_collections({1, 1}, frozen2, CompatibilityMode::Global).size(), 3);
               }});
  f.push_back({"dyck", "rank2-sums", [rank2, rank2_xtilde, rank2_z] {
                 return first_failure({same(xtilde_via_dyck({1, 2}, rank2).value, rank2_xtilde),
                                       same(z_via_dyck({1, 2}, rank2).value, rank2_z)});
               }});

  f.push_back({"upper", "frozen-adjacent", [frozen2] {
                 const LaurentPoly p = xtilde({1, 1}, frozen2);
                 for (std::size_t k = 0; k < 2; ++k) {
                   if (!in_adjacent_ring(p, frozen2, k).passes) {
                     return std::optional<std::string>("fails in direction " + std::to_string(k + 1));
                   }
                 }
                 return std::optional<std::string>();
               }});

  f.push_back({"markov", "classify", [markov] {
                 const Rank3Triple t = tau(markov);
                 return require(classify_nonacyclic(t) && t == Rank3Triple{2, 2, 2},
                                "tau(M(2)) = " + triple_text(t) + " is not the non-acyclic (2,2,2)");
               }});
  f.push_back({"markov", "root", [markov] {
                 const Rank3Triple t = tau(markov);
                 return require(is_root(t) && find_root(t) == Rank3Triple{2, 2, 2} &&
                                    gamma_mu(t, 0) == t && gamma_mu(t, 1) == t && gamma_mu(t, 2) == t,
                                "(2,2,2) is not a fixed root");
               }});
  f.push_back({"rank3", "grading-43", [s43] {
                 return require(grading_vector(s43) == std::vector<std::int64_t>{3, 3, 4, 0, 0},
                                "deg (x1,x2,x3) is not (b,c,a) = (3,3,4)");
               }});
  auto grading_transport = [](const ExtendedMatrix& m) {
    const auto g = grading_vector(m);
    for (std::size_t k = 0; k < 3; ++k) {
      std::int64_t d = -g[k];
      for (std::size_t i = 0; i < 3; ++i) d += std::max<Entry>(m.at(i, k), 0) * g[i];
      auto expected = g;
      expected[k] = d;
      if (grading_vector(mutate_matrix(m, k)) != expected) {
        return std::optional<std::string>("G' != tau(B')^T after mutation at " +
                                          std::to_string(k + 1));
      }
    }
    return std::optional<std::string>();
  };
  f.push_back({"rank3", "grading-transport", [s43, grading_transport] {
                 return grading_transport(s43);
               }});
  f.push_back({"markov", "grading-transport", [markov, grading_transport] {
                 return grading_transport(markov);
               }});
  f.push_back({"rank3", "z-degrees", [s43] {
                 const auto g = grading_vector(s43);
                 const Seed seed = Seed::initial(s43);
                 const std::int64_t a = 4, b = 3, c = 3;
                 const std::vector<std::int64_t> expected{a * c - b, a * b - c, b * c - a};
                 for (std::size_t k = 0; k < 3; ++k) {
                   const std::int64_t d = degree_of(mutate_seed(seed, k).cluster[k], g);
                   if (d != expected[k]) {
                     return std::optional<std::string>("z" + std::to_string(k + 1) + " has degree " +
                                                       std::to_string(d));
                   }
                 }
                 return std::optional<std::string>();
               }});
  f.push_back({"markov", "markov-Y", [markov] {
                 const WitnessReport w = construct_Y(markov, 0);
                 return first_failure({same(w.y, frac("x1^2 + x2^2 + x3^2", {1, 0, 1})),
                                       require(w.degree == 0, "Y is not of degree 0")});
               }});
  f.push_back({"markov", "markov-Y-upper", [markov] {
                 const WitnessReport w = construct_Y(markov, 0);
                 for (const auto& d : w.membership.per_direction) {
                   if (!d.check.passes) {
                     return std::optional<std::string>("Y fails in direction " +
                                                       std::to_string(d.k + 1));
                   }
                 }
                 return require(w.membership.verdict, "Y is not in U_x");
               }});
  f.push_back({"rank3", "Y-upper-43", [s43] {
                 const WitnessReport w = construct_Y(s43, 0);
                 return first_failure(
                     {require(w.membership.verdict, "Y is not in U_x"),
                      require(w.degree == 4 * 3 - 3 - 4, "Y has degree " + std::to_string(w.degree))});
               }});
  f.push_back({"rank3", "z3-exception", [s43] {
                 const DegreeAudit audit = degree_audit(s43, 1);
                 for (const auto& row : audit.rows) {
                   if (row.exceptional && row.new_variable_degree != 3 * 3 - 4) {
                     return std::optional<std::string>("z3 degree is not bc - a");
                   }
                 }
                 return require(audit.passed(), "audit failed");
               }});
  return f;
}

bool selected(const Fixture& f, const std::string& filter) {
  return filter.empty() || filter == f.group || filter == f.name ||
         filter == f.group + "/" + f.name;
}

}  // namespace

std::vector<FixtureResult> verify_paper(const FixtureOptions& options) {
  std::vector<FixtureResult> out;
  for (const auto& fixture : build_fixtures(options)) {
    if (!selected(fixture, options.filter)) continue;
    FixtureResult result{fixture.name, fixture.group, false, ""};
    try {
      auto failure = fixture.check();
      result.passed = !failure.has_value();
      if (failure) result.detail = *failure;
    } catch (const std::exception& e) {
      result.detail = e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace clusterx
