#include "clusterx/json_io.hpp"

#include <fstream>
#include <sstream>

#include "clusterx/error.hpp"

namespace clusterx::json_io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

// Runs a decoder, turning nlohmann type errors into ParseError.
template <typename F>
auto decode(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json indices_to_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t i : v) out.push_back(i + 1);
  return out;
}

std::vector<std::size_t> indices_from_json(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    const auto i = v.get<std::int64_t>();
    if (i < 1) throw ParseError("indices are 1-based, got " + std::to_string(i));
    out.push_back(static_cast<std::size_t>(i - 1));
  }
  return out;
}

Json optional_poly(const std::optional<LaurentPoly>& p) {
  return p ? Json(p->to_string()) : Json(nullptr);
}

}  // namespace

Json matrix_to_json(const ExtendedMatrix& matrix) {
  Json rows = Json::array();
  for (const auto& row : matrix.rows()) rows.push_back(row);
  return Json{{"m", matrix.m()}, {"n", matrix.n()}, {"entries", rows}};
}

ExtendedMatrix matrix_from_json(const Json& j) {
  return decode("matrix", [&] {
    const Json& rows_json = j.is_array() ? j : field(j, "entries");
    auto rows = rows_json.get<std::vector<std::vector<Entry>>>();
    if (rows.empty()) throw ParseError("matrix has no rows");
    const std::size_t n = j.is_object() && j.contains("n") ? j.at("n").get<std::size_t>()
                                                           : rows.front().size();
    if (j.is_object() && j.contains("m") && j.at("m").get<std::size_t>() != rows.size()) {
      throw ParseError("\"m\" does not match the number of rows");
    }
    return ExtendedMatrix::from_rows(rows, n);
  });
}

Json poly_to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"exponents", std::vector<Exponent>(t.exponents.begin(), t.exponents.end())},
                     {"coefficient", t.coefficient.str()}});
  }
  return Json{{"nvars", p.nvars()}, {"text", p.to_string()}, {"terms", terms}};
}

LaurentPoly poly_from_json(const Json& j) {
  return decode("polynomial", [&] {
    const auto nvars = field(j, "nvars").get<std::size_t>();
    if (!j.contains("terms")) return LaurentPoly::parse(field(j, "text").get<std::string>(), nvars);
    std::vector<LaurentPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      auto e = field(t, "exponents").get<std::vector<Exponent>>();
      if (e.size() != nvars) throw ParseError("term has the wrong number of exponents");
      Integer c;
      try {
        c = Integer(field(t, "coefficient").get<std::string>());
      } catch (const std::runtime_error&) {
        throw ParseError("coefficient is not a decimal integer");
      }
      terms.push_back({ExponentVector(e.begin(), e.end()), c});
    }
    return LaurentPoly::from_terms(nvars, std::move(terms));
  });
}

Json avector_to_json(const AVector& a) { return Json(a); }

AVector avector_from_json(const Json& j) {
  return decode("integer vector", [&] { return j.get<AVector>(); });
}

Json tuple_to_json(const GccTuple& s) {
  Json out = Json::array();
  for (const auto& seq : s.s) {
    Json bits = Json::array();
    for (auto b : seq) bits.push_back(static_cast<int>(b));
    out.push_back(bits);
  }
  return out;
}

GccTuple tuple_from_json(const Json& j) {
  return decode("sequence tuple", [&] {
    GccTuple s;
    for (const auto& seq : j) {
      BitSeq bits;
      for (const auto& b : seq) {
        const int v = b.get<int>();
        if (v != 0 && v != 1) throw ParseError("sequence entries must be 0 or 1");
        bits.push_back(static_cast<std::uint8_t>(v));
      }
      s.s.push_back(std::move(bits));
    }
    return s;
  });
}

Json collection_to_json(const EdgeCollection& c) {
  Json out = Json::array();
  for (const auto& sel : c) {
    out.push_back({{"tail", sel.tail + 1},
                   {"head", sel.head + 1},
                   {"S1", sel.horizontal},
                   {"S2", sel.vertical}});
  }
  return out;
}

EdgeCollection collection_from_json(const Json& j) {
  return decode("collection", [&] {
    EdgeCollection c;
    for (const auto& sel : j) {
      const auto tail = field(sel, "tail").get<std::size_t>();
      const auto head = field(sel, "head").get<std::size_t>();
      if (tail < 1 || head < 1) throw ParseError("vertices are 1-based");
      c.push_back({tail - 1, head - 1, field(sel, "S1").get<std::uint64_t>(),
                   field(sel, "S2").get<std::uint64_t>()});
    }
    return c;
  });
}

Json triple_to_json(const Rank3Triple& t) { return Json::array({t.p, t.q, t.r}); }

Rank3Triple triple_from_json(const Json& j) {
  return decode("triple", [&] {
    auto v = j.get<std::vector<std::int64_t>>();
    if (v.size() != 3) throw ParseError("a triple has three entries");
    for (auto x : v) {
      if (x < 0) throw ParseError("triple entries are nonnegative");
    }
    return Rank3Triple{v[0], v[1], v[2]};
  });
}

Json expansion_to_json(const Expansion& e, std::size_t nvars) {
  Json terms = Json::array();
  for (const auto& [b, u] : e.terms) terms.push_back({{"b", b}, {"coefficient", u.to_string()}});
  return Json{{"nvars", nvars}, {"order", indices_to_json(e.order)}, {"terms", terms}};
}

Expansion expansion_from_json(const Json& j) {
  return decode("expansion", [&] {
    Expansion e;
    const auto nvars = field(j, "nvars").get<std::size_t>();
    e.order = indices_from_json(field(j, "order"));
    for (const auto& t : field(j, "terms")) {
      e.terms.emplace(field(t, "b").get<AVector>(),
                      LaurentPoly::parse(field(t, "coefficient").get<std::string>(), nvars));
    }
    return e;
  });
}

Json membership_to_json(const MembershipReport& r) {
  Json directions = Json::array();
  for (const auto& d : r.per_direction) {
    directions.push_back(
        {{"k", d.k + 1},
         {"adjacency_divisor", d.adjacency_divisor.to_string()},
         {"passes", d.check.passes},
         {"failing_degree", d.check.failing_degree ? Json(*d.check.failing_degree) : Json(nullptr)},
         {"remainder", optional_poly(d.check.remainder)}});
  }
  const std::size_t nvars =
      r.per_direction.empty() ? 0 : r.per_direction.front().adjacency_divisor.nvars();
  return Json{{"nvars", nvars},
              {"is_laurent_initial", r.is_laurent_initial},
              {"coprime", r.coprime},
              {"full_rank", r.full_rank},
              {"verdict", r.verdict},
              {"per_direction", directions}};
}

MembershipReport membership_from_json(const Json& j) {
  return decode("membership report", [&] {
    MembershipReport r;
    const auto nvars = field(j, "nvars").get<std::size_t>();
    r.is_laurent_initial = field(j, "is_laurent_initial").get<bool>();
    r.coprime = field(j, "coprime").get<bool>();
    r.full_rank = field(j, "full_rank").get<bool>();
    r.verdict = field(j, "verdict").get<bool>();
    for (const auto& d : field(j, "per_direction")) {
      DirectionRecord rec{field(d, "k").get<std::size_t>() - 1,
                          LaurentPoly::parse(field(d, "adjacency_divisor").get<std::string>(), nvars),
                          {}};
      rec.check.passes = field(d, "passes").get<bool>();
      if (!field(d, "failing_degree").is_null()) {
        rec.check.failing_degree = d.at("failing_degree").get<Exponent>();
      }
      if (!field(d, "remainder").is_null()) {
        rec.check.remainder = LaurentPoly::parse(d.at("remainder").get<std::string>(), nvars);
      }
      r.per_direction.push_back(std::move(rec));
    }
    return r;
  });
}

Json audit_to_json(const DegreeAudit& a) {
  Json rows = Json::array();
  for (const auto& row : a.rows) {
    rows.push_back({{"mutation_word", indices_to_json(row.word)},
                    {"tau_triple", triple_to_json(row.tau)},
                    {"new_variable_degree", row.new_variable_degree},
                    {"exceptional", row.exceptional},
                    {"materialized", row.materialized}});
  }
  return Json{{"depth", a.depth},
              {"threshold", a.threshold},
              {"initial_degrees", a.initial_degrees},
              {"min_other_degree", a.min_other_degree ? Json(*a.min_other_degree) : Json(nullptr)},
              {"exceptions", a.exceptions},
              {"failures", a.failures},
              {"passed", a.passed()},
              {"rows", rows}};
}

DegreeAudit audit_from_json(const Json& j) {
  return decode("degree audit", [&] {
    DegreeAudit a;
    a.depth = field(j, "depth").get<std::size_t>();
    a.threshold = field(j, "threshold").get<std::int64_t>();
    a.initial_degrees = field(j, "initial_degrees").get<std::vector<std::int64_t>>();
    if (!field(j, "min_other_degree").is_null()) {
      a.min_other_degree = j.at("min_other_degree").get<std::int64_t>();
    }
    a.exceptions = field(j, "exceptions").get<std::vector<std::string>>();
    a.failures = field(j, "failures").get<std::vector<std::string>>();
    for (const auto& row : field(j, "rows")) {
      a.rows.push_back({indices_from_json(field(row, "mutation_word")),
                        triple_from_json(field(row, "tau_triple")),
                        field(row, "new_variable_degree").get<std::int64_t>(),
                        field(row, "exceptional").get<bool>(),
                        field(row, "materialized").get<bool>()});
    }
    return a;
  });
}

Json witness_to_json(const WitnessReport& w) {
  const auto& norm = w.normalized;
  return Json{
      {"normalized_matrix", matrix_to_json(norm.matrix)},
      {"permutation", indices_to_json({norm.permutation.begin(), norm.permutation.end()})},
      {"negated", norm.negated},
      {"a", norm.a},
      {"b", norm.b},
      {"c", norm.c},
      {"Y", poly_to_json(w.y)},
      {"Y_fraction", w.y.to_fraction_string()},
      {"Y_original", poly_to_json(w.y_original)},
      {"degree", w.degree},
      {"membership", membership_to_json(w.membership)},
      {"depth_audit", audit_to_json(w.depth_audit)}};
}

WitnessReport witness_from_json(const Json& j) {
  return decode("witness report", [&] {
    WitnessReport w;
    w.normalized.matrix = matrix_from_json(field(j, "normalized_matrix"));
    const auto perm = indices_from_json(field(j, "permutation"));
    if (perm.size() != 3) throw ParseError("permutation has three entries");
    std::copy(perm.begin(), perm.end(), w.normalized.permutation.begin());
    w.normalized.negated = field(j, "negated").get<bool>();
    w.normalized.a = field(j, "a").get<std::int64_t>();
    w.normalized.b = field(j, "b").get<std::int64_t>();
    w.normalized.c = field(j, "c").get<std::int64_t>();
    w.y = poly_from_json(field(j, "Y"));
    w.y_original = poly_from_json(field(j, "Y_original"));
    w.degree = field(j, "degree").get<std::int64_t>();
    w.membership = membership_from_json(field(j, "membership"));
    w.depth_audit = audit_from_json(field(j, "depth_audit"));
    return w;
  });
}

Json seed_to_json(const Seed& s) {
  Json cluster = Json::array();
  for (const auto& p : s.cluster) cluster.push_back(poly_to_json(p));
  return Json{{"matrix", matrix_to_json(s.matrix)},
              {"cluster", cluster},
              {"history", indices_to_json(s.history)}};
}

Seed seed_from_json(const Json& j) {
  return decode("seed", [&] {
    Seed s;
    s.matrix = matrix_from_json(field(j, "matrix"));
    for (const auto& p : field(j, "cluster")) s.cluster.push_back(poly_from_json(p));
    s.history = indices_from_json(field(j, "history"));
    return s;
  });
}

Json load_json_argument(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  std::string text;
  std::string source = "argument";
  if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path);
    if (!in) throw ParseError("cannot open \"" + text_or_path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    source = text_or_path;
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + source + " at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
}

}  // namespace clusterx::json_io
