#include "clusterx/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "clusterx/basis.hpp"
#include "clusterx/dyck.hpp"
#include "clusterx/elements.hpp"
#include "clusterx/error.hpp"
#include "clusterx/exchange.hpp"
#include "clusterx/fixtures.hpp"
#include "clusterx/json_io.hpp"
#include "clusterx/rank3.hpp"
#include "clusterx/upper.hpp"

namespace clusterx::cli {

namespace {

using json_io::Json;

struct Options {
  bool json = false;
  std::string matrix, a, poly, triple, seq, mode = "gcc", filter;
  std::optional<std::size_t> cap;
  std::size_t at = 0;
  bool count = false, fraction = false, perturb_markov = false;
  std::size_t depth = 4, witness_depth = 3, max_iterations = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EnumerationLimits limits(const Options& o) {
  EnumerationLimits l;
  if (const char* env = std::getenv("CLUSTERX_GCC_CAP")) {
    try {
      l.max_total_length = std::stoul(env);
    } catch (const std::exception&) {
      throw UsageError("CLUSTERX_GCC_CAP must be a nonnegative integer");
    }
  }
  if (o.cap) l.max_total_length = *o.cap;
  return l;
}

ExtendedMatrix load_matrix(const Options& o) {
  return json_io::matrix_from_json(json_io::load_json_argument(o.matrix));
}

AVector load_a(const Options& o) { return json_io::avector_from_json(json_io::load_json_argument(o.a)); }

std::string poly_text(const LaurentPoly& p, bool fraction) {
  return fraction ? p.to_fraction_string() : p.to_string();
}

std::string bits_text(const BitSeq& s) {
  std::string out = "(";
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (r) out += ",";
    out += std::to_string(s[r]);
  }
  return out + ")";
}

std::string tuple_text(const GccTuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    if (i) out += ",";
    out += bits_text(t.s[i]);
  }
  return out + ")";
}

std::string vector_text(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::string triple_text(const Rank3Triple& t) { return vector_text({t.p, t.q, t.r}); }

std::string word_text(const std::vector<std::size_t>& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i] + 1);
  }
  return out + "]";
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

LaurentPoly target_poly(const Options& o, const ExtendedMatrix& m) {
  if (!o.poly.empty()) return LaurentPoly::parse(o.poly, m.m());
  return xtilde(load_a(o), m, limits(o));
}

void cmd_xtilde(const Options& o, std::ostream& out) {
  const LaurentPoly p = xtilde(load_a(o), load_matrix(o), limits(o));
  if (o.json) return emit(out, json_io::poly_to_json(p));
  out << poly_text(p, o.fraction) << "\n";
}

void cmd_z(const Options& o, std::ostream& out) {
  const LaurentPoly p = z_element(load_a(o), load_matrix(o));
  if (o.json) return emit(out, json_io::poly_to_json(p));
  out << poly_text(p, o.fraction) << "\n";
}

void cmd_gcc(const Options& o, std::ostream& out) {
  const ExtendedMatrix m = load_matrix(o);
  const AVector a = load_a(o);
  if (o.mode == "gcc") {
    const auto tuples = enumerate_S_gcc(a, m, limits(o));
    if (o.json) {
      Json j{{"mode", o.mode}, {"count", tuples.size()}};
      if (!o.count) {
        j["items"] = Json::array();
        for (const auto& t : tuples) j["items"].push_back(json_io::tuple_to_json(t));
      }
      return emit(out, j);
    }
    if (o.count) {
      out << tuples.size() << "\n";
      return;
    }
    for (const auto& t : tuples) out << tuple_text(t) << "\n";
    return;
  }
  const auto mode = o.mode == "quasi" ? CompatibilityMode::Quasi : CompatibilityMode::Global;
  const auto collections = enumerate_collections(a, m, mode, limits(o));
  if (o.json) {
    Json j{{"mode", o.mode}, {"count", collections.size()}};
    if (!o.count) {
      j["items"] = Json::array();
      for (const auto& c : collections) j["items"].push_back(json_io::collection_to_json(c));
    }
    return emit(out, j);
  }
  if (o.count) {
    out << collections.size() << "\n";
    return;
  }
  auto side = [&](std::size_t v) -> std::size_t {
    return v < a.size() && a[v] > 0 ? static_cast<std::size_t>(a[v]) : 0;
  };
  for (const auto& c : collections) {
    std::string line;
    for (const auto& sel : c) {
      if (!line.empty()) line += "; ";
      line += "(" + std::to_string(sel.tail + 1) + "," + std::to_string(sel.head + 1) + "): " +
              render_dyck(build_dyck(side(sel.tail), side(sel.head)), sel.horizontal, sel.vertical);
    }
    out << (line.empty() ? "(no arrows)" : line) << "\n";
  }
}

std::vector<std::size_t> parse_sequence(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (v < 1 || item.find_first_not_of(" \t", used) != std::string::npos) throw std::exception();
      out.push_back(static_cast<std::size_t>(v - 1));
    } catch (const std::exception&) {
      throw UsageError("--seq expects comma-separated 1-based indices, got \"" + text + "\"");
    }
  }
  if (out.empty()) throw UsageError("--seq is empty");
  return out;
}

void cmd_mutate(const Options& o, std::ostream& out) {
  const ExtendedMatrix m = load_matrix(o);
  std::vector<std::size_t> word;
  if (!o.seq.empty()) {
    word = parse_sequence(o.seq);
  } else {
    if (o.at == 0) throw UsageError("mutate needs --at k or --seq");
    word = {o.at - 1};
  }
  Seed seed = Seed::initial(m);
  for (std::size_t k : word) seed = mutate_seed(seed, k);
  if (o.json) return emit(out, json_io::seed_to_json(seed));
  out << "matrix:\n";
  for (const auto& row : seed.matrix.rows()) {
    std::string line;
    for (Entry e : row) line += (line.empty() ? "" : " ") + std::to_string(e);
    out << "  " << line << "\n";
  }
  out << "cluster:\n";
  for (std::size_t i = 0; i < seed.cluster.size(); ++i) {
    out << "  " << i + 1 << ": " << poly_text(seed.cluster[i], o.fraction) << "\n";
  }
}

void print_membership(const MembershipReport& r, std::ostream& out) {
  for (const auto& d : r.per_direction) {
    out << "direction " << d.k + 1 << ": " << (d.check.passes ? "pass" : "fail")
        << " (A = " << d.adjacency_divisor.to_string() << ")";
    if (d.check.failing_degree) {
      out << " at x" << d.k + 1 << "^" << *d.check.failing_degree
          << ", remainder " << d.check.remainder->to_string();
    }
    out << "\n";
  }
  out << "coprime: " << (r.coprime ? "yes" : "no") << ", full rank: " << (r.full_rank ? "yes" : "no")
      << "\n";
  out << "verdict: " << (r.verdict ? "in U_x" : "not in U_x") << "\n";
}

void cmd_check_upper(const Options& o, std::ostream& out) {
  const ExtendedMatrix m = load_matrix(o);
  const MembershipReport r = check_Ux_membership(target_poly(o, m), m);
  if (o.json) return emit(out, json_io::membership_to_json(r));
  print_membership(r, out);
}

Rank3Triple triple_input(const Options& o) {
  if (!o.triple.empty()) return json_io::triple_from_json(json_io::load_json_argument(o.triple));
  if (!o.matrix.empty()) return tau(load_matrix(o));
  throw UsageError("give --triple or --matrix");
}

void cmd_rank3_classify(const Options& o, std::ostream& out) {
  const Rank3Triple t = triple_input(o);
  const bool nonacyclic = classify_nonacyclic(t);
  const Integer lhs = Integer(t.p) * t.q * t.r + 4;
  const Integer rhs = Integer(t.p) * t.p + Integer(t.q) * t.q + Integer(t.r) * t.r;
  const bool small = t.p < 2 || t.q < 2 || t.r < 2;
  if (o.json) {
    return emit(out, Json{{"triple", json_io::triple_to_json(t)},
                          {"nonacyclic", nonacyclic},
                          {"abc_plus_4", lhs.str()},
                          {"sum_of_squares", rhs.str()}});
  }
  if (small) {
    out << "acyclic (an entry is below 2)\n";
  } else {
    out << (nonacyclic ? "non-acyclic (" : "acyclic (") << lhs << (nonacyclic ? " >= " : " < ")
        << rhs << ")\n";
  }
}

void cmd_rank3_root(const Options& o, std::ostream& out) {
  const Rank3Triple t = triple_input(o);
  const Rank3Triple r = find_root(t);
  if (o.json) {
    return emit(out, Json{{"triple", json_io::triple_to_json(t)}, {"root", json_io::triple_to_json(r)}});
  }
  out << triple_text(r) << "\n";
}

void cmd_rank3_grading(const Options& o, std::ostream& out) {
  const auto g = grading_vector(load_matrix(o));
  if (o.json) return emit(out, Json(g));
  out << vector_text(g) << "\n";
}

void print_audit(const DegreeAudit& a, std::ostream& out) {
  out << "depth " << a.depth << ", threshold ac-b-a = " << a.threshold << ", initial degrees "
      << vector_text(a.initial_degrees) << "\n";
  for (const auto& row : a.rows) {
    out << "  " << word_text(row.word) << " tau " << triple_text(row.tau) << " degree "
        << row.new_variable_degree << (row.exceptional ? " (z3)" : "")
        << (row.materialized ? "" : " (symbolic)") << "\n";
  }
  if (a.min_other_degree) out << "min degree outside {x1,x2,x3,z3}: " << *a.min_other_degree << "\n";
  for (const auto& f : a.failures) out << "FAIL " << f << "\n";
  out << (a.passed() ? "audit passed" : "audit failed") << "\n";
}

int cmd_rank3_witness(const Options& o, std::ostream& out) {
  const WitnessReport w = construct_Y(load_matrix(o), o.witness_depth);
  if (o.json) {
    emit(out, json_io::witness_to_json(w));
  } else {
    const auto& n = w.normalized;
    out << "normal form: a=" << n.a << " b=" << n.b << " c=" << n.c << ", permutation "
        << word_text({n.permutation.begin(), n.permutation.end()})
        << (n.negated ? ", negated" : "") << "\n";
    out << "Y = " << w.y.to_fraction_string() << "\n";
    out << "Y (input variables) = " << w.y_original.to_fraction_string() << "\n";
    out << "degree " << w.degree << "\n";
    print_membership(w.membership, out);
    print_audit(w.depth_audit, out);
  }
  return w.membership.verdict && w.depth_audit.passed() ? kExitOk : kExitDomain;
}

int cmd_rank3_audit(const Options& o, std::ostream& out) {
  const DegreeAudit a = degree_audit(load_matrix(o), o.depth);
  if (o.json) {
    emit(out, json_io::audit_to_json(a));
  } else {
    print_audit(a, out);
  }
  return a.passed() ? kExitOk : kExitDomain;
}

void cmd_expand(const Options& o, std::ostream& out) {
  const ExtendedMatrix m = load_matrix(o);
  const Expansion e = expand_standard(target_poly(o, m), m, {o.max_iterations});
  if (o.json) return emit(out, json_io::expansion_to_json(e, m.m()));
  for (const auto& [b, u] : e.terms) out << "z" << vector_text(b) << ": " << u.to_string() << "\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto results = verify_paper({o.filter, o.perturb_markov});
  if (results.empty()) throw UsageError("no fixture matches \"" + o.filter + "\"");
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  if (o.json) {
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back({{"group", r.group}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    emit(out, Json{{"passed", passed}, {"total", results.size()}, {"fixtures", rows}});
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.group << "/" << r.name;
      if (!r.passed) out << ": " << r.detail;
      out << "\n";
    }
    out << passed << "/" << results.size() << " fixtures passed\n";
  }
  return passed == results.size() ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Combinatorial elements of cluster algebras", "clusterx"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON instead of text");

  auto add_matrix = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--matrix", o.matrix, "Extended exchange matrix: JSON text or file");
    if (required) opt->required();
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "Maximum sum of [a_i]_+ to enumerate (default 24)");
  };

  auto* xt = app.add_subcommand("xtilde", "Compute x~[a]");
  add_matrix(xt);
  xt->add_option("--a", o.a, "Vector a, e.g. \"[1,1]\"")->required();
  xt->add_flag("--fraction", o.fraction, "Print as (numerator)/(monomial)");
  add_cap(xt);

  auto* zc = app.add_subcommand("z", "Compute the standard monomial z[a]");
  add_matrix(zc);
  zc->add_option("--a", o.a, "Vector a")->required();
  zc->add_flag("--fraction", o.fraction, "Print as (numerator)/(monomial)");

  auto* gc = app.add_subcommand("gcc", "Enumerate S_gcc tuples or Dyck-path collections");
  add_matrix(gc);
  gc->add_option("--a", o.a, "Vector a")->required();
  gc->add_option("--mode", o.mode, "gcc: S_gcc tuples; quasi: quasi-compatible collections; "
                                   "dyck: globally compatible collections")
      ->check(CLI::IsMember({"gcc", "quasi", "dyck"}));
  gc->add_flag("--count", o.count, "Print only the number of items");
  add_cap(gc);

  auto* mu = app.add_subcommand("mutate", "Mutate the initial seed");
  add_matrix(mu);
  auto* at = mu->add_option("--at", o.at, "Mutate once at k (1-based)")->check(CLI::PositiveNumber);
  auto* seq = mu->add_option("--seq", o.seq, "Mutation sequence \"k1,k2,...\"");
  at->excludes(seq);
  mu->add_flag("--fraction", o.fraction, "Print cluster variables as fractions");

  auto* cu = app.add_subcommand("check-upper", "Test membership in the upper bound U_x");
  add_matrix(cu);
  auto* cu_poly = cu->add_option("--poly", o.poly, "Laurent polynomial in canonical text");
  auto* cu_a = cu->add_option("--a", o.a, "Test x~[a] instead of --poly");
  cu_poly->excludes(cu_a);
  add_cap(cu);

  auto* r3 = app.add_subcommand("rank3", "Rank 3 non-acyclic seeds");
  r3->require_subcommand(1);
  auto* r3_root = r3->add_subcommand("root", "Root of the Gamma-orbit of tau");
  auto* r3_classify = r3->add_subcommand("classify", "Decide non-acyclicity of a tau triple");
  for (auto* sub : {r3_root, r3_classify}) {
    sub->add_option("--triple", o.triple, "Triple (|b23|,|b31|,|b12|), e.g. \"[2,2,2]\"");
    add_matrix(sub, false);
  }
  auto* r3_grading = r3->add_subcommand("grading", "Canonical grading tau(B)^T");
  add_matrix(r3_grading);
  auto* r3_witness = r3->add_subcommand("witness", "Construct Y and check it");
  add_matrix(r3_witness);
  r3_witness->add_option("--depth", o.witness_depth, "Degree audit depth (default 3)");
  auto* r3_audit = r3->add_subcommand("audit", "Bounded degree audit of cluster variables");
  add_matrix(r3_audit);
  r3_audit->add_option("--depth", o.depth, "Mutation depth (default 4)");

  auto* ex = app.add_subcommand("expand", "Expand in the standard monomial basis (acyclic seeds)");
  add_matrix(ex);
  auto* ex_poly = ex->add_option("--poly", o.poly, "Laurent polynomial in canonical text");
  auto* ex_a = ex->add_option("--a", o.a, "Expand x~[a] instead of --poly");
  ex_poly->excludes(ex_a);
  ex->add_option("--max-iterations", o.max_iterations,
                 "Greedy step cap (default 10 x number of input terms)");
  add_cap(ex);

  auto* vp = app.add_subcommand("verify-paper", "Check all pinned reference values");
  vp->add_option("--filter", o.filter, "Run only one group or fixture");
  vp->add_flag("--perturb-markov", o.perturb_markov)->group("");

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if ((cu->parsed() || ex->parsed()) && o.poly.empty() && o.a.empty()) {
      throw UsageError("give --poly or --a");
    }
    if (xt->parsed()) cmd_xtilde(o, buffer);
    else if (zc->parsed()) cmd_z(o, buffer);
    else if (gc->parsed()) cmd_gcc(o, buffer);
    else if (mu->parsed()) cmd_mutate(o, buffer);
    else if (cu->parsed()) cmd_check_upper(o, buffer);
    else if (r3_root->parsed()) cmd_rank3_root(o, buffer);
    else if (r3_classify->parsed()) cmd_rank3_classify(o, buffer);
    else if (r3_grading->parsed()) cmd_rank3_grading(o, buffer);
    else if (r3_witness->parsed()) code = cmd_rank3_witness(o, buffer);
    else if (r3_audit->parsed()) code = cmd_rank3_audit(o, buffer);
    else if (ex->parsed()) cmd_expand(o, buffer);
    else if (vp->parsed()) code = cmd_verify(o, buffer);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitDomain;
  }
  out << buffer.str();
  return code;
}

}  // namespace clusterx::cli
