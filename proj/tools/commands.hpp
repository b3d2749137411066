#pragma once

// Command layer of uptri_cli: configuration, dispatch and JSON/text reports.
// Exit codes: 0 all assertions hold, 1 an assertion failed, 2 usage or parse error,
// 3 budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uptri/basicset.hpp"
#include "uptri/superdecomp.hpp"
#include "uptri/tables.hpp"
#include "uptri/u13.hpp"

namespace uptri {

using json = nlohmann::json;

inline void to_json(json& j, const Root& r) { j = to_string(r); }
inline void from_json(const json& j, Root& r) { r = parse_root(j.get<std::string>()); }

inline void to_json(json& j, const PolyQ& p) { j = json{{"coeffs", p.coeffs()}, {"text", p.to_string()}}; }
inline void from_json(const json& j, PolyQ& p) { p = PolyQ(j.at("coeffs").get<std::vector<std::int64_t>>()); }

NLOHMANN_JSON_SERIALIZE_ENUM(Strategy, {{Strategy::automatic, "auto"},
                                        {Strategy::structural, "structural"},
                                        {Strategy::special, "special"},
                                        {Strategy::recursion, "recursion"},
                                        {Strategy::oracle, "oracle"}})

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CensusRecord, degree_exp, mult_exp, count, rational)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConstituentCensus, q, provenance, index_exp, arm_exp, norm_exp, records)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PartitionReport, n, q, irreducibles, supercharacters, covered_once, uncovered,
                                   covered_twice_or_more, principal_excluded)

namespace u13 {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SymbolicRecord, degree_exp, mult_exp, count)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SymbolicCensus, records)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Check, subject, claim, ok, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BranchReport, label, lambdas, exhaustive, checks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoverageReport, assignments, uncovered, overlapping, free_roots_in_T, lambda1_sum)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CaseReport, q, branches, structure, coverage, center_rbar, center_case4, class_rbar,
                                   class_case4, root_class_rbar, root_class_case4)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IrrationalPairReport, f, q, square_identity, order_four, a0, mu3_at_square,
                                   u_degree_exp, pair_count, not_well_induced_total, nonreal_constituents, constructed,
                                   extensions, mu4_exponents, witness, value_plus, value_minus, conjugate_pair, nonreal,
                                   irreducible_by_inertia)

}  // namespace u13

namespace cli {

enum Exit : int { ok = 0, failed = 1, usage = 2, budget = 3 };

struct RunConfig {
  std::optional<int> n;
  std::optional<int> q, p, f;
  std::string modulus;
  std::string D;
  std::string phi;
  std::string strategy = "auto";
  std::string view = "full";
  std::string variants = "explicit";
  bool symbolic = false;
  Budgets budgets;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::uint64_t samples = 128;
  int jobs = 1;
};

struct Outcome {
  int code = Exit::ok;
  json report;
  std::string text;
};

namespace detail {

inline int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing ") + flag);
  return *v;
}

/// --q alone, or --p/--f with an optional --modulus (constant-first coefficients).
inline std::shared_ptr<const Fq> field_of(const RunConfig& c) {
  if (c.p || c.f || !c.modulus.empty()) {
    std::string text = "p=" + std::to_string(need(c.p, "--p")) + " f=" + std::to_string(c.f.value_or(1));
    if (!c.modulus.empty()) text += " modulus=" + c.modulus;
    auto F = std::make_shared<const Fq>(parse_field_config(text));
    if (c.q && *c.q != F->q()) throw std::invalid_argument("--q disagrees with --p/--f");
    return F;
  }
  return std::make_shared<const Fq>(Fq::from_order(need(c.q, "--q")));
}

inline BasicSet basic_set_of(const RunConfig& c) {
  if (c.D.empty()) throw std::invalid_argument("missing --D");
  return BasicSet(need(c.n, "--n"), parse_root_list(c.D));
}

inline PhiAssignment phi_of(const RunConfig& c, const Fq& F, int k) {
  if (c.phi.empty()) return PhiAssignment(static_cast<std::size_t>(k), 1);
  PhiAssignment out;
  for (std::size_t start = 0; start <= c.phi.size();) {
    const std::size_t comma = std::min(c.phi.find(',', start), c.phi.size());
    const std::string part = c.phi.substr(start, comma - start);
    int v = -1;
    try {
      std::size_t used = 0;
      v = std::stoi(part, &used);
      if (used != part.size()) v = -1;
    } catch (const std::exception&) {
    }
    if (v <= 0 || v >= F.q()) throw ParseError("phi entry '" + part + "' is not a nonzero element code below q", start);
    out.push_back(static_cast<Fq::Elem>(v));
    start = comma + 1;
  }
  if (static_cast<int>(out.size()) != k)
    throw std::invalid_argument("--phi has " + std::to_string(out.size()) + " entries, D has " + std::to_string(k));
  return out;
}

inline std::string records_text(const ConstituentCensus& c) {
  std::ostringstream s;
  for (const auto& r : c.records)
    s << "q^" << r.degree_exp << " x q^" << r.mult_exp << " mult, count " << r.count << (r.rational ? "" : " (irrational)")
      << "\n";
  s << "total " << c.total() << ", strategy " << to_string(c.provenance) << "\n";
  return s.str();
}

inline u13::Variants variants_of(const RunConfig& c) {
  if (c.variants == "explicit") return u13::Variants::explicit_all;
  if (c.variants == "representative") return u13::Variants::representative;
  throw std::invalid_argument("--variants must be explicit or representative");
}

}  // namespace detail

inline Outcome cmd_tableau(const RunConfig& c) {
  const BasicSet D = detail::basic_set_of(c);
  if (c.view != "full" && c.view != "r") throw std::invalid_argument("--view must be full or r");
  const std::string grid = render_tableau(D, c.view == "r" ? TableauView::r_group : TableauView::full);
  Outcome o;
  std::vector<std::string> rows;
  std::istringstream in(grid);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  o.report = {{"command", "tableau"}, {"n", D.n()}, {"D", D.roots()}, {"view", c.view}, {"rows", rows}};
  o.text = grid;
  return o;
}

inline Outcome cmd_derived(const RunConfig& c) {
  const BasicSet D = detail::basic_set_of(c);
  const MonomialPerm w = w_matrix(D);
  const DerivedSets ds = derived_sets(D);
  json wm = json::array();
  for (int i = 1; i <= w.k(); ++i) {
    std::vector<int> row;
    for (int j = 1; j <= w.k(); ++j) row.push_back(w.entry(i, j));
    wm.push_back(row);
  }
  Outcome o;
  o.report = {{"command", "derived"}, {"n", D.n()},
              {"D", D.roots()},      {"wD", wm},
              {"gamma", ds.gamma_set.roots()}, {"nu", ds.lambda_set.roots()},
              {"v_pattern", v_pattern(D).roots()}, {"arm_total", arm_total(D)}};
  std::ostringstream s;
  s << "D = " << to_string(D) << "\nw_D =\n";
  for (const auto& row : wm) {
    for (const auto& e : row) s << ' ' << e.get<int>();
    s << '\n';
  }
  s << "Gamma_D = {" << to_string(ds.gamma_set) << "}\nLambda_D = {" << to_string(ds.lambda_set) << "}\n";
  o.text = s.str();
  return o;
}

inline Outcome cmd_decompose(const RunConfig& c) {
  const auto F = detail::field_of(c);
  const BasicSet D = detail::basic_set_of(c);
  const PhiAssignment phi = detail::phi_of(c, *F, D.k());
  const ConstituentCensus cen = census(D, phi, F, parse_strategy(c.strategy), c.budgets);
  Outcome o;
  o.code = cen.invariants_hold() ? Exit::ok : Exit::failed;
  o.report = {{"command", "decompose"}, {"n", D.n()}, {"q", F->q()}, {"D", D.roots()}, {"phi", phi},
              {"census", cen},          {"total", cen.total()}, {"invariants_hold", cen.invariants_hold()}};
  o.text = "D = " + to_string(D) + " over F_" + std::to_string(F->q()) + "\n" + detail::records_text(cen);
  return o;
}

inline Outcome cmd_partition(const RunConfig& c) {
  const auto F = detail::field_of(c);
  const PartitionReport r = partition_check(detail::need(c.n, "--n"), F, c.budgets);
  Outcome o;
  o.code = r.ok() ? Exit::ok : Exit::failed;
  o.report = {{"command", "partition-check"}, {"report", r}, {"pass", r.ok()}};
  o.text = std::string(r.ok() ? "pass" : "FAIL") + ": U_" + std::to_string(r.n) + "(" + std::to_string(r.q) + ") has " +
           std::to_string(r.irreducibles) + " irreducibles, " + std::to_string(r.supercharacters) +
           " supercharacters; covered once " + std::to_string(r.covered_once) + ", uncovered " +
           std::to_string(r.uncovered) + ", overlapping " + std::to_string(r.covered_twice_or_more) + "\n";
  return o;
}

inline Outcome cmd_oracle_table(const RunConfig& c) {
  const auto F = detail::field_of(c);
  const int n = detail::need(c.n, "--n");
  auto U = std::make_shared<const PatternQuotient>(F, PatternGroup::full(n));
  if (U->order() > c.budgets.table_order) throw BudgetError("table group order", U->order(), c.budgets.table_order);
  const GroupPtr G = EnumeratedGroup::make(Group(U, c.budgets.enumeration), c.budgets);
  const CharacterTable T = character_table(G, c.budgets);
  std::map<std::uint64_t, std::uint64_t> degrees;
  std::uint64_t sum_sq = 0;
  for (const auto& chi : T.irr) {
    const auto d = chi[0].as_rational();
    if (!d || d->denominator() != 1) throw InconsistencyError("non-integral degree");
    const auto v = static_cast<std::uint64_t>(d->numerator());
    ++degrees[v];
    sum_sq += v * v;
  }
  const bool orth = check_orthogonality(T), sq = sum_sq == G->order(), pw = degrees_are_powers_of(T, F->q());
  json deg = json::array();
  for (auto [d, m] : degrees) deg.push_back({{"degree", d}, {"count", m}});
  Outcome o;
  o.code = orth && sq && pw ? Exit::ok : Exit::failed;
  o.report = {{"command", "oracle-table"}, {"n", n}, {"q", F->q()}, {"order", G->order()},
              {"classes", G->class_count()}, {"degrees", deg}, {"orthogonality", orth},
              {"sum_of_squares_is_order", sq}, {"degrees_are_powers_of_q", pw}};
  std::ostringstream s;
  s << "U_" << n << "(" << F->q() << "): order " << G->order() << ", " << G->class_count() << " classes\n";
  for (auto [d, m] : degrees) s << "  degree " << d << " x " << m << "\n";
  s << "orthogonality " << (orth ? "ok" : "FAIL") << ", sum deg^2 " << (sq ? "ok" : "FAIL") << ", powers of q "
    << (pw ? "ok" : "FAIL") << "\n";
  o.text = s.str();
  return o;
}

inline Outcome cmd_u13_census(const RunConfig& c) {
  const u13::Variants mode = detail::variants_of(c);
  const u13::SymbolicCensus sym = u13::census_symbolic(mode);
  const u13::SymbolicCensus expected = u13::expected_closed_forms();
  const bool mass = sym.mass() == PolyQ::q().pow(15);
  Outcome o;
  o.report = {{"command", "u13 census"}, {"variants", c.variants},     {"symbolic", sym},
              {"closed_forms", expected},  {"mass_is_q15", mass},       {"matches_closed_forms", sym.records == expected.records}};
  o.code = mass ? Exit::ok : Exit::failed;
  std::ostringstream s;
  s << "| degree | multiplicity | ledger count | closed form |";
  if (!c.symbolic) s << " ledger at q=" << detail::need(c.q, "--q") << " | closed form at q=" << *c.q << " |";
  s << "\n|---|---|---|---|" << (c.symbolic ? "" : "---|---|") << "\n";
  for (std::size_t i = 0; i < sym.records.size(); ++i) {
    const auto& r = sym.records[i];
    const PolyQ pc = i < expected.records.size() ? expected.records[i].count : PolyQ();
    s << "| q^" << r.degree_exp << " | q^" << r.mult_exp << " | " << r.count.to_string() << " | " << pc.to_string() << " |";
    if (!c.symbolic) s << ' ' << r.count.eval(*c.q) << " | " << pc.eval(*c.q) << " |";
    s << "\n";
  }
  if (!c.symbolic) {
    const int q = *c.q;
    o.report["q"] = q;
    o.report["counts"] = sym.counts_at(q);
    o.report["closed_form_counts"] = expected.counts_at(q);
    const ConstituentCensus lifted = u13::census_at(q, mode);
    o.report["census"] = lifted;
    s << "\nlifted to U_13(" << q << "):\n" << detail::records_text(lifted);
  }
  o.text = s.str();
  return o;
}

inline Outcome cmd_u13_verify(const RunConfig& c) {
  u13::VerifyOptions opt;
  opt.seed = c.seed;
  opt.samples = c.samples;
  const u13::CaseReport r = u13::verify_cases(detail::need(c.q, "--q"), opt);
  Outcome o;
  o.code = r.ok() ? Exit::ok : Exit::failed;
  o.report = {{"command", "u13 verify"}, {"report", r}, {"pass", r.ok()}};
  std::ostringstream s;
  for (const auto& b : r.branches)
    s << (b.ok() ? "ok   " : "FAIL ") << b.label << "  (" << b.lambdas << (b.exhaustive ? " lambda, all" : " lambda, sampled")
      << ")\n";
  for (const auto& ch : r.structure) s << (ch.ok ? "ok   " : "FAIL ") << ch.subject << ": " << ch.claim << "\n";
  for (const auto& ch : r.failures()) s << "  " << ch.subject << ": " << ch.claim << ": " << ch.detail << "\n";
  s << (r.ok() ? "pass" : "FAIL") << "\n";
  o.text = s.str();
  return o;
}

inline Outcome cmd_u13_irrational(const RunConfig& c) {
  const u13::IrrationalPairReport r = u13::irrational_pair(detail::need(c.f, "--f"), c.budgets);
  Outcome o;
  o.code = r.ok() ? Exit::ok : Exit::failed;
  o.report = {{"command", "u13 irrational"}, {"report", r}, {"pass", r.ok()}};
  std::ostringstream s;
  s << "q = " << r.q << ": x(a)^2 identity " << (r.square_identity ? "ok" : "FAIL") << ", order 4 "
    << (r.order_four ? "ok" : "FAIL") << "\n";
  if (r.constructed)
    s << r.extensions << " extensions, values " << r.value_plus << " and " << r.value_minus << " at " << r.witness << "\n";
  else
    s << "extensions not constructed (budget)\n";
  s << r.nonreal_constituents << " non-real constituents of degree q^" << r.u_degree_exp << "; not well-induced total "
    << r.not_well_induced_total << "\n";
  o.text = s.str();
  return o;
}

inline Outcome cmd_selftest(const RunConfig&) {
  std::vector<std::pair<std::string, bool>> checks;
  {
    const BasicSet D(6, {Root{2, 3}, Root{1, 4}, Root{3, 5}});
    checks.emplace_back("w_matrix of {2-3,1-4,3-5}", w_matrix(D).perm == std::vector<int>{2, 1, 3});
  }
  {
    const BasicSet D(7, parse_root_list("1-2,3-4,4-5,2-6"));
    const auto ds = derived_sets(D);
    checks.emplace_back("derived sets n=7",
                        ds.gamma_set == RootSet(7, parse_root_list("1-1,1-2,1-3,3-3")) && ds.lambda_set == RootSet(7, parse_root_list("2-2,2-3")));
  }
  for (auto [n, classes] : {std::pair{3, 5u}, std::pair{4, 16u}}) {
    auto U = std::make_shared<const PatternQuotient>(std::make_shared<const Fq>(Fq::from_order(2)), PatternGroup::full(n));
    checks.emplace_back("class count U_" + std::to_string(n) + "(2)", EnumeratedGroup::make(Group(U, 1u << 20), {})->class_count() == classes);
  }
  checks.emplace_back("partition U_3(2)", partition_check(3, std::make_shared<const Fq>(Fq::from_order(2))).ok());
  checks.emplace_back("u13 mass identity", u13::census_symbolic().mass() == PolyQ::q().pow(15));
  checks.emplace_back("u13 ledger coverage q=2", u13::ledger_coverage(u13::case_ledger(), *u13::field(2)).ok());
  Outcome o;
  json list = json::array();
  for (const auto& [name, ok] : checks) {
    list.push_back({{"check", name}, {"ok", ok}});
    o.text += std::string(ok ? "ok   " : "FAIL ") + name + "\n";
    if (!ok) o.code = Exit::failed;
  }
  o.report = {{"command", "selftest"}, {"checks", list}, {"pass", o.code == Exit::ok}};
  return o;
}

/// Runs one command and maps exceptions to exit codes with a machine-readable reason.
inline Outcome execute(const std::string& command, const RunConfig& c) {
  try {
    if (c.jobs < 1) throw std::invalid_argument("--jobs must be positive");
    if (c.budgets.enumeration == 0 || c.budgets.table_order == 0) throw std::invalid_argument("budgets must be positive");
    if (c.format != "json" && c.format != "text") throw std::invalid_argument("--format must be json or text");
    if (command == "tableau") return cmd_tableau(c);
    if (command == "derived") return cmd_derived(c);
    if (command == "decompose") return cmd_decompose(c);
    if (command == "partition-check") return cmd_partition(c);
    if (command == "oracle-table") return cmd_oracle_table(c);
    if (command == "u13 census") return cmd_u13_census(c);
    if (command == "u13 verify") return cmd_u13_verify(c);
    if (command == "u13 irrational") return cmd_u13_irrational(c);
    if (command == "selftest") return cmd_selftest(c);
    throw std::invalid_argument("unknown command '" + command + "'");
  } catch (const BudgetError& e) {
    json r = {{"error", "budget"}, {"reason", e.what()}, {"requested", e.requested()}, {"budget", e.budget()}};
    if (auto* ce = dynamic_cast<const CensusBudgetError*>(&e)) r["norm_exp"] = ce->norm_exp();
    return {Exit::budget, r, std::string("budget exceeded: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {Exit::usage, {{"error", "parse"}, {"reason", e.what()}, {"position", e.position()}}, std::string("parse error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {Exit::usage, {{"error", "usage"}, {"reason", e.what()}}, std::string("error: ") + e.what() + "\n"};
  } catch (const InconsistencyError& e) {
    return {Exit::failed, {{"error", "inconsistency"}, {"reason", e.what()}}, std::string("inconsistency: ") + e.what() + "\n"};
  }
}

inline std::optional<std::uint64_t> env_budget(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used == std::string(v).size() && x > 0) return x;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string(name) + " must be a positive integer");
}

/// Full command line: parse, execute, print. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supercharacter decomposition of unitriangular groups"};
  app.require_subcommand(1);
  RunConfig c;
  std::optional<std::uint64_t> enum_budget, table_budget;
  std::optional<int> n, q, p, f;

  auto common = [&](CLI::App* s) {
    s->add_option("--n", n, "matrix size");
    s->add_option("--q", q, "field order");
    s->add_option("--p", p, "field characteristic");
    s->add_option("--f", f, "field degree; for u13 irrational, q = 2^f");
    s->add_option("--modulus", c.modulus, "constant-first modulus coefficients, e.g. 1,1,1");
    s->add_option("--D", c.D, "basic set as i-j root list, e.g. 1-4,2-5");
    s->add_option("--phi", c.phi, "nonzero element codes, positional over D");
    s->add_option("--strategy", c.strategy, "auto|structural|special|recursion|oracle");
    s->add_option("--view", c.view, "tableau view: full|r");
    s->add_option("--variants", c.variants, "u13 ledger: explicit|representative");
    s->add_flag("--symbolic", c.symbolic, "u13 census as polynomials only");
    s->add_option("--enum-budget", enum_budget, "element budget (env ENUM_BUDGET)");
    s->add_option("--table-budget", table_budget, "character table group order budget (env TABLE_BUDGET)");
    s->add_option("--format", c.format, "json|text");
    s->add_option("--seed", c.seed, "seed for sampled checks");
    s->add_option("--samples", c.samples, "sampled lambda per branch in u13 verify");
    s->add_option("--jobs", c.jobs, "worker count (computation is single-threaded)");
  };

  std::string command;
  for (const char* name : {"tableau", "derived", "decompose", "partition-check", "oracle-table", "selftest"}) {
    auto* s = app.add_subcommand(name);
    common(s);
    s->callback([&command, name] { command = name; });
  }
  auto* u13c = app.add_subcommand("u13", "thirteen-dimensional sample");
  u13c->require_subcommand(1);
  for (const char* name : {"census", "verify", "irrational"}) {
    auto* s = u13c->add_subcommand(name);
    common(s);
    s->callback([&command, name] { command = std::string("u13 ") + name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  try {
    c.budgets.enumeration = enum_budget ? *enum_budget : env_budget("ENUM_BUDGET").value_or(c.budgets.enumeration);
    c.budgets.table_order = table_budget ? *table_budget : env_budget("TABLE_BUDGET").value_or(c.budgets.table_order);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  c.n = n;
  c.q = q;
  c.p = p;
  c.f = f;

  const Outcome o = execute(command, c);
  if (c.format == "text") (o.code == Exit::usage || o.code == Exit::budget ? err : out) << o.text;
  else out << o.report.dump(2) << "\n";
  return o.code;
}

}  // namespace cli
}  // namespace uptri
