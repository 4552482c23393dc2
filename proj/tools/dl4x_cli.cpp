// dl4x command-line front end.
//
//   dl4x check <kb>                      exit 0 consistent, 1 inconsistent
//   dl4x query <kb> <q> [--engine E]     one answer per line
//   dl4x translate <kb> [q] [--dump-normal]
//   dl4x stats <kb> [--json]
//
// Budget and parse errors exit with 2 and a diagnostic on stderr.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dl4x/oracle.hpp"
#include "dl4x/pipeline.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kConsistent = 0;
constexpr int kInconsistent = 1;
constexpr int kError = 2;
constexpr int kMismatch = 3;

struct Flags {
  std::size_t budget_clauses = 10'000'000;
  std::size_t budget_branches = 1'000'000;
  std::uint64_t seed = 0; // accepted for symmetry with the test tools; runs are deterministic
  bool trace = false;
  bool json = false;
  unsigned threads = 1;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw dl4x::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dl4x::PipelineOptions pipeline_options(const Flags &f) {
  dl4x::PipelineOptions o;
  o.expand.budget_clauses = f.budget_clauses;
  o.budget_branches = f.budget_branches;
  o.threads = std::max(1u, f.threads);
  return o;
}

const char *rule_name(dl4x::RuleKind r) { return r == dl4x::RuleKind::E ? "E" : "PB"; }

std::function<void(dl4x::RuleKind, int, const dl4x::Literal &)> tracer(const dl4x::Prepared &p) {
  return [&p](dl4x::RuleKind r, int branch, const dl4x::Literal &l) {
    std::cout << rule_name(r) << " " << branch << " " << dl4x::to_sexpr(p.phi.vars, l) << "\n";
  };
}

ordered_json tableau_json(const dl4x::TableauResult &t) {
  return {{"open", t.open_branches},        {"closed", t.closed_branches}, {"pruned", t.pruned_branches},
          {"nodes", t.nodes},               {"depth", t.max_depth},        {"e", t.e_applications},
          {"pb", t.pb_applications}};
}

int run_check(const std::string &kb_path, const Flags &f) {
  auto kb = dl4x::parse_kb(slurp(kb_path), kb_path);
  auto p = dl4x::prepare(kb, pipeline_options(f));
  dl4x::TableauOptions t;
  t.budget_branches = f.budget_branches;
  if (f.trace)
    t.on_rule = tracer(p);
  auto res = dl4x::Tableau(p.ground.clauses, p.nvars, t).run();
  if (f.json)
    std::cout << ordered_json{{"v", 1}, {"consistent", res.consistent}, {"tableau", tableau_json(res)}}.dump()
              << "\n";
  else
    std::cout << (res.consistent ? "consistent" : "inconsistent") << "\n";
  return res.consistent ? kConsistent : kInconsistent;
}

std::string answer_line(const dl4x::DlSubstitution &s, const std::vector<std::string> &vars) {
  return vars.empty() ? std::string("true") : dl4x::print(s, vars);
}

int run_query(const std::string &kb_path, const std::string &q_path, const std::string &engine, const Flags &f) {
  auto kb = dl4x::parse_kb(slurp(kb_path), kb_path);
  auto q = dl4x::parse_query(slurp(q_path), kb.sig, q_path);
  auto opt = pipeline_options(f);
  auto p = dl4x::prepare(kb, opt);
  auto c = dl4x::cqa_options(opt);
  if (f.trace)
    c.on_rule = tracer(p);
  const auto e = engine == "naive" ? dl4x::Engine::Naive : engine == "both" ? dl4x::Engine::Both : dl4x::Engine::Tableau;
  auto r = dl4x::answer(p, q, e, c);
  const auto vars = dl4x::query_vars(q);
  if (f.json) {
    ordered_json j{{"v", 1}, {"vars", vars}, {"answers", ordered_json::array()}};
    for (const auto &a : r.answers)
      j["answers"].push_back(a);
    if (e == dl4x::Engine::Both)
      j["agree"] = r.agree;
    if (e != dl4x::Engine::Naive)
      j["tableau"] = tableau_json(r.stats.tableau);
    std::cout << j.dump() << "\n";
  } else {
    for (const auto &a : r.answers)
      std::cout << answer_line(a, vars) << "\n";
  }
  if (!r.agree) {
    std::cerr << "error: tableau and naive answer sets differ\n";
    for (const auto &a : r.naive_answers)
      if (!r.answers.count(a))
        std::cerr << "  naive only: " << answer_line(a, vars) << "\n";
    for (const auto &a : r.answers)
      if (!r.naive_answers.count(a))
        std::cerr << "  tableau only: " << answer_line(a, vars) << "\n";
    return kMismatch;
  }
  return 0;
}

int run_translate(const std::string &kb_path, const std::string &q_path, bool dump_normal, const Flags &f) {
  auto kb = dl4x::parse_kb(slurp(kb_path), kb_path);
  auto opt = pipeline_options(f);
  auto normal = dl4x::normalize_kb(kb, opt.normalize);
  if (dump_normal) {
    std::cout << dl4x::print_kb(normal.kb);
    return 0;
  }
  auto phi = dl4x::translate_kb(normal.kb, opt.theta);
  std::cout << dl4x::to_sexpr(phi);
  if (!q_path.empty()) {
    auto q = dl4x::parse_query(slurp(q_path), kb.sig, q_path);
    dl4x::Translator tr(phi.vars, opt.theta);
    auto psi = tr.theta_query(q, normal.kb.sig);
    std::cout << "; query\n(and";
    for (const auto &l : psi)
      std::cout << " " << dl4x::to_sexpr(phi.vars, l);
    std::cout << ")\n";
  }
  return 0;
}

int run_stats(const std::string &kb_path, const Flags &f) {
  auto kb = dl4x::parse_kb(slurp(kb_path), kb_path);
  auto p = dl4x::prepare(kb, pipeline_options(f));
  const auto &s = p.ground.stats;
  if (f.json) {
    std::cout << ordered_json{{"v", 1}, {"k", s.k}, {"m", s.m}, {"r", s.r}, {"l", s.l}, {"clauses", s.clauses}}.dump()
              << "\n";
  } else {
    std::cout << "k " << s.k << "\nm " << s.m << "\nr " << s.r << "\nl " << s.l << "\nclauses " << s.clauses
              << "\nunits " << s.units << "\nuniversal_clauses " << s.universal_clauses << "\n";
  }
  return 0;
}

// Human-readable dump of a finite interpretation.
void print_model(const dl4x::oracle::DlInterpretation &I) {
  auto set1 = [](const std::vector<bool> &v) {
    std::string out = "{";
    for (std::size_t i = 0, n = 0; i < v.size(); ++i)
      if (v[i])
        out += (n++ ? ", " : "") + std::to_string(i);
    return out + "}";
  };
  auto set2 = [](const std::vector<bool> &v, int width) {
    std::string out = "{";
    for (std::size_t i = 0, n = 0; i < v.size(); ++i)
      if (v[i])
        out += std::string(n++ ? ", " : "") + "(" + std::to_string(i / width) + " " + std::to_string(i % width) + ")";
    return out + "}";
  };
  std::cout << "domain " << I.nabs << " data " << I.ndata << "\n";
  for (const auto &[n, x] : I.individual)
    std::cout << n << " = " << x << "\n";
  for (const auto &[n, x] : I.constant)
    std::cout << n << " = " << x << "\n";
  for (const auto *m : {&I.datatype, &I.concepts, &I.data, &I.facets})
    for (const auto &[n, v] : *m)
      std::cout << n << " = " << set1(v) << "\n";
  for (const auto &[n, v] : I.aroles)
    std::cout << n << " = " << set2(v, I.nabs) << "\n";
  for (const auto &[n, v] : I.croles)
    std::cout << n << " = " << set2(v, I.ndata) << "\n";
}

int run_oracle(const std::string &kb_path, const std::string &q_path, const Flags &f) {
  auto kb = dl4x::parse_kb(slurp(kb_path), kb_path);
  if (!q_path.empty()) {
    auto q = dl4x::parse_query(slurp(q_path), kb.sig, q_path);
    const auto vars = dl4x::query_vars(q);
    for (const auto &a : dl4x::oracle::dl_answers(kb, q))
      std::cout << answer_line(a, vars) << "\n";
    return 0;
  }
  auto r = dl4x::oracle::dl_consistent(kb);
  std::cout << (r.consistent ? "consistent" : "inconsistent") << "\n";
  if (r.model && !f.json)
    print_model(*r.model);
  return r.consistent ? kConsistent : kInconsistent;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Reasoner for DL(4,x)_D knowledge bases"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--budget-clauses", f.budget_clauses, "maximum number of ground clauses");
  app.add_option("--budget-branches", f.budget_branches, "maximum number of tableau branches");
  app.add_option("--seed", f.seed, "accepted and ignored; output does not depend on it");
  app.add_flag("--trace", f.trace, "print one line per rule application: rule, branch, literal");
  app.add_flag("--json", f.json, "machine-readable output");
  app.add_option("--threads", f.threads, "worker threads for the naive engine")->check(CLI::PositiveNumber);

  std::string kb, q, engine = "tableau";
  bool dump_normal = false;
  auto *check = app.add_subcommand("check", "decide consistency");
  check->add_option("kb", kb)->required();
  auto *query = app.add_subcommand("query", "answer a conjunctive query");
  query->add_option("kb", kb)->required();
  query->add_option("query", q)->required();
  query->add_option("--engine", engine, "naive, tableau, or both (cross-check)")
      ->check(CLI::IsMember({"naive", "tableau", "both"}));
  auto *translate = app.add_subcommand("translate", "print the set-theoretic translation");
  translate->add_option("kb", kb)->required();
  translate->add_option("query", q);
  translate->add_flag("--dump-normal", dump_normal, "print the normalized KB instead");
  auto *stats = app.add_subcommand("stats", "grounding statistics");
  stats->add_option("kb", kb)->required();
  auto *oracle = app.add_subcommand("oracle", "");
  oracle->group(""); // hidden, for debugging
  oracle->add_option("kb", kb)->required();
  oracle->add_option("query", q);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*check)
      return run_check(kb, f);
    if (*query)
      return run_query(kb, q, engine, f);
    if (*translate)
      return run_translate(kb, q, dump_normal, f);
    if (*stats)
      return run_stats(kb, f);
    return run_oracle(kb, q, f);
  } catch (const dl4x::CapacityExceeded &e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
  } catch (const dl4x::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
