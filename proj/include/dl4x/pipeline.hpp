#pragma once

#include <set>
#include <string>
#include <vector>

#include "dl4x/cqa.hpp"
#include "dl4x/dl_model.hpp"
#include "dl4x/expander.hpp"
#include "dl4x/normalizer.hpp"
#include "dl4x/parser.hpp"
#include "dl4x/tableau.hpp"
#include "dl4x/translator.hpp"

// parse -> normalize -> translate -> ground -> tableau, and the query paths on
// top of it.
namespace dl4x {

struct PipelineOptions {
  NormalizeOptions normalize;
  ThetaOptions theta;
  ExpandOptions expand;
  std::size_t budget_branches = 1'000'000;
  unsigned threads = 1;
  bool trace = false;
};

struct Prepared {
  KnowledgeBase input;
  NormalizedKb normal;
  PhiKB phi;
  GroundPhi ground;
  std::size_t nvars = 0; // level-0 variables at grounding time
};

inline Prepared prepare(const KnowledgeBase &kb, const PipelineOptions &opt = {}) {
  Prepared p;
  p.input = kb;
  p.normal = normalize_kb(kb, opt.normalize);
  p.phi = translate_kb(p.normal.kb, opt.theta);
  p.ground = build_phi(p.phi, opt.expand);
  p.nvars = p.phi.vars.v0.size();
  return p;
}

struct CheckResult {
  bool consistent = false;
  TableauResult tableau;
};

inline CheckResult check_consistency(const Prepared &p, const PipelineOptions &opt = {}) {
  TableauOptions t;
  t.budget_branches = opt.budget_branches;
  t.trace = opt.trace;
  CheckResult r;
  r.tableau = Tableau(p.ground.clauses, p.nvars, t).run();
  r.consistent = r.tableau.consistent;
  return r;
}

inline PreparedQuery prepare_query(Prepared &p, const Query &q) {
  PreparedQuery out;
  Translator tr(p.phi.vars);
  out.psi = tr.theta_query(q, p.normal.kb.sig);
  out.names = query_vars(q);
  for (const auto &v : out.names)
    out.qvars.push_back(p.phi.vars.var0(Var0Kind::QueryVar, v));
  return out;
}

enum class Engine : std::uint8_t { Tableau, Naive, Both };

struct QueryResult {
  std::set<DlSubstitution> answers;
  RawAnswerSet raw;
  AnswerStats stats;
  // Both: whether the two engines agreed; answers are from the tableau
  bool agree = true;
  std::set<DlSubstitution> naive_answers;
};

inline CqaOptions cqa_options(const PipelineOptions &opt) {
  CqaOptions c;
  c.budget_branches = opt.budget_branches;
  c.threads = opt.threads;
  c.trace = opt.trace;
  return c;
}

inline QueryResult answer(Prepared &p, const Query &q, Engine engine, const CqaOptions &c = {}) {
  auto pq = prepare_query(p, q);
  QueryResult r;
  if (engine != Engine::Naive) {
    r.raw = answer_set(p.ground, p.nvars, pq, c, &r.stats);
    r.answers = map_back(r.raw, pq, p.phi.vars);
  }
  if (engine != Engine::Tableau) {
    auto raw = naive_answers(p.ground, p.nvars, pq, c, &r.stats);
    r.naive_answers = map_back(raw, pq, p.phi.vars);
    if (engine == Engine::Naive) {
      r.raw = std::move(raw);
      r.answers = r.naive_answers;
    } else {
      r.agree = r.answers == r.naive_answers;
    }
  }
  return r;
}

} // namespace dl4x
