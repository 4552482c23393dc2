#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dl4x/dl_model.hpp"
#include "dl4x/expander.hpp"
#include "dl4x/lqs.hpp"
#include "dl4x/tableau.hpp"

// Conjunctive query answering over phi_KB: per-branch decision trees over the
// open complete branches of the tableau, and the naive method that tests
// every candidate substitution for satisfiability.
namespace dl4x {

// How a conjunct is matched against a branch.
//  Consistent: q sigma matches if adding it to the branch (together with the
//    conjuncts matched above it) does not close the branch. Since the branch
//    is complete, this is exactly "some model of phi compatible with the
//    branch satisfies q sigma", so the union over branches equals the naive
//    answer set.
//  BranchModel: q sigma must hold in the branch model M_theta (positive
//    literals on the branch, negative ones absent). This only sees the one
//    minimal model per branch and can miss answers.
enum class MatchMode : std::uint8_t { Consistent, BranchModel };

struct CqaOptions {
  MatchMode match = MatchMode::Consistent;
  std::size_t budget_branches = 1'000'000;
  unsigned threads = 1;
  bool trace = false;
  // forwarded to the AllModels tableau
  std::function<void(RuleKind, int, const Literal &)> on_rule;
  // sees every open complete branch the tableau path walks
  std::function<void(const Branch &)> on_branch;
};

// Answers at the level-0 layer: one binding per query variable, in the order
// of `query_vars`.
using RawAnswer = std::vector<int>;
using RawAnswerSet = std::set<RawAnswer>;

struct PreparedQuery {
  std::vector<Literal> psi;    // theta(Q)
  std::vector<int> qvars;      // Var0 ids of the query variables
  std::vector<std::string> names;
};

namespace detail {
inline Literal substitute(Literal l, const std::vector<int> &qvars, const RawAnswer &binding) {
  auto sub = [&](int x) {
    for (std::size_t i = 0; i < qvars.size(); ++i)
      if (qvars[i] == x && binding[i] >= 0)
        return binding[i];
    return x;
  };
  l.atom.x = sub(l.atom.x);
  if (l.atom.kind != AtomKind::Mem1)
    l.atom.y = sub(l.atom.y);
  if (l.atom.kind == AtomKind::Eq && l.atom.y < l.atom.x)
    std::swap(l.atom.x, l.atom.y);
  return l;
}

// Positive conjuncts first, stable otherwise.
inline std::vector<Literal> conjunct_order(const std::vector<Literal> &psi) {
  std::vector<Literal> out;
  for (const auto &l : psi)
    if (l.positive && l.atom.kind != AtomKind::Eq)
      out.push_back(l);
  for (const auto &l : psi)
    if (!(l.positive && l.atom.kind != AtomKind::Eq))
      out.push_back(l);
  return out;
}
// Every map of n query variables into the domain.
inline std::vector<RawAnswer> candidates(const std::vector<int> &domain, std::size_t n) {
  std::vector<RawAnswer> out;
  const std::size_t k = domain.size();
  if (k == 0 && n > 0)
    return out;
  RawAnswer cur(n, 0);
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i)
      cur[i] = domain[idx[i]];
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == k)
      idx[--i] = 0;
    if (i == 0)
      break;
  }
  return out;
}
} // namespace detail

struct DecisionTreeStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
};

// Walks the decision tree of one open complete branch. Level i binds the
// variables first met in the i-th conjunct; the children of a node are the
// extensions under which that conjunct matches.
inline RawAnswerSet decision_tree(const Branch &b, const PreparedQuery &q, const std::vector<int> &domain,
                                  MatchMode mode = MatchMode::Consistent, DecisionTreeStats *stats = nullptr) {
  RawAnswerSet out;
  const auto conj = detail::conjunct_order(q.psi);
  const std::size_t d = conj.size();
  auto qpos = [&](int x) -> int {
    for (std::size_t i = 0; i < q.qvars.size(); ++i)
      if (q.qvars[i] == x)
        return static_cast<int>(i);
    return -1;
  };
  std::function<void(std::size_t, RawAnswer &, const LiteralSet &)> node = [&](std::size_t level, RawAnswer &binding,
                                                                               const LiteralSet &acc) {
    if (stats)
      ++stats->nodes;
    if (level == d) {
      if (stats)
        ++stats->leaves;
      out.insert(binding);
      return;
    }
    const Literal &lit = conj[level];
    std::vector<int> fresh; // query-variable slots this conjunct binds
    for (int x : {lit.atom.x, lit.atom.kind == AtomKind::Mem1 ? lit.atom.x : lit.atom.y}) {
      int p = qpos(x);
      if (p >= 0 && binding[p] < 0 && std::find(fresh.begin(), fresh.end(), p) == fresh.end())
        fresh.push_back(p);
    }
    std::vector<std::size_t> idx(fresh.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < fresh.size(); ++i)
        binding[fresh[i]] = domain[idx[i]];
      Literal g = detail::substitute(lit, q.qvars, binding);
      if (mode == MatchMode::Consistent) {
        LiteralSet next = acc;
        if (next.add(g))
          node(level + 1, binding, next);
      } else {
        int v = acc.value(g);
        bool ok = g.positive ? v > 0 : v >= 0; // v is the value of the literal, not of its atom
        if (ok)
          node(level + 1, binding, acc);
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == domain.size())
        idx[i++] = 0;
      if (i == idx.size())
        break;
    }
    for (int p : fresh)
      binding[p] = -1;
  };
  RawAnswer binding(q.qvars.size(), -1);
  node(0, binding, b.literals());
  return out;
}

struct AnswerStats {
  std::size_t branches = 0;
  std::size_t sat_tests = 0;
  std::size_t tree_nodes = 0;
  TableauResult tableau; // the AllModels run of the tableau path
};

// Ground instance of psi under one candidate, as unit clauses.
inline std::vector<Clause> instantiate(const PreparedQuery &q, const RawAnswer &cand) {
  std::vector<Clause> out;
  for (const auto &l : q.psi) {
    Clause c{detail::substitute(l, q.qvars, cand)};
    if (simplify_clause(c))
      out.push_back(std::move(c));
  }
  return out;
}

// Union of the decision trees over the open complete branches of phi. A
// subtree is skipped once every candidate still unanswered, added to its
// branch, closes it under the E-rule: literals only accumulate downwards, so
// no branch below could add an answer. A complete branch answers every
// candidate it does not clash with, so this keeps the walk short.
inline RawAnswerSet answer_set(const GroundPhi &g, std::size_t nvars, const PreparedQuery &q, CqaOptions opt = {},
                               AnswerStats *stats = nullptr) {
  std::vector<RawAnswer> cands;
  std::vector<std::vector<Literal>> inst;
  for (auto &c : detail::candidates(g.domain, q.qvars.size())) {
    std::vector<Literal> ls;
    LiteralSet probe(nvars);
    bool ok = true;
    for (const auto &l : q.psi) {
      ls.push_back(detail::substitute(l, q.qvars, c));
      ok = ok && probe.add(ls.back());
    }
    if (ok) { // a self-contradictory instance can never be an answer
      cands.push_back(std::move(c));
      inst.push_back(std::move(ls));
    }
  }
  RawAnswerSet out;
  TableauOptions topt;
  topt.mode = TableauMode::AllModels;
  topt.budget_branches = opt.budget_branches;
  topt.trace = opt.trace;
  topt.on_rule = opt.on_rule;
  const Tableau *tab = nullptr;
  topt.prune = [&](const Branch &b) {
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (!out.count(cands[i]) && !tab->refutes(b, inst[i]))
        return false;
    return true;
  };
  Tableau tableau(g.clauses, nvars, topt);
  tab = &tableau;
  DecisionTreeStats ds;
  std::size_t branches = 0;
  auto res = tableau.run([&](const Branch &b) {
    ++branches;
    if (opt.on_branch)
      opt.on_branch(b);
    auto part = decision_tree(b, q, g.domain, opt.match, &ds);
    out.insert(part.begin(), part.end());
    return out.size() < cands.size();
  });
  if (stats) {
    stats->branches += branches;
    stats->tree_nodes += ds.nodes;
    stats->tableau = std::move(res);
  }
  return out;
}

// Every map of the query variables into the domain, kept when phi plus the
// instantiated query is satisfiable.
inline RawAnswerSet naive_answers(const GroundPhi &g, std::size_t nvars, const PreparedQuery &q, CqaOptions opt = {},
                                  AnswerStats *stats = nullptr) {
  const std::vector<RawAnswer> cands = detail::candidates(g.domain, q.qvars.size());
  std::vector<char> keep(cands.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  const std::function<void()> worker = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= cands.size())
        return;
      try {
        std::vector<Clause> phi = g.clauses;
        for (auto &c : instantiate(q, cands[i]))
          phi.push_back(std::move(c));
        keep[i] = tableau_sat(phi, nvars, opt.budget_branches);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure)
          failure = std::current_exception();
        next = cands.size();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(cands.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }
  if (failure)
    std::rethrow_exception(failure);
  if (stats)
    stats->sat_tests += cands.size();
  RawAnswerSet out;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (keep[i])
      out.insert(cands[i]);
  return out;
}

// Back to DL substitutions; answers that bind a Skolem witness have no DL
// counterpart and are dropped.
inline std::set<DlSubstitution> map_back(const RawAnswerSet &raw, const PreparedQuery &q, const VarTable &vt) {
  std::set<DlSubstitution> out;
  for (const auto &a : raw) {
    DlSubstitution s;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      const auto &info = vt.v0[a[i]];
      if (info.kind == Var0Kind::Witness || info.kind == Var0Kind::QueryVar)
        ok = false;
      else
        s[q.names[i]] = info.name;
    }
    if (ok)
      out.insert(std::move(s));
  }
  return out;
}

} // namespace dl4x
