#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dl4x/error.hpp"
#include "dl4x/lqs.hpp"

// KE-tableau over ground clauses: E-rule (elimination) with priority over
// PB (principle of bivalence), closure and fulfilment modulo equality.
namespace dl4x {

// Union-find over level-0 variables plus a table of decided atoms, keyed by
// their form over class representatives.
class LiteralSet {
public:
  explicit LiteralSet(std::size_t nvars = 0) : parent_(nvars) { std::iota(parent_.begin(), parent_.end(), 0); }

  int rep(int x) const {
    while (parent_[x] != x)
      x = parent_[x];
    return x;
  }

  Atom canon(Atom a) const {
    a.x = rep(a.x);
    if (a.kind != AtomKind::Mem1)
      a.y = rep(a.y);
    if (a.kind == AtomKind::Eq && a.y < a.x)
      std::swap(a.x, a.y);
    return a;
  }

  static std::uint64_t key(const Atom &a) {
    if (a.x >= (1 << 20) || a.y >= (1 << 20) || a.set >= (1 << 22))
      throw CapacityExceeded("too many variables for atom packing");
    return (std::uint64_t(a.kind) << 62) | (std::uint64_t(a.set) << 40) | (std::uint64_t(a.x) << 20) |
           std::uint64_t(a.y);
  }

  // 1 true, -1 false, 0 undecided
  int value(const Literal &l) const {
    Atom a = canon(l.atom);
    if (a.kind == AtomKind::Eq && a.x == a.y)
      return l.positive ? 1 : -1;
    auto it = facts_.find(key(a));
    if (it == facts_.end())
      return 0;
    return it->second == l.positive ? 1 : -1;
  }

  // Adds l. Returns false if that closes the set. `merged` is set when l
  // was a new positive equality.
  bool add(const Literal &l, bool *merged = nullptr) {
    if (merged)
      *merged = false;
    Atom a = canon(l.atom);
    if (a.kind == AtomKind::Eq && a.x == a.y)
      return l.positive;
    auto k = key(a);
    if (auto it = facts_.find(k); it != facts_.end())
      return it->second == l.positive;
    if (a.kind == AtomKind::Eq && l.positive) {
      if (merged)
        *merged = true;
      return merge(a.x, a.y);
    }
    facts_.emplace(k, l.positive);
    return true;
  }

  const std::unordered_map<std::uint64_t, bool> &facts() const { return facts_; }
  std::size_t nvars() const { return parent_.size(); }

  static Atom unpack(std::uint64_t k) {
    Atom a;
    a.kind = static_cast<AtomKind>(k >> 62);
    a.set = static_cast<int>((k >> 40) & ((1u << 22) - 1));
    a.x = static_cast<int>((k >> 20) & ((1u << 20) - 1));
    a.y = static_cast<int>(k & ((1u << 20) - 1));
    return a;
  }

private:
  std::vector<int> parent_;
  std::unordered_map<std::uint64_t, bool> facts_;

  bool merge(int x, int y) {
    // smaller id stays representative, which keeps models deterministic
    if (y < x)
      std::swap(x, y);
    parent_[y] = x;
    std::unordered_map<std::uint64_t, bool> old;
    old.swap(facts_);
    bool ok = true;
    for (const auto &[k, v] : old) {
      Atom a = canon(unpack(k));
      if (a.kind == AtomKind::Eq && a.x == a.y) {
        ok = false; // a disequality collapsed
        continue;
      }
      auto [it, fresh] = facts_.emplace(key(a), v);
      if (!fresh && it->second != v)
        ok = false;
    }
    return ok;
  }
};

// Interpretation read off an open complete branch: the universe is the set of
// class representatives, extents are the positive facts.
struct BranchModel {
  std::vector<int> rep;          // Var0 -> representative
  std::vector<int> universe;     // representatives of the grounding domain
  std::set<std::pair<int, int>> m1;            // (rep, Var1)
  std::set<std::tuple<int, int, int>> m3;      // (rep, rep, Var3)

  bool holds(const Atom &a) const {
    switch (a.kind) {
    case AtomKind::Eq: return rep[a.x] == rep[a.y];
    case AtomKind::Mem1: return m1.count({rep[a.x], a.set}) > 0;
    case AtomKind::Mem3: return m3.count({rep[a.x], rep[a.y], a.set}) > 0;
    }
    return false;
  }
  bool holds(const Literal &l) const { return holds(l.atom) == l.positive; }
  bool satisfies(const Clause &c) const {
    return std::any_of(c.begin(), c.end(), [&](const Literal &l) { return holds(l); });
  }
};

// Number of clauses of phi the model falsifies.
inline std::size_t count_violations(const BranchModel &m, const std::vector<Clause> &phi) {
  std::size_t n = 0;
  for (const auto &c : phi)
    if (!m.satisfies(c))
      ++n;
  return n;
}

enum class RuleKind : std::uint8_t { E, PB };

struct TraceEvent {
  int node;   // node created by this application
  int parent; // node it extends (0 is the root holding phi)
  int branch; // branch the node belongs to when created
  RuleKind rule;
  Literal literal;
  int clause; // clause the rule was applied to
};

enum class TableauMode : std::uint8_t { Sat, AllModels };

class Branch;

struct TableauOptions {
  TableauMode mode = TableauMode::Sat;
  std::size_t budget_branches = 1'000'000;
  bool trace = false;
  // called with (rule, branch id, literal) after every rule application
  std::function<void(RuleKind, int, const Literal &)> on_rule;
  // AllModels: asked before each PB split; returning true abandons the
  // branch and everything below it
  std::function<bool(const Branch &)> prune;
};

struct TableauResult {
  bool consistent = false;
  std::size_t open_branches = 0;
  std::size_t closed_branches = 0;
  std::size_t pruned_branches = 0;
  std::size_t nodes = 1;
  std::size_t max_depth = 0;
  std::size_t pb_applications = 0;
  std::size_t e_applications = 0;
  std::vector<TraceEvent> trace;
};

class Tableau;

// One branch: decided literals plus per-clause counters of true and false
// literals, maintained through an occurrence index over canonical atoms.
class Branch {
public:
  const LiteralSet &literals() const { return set_; }
  const std::vector<Literal> &path() const { return path_; }
  bool closed() const { return closed_; }
  int id() const { return id_; }
  std::size_t depth() const { return path_.size(); }

  BranchModel model(const std::vector<int> &domain) const {
    BranchModel m;
    m.rep.resize(set_.nvars());
    for (std::size_t i = 0; i < m.rep.size(); ++i)
      m.rep[i] = set_.rep(static_cast<int>(i));
    std::set<int> u;
    for (int x : domain)
      u.insert(m.rep[x]);
    m.universe.assign(u.begin(), u.end());
    for (const auto &[k, v] : set_.facts()) {
      if (!v)
        continue;
      Atom a = LiteralSet::unpack(k);
      if (a.kind == AtomKind::Mem1)
        m.m1.insert({a.x, a.set});
      else if (a.kind == AtomKind::Mem3)
        m.m3.insert({a.x, a.y, a.set});
    }
    return m;
  }

private:
  friend class Tableau;

  struct Index {
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> occ;
  };

  LiteralSet set_;
  std::shared_ptr<const Index> index_;
  std::vector<std::uint16_t> ntrue_, nfalse_;
  std::vector<int> equeue_;
  std::size_t cursor_ = 0;
  std::vector<Literal> path_;
  int node_ = 0; // tip node in the trace
  int id_ = 0;
  bool closed_ = false;
};

class Tableau {
public:
  Tableau(const std::vector<Clause> &phi, std::size_t nvars, TableauOptions opt = {})
      : phi_(phi), nvars_(nvars), opt_(std::move(opt)) {
    order_.resize(phi_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return phi_[a].size() < phi_[b].size(); });
    for (const auto &c : phi_)
      if (c.size() > 0xFFFF)
        throw CapacityExceeded("clause too long");
  }

  // Explores the tableau depth first. `visit` is called for every open
  // complete branch and may return false to stop.
  TableauResult run(const std::function<bool(const Branch &)> &visit = {}) {
    res_ = {};
    next_node_ = 1;
    next_branch_ = 1;
    std::vector<Branch> stack;
    stack.push_back(root());
    while (!stack.empty()) {
      Branch b = std::move(stack.back());
      stack.pop_back();
      if (!saturate(b, stack)) {
        if (b.closed_)
          ++res_.closed_branches;
        else
          ++res_.pruned_branches;
        continue;
      }
      ++res_.open_branches;
      res_.consistent = true;
      if (visit && !visit(b))
        break;
      if (opt_.mode == TableauMode::Sat)
        break;
    }
    return std::move(res_);
  }

  const std::vector<Clause> &clauses() const { return phi_; }

  // Whether b extended with `extra` closes under the E-rule alone. Used to
  // look ahead; nothing is recorded in the result or the trace.
  bool refutes(const Branch &b, const std::vector<Literal> &extra) const {
    Branch t = b;
    for (const auto &l : extra) {
      put(t, l);
      if (t.closed_)
        return true;
    }
    while (!t.equeue_.empty() && !t.closed_) {
      int c = t.equeue_.back();
      t.equeue_.pop_back();
      if (t.ntrue_[c] > 0 || std::size_t(t.nfalse_[c]) + 1 != phi_[c].size())
        continue;
      for (const auto &l : phi_[c])
        if (t.set_.value(l) == 0) {
          put(t, l);
          break;
        }
    }
    return t.closed_;
  }

  // Single rule applications outside `run`; nothing is traced or counted.

  // The initial branch: phi and nothing decided yet.
  Branch root() const {
    Branch b;
    b.set_ = LiteralSet(nvars_);
    b.id_ = 0;
    rebuild(b);
    return b;
  }

  // Adds literal i of clause c, provided every other literal of c is false on b.
  void e_rule(Branch &b, int c, std::size_t i) const {
    const auto &cl = phi_.at(c);
    if (i >= cl.size())
      throw PreconditionViolated("e_rule: clause " + std::to_string(c) + " has no literal " + std::to_string(i));
    if (b.closed_ || b.ntrue_[c] > 0)
      throw PreconditionViolated("e_rule: clause " + std::to_string(c) + " is fulfilled or the branch is closed");
    for (std::size_t j = 0; j < cl.size(); ++j)
      if (j != i && b.set_.value(cl[j]) >= 0)
        throw PreconditionViolated("e_rule: complement of literal " + std::to_string(j) + " is not on the branch");
    b.path_.push_back(cl[i]);
    put(b, cl[i]);
  }

  // The two extensions of b by l and by its complement, in that order.
  std::pair<Branch, Branch> pb_rule(const Branch &b, const Literal &l) const {
    if (b.closed_)
      throw PreconditionViolated("pb_rule: branch is closed");
    if (b.set_.value(l) != 0)
      throw PreconditionViolated("pb_rule: literal is already decided");
    std::pair<Branch, Branch> out{b, b};
    out.first.path_.push_back(l);
    put(out.first, l);
    out.second.path_.push_back(l.complement());
    put(out.second, l.complement());
    return out;
  }

  // Open and every clause fulfilled.
  bool complete(const Branch &b) const {
    if (b.closed_)
      return false;
    for (std::size_t c = 0; c < phi_.size(); ++c)
      if (b.ntrue_[c] == 0)
        return false;
    return true;
  }

  BranchModel extract_model(const Branch &b, const std::vector<int> &domain) const {
    if (!complete(b))
      throw BranchNotComplete(b.closed_ ? "branch is closed" : "branch has an unfulfilled clause");
    return b.model(domain);
  }

private:
  const std::vector<Clause> &phi_;
  std::size_t nvars_;
  TableauOptions opt_;
  std::vector<int> order_;
  TableauResult res_;
  int next_node_ = 1, next_branch_ = 1;

  // Recomputes the occurrence index and all counters; used at the root and
  // after every merge of equality classes.
  void rebuild(Branch &b) const {
    auto idx = std::make_shared<Branch::Index>();
    b.ntrue_.assign(phi_.size(), 0);
    b.nfalse_.assign(phi_.size(), 0);
    b.equeue_.clear();
    for (int c = 0; c < static_cast<int>(phi_.size()); ++c) {
      const auto &cl = phi_[c];
      for (int i = 0; i < static_cast<int>(cl.size()); ++i) {
        Atom a = b.set_.canon(cl[i].atom);
        if (!(a.kind == AtomKind::Eq && a.x == a.y))
          idx->occ[LiteralSet::key(a)].push_back({c, i});
        int v = b.set_.value(cl[i]);
        if (v > 0)
          ++b.ntrue_[c];
        else if (v < 0)
          ++b.nfalse_[c];
      }
      check(b, c);
    }
    b.index_ = std::move(idx);
  }

  void check(Branch &b, int c) const {
    if (b.ntrue_[c] > 0)
      return;
    const std::size_t len = phi_[c].size();
    const std::size_t nf = b.nfalse_[c];
    if (nf >= len)
      b.closed_ = true;
    else if (nf + 1 == len)
      b.equeue_.push_back(c);
  }

  void apply(Branch &b, RuleKind rule, const Literal &l, int clause) {
    int node = next_node_++;
    if (opt_.trace)
      res_.trace.push_back({node, b.node_, b.id_, rule, l, clause});
    if (opt_.on_rule)
      opt_.on_rule(rule, b.id_, l);
    b.node_ = node;
    ++res_.nodes;
    b.path_.push_back(l);
    res_.max_depth = std::max(res_.max_depth, b.path_.size());
    put(b, l);
  }

  // Adds l to the literal set and updates the clause counters.
  void put(Branch &b, const Literal &l) const {
    if (int v = b.set_.value(l); v != 0) { // already decided: only a clash matters
      b.closed_ = b.closed_ || v < 0;
      return;
    }
    bool merged = false;
    if (!b.set_.add(l, &merged)) {
      b.closed_ = true;
      return;
    }
    if (merged) {
      rebuild(b);
      return;
    }
    Atom a = b.set_.canon(l.atom);
    auto it = b.index_->occ.find(LiteralSet::key(a));
    if (it == b.index_->occ.end())
      return;
    for (auto [c, i] : it->second) {
      if (phi_[c][i].positive == l.positive)
        ++b.ntrue_[c];
      else
        ++b.nfalse_[c];
      check(b, c);
    }
  }

  // Runs the rules on b until it closes, completes, splits, or is pruned.
  // Returns true for an open complete branch; on a split the children go on
  // the stack.
  bool saturate(Branch &b, std::vector<Branch> &stack) {
    for (;;) {
      if (b.closed_)
        return false;
      // E-rule first
      bool applied = false;
      while (!b.equeue_.empty()) {
        int c = b.equeue_.back();
        b.equeue_.pop_back();
        if (b.ntrue_[c] > 0 || std::size_t(b.nfalse_[c]) + 1 != phi_[c].size())
          continue;
        for (const auto &l : phi_[c])
          if (b.set_.value(l) == 0) {
            ++res_.e_applications;
            apply(b, RuleKind::E, l, c);
            applied = true;
            break;
          }
        if (applied)
          break;
      }
      if (applied)
        continue;
      // PB on the first unfulfilled clause
      while (b.cursor_ < order_.size() && b.ntrue_[order_[b.cursor_]] > 0)
        ++b.cursor_;
      if (b.cursor_ == order_.size())
        return true;
      const int c = order_[b.cursor_];
      const Literal *pick = nullptr;
      for (const auto &l : phi_[c])
        if (b.set_.value(l) == 0) {
          pick = &l;
          break;
        }
      if (!pick)
        throw Error("internal: unfulfilled clause without undecided literal");
      if (opt_.prune && opt_.prune(b))
        return false;
      if (res_.open_branches + res_.closed_branches + stack.size() + 1 >= opt_.budget_branches)
        throw CapacityExceeded("tableau exceeded the budget of " + std::to_string(opt_.budget_branches) + " branches");
      ++res_.pb_applications;
      // left child: the complement of the chosen literal; right child: the literal
      Branch right = b;
      right.id_ = next_branch_++;
      const Literal lit = *pick;
      apply(right, RuleKind::PB, lit, c);
      stack.push_back(std::move(right));
      apply(b, RuleKind::PB, lit.complement(), c);
    }
  }
};

// Convenience: consistency of a clause set.
inline bool tableau_sat(const std::vector<Clause> &phi, std::size_t nvars, std::size_t budget_branches = 1'000'000) {
  TableauOptions opt;
  opt.budget_branches = budget_branches;
  return Tableau(phi, nvars, opt).run().consistent;
}

// --- trace audit ----------------------------------------------------------------------

struct AuditReport {
  std::size_t pb_checked = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

// Replays a trace and checks, with a separate evaluator, that no PB node was
// created while some unfulfilled clause had all but at most one literal false.
inline AuditReport audit_trace(const std::vector<Clause> &phi, std::size_t nvars, const std::vector<TraceEvent> &trace) {
  AuditReport rep;
  std::unordered_map<int, std::pair<int, Literal>> parent; // node -> (parent, literal)
  std::set<int> seen_split;                                // parents already audited
  for (const auto &ev : trace)
    parent[ev.node] = {ev.parent, ev.literal};
  for (const auto &ev : trace) {
    if (ev.rule != RuleKind::PB || !seen_split.insert(ev.parent).second)
      continue;
    ++rep.pb_checked;
    // literals on the path to the node being split
    std::vector<Literal> lits;
    for (int n = ev.parent; n != 0;) {
      auto it = parent.find(n);
      lits.push_back(it->second.second);
      n = it->second.first;
    }
    std::vector<int> uf(nvars);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (const auto &l : lits)
      if (l.positive && l.atom.kind == AtomKind::Eq)
        uf[find(l.atom.x)] = find(l.atom.y);
    auto norm = [&](Atom a) {
      a.x = find(a.x);
      if (a.kind != AtomKind::Mem1)
        a.y = find(a.y);
      if (a.kind == AtomKind::Eq && a.y < a.x)
        std::swap(a.x, a.y);
      return a;
    };
    std::set<std::pair<Atom, bool>> on;
    for (const auto &l : lits)
      on.insert({norm(l.atom), l.positive});
    auto is_true = [&](const Literal &l) {
      Atom a = norm(l.atom);
      if (a.kind == AtomKind::Eq && a.x == a.y)
        return l.positive;
      return on.count({a, l.positive}) > 0;
    };
    auto is_false = [&](const Literal &l) {
      Atom a = norm(l.atom);
      if (a.kind == AtomKind::Eq && a.x == a.y)
        return !l.positive;
      return on.count({a, !l.positive}) > 0;
    };
    for (std::size_t c = 0; c < phi.size(); ++c) {
      const auto &cl = phi[c];
      if (std::any_of(cl.begin(), cl.end(), is_true))
        continue;
      auto nf = static_cast<std::size_t>(std::count_if(cl.begin(), cl.end(), is_false));
      if (nf + 1 >= cl.size()) {
        if (rep.violations++ == 0)
          rep.first_violation = "PB at node " + std::to_string(ev.parent) + " while clause " + std::to_string(c) +
                                " admitted the E-rule";
        break;
      }
    }
  }
  return rep;
}

} // namespace dl4x
