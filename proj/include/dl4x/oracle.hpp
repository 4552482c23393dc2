#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dl4x/dl_model.hpp"
#include "dl4x/error.hpp"
#include "dl4x/lqs.hpp"
#include "dl4x/tableau.hpp"

// Brute-force reference engines used by the tests: exhaustive enumeration of
// set-level interpretations, satisfiability of ground clause sets by
// enumeration, and the DL semantics evaluated literally on finite
// interpretations.
namespace dl4x::oracle {

// Restricted growth strings of length n with at most `maxblocks` blocks: one
// per partition of {0..n-1}.
inline void for_each_partition(int n, int maxblocks, const std::function<bool(const std::vector<int> &, int)> &visit) {
  std::vector<int> a(n, 0);
  std::function<bool(int, int)> rec = [&](int i, int blocks) {
    if (i == n)
      return visit(a, blocks);
    for (int b = 0; b <= blocks && b < maxblocks; ++b) {
      a[i] = b;
      if (!rec(i + 1, std::max(blocks, b + 1)))
        return false;
    }
    return true;
  };
  rec(0, 0);
}

// --- set-level interpretations ------------------------------------------------

struct EnumerateOptions {
  bool quotients = false; // also enumerate the equality quotients of V
  int bit_budget = 24;
};

// An interpretation over the finite universe of classes of V: `block` maps
// each level-0 variable to its class; bit (c * n1 + s) is membership of
// class c in level-1 set s, bit (n0c * n1 + (c * n0c + d) * n3 + s) is
// membership of the pair (c, d) in level-3 set s.
struct SetInterpretation {
  std::vector<int> block;
  int classes = 0;
  int n1 = 0, n3 = 0;
  std::vector<bool> bits;

  bool in1(int x, int s) const { return bits[block[x] * n1 + s]; }
  bool in3(int x, int y, int s) const {
    return bits[classes * n1 + (block[x] * classes + block[y]) * n3 + s];
  }
  bool holds(const Atom &a) const {
    switch (a.kind) {
    case AtomKind::Eq: return block[a.x] == block[a.y];
    case AtomKind::Mem1: return in1(a.x, a.set);
    case AtomKind::Mem3: return in3(a.x, a.y, a.set);
    }
    return false;
  }
};

inline std::size_t bell(int n) {
  std::vector<std::vector<std::size_t>> s(n + 1, std::vector<std::size_t>(n + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k)
      s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
  std::size_t b = 0;
  for (int k = 0; k <= n; ++k)
    b += s[n][k];
  return b;
}

// Closed form for the number of interpretations enumerate_interpretations
// produces: 2^(|V||V1| + |V|^2|V3|) without quotients, and the sum of
// 2^(p|V1| + p^2|V3|) over the partitions of V (p blocks) with them.
inline std::size_t count_interpretations(int n0, int n1, int n3, bool quotients) {
  if (!quotients)
    return std::size_t(1) << (n0 * n1 + n0 * n0 * n3);
  std::size_t total = 0;
  for_each_partition(n0, n0, [&](const std::vector<int> &, int p) {
    total += std::size_t(1) << (p * n1 + p * p * n3);
    return true;
  });
  return total;
}

// Streams every interpretation; successive ones within a partition differ in
// one bit (Gray-code order). `visit` returns false to stop.
inline void enumerate_interpretations(int n0, int n1, int n3,
                                      const std::function<bool(const SetInterpretation &)> &visit,
                                      EnumerateOptions opt = {}) {
  auto run = [&](const std::vector<int> &block, int p) {
    const int bits = p * n1 + p * p * n3;
    if (bits > opt.bit_budget)
      throw CapacityExceeded("interpretation enumeration needs " + std::to_string(bits) + " bits, budget is " +
                             std::to_string(opt.bit_budget));
    SetInterpretation m{block, p, n1, n3, std::vector<bool>(bits, false)};
    if (!visit(m))
      return false;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << bits); ++i) {
      m.bits[__builtin_ctzll(i)].flip();
      if (!visit(m))
        return false;
    }
    return true;
  };
  if (!opt.quotients) {
    std::vector<int> id(n0);
    for (int i = 0; i < n0; ++i)
      id[i] = i;
    run(id, n0);
    return;
  }
  for_each_partition(n0, n0, run);
}

// --- brute-force satisfiability of ground clauses --------------------------

struct BruteOptions {
  int bit_budget = 24;
  bool fallback = true; // backtracking search when the budget is exceeded
};

namespace detail {
// Clauses over propositional variables 0..n-1, literal = 2*v + (negated).
struct Prop {
  int n = 0;
  std::vector<std::vector<int>> clauses;
};

inline std::optional<std::vector<bool>> gray_sat(const Prop &p) {
  std::vector<std::vector<std::pair<int, bool>>> occ(p.n); // var -> (clause, positive)
  for (int c = 0; c < static_cast<int>(p.clauses.size()); ++c)
    for (int l : p.clauses[c])
      occ[l / 2].push_back({c, (l & 1) == 0});
  std::vector<bool> val(p.n, false);
  std::vector<int> ntrue(p.clauses.size(), 0);
  int unsat = 0;
  for (std::size_t c = 0; c < p.clauses.size(); ++c) {
    for (int l : p.clauses[c])
      if (l & 1)
        ++ntrue[c];
    if (ntrue[c] == 0)
      ++unsat;
  }
  if (unsat == 0)
    return val;
  for (std::uint64_t i = 1; i < (std::uint64_t(1) << p.n); ++i) {
    int v = __builtin_ctzll(i);
    val[v] = !val[v];
    for (auto [c, positive] : occ[v]) {
      bool now_true = positive == val[v];
      if (now_true) {
        if (ntrue[c]++ == 0)
          --unsat;
      } else if (--ntrue[c] == 0) {
        ++unsat;
      }
    }
    if (unsat == 0)
      return val;
  }
  return std::nullopt;
}

// Plain chronological backtracking; a clause is checked once all of its
// variables are assigned.
inline std::optional<std::vector<bool>> backtrack_sat(const Prop &p) {
  std::vector<std::vector<int>> last(p.n); // clauses whose highest variable is v
  for (int c = 0; c < static_cast<int>(p.clauses.size()); ++c) {
    int hi = -1;
    for (int l : p.clauses[c])
      hi = std::max(hi, l / 2);
    if (hi < 0)
      return std::nullopt; // empty clause
    last[hi].push_back(c);
  }
  std::vector<bool> val(p.n, false);
  std::function<bool(int)> rec = [&](int v) {
    if (v == p.n)
      return true;
    for (bool b : {false, true}) {
      val[v] = b;
      bool ok = true;
      for (int c : last[v]) {
        ok = std::any_of(p.clauses[c].begin(), p.clauses[c].end(),
                         [&](int l) { return val[l / 2] == ((l & 1) == 0); });
        if (!ok)
          break;
      }
      if (ok && rec(v + 1))
        return true;
    }
    return false;
  };
  if (rec(0))
    return val;
  return std::nullopt;
}
} // namespace detail

struct BruteResult {
  bool sat = false;
  std::optional<BranchModel> witness; // positive atoms over class representatives
  std::size_t partitions = 0;
};

// Tries every partition of the level-0 variables occurring in phi and every
// truth assignment to the atoms phi mentions, read over that partition.
inline BruteResult brute_sat(const std::vector<Clause> &phi, std::size_t nvars, BruteOptions opt = {}) {
  BruteResult res;
  std::vector<int> vars;
  {
    std::set<int> s;
    for (const auto &c : phi)
      for (const auto &l : c) {
        s.insert(l.atom.x);
        if (l.atom.kind != AtomKind::Mem1)
          s.insert(l.atom.y);
      }
    vars.assign(s.begin(), s.end());
  }
  const int n = static_cast<int>(vars.size());
  for_each_partition(n, n, [&](const std::vector<int> &block, int) {
    ++res.partitions;
    std::vector<int> rep(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
      rep[i] = static_cast<int>(i);
    for (int i = 0; i < n; ++i) {
      int first = 0;
      while (block[first] != block[i])
        ++first;
      rep[vars[i]] = vars[first];
    }
    std::map<Atom, int> atom_ids;
    std::vector<Atom> atoms;
    detail::Prop p;
    bool trivially_unsat = false;
    for (const auto &c : phi) {
      std::vector<int> lits;
      bool sat = false;
      for (const auto &l : c) {
        Atom a = l.atom;
        a.x = rep[a.x];
        if (a.kind != AtomKind::Mem1)
          a.y = rep[a.y];
        if (a.kind == AtomKind::Eq) {
          if ((a.x == a.y) == l.positive)
            sat = true;
          continue;
        }
        auto [it, fresh] = atom_ids.emplace(a, static_cast<int>(atoms.size()));
        if (fresh)
          atoms.push_back(a);
        lits.push_back(2 * it->second + (l.positive ? 0 : 1));
      }
      if (sat)
        continue;
      if (lits.empty())
        trivially_unsat = true;
      p.clauses.push_back(std::move(lits));
    }
    if (trivially_unsat)
      return true;
    p.n = static_cast<int>(atoms.size());
    std::optional<std::vector<bool>> val;
    if (p.n <= opt.bit_budget)
      val = detail::gray_sat(p);
    else if (opt.fallback)
      val = detail::backtrack_sat(p);
    else
      throw CapacityExceeded("brute-force check needs " + std::to_string(p.n) + " bits, budget is " +
                             std::to_string(opt.bit_budget));
    if (!val)
      return true;
    BranchModel m;
    m.rep = rep;
    std::set<int> u;
    for (int x : vars)
      u.insert(rep[x]);
    m.universe.assign(u.begin(), u.end());
    for (int i = 0; i < p.n; ++i)
      if ((*val)[i]) {
        const Atom &a = atoms[i];
        if (a.kind == AtomKind::Mem1)
          m.m1.insert({a.x, a.set});
        else
          m.m3.insert({a.x, a.y, a.set});
      }
    res.sat = true;
    res.witness = std::move(m);
    return false;
  });
  return res;
}

// --- DL interpretations ----------------------------------------------------------

// Finite interpretation: abstract elements 0..nabs-1, data values
// 0..ndata-1. Extents are indexed x, x*nabs+y (abstract roles) and
// x*ndata+v (concrete roles). Facets are keyed "d.f". Names missing from a
// map have empty extents.
struct DlInterpretation {
  int nabs = 1, ndata = 1;
  std::map<std::string, int> individual;
  std::map<std::string, int> constant;
  std::map<std::string, std::vector<bool>> datatype;
  std::map<std::string, std::vector<bool>> concepts, aroles, croles, data, facets;
};

namespace detail {

// Evaluates DL semantics over any boolean algebra. Alg supplies B, k, neg,
// conj, disj and the atomic extents.
template <class Alg> class Semantics {
public:
  using B = typename Alg::B;
  using Vec = std::vector<B>;

  Semantics(Alg &alg, const DlInterpretation &frame) : a_(alg), f_(frame) {}

  Vec concept_term(const TermPtr &t) {
    const int n = f_.nabs;
    Vec out(n);
    switch (t->op) {
    case Op::Name:
      for (int x = 0; x < n; ++x)
        out[x] = a_.concept_atom(t->name, x);
      return out;
    case Op::Top: return Vec(n, a_.k(true));
    case Op::Bottom: return Vec(n, a_.k(false));
    case Op::Not: return map1(concept_term(t->args[0]), [&](B b) { return a_.neg(b); });
    case Op::Union: return zip(concept_term(t->args[0]), concept_term(t->args[1]), false);
    case Op::Intersection: return zip(concept_term(t->args[0]), concept_term(t->args[1]), true);
    case Op::Nominal:
      for (int x = 0; x < n; ++x)
        out[x] = a_.k(ind(t->name) == x);
      return out;
    case Op::NominalSet:
      for (int x = 0; x < n; ++x)
        out[x] = a_.k(std::any_of(t->names.begin(), t->names.end(), [&](const std::string &o) { return ind(o) == x; }));
      return out;
    case Op::Self: {
      auto r = arole_term(t->args[0]);
      for (int x = 0; x < n; ++x)
        out[x] = r[x * n + x];
      return out;
    }
    case Op::ValuedExists: {
      auto r = arole_term(t->args[0]);
      for (int x = 0; x < n; ++x)
        out[x] = r[x * n + ind(t->name)];
      return out;
    }
    case Op::DatatypedExists: {
      auto p = crole_term(t->args[0]);
      for (int x = 0; x < n; ++x)
        out[x] = p[x * f_.ndata + cst(t->name)];
      return out;
    }
    case Op::Exists:
    case Op::Forall:
    case Op::AtLeast:
    case Op::AtMost: {
      const bool concrete = t->args[0]->sort == Sort::CRole;
      const int m = concrete ? f_.ndata : n;
      Vec r = concrete ? crole_term(t->args[0]) : arole_term(t->args[0]);
      Vec c = concrete ? data_term(t->args[1]) : concept_term(t->args[1]);
      for (int x = 0; x < n; ++x) {
        Vec succ(m);
        for (int y = 0; y < m; ++y)
          succ[y] = t->op == Op::Forall ? a_.disj(a_.neg(r[x * m + y]), c[y]) : a_.conj(r[x * m + y], c[y]);
        switch (t->op) {
        case Op::Exists: out[x] = at_least(1, succ); break;
        case Op::Forall: out[x] = all(succ); break;
        case Op::AtLeast: out[x] = at_least(t->n, succ); break;
        default: out[x] = a_.neg(at_least(t->n + 1, succ)); break;
        }
      }
      return out;
    }
    default: break;
    }
    throw Error("oracle: not a concept: " + print(t));
  }

  Vec arole_term(const TermPtr &t) {
    const int n = f_.nabs;
    Vec out(n * n);
    switch (t->op) {
    case Op::Name:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out[x * n + y] = a_.arole_atom(t->name, x, y);
      return out;
    case Op::Universal: return Vec(n * n, a_.k(true));
    case Op::Inverse: {
      auto r = arole_term(t->args[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out[x * n + y] = r[y * n + x];
      return out;
    }
    case Op::Not: return map1(arole_term(t->args[0]), [&](B b) { return a_.neg(b); });
    case Op::Union: return zip(arole_term(t->args[0]), arole_term(t->args[1]), false);
    case Op::Intersection: return zip(arole_term(t->args[0]), arole_term(t->args[1]), true);
    case Op::DomainRestr:
    case Op::RangeRestr:
    case Op::Restr: {
      auto r = arole_term(t->args[0]);
      auto c1 = t->op != Op::RangeRestr ? concept_term(t->args[1]) : Vec(n, a_.k(true));
      auto c2 = t->op == Op::RangeRestr ? concept_term(t->args[1]) : t->op == Op::Restr ? concept_term(t->args[2]) : Vec(n, a_.k(true));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out[x * n + y] = a_.conj(r[x * n + y], a_.conj(c1[x], c2[y]));
      return out;
    }
    case Op::Id: {
      auto c = concept_term(t->args[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out[x * n + y] = x == y ? c[x] : a_.k(false);
      return out;
    }
    case Op::Product: {
      auto c1 = concept_term(t->args[0]), c2 = concept_term(t->args[1]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out[x * n + y] = a_.conj(c1[x], c2[y]);
      return out;
    }
    default: break;
    }
    throw Error("oracle: not an abstract role: " + print(t));
  }

  Vec crole_term(const TermPtr &t) {
    const int n = f_.nabs, m = f_.ndata;
    Vec out(n * m);
    switch (t->op) {
    case Op::Name:
      for (int x = 0; x < n; ++x)
        for (int v = 0; v < m; ++v)
          out[x * m + v] = a_.crole_atom(t->name, x, v);
      return out;
    case Op::Not: return map1(crole_term(t->args[0]), [&](B b) { return a_.neg(b); });
    case Op::Union: return zip(crole_term(t->args[0]), crole_term(t->args[1]), false);
    case Op::Intersection: return zip(crole_term(t->args[0]), crole_term(t->args[1]), true);
    case Op::DomainRestr:
    case Op::RangeRestr:
    case Op::Restr: {
      auto p = crole_term(t->args[0]);
      auto c = t->op != Op::RangeRestr ? concept_term(t->args[1]) : Vec(n, a_.k(true));
      auto d = t->op == Op::RangeRestr ? data_term(t->args[1]) : t->op == Op::Restr ? data_term(t->args[2]) : Vec(m, a_.k(true));
      for (int x = 0; x < n; ++x)
        for (int v = 0; v < m; ++v)
          out[x * m + v] = a_.conj(p[x * m + v], a_.conj(c[x], d[v]));
      return out;
    }
    default: break;
    }
    throw Error("oracle: not a concrete role: " + print(t));
  }

  Vec data_term(const TermPtr &t) {
    const int m = f_.ndata;
    Vec out(m);
    switch (t->op) {
    case Op::Datatype:
      for (int v = 0; v < m; ++v)
        out[v] = a_.k(in_type(t->name, v));
      return out;
    case Op::Name:
      for (int v = 0; v < m; ++v)
        out[v] = a_.data_atom(t->name, v);
      return out;
    case Op::Not: return map1(data_term(t->args[0]), [&](B b) { return a_.neg(b); });
    case Op::Union: return zip(data_term(t->args[0]), data_term(t->args[1]), false);
    case Op::Intersection: return zip(data_term(t->args[0]), data_term(t->args[1]), true);
    case Op::Singleton:
      for (int v = 0; v < m; ++v)
        out[v] = a_.k(cst(t->name) == v);
      return out;
    case Op::Enumeration:
      for (int v = 0; v < m; ++v)
        out[v] = a_.k(std::any_of(t->names.begin(), t->names.end(), [&](const std::string &e) { return cst(e) == v; }));
      return out;
    case Op::FacetExpr:
      for (int v = 0; v < m; ++v)
        out[v] = facet_term(t->args[0], t->name, v);
      return out;
    default: break;
    }
    throw Error("oracle: not a data range: " + print(t));
  }

  // Facet expressions are read inside their datatype: top is d, negation is
  // the complement within d.
  B facet_term(const TermPtr &psi, const std::string &d, int v) {
    if (!in_type(d, v))
      return a_.k(false);
    switch (psi->op) {
    case Op::Name: return a_.facet_atom(d, psi->name, v);
    case Op::Top: return a_.k(true);
    case Op::Bottom: return a_.k(false);
    case Op::Not: return a_.neg(facet_term(psi->args[0], d, v));
    case Op::Union: return a_.disj(facet_term(psi->args[0], d, v), facet_term(psi->args[1], d, v));
    case Op::Intersection: return a_.conj(facet_term(psi->args[0], d, v), facet_term(psi->args[1], d, v));
    default: break;
    }
    throw Error("oracle: not a facet expression: " + print(psi));
  }

  // One constraint per ground instance of the statement.
  Vec statement(const Statement &s) {
    const auto &t = s.terms;
    const int n = f_.nabs, m = f_.ndata;
    Vec out;
    auto sub = [&](const Vec &x, const Vec &y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        out.push_back(a_.disj(a_.neg(x[i]), y[i]));
    };
    auto equiv = [&](const Vec &x, const Vec &y) {
      sub(x, y);
      sub(y, x);
    };
    auto eval = [&](const TermPtr &x) {
      switch (x->sort) {
      case Sort::Concept: return concept_term(x);
      case Sort::ARole: return arole_term(x);
      case Sort::CRole: return crole_term(x);
      default: return data_term(x);
      }
    };
    switch (s.kind) {
    case StmtKind::ConceptEquiv:
    case StmtKind::ARoleEquiv:
    case StmtKind::CRoleEquiv:
    case StmtKind::DataEquiv: equiv(eval(t[0]), eval(t[1])); break;
    case StmtKind::ConceptSub:
    case StmtKind::ARoleSub:
    case StmtKind::CRoleSub:
    case StmtKind::DataSub: sub(eval(t[0]), eval(t[1])); break;
    case StmtKind::RoleChainSub: {
      const int len = static_cast<int>(t.size()) - 1;
      std::vector<Vec> rs;
      for (int i = 0; i <= len; ++i)
        rs.push_back(arole_term(t[i]));
      std::vector<int> xs(len + 1, 0);
      for (;;) {
        B body = a_.k(true);
        for (int i = 0; i < len; ++i)
          body = a_.conj(body, rs[i][xs[i] * n + xs[i + 1]]);
        out.push_back(a_.disj(a_.neg(body), rs[len][xs[0] * n + xs[len]]));
        int i = len;
        while (i >= 0 && ++xs[i] == n)
          xs[i--] = 0;
        if (i < 0)
          break;
      }
      break;
    }
    case StmtKind::Sym:
    case StmtKind::Asym: {
      auto r = arole_term(t[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          out.push_back(s.kind == StmtKind::Sym ? a_.disj(a_.neg(r[x * n + y]), r[y * n + x])
                                                : a_.neg(a_.conj(r[x * n + y], r[y * n + x])));
      break;
    }
    case StmtKind::Tra: {
      auto r = arole_term(t[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            out.push_back(a_.disj(a_.neg(a_.conj(r[x * n + y], r[y * n + z])), r[x * n + z]));
      break;
    }
    case StmtKind::Ref:
    case StmtKind::Irref: {
      auto r = arole_term(t[0]);
      for (int x = 0; x < n; ++x)
        out.push_back(s.kind == StmtKind::Ref ? r[x * n + x] : a_.neg(r[x * n + x]));
      break;
    }
    case StmtKind::Fun:
    case StmtKind::CFun: {
      const bool concrete = s.kind == StmtKind::CFun;
      const int w = concrete ? m : n;
      auto r = concrete ? crole_term(t[0]) : arole_term(t[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < w; ++y)
          for (int z = y + 1; z < w; ++z)
            out.push_back(a_.neg(a_.conj(r[x * w + y], r[x * w + z])));
      break;
    }
    case StmtKind::Dis:
    case StmtKind::CDis: {
      auto r1 = eval(t[0]), r2 = eval(t[1]);
      for (std::size_t i = 0; i < r1.size(); ++i)
        out.push_back(a_.neg(a_.conj(r1[i], r2[i])));
      break;
    }
    case StmtKind::ConceptAssert: out.push_back(concept_term(t[0])[ind(s.objs[0])]); break;
    case StmtKind::RoleAssert: out.push_back(arole_term(t[0])[ind(s.objs[0]) * n + ind(s.objs[1])]); break;
    case StmtKind::NegRoleAssert: out.push_back(a_.neg(arole_term(t[0])[ind(s.objs[0]) * n + ind(s.objs[1])])); break;
    case StmtKind::SameAs: out.push_back(a_.k(ind(s.objs[0]) == ind(s.objs[1]))); break;
    case StmtKind::DifferentFrom: out.push_back(a_.k(ind(s.objs[0]) != ind(s.objs[1]))); break;
    case StmtKind::DataAssert: out.push_back(data_term(t[0])[cst(s.objs[0])]); break;
    case StmtKind::CRoleAssert: out.push_back(crole_term(t[0])[ind(s.objs[0]) * m + cst(s.objs[1])]); break;
    case StmtKind::NegCRoleAssert: out.push_back(a_.neg(crole_term(t[0])[ind(s.objs[0]) * m + cst(s.objs[1])])); break;
    }
    return out;
  }

  // A ground query literal. Arguments of the wrong sort make the atom false.
  B query_literal(const QueryLiteral &q, const std::vector<std::string> &objs, const Signature &sig) {
    auto is_ind = [&](const std::string &o) { return sig.is(o, SymbolKind::Individual); };
    auto is_cst = [&](const std::string &o) { return sig.is(o, SymbolKind::Constant); };
    B atom = a_.k(false);
    switch (q.kind) {
    case QueryAtomKind::Concept:
      if (is_ind(objs[0]))
        atom = concept_term(q.pred)[ind(objs[0])];
      break;
    case QueryAtomKind::ARole:
      if (is_ind(objs[0]) && is_ind(objs[1]))
        atom = arole_term(q.pred)[ind(objs[0]) * f_.nabs + ind(objs[1])];
      break;
    case QueryAtomKind::CRole:
      if (is_ind(objs[0]) && is_cst(objs[1]))
        atom = crole_term(q.pred)[ind(objs[0]) * f_.ndata + cst(objs[1])];
      break;
    case QueryAtomKind::Equal:
      if (is_ind(objs[0]) && is_ind(objs[1]))
        atom = a_.k(ind(objs[0]) == ind(objs[1]));
      else if (is_cst(objs[0]) && is_cst(objs[1]))
        atom = a_.k(cst(objs[0]) == cst(objs[1]));
      break;
    }
    return q.positive ? atom : a_.neg(atom);
  }

private:
  Alg &a_;
  const DlInterpretation &f_;

  int ind(const std::string &a) const {
    auto it = f_.individual.find(a);
    if (it == f_.individual.end())
      throw UnknownName("oracle: individual '" + a + "' has no interpretation");
    return it->second;
  }
  int cst(const std::string &e) const {
    auto it = f_.constant.find(e);
    if (it == f_.constant.end())
      throw UnknownName("oracle: constant '" + e + "' has no interpretation");
    return it->second;
  }
  bool in_type(const std::string &d, int v) const {
    auto it = f_.datatype.find(d);
    return it != f_.datatype.end() && it->second[v];
  }

  template <class F> Vec map1(Vec v, F f) {
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = f(v[i]);
    return v;
  }
  Vec zip(const Vec &x, const Vec &y, bool conj) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      out[i] = conj ? a_.conj(x[i], y[i]) : a_.disj(x[i], y[i]);
    return out;
  }
  B all(const Vec &v) {
    B acc = a_.k(true);
    for (const auto &b : v)
      acc = a_.conj(acc, b);
    return acc;
  }
  // at least k of v are true
  B at_least(int k, const Vec &v) {
    std::vector<B> c(k + 1, a_.k(false));
    c[0] = a_.k(true);
    for (const auto &b : v)
      for (int j = k; j >= 1; --j)
        c[j] = a_.disj(c[j], a_.conj(c[j - 1], b));
    return c[k];
  }
};

// Booleans read from a concrete interpretation.
struct BoolAlg {
  using B = bool;
  const DlInterpretation &I;
  static bool lookup(const std::map<std::string, std::vector<bool>> &m, const std::string &k, std::size_t i) {
    auto it = m.find(k);
    return it != m.end() && i < it->second.size() && it->second[i];
  }
  B k(bool b) const { return b; }
  B neg(B b) const { return !b; }
  B conj(B x, B y) const { return x && y; }
  B disj(B x, B y) const { return x || y; }
  B concept_atom(const std::string &a, int x) const { return lookup(I.concepts, a, x); }
  B arole_atom(const std::string &r, int x, int y) const { return lookup(I.aroles, r, x * I.nabs + y); }
  B crole_atom(const std::string &p, int x, int v) const { return lookup(I.croles, p, x * I.ndata + v); }
  B data_atom(const std::string &t, int v) const { return lookup(I.data, t, v); }
  B facet_atom(const std::string &d, const std::string &f, int v) const { return lookup(I.facets, d + "." + f, v); }
};

// Formula DAG over unknown extents, hash-consed, with constant folding.
// Nodes 0 and 1 are false and true.
struct FormulaAlg {
  using B = int;
  enum class Kind : std::uint8_t { Const, Var, Not, And, Or };
  struct Node {
    Kind kind;
    int a = 0, b = 0; // children, or the variable id
  };
  std::vector<Node> nodes{{Kind::Const, 0, 0}, {Kind::Const, 1, 0}};
  std::map<std::tuple<int, int, int>, int> cons;
  std::map<std::string, int> var_ids;
  std::vector<std::string> var_names;

  B k(bool b) const { return b ? 1 : 0; }
  B make(Kind k, int a, int b) {
    auto key = std::make_tuple(static_cast<int>(k), a, b);
    if (auto it = cons.find(key); it != cons.end())
      return it->second;
    nodes.push_back({k, a, b});
    return cons[key] = static_cast<int>(nodes.size()) - 1;
  }
  B var(const std::string &name) {
    auto [it, fresh] = var_ids.emplace(name, static_cast<int>(var_names.size()));
    if (fresh)
      var_names.push_back(name);
    return make(Kind::Var, it->second, 0);
  }
  B neg(B x) {
    if (x <= 1)
      return 1 - x;
    if (nodes[x].kind == Kind::Not)
      return nodes[x].a;
    return make(Kind::Not, x, 0);
  }
  B conj(B x, B y) {
    if (x == 0 || y == 0)
      return 0;
    if (x == 1)
      return y;
    if (y == 1 || x == y)
      return x;
    return make(Kind::And, std::min(x, y), std::max(x, y));
  }
  B disj(B x, B y) {
    if (x == 1 || y == 1)
      return 1;
    if (x == 0)
      return y;
    if (y == 0 || x == y)
      return x;
    return make(Kind::Or, std::min(x, y), std::max(x, y));
  }
  B concept_atom(const std::string &a, int x) { return var("C " + a + " " + std::to_string(x)); }
  B arole_atom(const std::string &r, int x, int y) { return var("R " + r + " " + std::to_string(x) + " " + std::to_string(y)); }
  B crole_atom(const std::string &p, int x, int v) { return var("P " + p + " " + std::to_string(x) + " " + std::to_string(v)); }
  B data_atom(const std::string &t, int v) { return var("T " + t + " " + std::to_string(v)); }
  B facet_atom(const std::string &d, const std::string &f, int v) { return var("F " + d + "." + f + " " + std::to_string(v)); }
};

// Backtracking over the variables of a set of constraint roots with
// three-valued evaluation; branches only on variables of a root that is
// still undetermined.
class Search {
public:
  Search(const FormulaAlg &f, std::vector<int> roots, std::size_t budget)
      : f_(f), roots_(std::move(roots)), budget_(budget), val_(f.var_names.size(), -1),
        memo_(f.nodes.size(), 0), stamp_(f.nodes.size(), 0) {}

  std::optional<std::vector<signed char>> solve() {
    for (int r : roots_)
      if (r == 0)
        return std::nullopt;
    if (rec())
      return val_;
    return std::nullopt;
  }
  std::size_t nodes() const { return visited_; }

private:
  const FormulaAlg &f_;
  std::vector<int> roots_;
  std::size_t budget_, visited_ = 0;
  std::vector<signed char> val_;
  std::vector<signed char> memo_;
  std::vector<unsigned> stamp_;
  unsigned gen_ = 1;

  // 1 true, 0 false, -1 unknown
  signed char eval(int x) {
    if (stamp_[x] == gen_)
      return memo_[x];
    const auto &n = f_.nodes[x];
    signed char r;
    switch (n.kind) {
    case FormulaAlg::Kind::Const: r = static_cast<signed char>(n.a); break;
    case FormulaAlg::Kind::Var: r = val_[n.a]; break;
    case FormulaAlg::Kind::Not: {
      auto c = eval(n.a);
      r = c < 0 ? -1 : 1 - c;
      break;
    }
    case FormulaAlg::Kind::And: {
      auto p = eval(n.a);
      if (p == 0) {
        r = 0;
        break;
      }
      auto q = eval(n.b);
      r = q == 0 ? 0 : (p == 1 && q == 1) ? 1 : -1;
      break;
    }
    case FormulaAlg::Kind::Or: {
      auto p = eval(n.a);
      if (p == 1) {
        r = 1;
        break;
      }
      auto q = eval(n.b);
      r = q == 1 ? 1 : (p == 0 && q == 0) ? 0 : -1;
      break;
    }
    default: r = -1;
    }
    stamp_[x] = gen_;
    memo_[x] = r;
    return r;
  }

  // an unassigned variable below an undetermined node
  int pick(int x) {
    const auto &n = f_.nodes[x];
    switch (n.kind) {
    case FormulaAlg::Kind::Var: return val_[n.a] < 0 ? n.a : -1;
    case FormulaAlg::Kind::Not: return pick(n.a);
    case FormulaAlg::Kind::And:
    case FormulaAlg::Kind::Or:
      if (eval(n.a) < 0)
        return pick(n.a);
      return eval(n.b) < 0 ? pick(n.b) : -1;
    default: return -1;
    }
  }

  bool rec() {
    if (++visited_ > budget_)
      throw CapacityExceeded("oracle search exceeded " + std::to_string(budget_) + " nodes");
    ++gen_;
    int open = -1;
    for (int r : roots_) {
      auto v = eval(r);
      if (v == 0)
        return false;
      if (v < 0 && open < 0)
        open = r;
    }
    if (open < 0)
      return true;
    const int var = pick(open);
    for (signed char b : {0, 1}) {
      val_[var] = b;
      if (rec())
        return true;
    }
    val_[var] = -1;
    return false;
  }
};

} // namespace detail

// True iff I satisfies every statement of kb.
inline bool dl_model_check(const KnowledgeBase &kb, const DlInterpretation &I) {
  detail::BoolAlg alg{I};
  detail::Semantics<detail::BoolAlg> sem(alg, I);
  for (const auto *s : kb.statements())
    for (bool b : sem.statement(*s))
      if (!b)
        return false;
  return true;
}

inline bool dl_statement_check(const Statement &s, const DlInterpretation &I) {
  detail::BoolAlg alg{I};
  detail::Semantics<detail::BoolAlg> sem(alg, I);
  auto v = sem.statement(s);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

struct DlOracleOptions {
  int max_domain = 3;  // abstract domains of size 1..max_domain
  int data_extra = 0;  // unnamed values added to every datatype
  std::size_t budget_nodes = 20'000'000;
};

struct DlOracleResult {
  bool consistent = false;
  std::optional<DlInterpretation> model;
  std::size_t frames = 0;
  std::size_t search_nodes = 0;
};

namespace detail {

// Every frame: abstract domain size, a map of the individuals into it, and a
// data domain built from a partition of the constants of each datatype.
inline void for_each_frame(const Signature &sig, DlOracleOptions opt, const std::function<bool(DlInterpretation &)> &visit) {
  const auto &inds = sig.individuals;
  const int ni = static_cast<int>(inds.size());
  // data partitions per datatype, combined by a running product
  struct Choice {
    std::vector<int> block;
    int blocks;
  };
  std::vector<std::vector<Choice>> per_type;
  for (const auto &d : sig.datatypes) {
    std::vector<Choice> cs;
    const int nc = static_cast<int>(d.constants.size());
    for_each_partition(nc, std::max(nc, 1), [&](const std::vector<int> &b, int k) {
      cs.push_back({b, k});
      return true;
    });
    per_type.push_back(std::move(cs));
  }
  for (int n = 1; n <= opt.max_domain; ++n) {
    bool go = true;
    for_each_partition(ni, n, [&](const std::vector<int> &block, int) {
      DlInterpretation base;
      base.nabs = n;
      for (int i = 0; i < ni; ++i)
        base.individual[inds[i]] = block[i];
      std::vector<std::size_t> idx(per_type.size(), 0);
      for (;;) {
        DlInterpretation I = base;
        I.ndata = 0;
        std::vector<std::pair<std::string, std::pair<int, int>>> ranges;
        for (std::size_t t = 0; t < per_type.size(); ++t) {
          const auto &d = sig.datatypes[t];
          const auto &c = per_type[t][idx[t]];
          const int first = I.ndata;
          const int size = std::max(c.blocks, 1) + opt.data_extra;
          for (std::size_t j = 0; j < d.constants.size(); ++j)
            I.constant[d.constants[j]] = first + c.block[j];
          I.ndata += size;
          ranges.push_back({d.name, {first, first + size}});
        }
        if (per_type.empty())
          I.ndata = 1; // a non-empty data domain with no datatype
        for (const auto &[name, r] : ranges) {
          std::vector<bool> ext(I.ndata, false);
          for (int v = r.first; v < r.second; ++v)
            ext[v] = true;
          I.datatype[name] = std::move(ext);
        }
        if (!visit(I)) {
          go = false;
          return false;
        }
        std::size_t t = 0;
        while (t < idx.size() && ++idx[t] == per_type[t].size())
          idx[t++] = 0;
        if (t == idx.size())
          break;
      }
      return true;
    });
    if (!go)
      return;
  }
}

// Reads the solved variables back into the frame.
inline void fill_model(DlInterpretation &I, const FormulaAlg &f, const std::vector<signed char> &val) {
  for (std::size_t i = 0; i < f.var_names.size(); ++i) {
    if (val[i] != 1)
      continue;
    std::string kind, name;
    std::istringstream in(f.var_names[i]);
    in >> kind >> name;
    int x = 0, y = 0;
    in >> x;
    auto set = [&](std::map<std::string, std::vector<bool>> &m, std::size_t size, std::size_t at) {
      auto &v = m[name];
      v.resize(size, false);
      v[at] = true;
    };
    if (kind == "C")
      set(I.concepts, I.nabs, x);
    else if (kind == "R" && (in >> y))
      set(I.aroles, I.nabs * I.nabs, x * I.nabs + y);
    else if (kind == "P" && (in >> y))
      set(I.croles, I.nabs * I.ndata, x * I.ndata + y);
    else if (kind == "T")
      set(I.data, I.ndata, x);
    else if (kind == "F")
      set(I.facets, I.ndata, x);
  }
}

inline bool frame_sat(const KnowledgeBase &kb, DlInterpretation &I, const std::vector<std::pair<QueryLiteral, std::vector<std::string>>> &extra,
                      std::size_t budget, std::size_t &nodes) {
  FormulaAlg alg;
  Semantics<FormulaAlg> sem(alg, I);
  std::vector<int> roots;
  for (const auto *s : kb.statements())
    for (int r : sem.statement(*s))
      if (r != 1)
        roots.push_back(r);
  for (const auto &[q, objs] : extra) {
    int r = sem.query_literal(q, objs, kb.sig);
    if (r != 1)
      roots.push_back(r);
  }
  Search search(alg, roots, budget);
  auto val = search.solve();
  nodes += search.nodes();
  if (!val)
    return false;
  fill_model(I, alg, *val);
  return true;
}

} // namespace detail

// Searches every frame with an abstract domain of at most max_domain
// elements for a model of kb.
inline DlOracleResult dl_consistent(const KnowledgeBase &kb, DlOracleOptions opt = {}) {
  DlOracleResult res;
  detail::for_each_frame(kb.sig, opt, [&](DlInterpretation &I) {
    ++res.frames;
    if (detail::frame_sat(kb, I, {}, opt.budget_nodes, res.search_nodes)) {
      res.consistent = true;
      res.model = I;
      return false;
    }
    return true;
  });
  return res;
}

// Exhaustive CQA: every map of the query variables to individuals and
// constants under which kb plus the instantiated query has a model.
inline std::set<DlSubstitution> dl_answers(const KnowledgeBase &kb, const Query &q, DlOracleOptions opt = {}) {
  const auto vars = query_vars(q);
  std::vector<std::string> objs = kb.sig.individuals;
  for (const auto &e : kb.sig.constants())
    objs.push_back(e);
  std::set<DlSubstitution> out;
  std::vector<std::size_t> idx(vars.size(), 0);
  if (objs.empty() && !vars.empty())
    return out;
  std::size_t nodes = 0;
  for (;;) {
    DlSubstitution sigma;
    for (std::size_t i = 0; i < vars.size(); ++i)
      sigma[vars[i]] = objs[idx[i]];
    std::vector<std::pair<QueryLiteral, std::vector<std::string>>> lits;
    for (const auto &l : apply_dl_substitution(q, sigma).literals) {
      std::vector<std::string> args;
      for (const auto &a : l.args)
        args.push_back(a.name);
      lits.push_back({l, args});
    }
    bool found = false;
    detail::for_each_frame(kb.sig, opt, [&](DlInterpretation &I) {
      found = detail::frame_sat(kb, I, lits, opt.budget_nodes, nodes);
      return !found;
    });
    if (found)
      out.insert(sigma);
    std::size_t i = vars.size();
    while (i > 0 && ++idx[i - 1] == objs.size())
      idx[--i] = 0;
    if (i == 0)
      break;
  }
  return out;
}

// --- set-level reading of a DL interpretation ---------------------------------

// The set-level model induced by a DL interpretation: universe = abstract
// elements followed by data values; every level-1/level-3 variable denotes
// the extent of its term.
struct LqsModel {
  int size = 0;
  std::vector<int> var0;
  std::vector<std::vector<bool>> m1;
  std::vector<std::set<std::pair<int, int>>> m3;

  bool holds(const Atom &a, const std::vector<int> &env) const {
    auto v = [&](int x) { return is_bound(x) ? env[bound_index(x)] : var0[x]; };
    switch (a.kind) {
    case AtomKind::Eq: return v(a.x) == v(a.y);
    case AtomKind::Mem1: return m1[a.set][v(a.x)];
    case AtomKind::Mem3: return m3[a.set].count({v(a.x), v(a.y)}) > 0;
    }
    return false;
  }

  // the quantifier prefix ranges over the whole universe
  bool satisfies(const Cnf &f) const {
    std::vector<int> env(f.nbound, 0);
    for (;;) {
      for (const auto &c : f.clauses)
        if (!std::any_of(c.begin(), c.end(), [&](const Literal &l) { return holds(l.atom, env) == l.positive; }))
          return false;
      int i = f.nbound - 1;
      while (i >= 0 && ++env[i] == size)
        env[i--] = 0;
      if (i < 0)
        return true;
    }
  }
};

inline LqsModel lqs_model_of(const DlInterpretation &I, const VarTable &vt) {
  detail::BoolAlg alg{I};
  detail::Semantics<detail::BoolAlg> sem(alg, I);
  LqsModel m;
  const int na = I.nabs, nd = I.ndata;
  m.size = na + nd;
  auto first_in = [&](const std::string &d) {
    auto it = I.datatype.find(d);
    for (int v = 0; it != I.datatype.end() && v < nd; ++v)
      if (it->second[v])
        return na + v;
    return na;
  };
  for (const auto &info : vt.v0) {
    switch (info.kind) {
    case Var0Kind::Individual: m.var0.push_back(I.individual.at(info.name)); break;
    case Var0Kind::Constant: m.var0.push_back(na + I.constant.at(info.name)); break;
    case Var0Kind::Witness:
      m.var0.push_back(info.name == "@I" ? 0 : info.name == "@D" ? na : first_in(info.name));
      break;
    case Var0Kind::QueryVar: m.var0.push_back(0); break;
    }
  }
  for (const auto &info : vt.v1) {
    std::vector<bool> ext(m.size, false);
    auto data_ext = [&](const std::vector<bool> &v) {
      for (int i = 0; i < nd; ++i)
        ext[na + i] = v[i];
    };
    switch (info.kind) {
    case Var1Kind::Individuals:
      for (int x = 0; x < na; ++x)
        ext[x] = true;
      break;
    case Var1Kind::Data:
      for (int v = 0; v < nd; ++v)
        ext[na + v] = true;
      break;
    case Var1Kind::Facet:
      data_ext(sem.data_term(tm::facet_expr(info.datatype, tm::facet(info.facet))));
      break;
    case Var1Kind::FacetTop: data_ext(sem.data_term(tm::datatype(info.datatype))); break;
    case Var1Kind::FacetBottom: break;
    case Var1Kind::Term:
      if (info.term->sort == Sort::Concept) {
        auto c = sem.concept_term(info.term);
        for (int x = 0; x < na; ++x)
          ext[x] = c[x];
      } else {
        data_ext(sem.data_term(info.term));
      }
      break;
    }
    m.m1.push_back(std::move(ext));
  }
  for (const auto &info : vt.v3) {
    std::set<std::pair<int, int>> ext;
    if (info.term->sort == Sort::ARole) {
      auto r = sem.arole_term(info.term);
      for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
          if (r[x * na + y])
            ext.insert({x, y});
    } else {
      auto p = sem.crole_term(info.term);
      for (int x = 0; x < na; ++x)
        for (int v = 0; v < nd; ++v)
          if (p[x * nd + v])
            ext.insert({x, na + v});
    }
    m.m3.push_back(std::move(ext));
  }
  return m;
}

} // namespace dl4x::oracle
