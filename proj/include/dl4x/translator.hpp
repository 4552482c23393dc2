#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dl4x/dl_model.hpp"
#include "dl4x/lqs.hpp"
#include "dl4x/normalizer.hpp"

// The translation from normalized statements, queries and substitutions into
// CNF formulas of the set language, plus the well-formedness constraints that
// make every model of the result readable as a DL interpretation.
namespace dl4x {

struct ThetaOptions {
  // Reproduce the published table verbatim: the distributed cardinality
  // clauses, the second clause of R1 == not R2 as printed, the covering
  // clause between datatypes, and the unrelativized facet-expression
  // constraint. Only the golden tests use this; the defaults are the sound
  // variants.
  bool verbatim_table = false;
};

struct WitnessRequest {
  int var0; // the Skolem witness
  int set;  // the Var1 it must belong to
};

struct PhiKB {
  VarTable vars;
  std::vector<Cnf> ground;     // nbound == 0
  std::vector<Cnf> universals; // nbound >= 1
  std::vector<WitnessRequest> witnesses;
};

class Translator {
public:
  explicit Translator(VarTable &vt, ThetaOptions opt = {}) : vt_(vt), opt_(opt) {}

  Cnf theta(const Statement &s) {
    if (!is_normalized_shape(s))
      throw UnsupportedStatement("statement is not in a normalized shape: " + print(s));
    Cnf f = theta_shape(s);
    f.origin = print(s);
    return f;
  }

  // query literal -> level-0 literal; query variables become Var0 entries of
  // their own kind, disjoint from the KB's variables
  Literal theta_literal(const QueryLiteral &q, const Signature &sig) {
    auto arg = [&](const QueryArg &a) {
      if (a.is_var)
        return vt_.var0(Var0Kind::QueryVar, a.name);
      if (auto o = vt_.object(a.name))
        return *o;
      if (sig.is(a.name, SymbolKind::Individual))
        return vt_.var0(Var0Kind::Individual, a.name);
      if (sig.is(a.name, SymbolKind::Constant))
        return vt_.var0(Var0Kind::Constant, a.name);
      throw UnknownName("query mentions unknown object '" + a.name + "'");
    };
    Atom at;
    switch (q.kind) {
    case QueryAtomKind::Equal: at = eq(arg(q.args[0]), arg(q.args[1])); break;
    case QueryAtomKind::Concept: at = mem1(arg(q.args[0]), pred1(q.pred, sig)); break;
    case QueryAtomKind::ARole:
    case QueryAtomKind::CRole: at = mem3(arg(q.args[0]), arg(q.args[1]), pred3(q.pred, sig)); break;
    }
    return {q.positive, at};
  }

  std::vector<Literal> theta_query(const Query &q, const Signature &sig) {
    std::vector<Literal> out;
    for (const auto &l : q.literals)
      out.push_back(theta_literal(l, sig));
    return out;
  }

  // {v/o} -> {x_v/x_o}
  std::map<int, int> theta_substitution(const DlSubstitution &sigma) {
    std::map<int, int> out;
    for (const auto &[v, o] : sigma) {
      auto target = vt_.object(o);
      if (!target)
        throw UnknownName("substitution maps '" + v + "' to unknown object '" + o + "'");
      out[vt_.var0(Var0Kind::QueryVar, v)] = *target;
    }
    return out;
  }

  // Constraint groups, labelled xi1 ... xi12. Witness requests are appended
  // to `witnesses`.
  std::vector<Cnf> xi(const KnowledgeBase &kb, std::vector<WitnessRequest> &witnesses) {
    const auto &sig = kb.sig;
    std::vector<Cnf> out;
    auto group = [&](const char *name, int nbound) -> Cnf & {
      out.push_back({nbound, {}, name});
      return out.back();
    };
    const int I = vt_.individuals(), D = vt_.data();
    const Atom zI = mem1(z(0), I), zD = mem1(z(0), D);

    // object variables first so that grounding order follows declaration order
    for (const auto &a : sig.individuals)
      vt_.var0(Var0Kind::Individual, a);
    for (const auto &d : sig.datatypes)
      for (const auto &e : d.constants)
        vt_.var0(Var0Kind::Constant, e);

    // xi1: I and D partition the universe and are non-empty
    {
      auto &g = group("xi1", 1);
      g.clauses = {{neg(zI), neg(zD)}, {pos(zD), pos(zI)}};
      if (sig.individuals.empty())
        witnesses.push_back({vt_.var0(Var0Kind::Witness, "@I"), I});
      if (sig.datatypes.empty())
        witnesses.push_back({vt_.var0(Var0Kind::Witness, "@D"), D});
    }
    // xi2: top is I, bottom is empty
    {
      const int T = vt_.var1(tm::top()), B = vt_.var1(tm::bottom());
      auto &g = group("xi2", 1);
      g.clauses = {{neg(zI), pos(mem1(z(0), T))}, {neg(mem1(z(0), T)), pos(zI)}, {neg(mem1(z(0), B))}};
    }
    // xi3: concept names are sets of individuals
    if (!sig.concepts.empty()) {
      auto &g = group("xi3", 1);
      for (const auto &a : sig.concepts)
        g.clauses.push_back({neg(mem1(z(0), vt_.var1(tm::concept_name(a)))), pos(zI)});
    }
    // xi4: datatypes are non-empty, disjoint subsets of D
    if (!sig.datatypes.empty()) {
      auto &g = group("xi4", 1);
      std::vector<int> ds;
      for (const auto &d : sig.datatypes) {
        int x = vt_.var1(tm::datatype(d.name));
        ds.push_back(x);
        g.clauses.push_back({neg(mem1(z(0), x)), pos(zD)});
      }
      for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
          g.clauses.push_back({neg(mem1(z(0), ds[i])), neg(mem1(z(0), ds[j]))});
          if (opt_.verbatim_table)
            g.clauses.push_back({pos(mem1(z(0), ds[j])), pos(mem1(z(0), ds[i]))});
        }
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (sig.datatypes[i].constants.empty())
          witnesses.push_back({vt_.var0(Var0Kind::Witness, sig.datatypes[i].name), ds[i]});
    }
    // xi5: top_d is d, bottom_d is empty
    if (!sig.datatypes.empty()) {
      auto &g = group("xi5", 1);
      for (const auto &d : sig.datatypes) {
        int x = vt_.var1(tm::datatype(d.name)), t = vt_.facet_top(d.name), b = vt_.facet_bottom(d.name);
        g.clauses.push_back({neg(mem1(z(0), x)), pos(mem1(z(0), t))});
        g.clauses.push_back({neg(mem1(z(0), t)), pos(mem1(z(0), x))});
        g.clauses.push_back({neg(mem1(z(0), b))});
      }
    }
    // xi6: facets of d are subsets of d
    {
      Cnf g{1, {}, "xi6"};
      for (const auto &d : sig.datatypes)
        for (const auto &f : d.facets)
          g.clauses.push_back({neg(mem1(z(0), vt_.facet(d.name, f))), pos(mem1(z(0), vt_.var1(tm::datatype(d.name))))});
      if (!g.clauses.empty())
        out.push_back(std::move(g));
    }
    // xi7: U is I x I
    {
      const int U = vt_.var3(tm::universal());
      auto &g = group("xi7", 2);
      Atom r = mem3(z(0), z(1), U);
      g.clauses = {{neg(mem1(z(0), I)), neg(mem1(z(1), I)), pos(r)}, {neg(r), pos(mem1(z(0), I))}, {neg(r), pos(mem1(z(1), I))}};
    }
    // xi8: abstract role names relate individuals
    if (!sig.aroles.empty()) {
      auto &g = group("xi8", 2);
      for (const auto &s : sig.aroles) {
        Atom r = mem3(z(0), z(1), vt_.var3(tm::arole_name(s)));
        g.clauses.push_back({neg(r), pos(mem1(z(0), I))});
        g.clauses.push_back({neg(r), pos(mem1(z(1), I))});
      }
    }
    // xi9: concrete role names relate individuals to data values
    if (!sig.croles.empty()) {
      auto &g = group("xi9", 2);
      for (const auto &t : sig.croles) {
        Atom r = mem3(z(0), z(1), vt_.var3(tm::crole_name(t)));
        g.clauses.push_back({neg(r), pos(mem1(z(0), I))});
        g.clauses.push_back({neg(r), pos(mem1(z(1), D))});
      }
    }
    // xi10: individuals are in I, constants in their datatype
    {
      Cnf g{0, {}, "xi10"};
      for (const auto &a : sig.individuals)
        g.clauses.push_back({pos(mem1(*vt_.object(a), I))});
      for (const auto &d : sig.datatypes)
        for (const auto &e : d.constants)
          g.clauses.push_back({pos(mem1(*vt_.object(e), vt_.var1(tm::datatype(d.name))))});
      if (!g.clauses.empty())
        out.push_back(std::move(g));
    }
    // xi11: nominal sets and enumerations are exactly their members
    {
      Cnf g{1, {}, "xi11"};
      for (const auto &t : collect(kb, [](const Term &t) { return t.op == Op::NominalSet || t.op == Op::Enumeration; })) {
        const int x = vt_.var1(t);
        Clause first{neg(mem1(z(0), x))};
        for (const auto &o : t->names)
          first.push_back(pos(eq(z(0), object(o, sig))));
        g.clauses.push_back(first);
        for (const auto &o : t->names)
          g.clauses.push_back({neg(eq(z(0), object(o, sig))), pos(mem1(z(0), x))});
      }
      if (!g.clauses.empty())
        out.push_back(std::move(g));
    }
    // xi12: facet expressions, through zeta
    {
      Cnf g{1, {}, "xi12"};
      for (const auto &t : collect(kb, [](const Term &t) { return t.op == Op::FacetExpr; }))
        for (auto &c : facet_clauses(t))
          g.clauses.push_back(std::move(c));
      if (!g.clauses.empty())
        out.push_back(std::move(g));
    }
    return out;
  }

  // zeta applied to X1_psi: the facet expression as CNF over facet
  // memberships of z (as a list of clauses).
  std::vector<Clause> zeta(const TermPtr &psi, const std::string &d) {
    switch (psi->op) {
    case Op::Intersection: {
      auto a = zeta(psi->args[0], d), b = zeta(psi->args[1], d);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case Op::Union: {
      // CNF input guarantees both sides are single clauses
      auto a = zeta(psi->args[0], d), b = zeta(psi->args[1], d);
      std::vector<Clause> out;
      for (const auto &x : a)
        for (const auto &y : b) {
          Clause c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    case Op::Not: {
      const auto &x = psi->args[0];
      if (x->op == Op::Not)
        return zeta(x->args[0], d);
      auto inner = zeta(x, d);
      if (inner.size() != 1 || inner[0].size() != 1)
        throw UnsupportedStatement("facet expression is not in CNF: " + print(psi));
      return {{inner[0][0].complement()}};
    }
    case Op::Name: return {{pos(mem1(z(0), vt_.facet(d, psi->name)))}};
    case Op::Top: return {{pos(mem1(z(0), vt_.facet_top(d)))}};
    case Op::Bottom: return {{pos(mem1(z(0), vt_.facet_bottom(d)))}};
    default: throw UnsupportedStatement("unexpected facet construct: " + print(psi));
    }
  }

private:
  VarTable &vt_;
  ThetaOptions opt_;

  static int z(int i) { return bound_var(i); }

  int object(const std::string &name, const Signature &sig) {
    if (auto o = vt_.object(name))
      return *o;
    return vt_.var0(sig.is(name, SymbolKind::Constant) ? Var0Kind::Constant : Var0Kind::Individual, name);
  }

  int pred1(const TermPtr &t, const Signature &sig) {
    if (t->op == Op::Name && !sig.is(t->name, SymbolKind::Concept))
      throw UnknownName("query uses concept '" + t->name + "' which the knowledge base does not declare");
    return vt_.var1(t);
  }
  int pred3(const TermPtr &t, const Signature &sig) {
    if (t->op == Op::Name && !sig.is(t->name, SymbolKind::ARole) && !sig.is(t->name, SymbolKind::CRole))
      throw UnknownName("query uses role '" + t->name + "' which the knowledge base does not declare");
    return vt_.var3(t);
  }

  template <class Pred> static std::vector<TermPtr> collect(const KnowledgeBase &kb, Pred p) {
    std::vector<TermPtr> out;
    std::set<std::string> seen;
    std::function<void(const TermPtr &)> walk = [&](const TermPtr &t) {
      if (p(*t) && seen.insert(t->key).second)
        out.push_back(t);
      for (const auto &a : t->args)
        walk(a);
    };
    for (const auto *s : kb.statements())
      for (const auto &t : s->terms)
        walk(t);
    return out;
  }

  // X_psi(z) <-> (z in d and zeta(psi)); without the datatype guard when
  // reproducing the published constraint.
  std::vector<Clause> facet_clauses(const TermPtr &fe) {
    const std::string &d = fe->name;
    const Atom x = mem1(z(0), vt_.var1(fe));
    auto body = zeta(fe->args[0], d);
    if (!opt_.verbatim_table)
      body.insert(body.begin(), Clause{pos(mem1(z(0), vt_.var1(tm::datatype(d))))});
    std::vector<Clause> out;
    for (const auto &c : body) {
      Clause k{neg(x)};
      k.insert(k.end(), c.begin(), c.end());
      out.push_back(std::move(k));
    }
    // (not body) or x, distributed: one clause per choice of a literal from
    // every body clause
    std::vector<Clause> acc{Clause{pos(x)}};
    for (const auto &c : body) {
      std::vector<Clause> next;
      for (const auto &partial : acc)
        for (const auto &l : c) {
          Clause k = partial;
          k.push_back(l.complement());
          next.push_back(std::move(k));
        }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
    return out;
  }

  int v1(const TermPtr &t) { return vt_.var1(t); }
  int v3(const TermPtr &t) { return vt_.var3(t); }

  // Cardinality forms. The published clauses distribute the conjunction
  // over the disjunction, which is not equivalent; the single clause below
  // says "if z has the restricted successors z1..zk then two of them coincide".
  std::vector<Clause> at_most_clauses(int n, Atom c1z, int role, bool concrete_filler, int filler) {
    (void)concrete_filler;
    const int k = n + 1;
    Clause eqs;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        eqs.push_back(pos(eq(z(i), z(j))));
    if (opt_.verbatim_table) {
      std::vector<Clause> out;
      for (int i = 1; i <= k; ++i) {
        Clause c{neg(c1z), neg(mem1(z(i), filler)), neg(mem3(z(0), z(i), role))};
        c.insert(c.end(), eqs.begin(), eqs.end());
        out.push_back(std::move(c));
      }
      return out;
    }
    Clause c{neg(c1z)};
    for (int i = 1; i <= k; ++i) {
      c.push_back(neg(mem1(z(i), filler)));
      c.push_back(neg(mem3(z(0), z(i), role)));
    }
    c.insert(c.end(), eqs.begin(), eqs.end());
    return {c};
  }

  std::vector<Clause> at_least_clauses(int n, int filler, int role, Atom c2z) {
    Clause eqs;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        eqs.push_back(pos(eq(z(i), z(j))));
    if (opt_.verbatim_table) {
      std::vector<Clause> out;
      for (int i = 1; i <= n; ++i) {
        Clause c{neg(mem1(z(i), filler)), neg(mem3(z(0), z(i), role))};
        c.insert(c.end(), eqs.begin(), eqs.end());
        c.push_back(pos(c2z));
        out.push_back(std::move(c));
      }
      return out;
    }
    Clause c;
    for (int i = 1; i <= n; ++i) {
      c.push_back(neg(mem1(z(i), filler)));
      c.push_back(neg(mem3(z(0), z(i), role)));
    }
    c.insert(c.end(), eqs.begin(), eqs.end());
    c.push_back(pos(c2z));
    return {c};
  }

  // C1 == X for the boolean data/concept shapes over one bound variable
  Cnf unary_equiv(int lhs, const TermPtr &x) {
    const Atom a = mem1(z(0), lhs);
    auto m = [&](const TermPtr &t) { return mem1(z(0), v1(t)); };
    switch (x->op) {
    case Op::Not: return {1, {{neg(a), neg(m(x->args[0]))}, {pos(m(x->args[0])), pos(a)}}};
    case Op::Union:
      return {1, {{neg(a), pos(m(x->args[0])), pos(m(x->args[1]))}, {neg(m(x->args[0])), pos(a)}, {neg(m(x->args[1])), pos(a)}}};
    case Op::Intersection:
      return {1, {{neg(a), pos(m(x->args[0]))}, {neg(a), pos(m(x->args[1]))}, {neg(m(x->args[0])), neg(m(x->args[1])), pos(a)}}};
    default: // Top, or an atomic data range
      return {1, {{neg(a), pos(m(x))}, {neg(m(x)), pos(a)}}};
    }
  }

  Cnf theta_shape(const Statement &s) {
    const auto &t = s.terms;
    switch (s.kind) {
    case StmtKind::ConceptEquiv:
    case StmtKind::DataEquiv: {
      const int c1 = v1(t[0]);
      const auto &x = t[1];
      const Atom a = mem1(z(0), c1);
      switch (x->op) {
      case Op::Nominal:
      case Op::Singleton: {
        const Atom e = eq(z(0), vt_.var0(x->op == Op::Nominal ? Var0Kind::Individual : Var0Kind::Constant, x->name));
        return {1, {{neg(a), pos(e)}, {neg(e), pos(a)}}};
      }
      case Op::ValuedExists:
      case Op::DatatypedExists: {
        const int o = vt_.var0(x->op == Op::ValuedExists ? Var0Kind::Individual : Var0Kind::Constant, x->name);
        const Atom r = mem3(z(0), o, v3(x->args[0]));
        return {1, {{neg(a), pos(r)}, {neg(r), pos(a)}}};
      }
      default: return unary_equiv(c1, x);
      }
    }
    case StmtKind::ConceptSub: {
      const auto &l = t[0], &r = t[1];
      if (r->op == Op::Forall) {
        // C1 <= all R.C2
        return {2, {{neg(mem1(z(0), v1(l))), neg(mem3(z(0), z(1), v3(r->args[0]))), pos(mem1(z(1), v1(r->args[1])))}}};
      }
      if (r->op == Op::AtMost)
        return {r->n + 2, at_most_clauses(r->n, mem1(z(0), v1(l)), v3(r->args[0]), r->args[0]->sort == Sort::CRole,
                                          v1(r->args[1]))};
      if (l->op == Op::Exists) {
        // some R.C1 <= C2
        return {2, {{neg(mem3(z(0), z(1), v3(l->args[0]))), neg(mem1(z(1), v1(l->args[1]))), pos(mem1(z(0), v1(r)))}}};
      }
      // atleast n R.C1 <= C2
      return {l->n + 1, at_least_clauses(l->n, v1(l->args[1]), v3(l->args[0]), mem1(z(0), v1(r)))};
    }
    case StmtKind::ARoleEquiv:
    case StmtKind::CRoleEquiv: {
      const int r1 = v3(t[0]);
      const auto &x = t[1];
      const Atom a = mem3(z(0), z(1), r1);
      auto m = [&](const TermPtr &r) { return mem3(z(0), z(1), v3(r)); };
      switch (x->op) {
      case Op::Universal:
      case Op::Name: return {2, {{neg(a), pos(m(x))}, {neg(m(x)), pos(a)}}};
      case Op::Not:
        if (opt_.verbatim_table && x->sort == Sort::ARole)
          return {2, {{neg(a), neg(m(x->args[0]))}, {pos(m(x->args[0])), neg(a)}}};
        return {2, {{neg(a), neg(m(x->args[0]))}, {pos(m(x->args[0])), pos(a)}}};
      case Op::Union:
        return {2, {{neg(a), pos(m(x->args[0])), pos(m(x->args[1]))}, {neg(m(x->args[0])), pos(a)}, {neg(m(x->args[1])), pos(a)}}};
      case Op::Inverse: {
        const Atom b = mem3(z(1), z(0), v3(x->args[0]));
        return {2, {{neg(a), pos(b)}, {neg(b), pos(a)}}};
      }
      case Op::Id: {
        const Atom c1 = mem1(z(0), v1(x->args[0])), c2 = mem1(z(1), v1(x->args[0])), e = eq(z(0), z(1));
        return {2, {{neg(a), pos(c1)}, {neg(a), pos(c2)}, {neg(a), pos(e)}, {neg(c1), neg(c2), neg(e), pos(a)}}};
      }
      case Op::Product: {
        const Atom c1 = mem1(z(0), v1(x->args[0])), c2 = mem1(z(1), v1(x->args[1]));
        return {2, {{neg(a), pos(c1)}, {neg(a), pos(c2)}, {neg(c1), neg(c2), pos(a)}}};
      }
      case Op::DomainRestr: {
        const Atom b = m(x->args[0]), c = mem1(z(0), v1(x->args[1]));
        return {2, {{neg(a), pos(b)}, {neg(a), pos(c)}, {neg(b), neg(c), pos(a)}}};
      }
      case Op::RangeRestr: {
        const Atom b = m(x->args[0]), c = mem1(z(1), v1(x->args[1]));
        return {2, {{neg(a), pos(b)}, {neg(a), pos(c)}, {neg(b), neg(c), pos(a)}}};
      }
      case Op::Restr: {
        const Atom b = m(x->args[0]), c = mem1(z(0), v1(x->args[1])), d = mem1(z(1), v1(x->args[2]));
        return {2, {{neg(a), pos(b)}, {neg(a), pos(c)}, {neg(a), pos(d)}, {neg(b), neg(c), neg(d), pos(a)}}};
      }
      default: break;
      }
      break;
    }
    case StmtKind::RoleChainSub: {
      // z0 R1 z1 ... R_n z_n  =>  <z0, z_n> in R_{n+1}
      const int n = static_cast<int>(t.size()) - 1;
      Clause c;
      for (int i = 0; i < n; ++i)
        c.push_back(neg(mem3(z(i), z(i + 1), v3(t[i]))));
      c.push_back(pos(mem3(z(0), z(n), v3(t[n]))));
      return {n + 1, {c}};
    }
    case StmtKind::Ref: return {1, {{pos(mem3(z(0), z(0), v3(t[0])))}}};
    case StmtKind::Irref: return {1, {{neg(mem3(z(0), z(0), v3(t[0])))}}};
    case StmtKind::Fun:
    case StmtKind::CFun: {
      const int r = v3(t[0]);
      return {3, {{neg(mem3(z(0), z(1), r)), neg(mem3(z(0), z(2), r)), pos(eq(z(1), z(2)))}}};
    }
    case StmtKind::Dis:
    case StmtKind::CDis: return {2, {{neg(mem3(z(0), z(1), v3(t[0]))), neg(mem3(z(0), z(1), v3(t[1])))}}};
    case StmtKind::CRoleSub: return {2, {{neg(mem3(z(0), z(1), v3(t[0]))), pos(mem3(z(0), z(1), v3(t[1])))}}};
    case StmtKind::ConceptAssert:
      return {0, {{pos(mem1(vt_.var0(Var0Kind::Individual, s.objs[0]), v1(t[0])))}}};
    case StmtKind::DataAssert: return {0, {{pos(mem1(vt_.var0(Var0Kind::Constant, s.objs[0]), v1(t[0])))}}};
    case StmtKind::RoleAssert:
    case StmtKind::NegRoleAssert:
    case StmtKind::CRoleAssert:
    case StmtKind::NegCRoleAssert: {
      const bool concrete = s.kind == StmtKind::CRoleAssert || s.kind == StmtKind::NegCRoleAssert;
      const bool positive = s.kind == StmtKind::RoleAssert || s.kind == StmtKind::CRoleAssert;
      const Atom r = mem3(vt_.var0(Var0Kind::Individual, s.objs[0]),
                          vt_.var0(concrete ? Var0Kind::Constant : Var0Kind::Individual, s.objs[1]), v3(t[0]));
      return {0, {{Literal{positive, r}}}};
    }
    case StmtKind::SameAs:
    case StmtKind::DifferentFrom: {
      const Atom e = eq(vt_.var0(Var0Kind::Individual, s.objs[0]), vt_.var0(Var0Kind::Individual, s.objs[1]));
      return {0, {{Literal{s.kind == StmtKind::SameAs, e}}}};
    }
    default: break;
    }
    throw UnsupportedStatement("no translation for statement: " + print(s));
  }
};

// phi_KB for a normalized KB: theta of every statement plus the constraints.
inline PhiKB translate_kb(const KnowledgeBase &kb, ThetaOptions opt = {}) {
  PhiKB phi;
  Translator tr(phi.vars, opt);
  for (auto &g : tr.xi(kb, phi.witnesses))
    (g.nbound == 0 ? phi.ground : phi.universals).push_back(std::move(g));
  for (const auto *s : kb.statements()) {
    auto f = tr.theta(*s);
    (f.nbound == 0 ? phi.ground : phi.universals).push_back(std::move(f));
  }
  return phi;
}

// Full printed form of phi_KB, one formula per line.
inline std::string to_sexpr(const PhiKB &phi) {
  std::string out;
  for (const auto *part : {&phi.ground, &phi.universals})
    for (const auto &f : *part)
      out += "; " + f.origin + "\n" + to_sexpr(phi.vars, f) + "\n";
  for (const auto &w : phi.witnesses)
    out += "; witness\n" + to_sexpr(phi.vars, pos(mem1(w.var0, w.set))) + "\n";
  return out;
}

} // namespace dl4x
