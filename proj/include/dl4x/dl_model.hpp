#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dl4x/error.hpp"

// Abstract syntax of the description logic: terms of the four sorts,
// statements, knowledge bases, conjunctive queries and substitutions.
namespace dl4x {

enum class Sort : std::uint8_t { Concept, ARole, CRole, Data, Facet };

enum class Op : std::uint8_t {
  Name,
  Top,
  Bottom,
  Not,
  Union,
  Intersection,
  // concepts
  Nominal,
  NominalSet,
  Self,
  ValuedExists,
  DatatypedExists,
  Exists,
  Forall,
  AtLeast,
  AtMost,
  // abstract roles
  Universal,
  Inverse,
  DomainRestr,
  RangeRestr,
  Restr,
  Id,
  Product,
  // data
  Datatype,
  Enumeration,
  FacetExpr,
  Singleton,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term node. `key` is the canonical printed form prefixed by the
// sort, so structural equality is key equality.
struct Term {
  Sort sort;
  Op op;
  std::string name;               // Name, Nominal, Singleton, ValuedExists(a), DatatypedExists(e), Datatype/FacetExpr(d)
  std::vector<std::string> names; // NominalSet, Enumeration
  std::vector<TermPtr> args;
  int n = 0; // AtLeast / AtMost
  std::string key;
};

inline bool same(const TermPtr &a, const TermPtr &b) { return a->key == b->key; }

struct TermLess {
  bool operator()(const TermPtr &a, const TermPtr &b) const { return a->key < b->key; }
};

std::string print(const Term &t);
inline std::string print(const TermPtr &t) { return print(*t); }

namespace detail {
inline char sort_tag(Sort s) {
  switch (s) {
  case Sort::Concept: return 'C';
  case Sort::ARole: return 'R';
  case Sort::CRole: return 'P';
  case Sort::Data: return 't';
  case Sort::Facet: return 'f';
  }
  return '?';
}

inline TermPtr make(Sort s, Op op, std::string name = {}, std::vector<TermPtr> args = {},
                    std::vector<std::string> names = {}, int n = 0) {
  auto t = std::make_shared<Term>();
  t->sort = s;
  t->op = op;
  t->name = std::move(name);
  t->args = std::move(args);
  t->names = std::move(names);
  t->n = n;
  t->key = std::string(1, sort_tag(s)) + ":" + print(*t);
  return t;
}

inline std::vector<std::string> dedup(std::vector<std::string> v) {
  std::vector<std::string> out;
  for (auto &x : v)
    if (std::find(out.begin(), out.end(), x) == out.end())
      out.push_back(std::move(x));
  return out;
}
} // namespace detail

// Term constructors.
namespace tm {
inline TermPtr concept_name(std::string a) { return detail::make(Sort::Concept, Op::Name, std::move(a)); }
inline TermPtr top() { return detail::make(Sort::Concept, Op::Top); }
inline TermPtr bottom() { return detail::make(Sort::Concept, Op::Bottom); }
inline TermPtr negate(TermPtr x) {
  auto s = x->sort;
  return detail::make(s, Op::Not, {}, {std::move(x)});
}
inline TermPtr join(TermPtr x, TermPtr y) {
  auto s = x->sort;
  return detail::make(s, Op::Union, {}, {std::move(x), std::move(y)});
}
inline TermPtr meet(TermPtr x, TermPtr y) {
  auto s = x->sort;
  return detail::make(s, Op::Intersection, {}, {std::move(x), std::move(y)});
}
inline TermPtr nominal(std::string a) { return detail::make(Sort::Concept, Op::Nominal, std::move(a)); }
inline TermPtr nominal_set(std::vector<std::string> as) {
  if (as.empty())
    throw Error("nominal sets must be non-empty");
  as = detail::dedup(std::move(as));
  if (as.size() == 1)
    return nominal(as[0]);
  return detail::make(Sort::Concept, Op::NominalSet, {}, {}, std::move(as));
}
inline TermPtr self(TermPtr r) { return detail::make(Sort::Concept, Op::Self, {}, {std::move(r)}); }
inline TermPtr valued_exists(TermPtr r, std::string a) {
  return detail::make(Sort::Concept, Op::ValuedExists, std::move(a), {std::move(r)});
}
inline TermPtr datatyped_exists(TermPtr p, std::string e) {
  return detail::make(Sort::Concept, Op::DatatypedExists, std::move(e), {std::move(p)});
}
// some R {a} and some P {e} are the valued forms, whichever way they are built.
inline TermPtr exists(TermPtr r, TermPtr c) {
  if (r->sort == Sort::ARole && c->op == Op::Nominal)
    return valued_exists(std::move(r), c->name);
  if (r->sort == Sort::CRole && c->op == Op::Singleton)
    return datatyped_exists(std::move(r), c->name);
  return detail::make(Sort::Concept, Op::Exists, {}, {std::move(r), std::move(c)});
}
inline TermPtr forall(TermPtr r, TermPtr c) { return detail::make(Sort::Concept, Op::Forall, {}, {std::move(r), std::move(c)}); }
inline TermPtr at_least(int n, TermPtr r, TermPtr c) {
  return detail::make(Sort::Concept, Op::AtLeast, {}, {std::move(r), std::move(c)}, {}, n);
}
inline TermPtr at_most(int n, TermPtr r, TermPtr c) {
  return detail::make(Sort::Concept, Op::AtMost, {}, {std::move(r), std::move(c)}, {}, n);
}

inline TermPtr arole_name(std::string s) { return detail::make(Sort::ARole, Op::Name, std::move(s)); }
inline TermPtr universal() { return detail::make(Sort::ARole, Op::Universal); }
inline TermPtr inverse(TermPtr r) { return detail::make(Sort::ARole, Op::Inverse, {}, {std::move(r)}); }
inline TermPtr domain_restr(TermPtr r, TermPtr c) {
  auto s = r->sort;
  return detail::make(s, Op::DomainRestr, {}, {std::move(r), std::move(c)});
}
inline TermPtr range_restr(TermPtr r, TermPtr c) {
  auto s = r->sort;
  return detail::make(s, Op::RangeRestr, {}, {std::move(r), std::move(c)});
}
inline TermPtr restr(TermPtr r, TermPtr c, TermPtr d) {
  auto s = r->sort;
  return detail::make(s, Op::Restr, {}, {std::move(r), std::move(c), std::move(d)});
}
inline TermPtr id(TermPtr c) { return detail::make(Sort::ARole, Op::Id, {}, {std::move(c)}); }
inline TermPtr product(TermPtr c, TermPtr d) { return detail::make(Sort::ARole, Op::Product, {}, {std::move(c), std::move(d)}); }

inline TermPtr crole_name(std::string t) { return detail::make(Sort::CRole, Op::Name, std::move(t)); }

inline TermPtr datatype(std::string d) { return detail::make(Sort::Data, Op::Datatype, std::move(d)); }
inline TermPtr data_name(std::string n) { return detail::make(Sort::Data, Op::Name, std::move(n)); }
inline TermPtr singleton(std::string e) { return detail::make(Sort::Data, Op::Singleton, std::move(e)); }
inline TermPtr enumeration(std::vector<std::string> es) {
  if (es.empty())
    throw Error("enumerations must be non-empty");
  es = detail::dedup(std::move(es));
  if (es.size() == 1)
    return singleton(es[0]);
  return detail::make(Sort::Data, Op::Enumeration, {}, {}, std::move(es));
}
inline TermPtr facet_expr(std::string d, TermPtr psi) {
  return detail::make(Sort::Data, Op::FacetExpr, std::move(d), {std::move(psi)});
}

inline TermPtr facet(std::string f) { return detail::make(Sort::Facet, Op::Name, std::move(f)); }
inline TermPtr facet_top() { return detail::make(Sort::Facet, Op::Top); }
inline TermPtr facet_bottom() { return detail::make(Sort::Facet, Op::Bottom); }
} // namespace tm

inline std::string join_names(const std::vector<std::string> &v, const char *sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += sep;
    out += v[i];
  }
  return out;
}

// Prints in the surface syntax accepted by the parser. Binary terms are always
// parenthesized so the output re-parses to the same tree.
inline std::string print(const Term &t) {
  auto a = [&](std::size_t i) { return print(*t.args[i]); };
  switch (t.op) {
  case Op::Name: return t.name;
  case Op::Top: return "top";
  case Op::Bottom: return "bot";
  case Op::Not: return "not " + a(0);
  case Op::Union: return "(" + a(0) + " or " + a(1) + ")";
  case Op::Intersection: return "(" + a(0) + " and " + a(1) + ")";
  case Op::Nominal: return "{" + t.name + "}";
  case Op::NominalSet: return "{" + join_names(t.names) + "}";
  case Op::Self: return "self " + a(0);
  case Op::ValuedExists: return "some " + a(0) + " {" + t.name + "}";
  case Op::DatatypedExists: return "some " + a(0) + " {" + t.name + "}";
  case Op::Exists: return "some " + a(0) + " " + a(1);
  case Op::Forall: return "all " + a(0) + " " + a(1);
  case Op::AtLeast: return "atleast " + std::to_string(t.n) + " " + a(0) + " " + a(1);
  case Op::AtMost: return "atmost " + std::to_string(t.n) + " " + a(0) + " " + a(1);
  case Op::Universal: return "U";
  case Op::Inverse: return "inv " + a(0);
  case Op::DomainRestr: return "domrestr(" + a(0) + ", " + a(1) + ")";
  case Op::RangeRestr: return "ranrestr(" + a(0) + ", " + a(1) + ")";
  case Op::Restr: return "restr(" + a(0) + ", " + a(1) + ", " + a(2) + ")";
  case Op::Id: return "id(" + a(0) + ")";
  case Op::Product: return "prod(" + a(0) + ", " + a(1) + ")";
  case Op::Datatype: return t.name;
  case Op::Enumeration: return "{" + join_names(t.names) + "}";
  case Op::Singleton: return "{" + t.name + "}";
  case Op::FacetExpr: return t.name + "[" + a(0) + "]";
  }
  return "?";
}

enum class StmtKind : std::uint8_t {
  ConceptEquiv,
  ConceptSub,
  ARoleEquiv,
  ARoleSub,
  RoleChainSub, // terms = R1 ... Rn, R(n+1)
  CRoleEquiv,
  CRoleSub,
  DataEquiv,
  DataSub,
  Sym,
  Asym,
  Tra,
  Ref,
  Irref,
  Fun,
  Dis,
  CFun,
  CDis,
  // assertions; individuals/constants live in `objs`
  ConceptAssert,  // a : C
  RoleAssert,     // (a, b) : R
  NegRoleAssert,  // (a, b) : not R
  SameAs,         // a = b
  DifferentFrom,  // a != b
  DataAssert,     // e : t
  CRoleAssert,    // (a, e) : P
  NegCRoleAssert, // (a, e) : not P
};

struct Statement {
  StmtKind kind;
  std::vector<TermPtr> terms;
  std::vector<std::string> objs;
  bool normalized = false;
};

inline bool is_abox(StmtKind k) { return k >= StmtKind::ConceptAssert; }
inline bool is_rbox(StmtKind k) {
  switch (k) {
  case StmtKind::ARoleEquiv:
  case StmtKind::ARoleSub:
  case StmtKind::RoleChainSub:
  case StmtKind::CRoleEquiv:
  case StmtKind::CRoleSub:
  case StmtKind::Sym:
  case StmtKind::Asym:
  case StmtKind::Tra:
  case StmtKind::Ref:
  case StmtKind::Irref:
  case StmtKind::Fun:
  case StmtKind::Dis:
  case StmtKind::CFun:
  case StmtKind::CDis: return true;
  default: return false;
  }
}

inline std::string print(const Statement &s) {
  const auto &t = s.terms;
  auto p = [&](std::size_t i) { return print(*t[i]); };
  switch (s.kind) {
  case StmtKind::ConceptEquiv:
  case StmtKind::ARoleEquiv:
  case StmtKind::CRoleEquiv:
  case StmtKind::DataEquiv: return "axiom " + p(0) + " equiv " + p(1) + ".";
  case StmtKind::ConceptSub:
  case StmtKind::ARoleSub:
  case StmtKind::CRoleSub:
  case StmtKind::DataSub: return "axiom " + p(0) + " sub " + p(1) + ".";
  case StmtKind::RoleChainSub: {
    std::string out = "axiom";
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      out += " " + p(i);
    return out + " sub " + p(t.size() - 1) + ".";
  }
  case StmtKind::Sym: return "axiom Sym(" + p(0) + ").";
  case StmtKind::Asym: return "axiom Asym(" + p(0) + ").";
  case StmtKind::Tra: return "axiom Tra(" + p(0) + ").";
  case StmtKind::Ref: return "axiom Ref(" + p(0) + ").";
  case StmtKind::Irref: return "axiom Irref(" + p(0) + ").";
  case StmtKind::Fun:
  case StmtKind::CFun: return "axiom Fun(" + p(0) + ").";
  case StmtKind::Dis:
  case StmtKind::CDis: return "axiom Dis(" + p(0) + ", " + p(1) + ").";
  case StmtKind::ConceptAssert: return "assert " + s.objs[0] + " : " + p(0) + ".";
  case StmtKind::RoleAssert:
  case StmtKind::CRoleAssert: return "assert (" + s.objs[0] + ", " + s.objs[1] + ") : " + p(0) + ".";
  case StmtKind::NegRoleAssert:
  case StmtKind::NegCRoleAssert: return "assert (" + s.objs[0] + ", " + s.objs[1] + ") : not " + p(0) + ".";
  case StmtKind::SameAs: return "assert " + s.objs[0] + " = " + s.objs[1] + ".";
  case StmtKind::DifferentFrom: return "assert " + s.objs[0] + " != " + s.objs[1] + ".";
  case StmtKind::DataAssert: return "assert " + s.objs[0] + " : " + p(0) + ".";
  }
  return "?";
}

inline bool operator==(const Statement &a, const Statement &b) {
  if (a.kind != b.kind || a.objs != b.objs || a.terms.size() != b.terms.size())
    return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!same(a.terms[i], b.terms[i]))
      return false;
  return true;
}

enum class SymbolKind : std::uint8_t { Concept, ARole, CRole, Individual, Datatype, Constant };

struct DatatypeDecl {
  std::string name;
  std::vector<std::string> constants;
  std::vector<std::string> facets;
};

// Declared vocabulary. Name sets of different kinds are pairwise disjoint;
// facets are scoped to their datatype.
class Signature {
public:
  std::vector<std::string> concepts, aroles, croles, individuals;
  std::vector<DatatypeDecl> datatypes;

  void declare(SymbolKind kind, const std::string &name, const std::string &datatype = {}) {
    if (name == "U")
      throw Error("'U' is reserved for the universal role");
    if (auto it = kinds_.find(name); it != kinds_.end()) {
      if (it->second == kind)
        return;
      throw Error("name '" + name + "' declared with two different kinds");
    }
    kinds_.emplace(name, kind);
    switch (kind) {
    case SymbolKind::Concept: concepts.push_back(name); break;
    case SymbolKind::ARole: aroles.push_back(name); break;
    case SymbolKind::CRole: croles.push_back(name); break;
    case SymbolKind::Individual: individuals.push_back(name); break;
    case SymbolKind::Datatype: datatypes.push_back({name, {}, {}}); break;
    case SymbolKind::Constant:
      datatype_decl(datatype).constants.push_back(name);
      const_type_[name] = datatype;
      break;
    }
  }

  void declare_facet(const std::string &datatype, const std::string &facet) {
    auto &d = datatype_decl(datatype);
    if (std::find(d.facets.begin(), d.facets.end(), facet) == d.facets.end())
      d.facets.push_back(facet);
  }

  std::optional<SymbolKind> kind_of(const std::string &name) const {
    if (auto it = kinds_.find(name); it != kinds_.end())
      return it->second;
    return std::nullopt;
  }
  bool is(const std::string &name, SymbolKind k) const { return kind_of(name) == k; }

  const std::string &datatype_of(const std::string &constant) const {
    auto it = const_type_.find(constant);
    if (it == const_type_.end())
      throw UnknownName("unknown datatype constant '" + constant + "'");
    return it->second;
  }

  const DatatypeDecl *find_datatype(const std::string &d) const {
    for (const auto &x : datatypes)
      if (x.name == d)
        return &x;
    return nullptr;
  }
  bool has_facet(const std::string &d, const std::string &f) const {
    auto *x = find_datatype(d);
    return x && std::find(x->facets.begin(), x->facets.end(), f) != x->facets.end();
  }

  std::vector<std::string> constants() const {
    std::vector<std::string> out;
    for (const auto &d : datatypes)
      out.insert(out.end(), d.constants.begin(), d.constants.end());
    return out;
  }

private:
  DatatypeDecl &datatype_decl(const std::string &d) {
    for (auto &x : datatypes)
      if (x.name == d)
        return x;
    throw UnknownName("unknown datatype '" + d + "'");
  }

  std::unordered_map<std::string, SymbolKind> kinds_;
  std::unordered_map<std::string, std::string> const_type_;
};

struct KnowledgeBase {
  Signature sig;
  std::vector<Statement> rbox, tbox, abox;

  void add(Statement s) {
    if (is_abox(s.kind))
      abox.push_back(std::move(s));
    else if (is_rbox(s.kind))
      rbox.push_back(std::move(s));
    else
      tbox.push_back(std::move(s));
  }

  std::vector<const Statement *> statements() const {
    std::vector<const Statement *> out;
    for (const auto *box : {&rbox, &tbox, &abox})
      for (const auto &s : *box)
        out.push_back(&s);
    return out;
  }
  std::size_t size() const { return rbox.size() + tbox.size() + abox.size(); }
};

// Query argument: a `?`-variable or an individual / datatype constant.
struct QueryArg {
  bool is_var = false;
  std::string name;
  bool operator==(const QueryArg &) const = default;
};

enum class QueryAtomKind : std::uint8_t { Concept, ARole, CRole, Equal };

struct QueryLiteral {
  bool positive = true;
  QueryAtomKind kind = QueryAtomKind::Concept;
  TermPtr pred; // unset for Equal
  std::vector<QueryArg> args;
};

inline bool operator==(const QueryLiteral &a, const QueryLiteral &b) {
  if (a.positive != b.positive || a.kind != b.kind || a.args != b.args)
    return false;
  if (!a.pred || !b.pred)
    return !a.pred && !b.pred;
  return same(a.pred, b.pred);
}

struct Query {
  std::vector<QueryLiteral> literals;
  bool operator==(const Query &) const = default;
};

using DlSubstitution = std::map<std::string, std::string>;

inline std::string print_arg(const QueryArg &a) { return a.is_var ? "?" + a.name : a.name; }

inline std::string print(const QueryLiteral &l) {
  std::string body;
  if (l.kind == QueryAtomKind::Equal) {
    body = print_arg(l.args[0]) + " = " + print_arg(l.args[1]);
  } else {
    body = print(*l.pred) + "(";
    for (std::size_t i = 0; i < l.args.size(); ++i)
      body += (i ? ", " : "") + print_arg(l.args[i]);
    body += ")";
  }
  return l.positive ? body : "not " + body;
}

inline std::string print(const Query &q) {
  std::string out;
  for (std::size_t i = 0; i < q.literals.size(); ++i)
    out += (i ? " and " : "") + print(q.literals[i]);
  return out;
}

// Variables of q in first-occurrence order.
inline std::vector<std::string> query_vars(const Query &q) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto &l : q.literals)
    for (const auto &a : l.args)
      if (a.is_var && seen.insert(a.name).second)
        out.push_back(a.name);
  return out;
}

inline Query apply_dl_substitution(const Query &q, const DlSubstitution &sigma) {
  Query out = q;
  for (auto &l : out.literals)
    for (auto &a : l.args)
      if (a.is_var)
        if (auto it = sigma.find(a.name); it != sigma.end())
          a = QueryArg{false, it->second};
  return out;
}

inline std::string print(const DlSubstitution &s, const std::vector<std::string> &order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = s.find(order[i]);
    out += (i ? ", " : "") + order[i] + "=" + (it == s.end() ? std::string("?") : it->second);
  }
  return out;
}

} // namespace dl4x
