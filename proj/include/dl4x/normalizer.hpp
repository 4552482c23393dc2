#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dl4x/dl_model.hpp"

// Rewrites arbitrary statements into the fixed vocabulary of shapes the
// translator understands, naming complex subterms with fresh `__n#k` names.
namespace dl4x {

inline constexpr const char *kFreshPrefix = "__n#";

inline bool is_fresh_name(const std::string &n) { return n.rfind(kFreshPrefix, 0) == 0; }

inline bool atomic_concept(const TermPtr &t) {
  return t->sort == Sort::Concept &&
         (t->op == Op::Name || t->op == Op::Top || t->op == Op::Bottom || t->op == Op::NominalSet);
}
inline bool atomic_arole(const TermPtr &t) {
  return t->sort == Sort::ARole && (t->op == Op::Name || t->op == Op::Universal);
}
inline bool atomic_crole(const TermPtr &t) { return t->sort == Sort::CRole && t->op == Op::Name; }
inline bool atomic_data(const TermPtr &t) {
  return t->sort == Sort::Data &&
         (t->op == Op::Name || t->op == Op::Datatype || t->op == Op::Enumeration || t->op == Op::FacetExpr);
}
inline bool atomic_term(const TermPtr &t) {
  switch (t->sort) {
  case Sort::Concept: return atomic_concept(t);
  case Sort::ARole: return atomic_arole(t);
  case Sort::CRole: return atomic_crole(t);
  case Sort::Data: return atomic_data(t);
  case Sort::Facet: return false;
  }
  return false;
}

namespace detail {
inline bool atomic_role(const TermPtr &t) { return atomic_arole(t) || atomic_crole(t); }

// Filler of a restriction over role r: a concept for abstract roles, a data
// range for concrete ones.
inline bool atomic_filler(const TermPtr &r, const TermPtr &f) {
  return r->sort == Sort::ARole ? atomic_concept(f) : atomic_data(f);
}

inline bool restriction_shape(const TermPtr &t, std::initializer_list<Op> ops) {
  for (auto op : ops)
    if (t->op == op)
      return atomic_role(t->args[0]) && atomic_filler(t->args[0], t->args[1]);
  return false;
}
} // namespace detail

// True iff s has one of the normalized shapes (all arguments atomic).
inline bool is_normalized_shape(const Statement &s) {
  const auto &t = s.terms;
  auto bin = [](const TermPtr &x, bool (*atom)(const TermPtr &)) {
    return x->args.size() == 2 && atom(x->args[0]) && atom(x->args[1]);
  };
  switch (s.kind) {
  case StmtKind::ConceptEquiv: {
    if (!atomic_concept(t[0]))
      return false;
    const auto &x = t[1];
    switch (x->op) {
    case Op::Top: return true;
    case Op::Not: return atomic_concept(x->args[0]);
    case Op::Union: return bin(x, atomic_concept);
    case Op::Nominal: return true;
    case Op::ValuedExists: return atomic_arole(x->args[0]);
    case Op::DatatypedExists: return atomic_crole(x->args[0]);
    default: return false;
    }
  }
  case StmtKind::ConceptSub:
    if (atomic_concept(t[0]) && detail::restriction_shape(t[1], {Op::Forall, Op::AtMost}))
      return true;
    return atomic_concept(t[1]) && detail::restriction_shape(t[0], {Op::Exists, Op::AtLeast});
  case StmtKind::ARoleEquiv: {
    if (!atomic_arole(t[0]))
      return false;
    const auto &x = t[1];
    switch (x->op) {
    case Op::Universal: return true;
    case Op::Not:
    case Op::Inverse: return atomic_arole(x->args[0]);
    case Op::Union: return bin(x, atomic_arole);
    case Op::Id: return atomic_concept(x->args[0]);
    case Op::DomainRestr: return atomic_arole(x->args[0]) && atomic_concept(x->args[1]);
    case Op::Product: return bin(x, atomic_concept);
    default: return false;
    }
  }
  case StmtKind::RoleChainSub:
    if (t.size() < 2)
      return false;
    for (const auto &r : t)
      if (!atomic_arole(r))
        return false;
    return true;
  case StmtKind::Ref:
  case StmtKind::Irref:
  case StmtKind::Fun: return atomic_arole(t[0]);
  case StmtKind::Dis: return atomic_arole(t[0]) && atomic_arole(t[1]);
  case StmtKind::CRoleEquiv: {
    if (!atomic_crole(t[0]))
      return false;
    const auto &x = t[1];
    switch (x->op) {
    case Op::Name: return true;
    case Op::Not: return atomic_crole(x->args[0]);
    case Op::Union: return bin(x, atomic_crole);
    case Op::DomainRestr: return atomic_crole(x->args[0]) && atomic_concept(x->args[1]);
    case Op::RangeRestr: return atomic_crole(x->args[0]) && atomic_data(x->args[1]);
    case Op::Restr:
      return atomic_crole(x->args[0]) && atomic_concept(x->args[1]) && atomic_data(x->args[2]);
    default: return false;
    }
  }
  case StmtKind::CRoleSub:
  case StmtKind::CDis: return atomic_crole(t[0]) && atomic_crole(t[1]);
  case StmtKind::CFun: return atomic_crole(t[0]);
  case StmtKind::DataEquiv: {
    if (!atomic_data(t[0]))
      return false;
    const auto &x = t[1];
    if (atomic_data(x))
      return true;
    switch (x->op) {
    case Op::Not: return atomic_data(x->args[0]);
    case Op::Union:
    case Op::Intersection: return bin(x, atomic_data);
    case Op::Singleton: return true;
    default: return false;
    }
  }
  case StmtKind::ConceptAssert: return atomic_concept(t[0]);
  case StmtKind::RoleAssert:
  case StmtKind::NegRoleAssert: return atomic_arole(t[0]);
  case StmtKind::SameAs:
  case StmtKind::DifferentFrom: return true;
  case StmtKind::DataAssert: return atomic_data(t[0]);
  case StmtKind::CRoleAssert:
  case StmtKind::NegCRoleAssert: return atomic_crole(t[0]);
  default: return false;
  }
}

struct NormalizeOptions {
  int max_cardinality = 16;
};

struct NormalizedKb {
  KnowledgeBase kb;
  // fresh name -> the subterm it stands for
  std::map<std::string, TermPtr> definitions;
};

namespace detail {

enum class Pol { Pos, Neg, Both };
inline Pol flip(Pol p) { return p == Pol::Pos ? Pol::Neg : p == Pol::Neg ? Pol::Pos : Pol::Both; }

// Universe complements in the target are absolute, whereas the DL complements
// are relative to the abstract or the data domain. Every DL complement is
// therefore rewritten to cut away the other half of the universe.
class Normalizer {
public:
  Normalizer(const KnowledgeBase &in, NormalizeOptions opt) : in_(in), opt_(opt) {
    out_.sig = in.sig;
    for (const auto *s : in.statements())
      for (const auto &t : s->terms)
        scan_fresh(t);
  }

  NormalizedKb run() {
    for (const auto *s : in_.statements())
      statement(*s);
    return {std::move(out_), std::move(defs_)};
  }

private:
  const KnowledgeBase &in_;
  NormalizeOptions opt_;
  KnowledgeBase out_;
  std::map<std::string, TermPtr> defs_;
  std::unordered_map<std::string, TermPtr> memo_;
  int counter_ = 0;

  void scan_fresh(const TermPtr &t) {
    if (is_fresh_name(t->name)) {
      auto digits = t->name.substr(std::char_traits<char>::length(kFreshPrefix));
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; }))
        counter_ = std::max(counter_, std::stoi(digits));
    }
    for (const auto &a : t->args)
      scan_fresh(a);
  }

  void emit(StmtKind k, std::vector<TermPtr> terms, std::vector<std::string> objs = {}) {
    Statement s{k, std::move(terms), std::move(objs), true};
    if (!is_normalized_shape(s))
      throw Error("internal: normalizer produced a non-normalized statement: " + print(s));
    out_.add(std::move(s));
  }

  TermPtr fresh(Sort s, const TermPtr &defines) {
    std::string n = kFreshPrefix + std::to_string(++counter_);
    defs_[n] = defines;
    switch (s) {
    case Sort::Concept: return tm::concept_name(n);
    case Sort::ARole: return tm::arole_name(n);
    case Sort::CRole: return tm::crole_name(n);
    default: return tm::data_name(n);
    }
  }

  static std::string memo_key(const TermPtr &t, const char *tag) { return std::string(tag) + "|" + t->key; }

  [[noreturn]] static void unsupported(const char *what, const TermPtr &t) {
    throw NormalizationUnsupported(what, print(*t));
  }

  void check_n(const TermPtr &t) {
    if (t->n > opt_.max_cardinality)
      throw NormalizationUnsupported("cardinality above the configured cap of " +
                                         std::to_string(opt_.max_cardinality),
                                     print(*t));
  }

  // --- shared helper names -------------------------------------------------

  // N == not x, complement over the whole universe.
  TermPtr raw_not(const TermPtr &x) {
    auto key = memo_key(x, "raw-not");
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto n = fresh(x->sort, tm::negate(x));
    StmtKind k = x->sort == Sort::Concept ? StmtKind::ConceptEquiv
                 : x->sort == Sort::ARole ? StmtKind::ARoleEquiv
                 : x->sort == Sort::CRole ? StmtKind::CRoleEquiv
                                          : StmtKind::DataEquiv;
    emit(k, {n, tm::negate(x)});
    return memo_[key] = n;
  }

  // the data half of the universe, as a concept
  TermPtr concept_data() { return raw_not(tm::top()); }

  // the union of all datatypes; adds one if the KB declares none
  TermPtr data_universe() {
    if (out_.sig.datatypes.empty()) {
      std::string n = kFreshPrefix + std::to_string(++counter_);
      out_.sig.declare(SymbolKind::Datatype, n);
    }
    const auto &ds = out_.sig.datatypes;
    TermPtr acc = tm::datatype(ds[0].name);
    for (std::size_t i = 1; i < ds.size(); ++i)
      acc = data(tm::join(acc, tm::datatype(ds[i].name)));
    return acc;
  }

  // --- concepts --------------------------------------------------------------

  TermPtr concept_of(const TermPtr &c, Pol p) {
    if (atomic_concept(c))
      return c;
    const char *tags[] = {"pos", "neg", "both"};
    auto key = memo_key(c, tags[static_cast<int>(p)]);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    if (p != Pol::Both)
      if (auto it = memo_.find(memo_key(c, "both")); it != memo_.end())
        return it->second;
    auto n = fresh(Sort::Concept, c);
    memo_[key] = n;
    define_concept(n, c, p);
    return n;
  }

  // Emits statements tying the atomic concept n to c: n == c for boolean
  // constructs, n >= c (p = Neg) or n <= c (p = Pos) for restrictions.
  void define_concept(const TermPtr &n, const TermPtr &c, Pol p) {
    switch (c->op) {
    case Op::Name:
    case Op::Bottom:
    case Op::NominalSet: emit(StmtKind::ConceptEquiv, {n, tm::join(c, c)}); return;
    case Op::Top: emit(StmtKind::ConceptEquiv, {n, c}); return;
    case Op::Not: {
      auto x = concept_of(c->args[0], flip(p));
      auto m = concept_of(tm::join(x, concept_data()), Pol::Both);
      emit(StmtKind::ConceptEquiv, {n, tm::negate(m)});
      return;
    }
    case Op::Union:
      emit(StmtKind::ConceptEquiv, {n, tm::join(concept_of(c->args[0], p), concept_of(c->args[1], p))});
      return;
    case Op::Intersection: {
      auto n1 = raw_not(concept_of(c->args[0], p));
      auto n2 = raw_not(concept_of(c->args[1], p));
      auto n3 = concept_of(tm::join(n1, n2), Pol::Both);
      emit(StmtKind::ConceptEquiv, {n, tm::negate(n3)});
      return;
    }
    case Op::Nominal: emit(StmtKind::ConceptEquiv, {n, c}); return;
    case Op::Self: {
      // n = {x | (x,x) in R}:  id(n) <= R  and  R & id(top) <= id(n)
      auto r = arole_of(c->args[0]);
      auto idn = arole_of(tm::id(n));
      auto diag = arole_of(tm::id(tm::top()));
      auto m = arole_of(tm::meet(r, diag));
      emit(StmtKind::RoleChainSub, {idn, r});
      emit(StmtKind::RoleChainSub, {m, idn});
      return;
    }
    case Op::ValuedExists: emit(StmtKind::ConceptEquiv, {n, tm::valued_exists(arole_of(c->args[0]), c->name)}); return;
    case Op::DatatypedExists:
      emit(StmtKind::ConceptEquiv, {n, tm::datatyped_exists(crole_of(c->args[0]), c->name)});
      return;
    case Op::Exists:
    case Op::AtLeast: {
      if (p != Pol::Neg)
        unsupported(c->op == Op::Exists ? "existential restriction outside the left-hand side of an inclusion"
                                        : "minimum cardinality outside the left-hand side of an inclusion",
                    c);
      emit(StmtKind::ConceptSub, {restriction(c, Pol::Neg), n});
      return;
    }
    case Op::Forall:
    case Op::AtMost: {
      if (p != Pol::Pos)
        unsupported(c->op == Op::Forall ? "universal restriction outside the right-hand side of an inclusion"
                                        : "maximum cardinality outside the right-hand side of an inclusion",
                    c);
      emit(StmtKind::ConceptSub, {n, restriction(c, c->op == Op::Forall ? Pol::Pos : Pol::Neg)});
      return;
    }
    default: unsupported("unexpected concept construct", c);
    }
  }

  // Rebuilds a restriction with atomic role and filler.
  TermPtr restriction(const TermPtr &c, Pol filler_pol) {
    check_n(c);
    const auto &r = c->args[0];
    bool concrete = r->sort == Sort::CRole;
    auto role = concrete ? crole_of(r) : arole_of(r);
    auto filler = concrete ? data(c->args[1]) : concept_of(c->args[1], filler_pol);
    switch (c->op) {
    case Op::Exists: return tm::exists(role, filler);
    case Op::Forall: return tm::forall(role, filler);
    case Op::AtLeast: return tm::at_least(c->n, role, filler);
    default: return tm::at_most(c->n, role, filler);
    }
  }

  // --- abstract roles --------------------------------------------------------

  TermPtr arole_of(const TermPtr &r) {
    if (atomic_arole(r))
      return r;
    auto key = memo_key(r, "both");
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto n = fresh(Sort::ARole, r);
    memo_[key] = n;
    define_arole(n, r);
    return n;
  }

  void define_arole(const TermPtr &n, const TermPtr &r) {
    switch (r->op) {
    case Op::Name: emit(StmtKind::ARoleEquiv, {n, tm::join(r, r)}); return;
    case Op::Universal: emit(StmtKind::ARoleEquiv, {n, r}); return;
    case Op::Not: {
      auto x = arole_of(r->args[0]);
      auto m = arole_of(tm::join(x, raw_not(tm::universal())));
      emit(StmtKind::ARoleEquiv, {n, tm::negate(m)});
      return;
    }
    case Op::Union: emit(StmtKind::ARoleEquiv, {n, tm::join(arole_of(r->args[0]), arole_of(r->args[1]))}); return;
    case Op::Intersection: {
      auto n1 = raw_not(arole_of(r->args[0]));
      auto n2 = raw_not(arole_of(r->args[1]));
      emit(StmtKind::ARoleEquiv, {n, tm::negate(arole_of(tm::join(n1, n2)))});
      return;
    }
    case Op::Inverse: emit(StmtKind::ARoleEquiv, {n, tm::inverse(arole_of(r->args[0]))}); return;
    case Op::Id: emit(StmtKind::ARoleEquiv, {n, tm::id(concept_of(r->args[0], Pol::Both))}); return;
    case Op::Product:
      emit(StmtKind::ARoleEquiv,
           {n, tm::product(concept_of(r->args[0], Pol::Both), concept_of(r->args[1], Pol::Both))});
      return;
    case Op::DomainRestr:
      emit(StmtKind::ARoleEquiv, {n, tm::domain_restr(arole_of(r->args[0]), concept_of(r->args[1], Pol::Both))});
      return;
    case Op::RangeRestr: {
      // R|C = (inv(R) restricted on its domain to C) inverted
      auto inv = arole_of(tm::inverse(arole_of(r->args[0])));
      auto dom = arole_of(tm::domain_restr(inv, concept_of(r->args[1], Pol::Both)));
      emit(StmtKind::ARoleEquiv, {n, tm::inverse(dom)});
      return;
    }
    case Op::Restr: {
      auto dom = arole_of(tm::domain_restr(r->args[0], r->args[1]));
      define_arole(n, tm::range_restr(dom, r->args[2]));
      return;
    }
    default: unsupported("unexpected abstract role construct", r);
    }
  }

  // --- concrete roles ------------------------------------------------------------

  TermPtr crole_of(const TermPtr &r) {
    if (atomic_crole(r))
      return r;
    auto key = memo_key(r, "both");
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto n = fresh(Sort::CRole, r);
    memo_[key] = n;
    define_crole(n, r);
    return n;
  }

  void define_crole(const TermPtr &n, const TermPtr &r) {
    switch (r->op) {
    case Op::Name: emit(StmtKind::CRoleEquiv, {n, r}); return;
    case Op::Not: {
      auto x = raw_not(crole_of(r->args[0]));
      emit(StmtKind::CRoleEquiv, {n, tm::restr(x, tm::top(), data_universe())});
      return;
    }
    case Op::Union: emit(StmtKind::CRoleEquiv, {n, tm::join(crole_of(r->args[0]), crole_of(r->args[1]))}); return;
    case Op::Intersection: {
      auto n1 = raw_not(crole_of(r->args[0]));
      auto n2 = raw_not(crole_of(r->args[1]));
      emit(StmtKind::CRoleEquiv, {n, tm::negate(crole_of(tm::join(n1, n2)))});
      return;
    }
    case Op::DomainRestr:
      emit(StmtKind::CRoleEquiv, {n, tm::domain_restr(crole_of(r->args[0]), concept_of(r->args[1], Pol::Both))});
      return;
    case Op::RangeRestr:
      emit(StmtKind::CRoleEquiv, {n, tm::range_restr(crole_of(r->args[0]), data(r->args[1]))});
      return;
    case Op::Restr:
      emit(StmtKind::CRoleEquiv,
           {n, tm::restr(crole_of(r->args[0]), concept_of(r->args[1], Pol::Both), data(r->args[2]))});
      return;
    default: unsupported("unexpected concrete role construct", r);
    }
  }

  // --- data ranges ------------------------------------------------------------------

  TermPtr data(const TermPtr &t) {
    if (atomic_data(t))
      return t;
    auto key = memo_key(t, "both");
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto n = fresh(Sort::Data, t);
    memo_[key] = n;
    define_data(n, t);
    return n;
  }

  void define_data(const TermPtr &n, const TermPtr &t) {
    switch (t->op) {
    case Op::Name:
    case Op::Datatype:
    case Op::Enumeration:
    case Op::FacetExpr: emit(StmtKind::DataEquiv, {n, t}); return;
    case Op::Singleton: emit(StmtKind::DataEquiv, {n, t}); return;
    case Op::Not: {
      auto x = raw_not(data(t->args[0]));
      emit(StmtKind::DataEquiv, {n, tm::meet(x, data_universe())});
      return;
    }
    case Op::Union: emit(StmtKind::DataEquiv, {n, tm::join(data(t->args[0]), data(t->args[1]))}); return;
    case Op::Intersection: emit(StmtKind::DataEquiv, {n, tm::meet(data(t->args[0]), data(t->args[1]))}); return;
    default: unsupported("unexpected data range construct", t);
    }
  }

  // --- statements ------------------------------------------------------------------

  static bool complement_free(const Statement &s) {
    for (const auto &t : s.terms)
      if (t->op == Op::Not)
        return false;
    return true;
  }

  void statement(const Statement &s) {
    if (s.normalized) {
      out_.add(s);
      return;
    }
    // a user statement already in a target shape is kept, unless its meaning
    // depends on a complement. Ref is also rewritten: its translation ranges
    // over data values as well.
    if (s.kind != StmtKind::Ref && is_normalized_shape(s) && complement_free(s)) {
      for (const auto &t : s.terms)
        if (t->op == Op::AtLeast || t->op == Op::AtMost)
          check_n(t);
      Statement c = s;
      c.normalized = true;
      out_.add(std::move(c));
      return;
    }
    const auto &t = s.terms;
    switch (s.kind) {
    case StmtKind::ConceptEquiv:
      if (atomic_concept(t[0]))
        define_concept(t[0], t[1], Pol::Both);
      else if (atomic_concept(t[1]))
        define_concept(t[1], t[0], Pol::Both);
      else
        define_concept(concept_of(t[0], Pol::Both), t[1], Pol::Both);
      return;
    case StmtKind::ConceptSub: concept_sub(t[0], t[1]); return;
    case StmtKind::ARoleEquiv:
      if (atomic_arole(t[0]))
        define_arole(t[0], t[1]);
      else if (atomic_arole(t[1]))
        define_arole(t[1], t[0]);
      else
        define_arole(arole_of(t[0]), t[1]);
      return;
    case StmtKind::ARoleSub: emit(StmtKind::RoleChainSub, {arole_of(t[0]), arole_of(t[1])}); return;
    case StmtKind::RoleChainSub: {
      std::vector<TermPtr> rs;
      for (const auto &r : t)
        rs.push_back(arole_of(r));
      emit(StmtKind::RoleChainSub, rs);
      return;
    }
    case StmtKind::Sym: {
      auto r = arole_of(t[0]);
      emit(StmtKind::RoleChainSub, {arole_of(tm::inverse(r)), r});
      return;
    }
    case StmtKind::Asym: {
      auto r = arole_of(t[0]);
      emit(StmtKind::Dis, {r, arole_of(tm::inverse(r))});
      return;
    }
    case StmtKind::Tra: {
      auto r = arole_of(t[0]);
      emit(StmtKind::RoleChainSub, {r, r, r});
      return;
    }
    case StmtKind::Ref: {
      // reflexivity over the abstract domain only
      auto r = arole_of(t[0]);
      emit(StmtKind::RoleChainSub, {arole_of(tm::id(tm::top())), r});
      return;
    }
    case StmtKind::Irref:
    case StmtKind::Fun: emit(s.kind, {arole_of(t[0])}); return;
    case StmtKind::Dis: emit(s.kind, {arole_of(t[0]), arole_of(t[1])}); return;
    case StmtKind::CRoleEquiv:
      if (atomic_crole(t[0]))
        define_crole(t[0], t[1]);
      else if (atomic_crole(t[1]))
        define_crole(t[1], t[0]);
      else
        define_crole(crole_of(t[0]), t[1]);
      return;
    case StmtKind::CRoleSub:
    case StmtKind::CDis: emit(s.kind, {crole_of(t[0]), crole_of(t[1])}); return;
    case StmtKind::CFun: emit(s.kind, {crole_of(t[0])}); return;
    case StmtKind::DataEquiv:
      if (atomic_data(t[0]))
        define_data(t[0], t[1]);
      else if (atomic_data(t[1]))
        define_data(t[1], t[0]);
      else
        define_data(data(t[0]), t[1]);
      return;
    case StmtKind::DataSub: {
      // t1 <= t2  iff  t1 == t1 and t2
      auto a = data(t[0]);
      auto b = data(t[1]);
      emit(StmtKind::DataEquiv, {a, data(tm::meet(a, b))});
      return;
    }
    case StmtKind::ConceptAssert: emit(s.kind, {concept_of(t[0], Pol::Pos)}, s.objs); return;
    case StmtKind::RoleAssert:
    case StmtKind::NegRoleAssert: emit(s.kind, {arole_of(t[0])}, s.objs); return;
    case StmtKind::DataAssert: emit(s.kind, {data(t[0])}, s.objs); return;
    case StmtKind::CRoleAssert:
    case StmtKind::NegCRoleAssert: emit(s.kind, {crole_of(t[0])}, s.objs); return;
    case StmtKind::SameAs:
    case StmtKind::DifferentFrom: emit(s.kind, {}, s.objs); return;
    }
  }

  void concept_sub(const TermPtr &c, const TermPtr &d) {
    if (d->op == Op::Forall || d->op == Op::AtMost) {
      auto lhs = concept_of(c, Pol::Neg);
      emit(StmtKind::ConceptSub, {lhs, restriction(d, d->op == Op::Forall ? Pol::Pos : Pol::Neg)});
      return;
    }
    if (c->op == Op::Exists || c->op == Op::AtLeast) {
      auto rhs = concept_of(d, Pol::Pos);
      emit(StmtKind::ConceptSub, {restriction(c, Pol::Neg), rhs});
      return;
    }
    // C <= D  iff  (not C) or D covers the whole universe
    auto lhs = concept_of(c, Pol::Neg);
    auto rhs = concept_of(d, Pol::Pos);
    auto n1 = raw_not(lhs);
    auto n2 = fresh(Sort::Concept, tm::join(tm::negate(lhs), rhs));
    emit(StmtKind::ConceptEquiv, {n2, tm::negate(tm::bottom())});
    emit(StmtKind::ConceptEquiv, {n2, tm::join(n1, rhs)});
  }
};

} // namespace detail

inline NormalizedKb normalize_kb(const KnowledgeBase &kb, NormalizeOptions opt = {}) {
  return detail::Normalizer(kb, opt).run();
}

} // namespace dl4x
