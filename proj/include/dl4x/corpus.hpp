#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dl4x/dl_model.hpp"

// Seeded generator of small well-formed knowledge bases and queries, kept
// inside the fragment the normalizer accepts.
namespace dl4x {

struct CorpusOptions {
  int max_individuals = 3;
  int max_concepts = 3;
  int max_roles = 2;
  int max_datatypes = 1;
  int max_n = 2;
  int min_statements = 1;
  int max_statements = 4;
  int max_depth = 2;
  int max_query_vars = 2;
  int max_query_literals = 3;
  bool data = true; // concrete roles and datatypes
};

class CorpusGenerator {
public:
  explicit CorpusGenerator(std::uint64_t seed, CorpusOptions opt = {}) : rng_(seed), opt_(opt) {}

  KnowledgeBase kb() {
    kb_ = KnowledgeBase{};
    auto &sig = kb_.sig;
    static const char *inds[] = {"a", "b", "c"}, *cons[] = {"A", "B", "C"}, *roles[] = {"R", "S"};
    for (int i = 0, n = pick(0, opt_.max_individuals); i < n; ++i)
      sig.declare(SymbolKind::Individual, inds[i]);
    for (int i = 0, n = pick(1, opt_.max_concepts); i < n; ++i)
      sig.declare(SymbolKind::Concept, cons[i]);
    for (int i = 0, n = pick(0, opt_.max_roles); i < n; ++i)
      sig.declare(SymbolKind::ARole, roles[i]);
    if (opt_.data && opt_.max_datatypes > 0 && chance(0.4)) {
      sig.declare(SymbolKind::Datatype, "d");
      for (int i = 0, n = pick(0, 2); i < n; ++i)
        sig.declare(SymbolKind::Constant, "e" + std::to_string(i + 1), "d");
      if (chance(0.4))
        sig.declare_facet("d", "f");
      sig.declare(SymbolKind::CRole, "T");
    }
    for (int i = 0, n = pick(opt_.min_statements, opt_.max_statements); i < n; ++i)
      kb_.add(statement());
    return kb_;
  }

  Query query(const KnowledgeBase &kb) {
    kb_ = kb;
    Query q;
    const int nvars = pick(0, opt_.max_query_vars);
    static const char *vars[] = {"x", "y"};
    auto arg = [&](bool data) -> QueryArg {
      const auto &pool = data ? constants() : kb_.sig.individuals;
      if (nvars > 0 && (pool.empty() || chance(0.7)))
        return {true, vars[pick(0, nvars - 1)]};
      if (pool.empty())
        return {true, "x"};
      return {false, pool[pick(0, static_cast<int>(pool.size()) - 1)]};
    };
    for (int i = 0, n = pick(1, opt_.max_query_literals); i < n; ++i) {
      QueryLiteral l;
      l.positive = !chance(0.2);
      int k = pick(0, 9);
      if (k < 5 || (kb_.sig.aroles.empty() && kb_.sig.croles.empty())) {
        l.kind = QueryAtomKind::Concept;
        l.pred = tm::concept_name(one(kb_.sig.concepts));
        l.args = {arg(false)};
      } else if (k < 8 && !kb_.sig.aroles.empty()) {
        l.kind = QueryAtomKind::ARole;
        l.pred = tm::arole_name(one(kb_.sig.aroles));
        l.args = {arg(false), arg(false)};
      } else if (!kb_.sig.croles.empty() && !constants().empty()) {
        l.kind = QueryAtomKind::CRole;
        l.pred = tm::crole_name(one(kb_.sig.croles));
        l.args = {arg(false), arg(true)};
      } else {
        l.kind = QueryAtomKind::Equal;
        l.args = {arg(false), arg(false)};
      }
      q.literals.push_back(std::move(l));
    }
    // keep query variables within what the caller asked for
    if (nvars == 0)
      for (auto &l : q.literals)
        for (auto &a : l.args)
          if (a.is_var)
            a = kb_.sig.individuals.empty() ? QueryArg{true, "x"} : QueryArg{false, kb_.sig.individuals[0]};
    return q;
  }

  std::mt19937_64 &rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  CorpusOptions opt_;
  KnowledgeBase kb_;

  enum class Pol { Pos, Neg, Both };

  int pick(int lo, int hi) { return hi <= lo ? lo : std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  const std::string &one(const std::vector<std::string> &v) { return v[pick(0, static_cast<int>(v.size()) - 1)]; }
  std::vector<std::string> constants() const { return kb_.sig.constants(); }

  bool has_roles() const { return !kb_.sig.aroles.empty(); }
  bool has_data() const { return !kb_.sig.croles.empty(); }

  TermPtr role(int depth) {
    if (depth <= 0 || chance(0.6))
      return tm::arole_name(one(kb_.sig.aroles));
    switch (pick(0, 5)) {
    case 0: return tm::inverse(role(depth - 1));
    case 1: return tm::meet(role(depth - 1), role(depth - 1));
    case 2: return tm::join(role(depth - 1), role(depth - 1));
    case 3: return tm::domain_restr(role(depth - 1), concept_expr(depth - 1, Pol::Both));
    case 4: return tm::product(concept_expr(depth - 1, Pol::Both), concept_expr(depth - 1, Pol::Both));
    default: return tm::id(concept_expr(depth - 1, Pol::Both));
    }
  }

  TermPtr datarange() {
    const auto cs = constants();
    const bool facets = !kb_.sig.datatypes.empty() && !kb_.sig.datatypes[0].facets.empty();
    switch (pick(0, 4)) {
    case 0:
      if (!cs.empty())
        return tm::singleton(one(cs));
      break;
    case 1:
      if (facets)
        return tm::facet_expr("d", chance(0.5) ? tm::facet("f") : tm::negate(tm::facet("f")));
      break;
    case 2:
      if (cs.size() > 1)
        return tm::enumeration(cs);
      break;
    default: break;
    }
    return tm::datatype("d");
  }

  TermPtr leaf() {
    const auto &inds = kb_.sig.individuals;
    switch (pick(0, 9)) {
    case 0: return chance(0.5) ? tm::top() : tm::bottom();
    case 1:
      if (!inds.empty())
        return chance(0.7) || inds.size() < 2 ? tm::nominal(one(inds)) : tm::nominal_set({inds[0], inds[1]});
      break;
    case 2:
      if (has_roles() && !inds.empty())
        return tm::valued_exists(tm::arole_name(one(kb_.sig.aroles)), one(inds));
      break;
    case 3:
      if (has_roles())
        return tm::self(tm::arole_name(one(kb_.sig.aroles)));
      break;
    case 4:
      if (has_data() && !constants().empty())
        return tm::datatyped_exists(tm::crole_name("T"), one(constants()));
      break;
    default: break;
    }
    return tm::concept_name(one(kb_.sig.concepts));
  }

  TermPtr concept_expr(int depth, Pol p) {
    if (depth <= 0 || chance(0.35))
      return leaf();
    const int k = pick(0, 9);
    if (k < 2)
      return tm::negate(concept_expr(depth - 1, p == Pol::Pos ? Pol::Neg : p == Pol::Neg ? Pol::Pos : Pol::Both));
    if (k < 4)
      return tm::meet(concept_expr(depth - 1, p), concept_expr(depth - 1, p));
    if (k < 6)
      return tm::join(concept_expr(depth - 1, p), concept_expr(depth - 1, p));
    if (p == Pol::Both || (!has_roles() && !has_data()))
      return leaf();
    const bool concrete = has_data() && (!has_roles() || chance(0.3));
    auto r = concrete ? tm::crole_name("T") : role(depth - 1);
    auto filler = [&](Pol fp) { return concrete ? datarange() : concept_expr(depth - 1, fp); };
    const int n = pick(1, opt_.max_n);
    if (p == Pol::Neg)
      return k < 8 ? tm::exists(r, filler(Pol::Neg)) : tm::at_least(n, r, filler(Pol::Neg));
    return k < 8 ? tm::forall(r, filler(Pol::Pos)) : tm::at_most(n, r, filler(Pol::Neg));
  }

  Statement statement() {
    const auto &sig = kb_.sig;
    const auto &inds = sig.individuals;
    const int d = opt_.max_depth;
    for (;;) {
      const int k = pick(0, 19);
      if (k < 5) {
        // GCI
        auto lhs = concept_expr(d, Pol::Neg);
        auto rhs = concept_expr(d, Pol::Pos);
        // restrictions only at the top of their side
        if (chance(0.3) && (has_roles() || has_data())) {
          bool concrete = has_data() && (!has_roles() || chance(0.3));
          auto r = concrete ? tm::crole_name("T") : tm::arole_name(one(sig.aroles));
          auto f = concrete ? datarange() : concept_expr(1, Pol::Both);
          switch (pick(0, 3)) {
          case 0: lhs = tm::exists(r, f); break;
          case 1: lhs = tm::at_least(pick(1, opt_.max_n), r, f); break;
          case 2: rhs = tm::forall(r, f); break;
          default: rhs = tm::at_most(pick(1, opt_.max_n), r, f); break;
          }
        }
        return {StmtKind::ConceptSub, {lhs, rhs}, {}};
      }
      if (k < 7)
        return {StmtKind::ConceptEquiv, {tm::concept_name(one(sig.concepts)), concept_expr(d, Pol::Both)}, {}};
      if (k < 11 && has_roles()) {
        auto r = tm::arole_name(one(sig.aroles));
        switch (pick(0, 10)) {
        case 0: return {StmtKind::Sym, {r}, {}};
        case 1: return {StmtKind::Asym, {r}, {}};
        case 2: return {StmtKind::Tra, {r}, {}};
        case 3: return {StmtKind::Ref, {r}, {}};
        case 4: return {StmtKind::Irref, {r}, {}};
        case 5: return {StmtKind::Fun, {r}, {}};
        case 6: return {StmtKind::Dis, {r, role(1)}, {}};
        case 7: return {StmtKind::ARoleSub, {role(1), r}, {}};
        case 8: return {StmtKind::RoleChainSub, {role(0), role(0), r}, {}};
        case 9: return {StmtKind::ARoleEquiv, {r, role(1)}, {}};
        default: return {StmtKind::ARoleEquiv, {r, tm::product(concept_expr(1, Pol::Both), concept_expr(1, Pol::Both))}, {}};
        }
      }
      if (k < 13 && has_data()) {
        auto t = tm::crole_name("T");
        switch (pick(0, 3)) {
        case 0: return {StmtKind::CFun, {t}, {}};
        case 1: return {StmtKind::ConceptSub, {concept_expr(1, Pol::Neg), tm::forall(t, datarange())}, {}};
        case 2:
          if (!constants().empty())
            return {StmtKind::DataAssert, {datarange()}, {one(constants())}};
          break;
        default: return {StmtKind::DataSub, {datarange(), datarange()}, {}};
        }
        continue;
      }
      if (inds.empty())
        continue;
      const auto &a = one(inds), &b = one(inds);
      switch (pick(0, 7)) {
      case 0:
      case 1:
      case 2: return {StmtKind::ConceptAssert, {concept_expr(d, Pol::Pos)}, {a}};
      case 3:
        if (has_roles())
          return {StmtKind::RoleAssert, {role(1)}, {a, b}};
        break;
      case 4:
        if (has_roles())
          return {StmtKind::NegRoleAssert, {tm::arole_name(one(sig.aroles))}, {a, b}};
        break;
      case 5:
        if (a != b)
          return {chance(0.5) ? StmtKind::SameAs : StmtKind::DifferentFrom, {}, {a, b}};
        break;
      case 6:
        if (has_data() && !constants().empty())
          return {chance(0.7) ? StmtKind::CRoleAssert : StmtKind::NegCRoleAssert, {t_role()}, {a, one(constants())}};
        break;
      default: break;
      }
    }
  }

  TermPtr t_role() { return tm::crole_name("T"); }
};

} // namespace dl4x
