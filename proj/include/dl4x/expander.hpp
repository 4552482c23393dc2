#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dl4x/lqs.hpp"
#include "dl4x/translator.hpp"

// Quantifier distribution and Herbrand grounding of phi_KB over its level-0
// variables.
namespace dl4x {

// One universal with a single-clause matrix; bound variables are 0..q-1.
struct Universal {
  int q = 0;
  Clause clause;
  std::string origin;
};

struct GroundingStats {
  std::size_t k = 0;       // |Var0| used as the grounding domain
  std::size_t m = 0;       // universals after distribution
  std::size_t r = 0;       // longest quantifier prefix
  std::size_t l = 0;       // most literals in a universal
  std::size_t clauses = 0; // final clause count after dedup
  std::size_t units = 0;   // ground conjuncts (unit clauses of the KB part)
  std::size_t universal_clauses = 0; // distinct clauses contributed by universals
  std::vector<std::size_t> instances; // pre-dedup instance count per universal
};

struct ExpandOptions {
  std::size_t budget_clauses = 10'000'000;
};

struct GroundPhi {
  std::vector<Clause> clauses; // canonical, deduplicated; an empty clause means unsat
  GroundingStats stats;
  std::vector<int> domain;
};

// (forall z)(A and B) becomes (forall z)A and (forall z)B; bound variables a
// clause does not mention are dropped and the rest renumbered.
inline std::vector<Universal> distribute_and_rename(const std::vector<Cnf> &universals) {
  std::vector<Universal> out;
  for (const auto &f : universals)
    for (const auto &c : f.clauses) {
      std::vector<int> remap(f.nbound, -1);
      int q = 0;
      auto visit = [&](int &x) {
        if (!is_bound(x))
          return;
        int &slot = remap[bound_index(x)];
        if (slot < 0)
          slot = q++;
        x = bound_var(slot);
      };
      Clause k = c;
      for (auto &l : k) {
        visit(l.atom.x);
        if (l.atom.kind != AtomKind::Mem1)
          visit(l.atom.y);
        if (l.atom.kind == AtomKind::Eq && l.atom.y < l.atom.x)
          std::swap(l.atom.x, l.atom.y);
      }
      out.push_back({q, std::move(k), f.origin});
    }
  return out;
}

// Sorts and dedups a clause; returns false if it is a tautology. Equalities
// between identical variables are evaluated away.
inline bool simplify_clause(Clause &c) {
  Clause out;
  out.reserve(c.size());
  for (auto l : c) {
    if (l.atom.kind == AtomKind::Eq) {
      if (l.atom.y < l.atom.x)
        std::swap(l.atom.x, l.atom.y);
      if (l.atom.x == l.atom.y) {
        if (l.positive)
          return false;
        continue;
      }
    }
    out.push_back(l);
  }
  // by atom, then sign, so complementary literals end up adjacent
  std::sort(out.begin(), out.end(), [](const Literal &a, const Literal &b) {
    return a.atom != b.atom ? a.atom < b.atom : a.positive < b.positive;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i].atom == out[i + 1].atom)
      return false;
  c = std::move(out);
  return true;
}

// Every instance of u over domain^q, in lexicographic order of the tuples.
// `emit` receives each instance before simplification.
template <class Emit> void expand(const Universal &u, const std::vector<int> &domain, Emit &&emit) {
  const std::size_t k = domain.size();
  std::vector<std::size_t> idx(u.q, 0);
  auto subst = [&](int x) { return is_bound(x) ? domain[idx[bound_index(x)]] : x; };
  if (k == 0 && u.q > 0)
    return;
  for (;;) {
    Clause c = u.clause;
    for (auto &l : c) {
      l.atom.x = subst(l.atom.x);
      if (l.atom.kind != AtomKind::Mem1)
        l.atom.y = subst(l.atom.y);
    }
    emit(std::move(c));
    int i = u.q - 1;
    while (i >= 0 && ++idx[i] == k)
      idx[i--] = 0;
    if (i < 0)
      break;
  }
}

inline std::vector<Clause> expand(const Universal &u, const std::vector<int> &domain) {
  std::set<Clause> out;
  expand(u, domain, [&](Clause c) {
    if (simplify_clause(c))
      out.insert(std::move(c));
  });
  return {out.begin(), out.end()};
}

inline std::size_t checked_pow(std::size_t k, std::size_t q, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < q; ++i) {
    if (k != 0 && r > cap / k)
      return cap + 1;
    r *= k;
  }
  return r;
}

// Phi_KB: the ground conjuncts and witness literals as unit clauses, plus the
// expansion of every universal.
inline GroundPhi build_phi(const PhiKB &phi, ExpandOptions opt = {}) {
  GroundPhi g;
  g.domain = phi.vars.domain();
  auto us = distribute_and_rename(phi.universals);
  auto &st = g.stats;
  st.k = g.domain.size();
  st.m = us.size();
  std::size_t planned = 0;
  for (const auto &u : us) {
    st.r = std::max<std::size_t>(st.r, u.q);
    st.l = std::max(st.l, u.clause.size());
    planned += checked_pow(st.k, u.q, opt.budget_clauses);
    if (planned > opt.budget_clauses)
      throw CapacityExceeded("grounding would produce more than " + std::to_string(opt.budget_clauses) +
                             " clauses (k=" + std::to_string(st.k) + ", m=" + std::to_string(st.m) + ")");
  }

  std::set<Clause> all;
  auto add_ground = [&](Clause c) {
    if (simplify_clause(c)) {
      ++st.units;
      all.insert(std::move(c));
    }
  };
  for (const auto &f : phi.ground)
    for (const auto &c : f.clauses)
      add_ground(c);
  for (const auto &w : phi.witnesses)
    add_ground({pos(mem1(w.var0, w.set))});

  std::set<Clause> from_universals;
  for (const auto &u : us) {
    std::size_t n = 0;
    expand(u, g.domain, [&](Clause c) {
      ++n;
      if (simplify_clause(c))
        from_universals.insert(std::move(c));
    });
    st.instances.push_back(n);
  }
  st.universal_clauses = from_universals.size();
  all.insert(from_universals.begin(), from_universals.end());
  g.clauses.assign(all.begin(), all.end());
  st.clauses = g.clauses.size();
  return g;
}

} // namespace dl4x
