#include <gtest/gtest.h>

#include "dl4x/corpus.hpp"
#include "dl4x/oracle.hpp"
#include "dl4x/pipeline.hpp"

using namespace dl4x;

namespace {

struct Fixture {
  VarTable vt;
  int a, b, c, A, B, I, d;
  Fixture() {
    a = vt.var0(Var0Kind::Individual, "a");
    b = vt.var0(Var0Kind::Individual, "b");
    c = vt.var0(Var0Kind::Individual, "c");
    A = vt.var1(tm::concept_name("A"));
    B = vt.var1(tm::concept_name("B"));
    I = vt.individuals();
    d = vt.var1(tm::datatype("d"));
  }
};

int z(int i) { return bound_var(i); }

} // namespace

TEST(Distribute, SplitsConjunctions) {
  Fixture f;
  Cnf eq{1, {{neg(mem1(z(0), f.A)), pos(mem1(z(0), f.B))}, {neg(mem1(z(0), f.B)), pos(mem1(z(0), f.A))}}};
  auto us = distribute_and_rename({eq});
  ASSERT_EQ(us.size(), 2u);
  EXPECT_EQ(us[0].q, 1);
  EXPECT_EQ(us[1].q, 1);
}

TEST(Distribute, SingleClauseUnchanged) {
  Fixture f;
  Clause k{neg(mem3(z(0), z(1), 7)), pos(mem1(z(1), f.A))};
  auto us = distribute_and_rename({Cnf{2, {k}}});
  ASSERT_EQ(us.size(), 1u);
  EXPECT_EQ(us[0].q, 2);
  EXPECT_EQ(us[0].clause, k);
}

TEST(Distribute, DropsUnusedBoundVariables) {
  Fixture f;
  // z0 is unused: the clause only mentions z1, which becomes the sole variable
  auto us = distribute_and_rename({Cnf{2, {{neg(mem1(z(1), f.A)), pos(mem1(z(1), f.I))}}}});
  ASSERT_EQ(us.size(), 1u);
  EXPECT_EQ(us[0].q, 1);
  EXPECT_EQ(us[0].clause, (Clause{neg(mem1(z(0), f.A)), pos(mem1(z(0), f.I))}));
}

// Dropping an unused quantifier keeps the meaning: both forms have the same
// ground consequences over every small domain.
TEST(Distribute, DroppingIsSound) {
  Fixture f;
  Cnf wide{2, {{neg(mem1(z(1), f.A)), pos(mem1(z(1), f.B))}}};
  auto us = distribute_and_rename({wide});
  for (std::vector<int> dom : {std::vector<int>{f.a}, std::vector<int>{f.a, f.b}}) {
    std::set<Clause> direct;
    Universal raw{2, wide.clauses[0], ""};
    for (auto c : expand(raw, dom))
      direct.insert(c);
    auto renamed = expand(us[0], dom);
    EXPECT_EQ(direct, std::set<Clause>(renamed.begin(), renamed.end()));
  }
}

TEST(Expand, OneVariable) {
  Fixture f;
  Universal u{1, {neg(mem1(z(0), f.A)), pos(mem1(z(0), f.I))}, ""};
  auto cs = expand(u, {f.a, f.b});
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0], (Clause{neg(mem1(f.a, f.A)), pos(mem1(f.a, f.I))}));
  EXPECT_EQ(cs[1], (Clause{neg(mem1(f.b, f.A)), pos(mem1(f.b, f.I))}));
}

TEST(Expand, InstanceCountIsKToTheQ) {
  Fixture f;
  Universal u{2, {neg(mem3(z(0), z(1), 9)), pos(eq(z(0), z(1)))}, ""};
  std::size_t n = 0;
  expand(u, {f.a, f.b, f.c}, [&](Clause) { ++n; });
  EXPECT_EQ(n, 9u);
  // the three diagonal instances contain x = x and are dropped
  EXPECT_EQ(expand(u, {f.a, f.b, f.c}).size(), 6u);
}

TEST(Expand, SingleElementDomain) {
  Fixture f;
  Universal u{1, {neg(mem1(z(0), f.A)), neg(mem1(z(0), f.d))}, ""};
  EXPECT_EQ(expand(u, {f.a}).size(), 1u);
}

TEST(Simplify, CanonicalForm) {
  Fixture f;
  Clause c{pos(mem1(f.b, f.A)), pos(mem1(f.a, f.A)), pos(mem1(f.b, f.A)), neg(eq(f.a, f.a)), pos(eq(f.b, f.a))};
  ASSERT_TRUE(simplify_clause(c));
  EXPECT_EQ(c.size(), 3u);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end(), [](const Literal &x, const Literal &y) { return x.atom < y.atom; }));
  Clause taut{pos(mem1(f.a, f.A)), neg(mem1(f.a, f.A))};
  EXPECT_FALSE(simplify_clause(taut));
  Clause refl{pos(eq(f.b, f.b))};
  EXPECT_FALSE(simplify_clause(refl));
}

TEST(BuildPhi, StatsBound) {
  Fixture f;
  PhiKB phi;
  phi.vars = f.vt;
  phi.universals = {Cnf{1, {{neg(mem1(z(0), f.A)), pos(mem1(z(0), f.I))}}},
                    Cnf{1, {{neg(mem1(z(0), f.B)), pos(mem1(z(0), f.I))}}}};
  auto g = build_phi(phi);
  EXPECT_EQ(g.stats.m, 2u);
  EXPECT_EQ(g.stats.k, 3u);
  EXPECT_EQ(g.stats.r, 1u);
  EXPECT_EQ(g.stats.instances, (std::vector<std::size_t>{3, 3}));
  EXPECT_LE(g.stats.universal_clauses, 6u);
  EXPECT_EQ(g.stats.clauses, g.clauses.size());
}

TEST(BuildPhi, Budget) {
  auto kb = parse_kb("concept A. arole R. individual a, b, c. axiom R R sub R.");
  auto phi = translate_kb(normalize_kb(kb).kb);
  ExpandOptions o;
  o.budget_clauses = 10;
  EXPECT_THROW(build_phi(phi, o), CapacityExceeded);
}

TEST(BuildPhi, SingleAssertion) {
  auto p = prepare(parse_kb("concept A. individual a. assert a : A."));
  const int a = *p.phi.vars.object("a");
  const int A = p.phi.vars.var1(tm::concept_name("A"));
  const Clause unit{pos(mem1(a, A))};
  EXPECT_TRUE(std::count(p.ground.clauses.begin(), p.ground.clauses.end(), unit));
  // the domain is a plus the witness for the empty data half
  EXPECT_EQ(p.ground.domain.size(), 2u);
  for (const auto &c : p.ground.clauses)
    for (const auto &l : c) {
      EXPECT_GE(l.atom.x, 0);
      if (l.atom.kind != AtomKind::Mem1) {
        EXPECT_GE(l.atom.y, 0);
      }
    }
  EXPECT_TRUE(oracle::brute_sat(p.ground.clauses, p.nvars).sat);
}

TEST(BuildPhi, EmptyAboxStillGrounds) {
  auto p = prepare(parse_kb("concept A."));
  EXPECT_FALSE(p.ground.clauses.empty());
  EXPECT_EQ(p.ground.domain.size(), 2u); // the two witnesses
  EXPECT_TRUE(oracle::brute_sat(p.ground.clauses, p.nvars).sat);
}

// Grounding does not depend on the order of the domain.
TEST(BuildPhi, DomainOrderIrrelevant) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CorpusGenerator gen(seed);
    auto p = prepare(gen.kb());
    auto us = distribute_and_rename(p.phi.universals);
    auto rev = p.ground.domain;
    std::reverse(rev.begin(), rev.end());
    for (const auto &u : us)
      EXPECT_EQ(expand(u, p.ground.domain), expand(u, rev)) << "seed " << seed;
  }
}
