#include <gtest/gtest.h>

#include "dl4x/dl_model.hpp"
#include "dl4x/normalizer.hpp"
#include "dl4x/parser.hpp"

using namespace dl4x;

namespace {

Signature sig() {
  return parse_kb("concept C, A. arole R. crole P. individual a, b. datatype d { constants e1; }").sig;
}

Query q(const char *text) { return parse_query(text, sig()); }

} // namespace

TEST(QueryVars, FirstOccurrenceOrder) {
  EXPECT_EQ(query_vars(q("C(?v1) and R(?v1, ?v2)")), (std::vector<std::string>{"v1", "v2"}));
  EXPECT_EQ(query_vars(q("R(?v2, ?v1)")), (std::vector<std::string>{"v2", "v1"}));
}

TEST(QueryVars, GroundQueryHasNone) { EXPECT_TRUE(query_vars(q("C(a)")).empty()); }

TEST(QueryVars, Deduplicates) {
  EXPECT_EQ(query_vars(q("R(?v1, a) and not C(?v1)")), (std::vector<std::string>{"v1"}));
}

TEST(ApplySubstitution, ReplacesVariables) {
  EXPECT_EQ(apply_dl_substitution(q("C(?v1)"), {{"v1", "a"}}), q("C(a)"));
  EXPECT_EQ(apply_dl_substitution(q("?v1 = ?v2"), {{"v1", "a"}, {"v2", "a"}}), q("a = a"));
}

TEST(ApplySubstitution, EmptyIsIdentity) {
  auto x = q("R(?v1, ?v2)");
  EXPECT_EQ(apply_dl_substitution(x, {}), x);
}

TEST(ApplySubstitution, PartialAndIdempotent) {
  auto x = q("R(?v1, ?v2) and P(?v1, ?u)");
  DlSubstitution s{{"v1", "b"}, {"u", "e1"}};
  auto once = apply_dl_substitution(x, s);
  EXPECT_EQ(query_vars(once), (std::vector<std::string>{"v2"}));
  EXPECT_EQ(apply_dl_substitution(once, s), once);
  EXPECT_EQ(print(once), "R(b, ?v2) and P(b, e1)");
}

TEST(Terms, StructuralEquality) {
  auto x = tm::join(tm::concept_name("A"), tm::negate(tm::concept_name("C")));
  auto y = tm::join(tm::concept_name("A"), tm::negate(tm::concept_name("C")));
  EXPECT_TRUE(same(x, y));
  EXPECT_FALSE(same(x, tm::join(tm::concept_name("C"), tm::negate(tm::concept_name("A")))));
  EXPECT_FALSE(same(tm::concept_name("R"), tm::arole_name("R"))); // sorts keep names apart
}

TEST(Terms, NominalSetsDropDuplicates) {
  EXPECT_TRUE(same(tm::nominal_set({"b", "a", "b"}), tm::nominal_set({"b", "a"})));
  EXPECT_TRUE(same(tm::nominal_set({"a", "a"}), tm::nominal("a")));
  EXPECT_THROW(tm::nominal_set({}), Error);
}

TEST(Statements, NormalizedShapes) {
  auto kb = parse_kb(R"(concept A, B, C. arole R, S. individual a.
    axiom A equiv not B.
    axiom A equiv B or C.
    axiom A equiv {a}.
    axiom A sub all R B.
    axiom some R B sub A.
    axiom A sub not B.
    axiom R equiv inv S.)");
  std::vector<bool> shapes;
  for (const auto *s : kb.statements())
    shapes.push_back(is_normalized_shape(*s));
  // statements() lists the RBox first; a plain subsumption is not a normalized form
  EXPECT_EQ(shapes, (std::vector<bool>{true, true, true, true, true, true, false}));
}

TEST(Signature, KindsAreDisjoint) {
  Signature s;
  s.declare(SymbolKind::Concept, "A");
  EXPECT_THROW(s.declare(SymbolKind::Individual, "A"), Error);
  EXPECT_NO_THROW(s.declare(SymbolKind::Concept, "A"));
  EXPECT_THROW(s.declare(SymbolKind::ARole, "U"), Error);
}
