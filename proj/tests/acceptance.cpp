// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// all of them pass. Limits are fixed here and are not configurable.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dl4x/corpus.hpp"
#include "dl4x/oracle.hpp"
#include "dl4x/pipeline.hpp"
#include "fuzz_common.hpp"

using namespace dl4x;
using clock_type = std::chrono::steady_clock;

namespace {

constexpr double kGoldenSeconds = 1.0;
constexpr std::size_t kConsistencyKbs = 240;
constexpr double kConsistencySeconds = 300.0;
constexpr std::size_t kQueryPairs = 120;
constexpr double kPairSeconds = 10.0;
constexpr std::size_t kFuzzRuns = 1000;
constexpr double kFuzzCapSeconds = 30.0;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
  std::string first_failure;
  void fail(const std::string &why) {
    if (pass)
      first_failure = why;
    pass = false;
  }
};

void report(int n, const Verdict &v) {
  std::cout << "criterion " << n << " " << (v.pass ? "PASS" : "FAIL") << " " << v.detail;
  if (!v.pass)
    std::cout << " [first failure: " << v.first_failure << "]";
  std::cout << std::endl;
}

// --- 1: the translation table -------------------------------------------------------

const char *kGoldenSignature = "concept C1, C2, C3. arole R1, R2, R3, R4. crole P1, P2. individual a, b.\n"
                               "datatype d { constants e1, e2; } datatype d2 { } datatype d3 { }\n";

struct Golden {
  const char *statement;
  const char *formula; // written after the published table, bound names as printed there
};

const Golden kGolden[] = {
    {"axiom C1 equiv top.",
     "(forall (z) (and (or (not (in z X1:C1)) (in z X1:top)) (or (not (in z X1:top)) (in z X1:C1))))"},
    {"axiom C1 equiv not C2.",
     "(forall (z) (and (or (not (in z X1:C1)) (not (in z X1:C2))) (or (in z X1:C2) (in z X1:C1))))"},
    {"axiom C1 equiv C2 or C3.",
     "(forall (z) (and (or (not (in z X1:C1)) (or (in z X1:C2) (in z X1:C3)))"
     " (and (or (not (in z X1:C2)) (in z X1:C1)) (or (not (in z X1:C3)) (in z X1:C1)))))"},
    {"axiom C1 equiv {a}.", "(forall (z) (and (or (not (in z X1:C1)) (= z x:a)) (or (not (= z x:a)) (in z X1:C1))))"},
    {"axiom C1 sub all R1 C2.",
     "(forall (z1 z2) (or (not (in z1 X1:C1)) (or (not (in2 z1 z2 X3:R1)) (in z2 X1:C2))))"},
    {"axiom some R1 C1 sub C2.",
     "(forall (z1 z2) (or (or (not (in2 z1 z2 X3:R1)) (not (in z2 X1:C1))) (in z1 X1:C2)))"},
    {"axiom C1 equiv some R1 {a}.",
     "(forall (z) (and (or (not (in z X1:C1)) (in2 z x:a X3:R1)) (or (not (in2 z x:a X3:R1)) (in z X1:C1))))"},
    {"axiom C1 sub atmost 1 R1 C2.",
     "(forall (z z1 z2) (or (not (in z X1:C1)) (and (or (not (in z1 X1:C2)) (not (in2 z z1 X3:R1)) (= z1 z2))"
     " (or (not (in z2 X1:C2)) (not (in2 z z2 X3:R1)) (= z1 z2)))))"},
    {"axiom C1 sub atmost 2 R1 C2.",
     "(forall (z z1 z2 z3) (or (not (in z X1:C1)) (and"
     " (or (not (in z1 X1:C2)) (not (in2 z z1 X3:R1)) (= z1 z2) (= z1 z3) (= z2 z3))"
     " (or (not (in z2 X1:C2)) (not (in2 z z2 X3:R1)) (= z1 z2) (= z1 z3) (= z2 z3))"
     " (or (not (in z3 X1:C2)) (not (in2 z z3 X3:R1)) (= z1 z2) (= z1 z3) (= z2 z3)))))"},
    {"axiom atleast 1 R1 C1 sub C2.",
     "(forall (z z1) (or (and (or (not (in z1 X1:C1)) (not (in2 z z1 X3:R1)))) (in z X1:C2)))"},
    {"axiom atleast 2 R1 C1 sub C2.",
     "(forall (z z1 z2) (or (and (or (or (not (in z1 X1:C1)) (not (in2 z z1 X3:R1))) (= z1 z2))"
     " (or (or (not (in z2 X1:C1)) (not (in2 z z2 X3:R1))) (= z1 z2))) (in z X1:C2)))"},
    {"axiom C1 sub all P1 d.",
     "(forall (z1 z2) (or (not (in z1 X1:C1)) (or (not (in2 z1 z2 X3:P1)) (in z2 X1:d))))"},
    {"axiom some P1 d sub C1.",
     "(forall (z1 z2) (or (or (not (in2 z1 z2 X3:P1)) (not (in z2 X1:d))) (in z1 X1:C1)))"},
    {"axiom C1 equiv some P1 {e1}.",
     "(forall (z) (and (or (not (in z X1:C1)) (in2 z x:e1 X3:P1)) (or (not (in2 z x:e1 X3:P1)) (in z X1:C1))))"},
    {"axiom C1 sub atmost 1 P1 d.",
     "(forall (z z1 z2) (or (not (in z X1:C1)) (and (or (not (in z1 X1:d)) (not (in2 z z1 X3:P1)) (= z1 z2))"
     " (or (not (in z2 X1:d)) (not (in2 z z2 X3:P1)) (= z1 z2)))))"},
    {"axiom C1 sub atmost 2 P1 d.",
     "(forall (z z1 z2 z3) (or (not (in z X1:C1)) (and"
     " (or (not (in z1 X1:d)) (not (in2 z z1 X3:P1)) (= z1 z2) (= z1 z3) (= z2 z3))"
     " (or (not (in z2 X1:d)) (not (in2 z z2 X3:P1)) (= z1 z2) (= z1 z3) (= z2 z3))"
     " (or (not (in z3 X1:d)) (not (in2 z z3 X3:P1)) (= z1 z2) (= z1 z3) (= z2 z3)))))"},
    {"axiom atleast 1 P1 d sub C1.",
     "(forall (z z1) (or (and (or (not (in z1 X1:d)) (not (in2 z z1 X3:P1)))) (in z X1:C1)))"},
    {"axiom atleast 2 P1 d sub C1.",
     "(forall (z z1 z2) (or (and (or (or (not (in z1 X1:d)) (not (in2 z z1 X3:P1))) (= z1 z2))"
     " (or (or (not (in z2 X1:d)) (not (in2 z z2 X3:P1))) (= z1 z2))) (in z X1:C1)))"},
    {"axiom R1 equiv U.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:R1)) (in2 z1 z2 X3:U)) (or (not (in2 z1 z2 X3:U)) (in2 z1 z2 X3:R1))))"},
    {"axiom R1 equiv not R2.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:R1)) (not (in2 z1 z2 X3:R2)))"
     " (or (in2 z1 z2 X3:R2) (not (in2 z1 z2 X3:R1)))))"},
    {"axiom R1 equiv prod(C1, C2).",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:R1)) (in z1 X1:C1)) (or (not (in2 z1 z2 X3:R1)) (in z2 X1:C2))"
     " (or (or (not (in z1 X1:C1)) (not (in z2 X1:C2))) (in2 z1 z2 X3:R1))))"},
    {"axiom R1 equiv R2 or R3.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:R1)) (or (in2 z1 z2 X3:R2) (in2 z1 z2 X3:R3)))"
     " (and (or (not (in2 z1 z2 X3:R2)) (in2 z1 z2 X3:R1)) (or (not (in2 z1 z2 X3:R3)) (in2 z1 z2 X3:R1)))))"},
    {"axiom R1 equiv inv R2.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:R1)) (in2 z2 z1 X3:R2)) (or (not (in2 z2 z1 X3:R2)) (in2 z1 z2 X3:R1))))"},
    {"axiom R1 equiv id(C1).",
     "(forall (z1 z2) (and (and (or (not (in2 z1 z2 X3:R1)) (in z1 X1:C1)) (or (not (in2 z1 z2 X3:R1)) (in z2 X1:C1))"
     " (or (not (in2 z1 z2 X3:R1)) (= z1 z2)))"
     " (or (or (not (in z1 X1:C1)) (not (in z2 X1:C1)) (not (= z1 z2))) (in2 z1 z2 X3:R1))))"},
    {"axiom R1 equiv domrestr(R2, C1).",
     "(forall (z1 z2) (and (and (or (not (in2 z1 z2 X3:R1)) (in2 z1 z2 X3:R2)) (or (not (in2 z1 z2 X3:R1)) (in z1 X1:C1)))"
     " (or (or (not (in2 z1 z2 X3:R2)) (not (in z1 X1:C1))) (in2 z1 z2 X3:R1))))"},
    {"axiom R1 R2 sub R3.",
     "(forall (z z1 z2) (or (or (not (in2 z z1 X3:R1)) (not (in2 z1 z2 X3:R2))) (in2 z z2 X3:R3)))"},
    {"axiom R1 R2 R3 sub R4.",
     "(forall (z z1 z2 z3) (or (or (not (in2 z z1 X3:R1)) (not (in2 z1 z2 X3:R2)) (not (in2 z2 z3 X3:R3)))"
     " (in2 z z3 X3:R4)))"},
    {"axiom Ref(R1).", "(forall (z) (in2 z z X3:R1))"},
    {"axiom Irref(R1).", "(forall (z) (not (in2 z z X3:R1)))"},
    {"axiom Fun(R1).",
     "(forall (z1 z2 z3) (or (or (not (in2 z1 z2 X3:R1)) (not (in2 z1 z3 X3:R1))) (= z2 z3)))"},
    {"axiom P1 equiv P2.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:P1)) (in2 z1 z2 X3:P2)) (or (not (in2 z1 z2 X3:P2)) (in2 z1 z2 X3:P1))))"},
    {"axiom P1 equiv not P2.",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:P1)) (not (in2 z1 z2 X3:P2))) (or (in2 z1 z2 X3:P2) (in2 z1 z2 X3:P1))))"},
    {"axiom P1 sub P2.", "(forall (z1 z2) (or (not (in2 z1 z2 X3:P1)) (in2 z1 z2 X3:P2)))"},
    {"axiom Fun(P1).",
     "(forall (z1 z2 z3) (or (not (in2 z1 z2 X3:P1)) (not (in2 z1 z3 X3:P1)) (= z2 z3)))"},
    {"axiom P1 equiv domrestr(P2, C1).",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:P1)) (in2 z1 z2 X3:P2)) (or (not (in2 z1 z2 X3:P1)) (in z1 X1:C1))"
     " (or (not (in2 z1 z2 X3:P2)) (not (in z1 X1:C1)) (in2 z1 z2 X3:P1))))"},
    {"axiom P1 equiv ranrestr(P2, d).",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:P1)) (in2 z1 z2 X3:P2)) (or (not (in2 z1 z2 X3:P1)) (in z2 X1:d))"
     " (or (or (not (in2 z1 z2 X3:P2)) (not (in z2 X1:d))) (in2 z1 z2 X3:P1))))"},
    {"axiom P1 equiv restr(P2, C1, d).",
     "(forall (z1 z2) (and (or (not (in2 z1 z2 X3:P1)) (in2 z1 z2 X3:P2)) (or (not (in2 z1 z2 X3:P1)) (in z1 X1:C1))"
     " (or (not (in2 z1 z2 X3:P1)) (in z2 X1:d))"
     " (or (not (in2 z1 z2 X3:P2)) (not (in z1 X1:C1)) (not (in z2 X1:d)) (in2 z1 z2 X3:P1))))"},
    {"axiom d equiv d2.",
     "(forall (z) (and (or (not (in z X1:d)) (in z X1:d2)) (or (not (in z X1:d2)) (in z X1:d))))"},
    {"axiom d equiv not d2.",
     "(forall (z) (and (or (not (in z X1:d)) (not (in z X1:d2))) (or (in z X1:d2) (in z X1:d))))"},
    {"axiom d equiv d2 or d3.",
     "(forall (z) (and (or (not (in z X1:d)) (or (in z X1:d2) (in z X1:d3)))"
     " (and (or (not (in z X1:d2)) (in z X1:d)) (or (not (in z X1:d3)) (in z X1:d)))))"},
    {"axiom d equiv d2 and d3.",
     "(forall (z) (and (or (not (in z X1:d)) (and (in z X1:d2) (in z X1:d3)))"
     " (or (or (not (in z X1:d2)) (not (in z X1:d3))) (in z X1:d))))"},
    {"axiom d equiv {e1}.", "(forall (z) (and (or (not (in z X1:d)) (= z x:e1)) (or (not (= z x:e1)) (in z X1:d))))"},
    {"assert a : C1.", "(in x:a X1:C1)"},
    {"assert (a, b) : R1.", "(in2 x:a x:b X3:R1)"},
    {"assert (a, b) : not R1.", "(not (in2 x:a x:b X3:R1))"},
    {"assert a = b.", "(= x:a x:b)"},
    {"assert a != b.", "(not (= x:a x:b))"},
    {"assert e1 : d.", "(in x:e1 X1:d)"},
    {"assert (a, e1) : P1.", "(in2 x:a x:e1 X3:P1)"},
    {"assert (a, e1) : not P1.", "(not (in2 x:a x:e1 X3:P1))"},
};

const Golden kGoldenQueries[] = {
    {"R1(?w1, ?w2)", "(in2 x:?w1 x:?w2 X3:R1)"},
    {"P1(?w1, ?u1)", "(in2 x:?w1 x:?u1 X3:P1)"},
    {"C1(?w1)", "(in x:?w1 X1:C1)"},
    {"?w1 = ?w2", "(= x:?w1 x:?w2)"},
    {"?u1 = ?u2", "(= x:?u1 x:?u2)"},
};

Verdict criterion_golden() {
  Verdict v;
  const auto t0 = clock_type::now();
  std::size_t ok = 0, total = 0;
  for (const auto &g : kGolden) {
    ++total;
    try {
      auto kb = parse_kb(std::string(kGoldenSignature) + g.statement);
      auto stmts = kb.statements();
      if (stmts.size() != 1) {
        v.fail(std::string(g.statement) + ": expected one statement");
        continue;
      }
      VarTable vt;
      Translator tr(vt, ThetaOptions{true});
      auto got = to_named(vt, tr.theta(*stmts[0]));
      if (alpha_equivalent(got, parse_named_cnf(g.formula)))
        ++ok;
      else
        v.fail(std::string(g.statement) + " gave " + to_sexpr(vt, tr.theta(*stmts[0])));
    } catch (const std::exception &e) {
      v.fail(std::string(g.statement) + ": " + e.what());
    }
  }
  auto sig = parse_kb(kGoldenSignature).sig;
  for (const auto &g : kGoldenQueries) {
    ++total;
    try {
      VarTable vt;
      Translator tr(vt);
      Cnf f;
      for (const auto &l : tr.theta_query(parse_query(g.statement, sig), sig))
        f.clauses.push_back({l});
      if (alpha_equivalent(to_named(vt, f), parse_named_cnf(g.formula)))
        ++ok;
      else
        v.fail(std::string(g.statement) + " gave " + to_sexpr(vt, f));
    } catch (const std::exception &e) {
      v.fail(std::string(g.statement) + ": " + e.what());
    }
  }
  const double secs = since(t0);
  if (secs >= kGoldenSeconds)
    v.fail("took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "theta golden: " << ok << "/" << total << " alpha-equivalent in " << secs << " s (limit " << kGoldenSeconds
     << " s)";
  v.detail = os.str();
  return v;
}

// --- shared bookkeeping for criteria 4, 5, 6 -----------------------------------------

struct Ledger {
  Verdict counts, models, audit;
  std::size_t runs = 0, branches = 0, pb_checked = 0;

  void tableau_run(const Prepared &p, const TableauResult &t, const std::string &what) {
    ++runs;
    if (auto m = testing::check_counts(p, t); !m.empty())
      counts.fail(what + ": " + m);
    auto a = audit_trace(p.ground.clauses, p.nvars, t.trace);
    pb_checked += a.pb_checked;
    if (a.violations)
      audit.fail(what + ": " + a.first_violation);
  }
  void branch(const Prepared &p, const Branch &b, const std::string &what) {
    ++branches;
    if (auto n = count_violations(b.model(p.ground.domain), p.ground.clauses))
      models.fail(what + ": branch " + std::to_string(b.id()) + " violates " + std::to_string(n) + " clauses");
  }
};

// --- 2: tableau against the DL-level oracle -------------------------------------------

Verdict criterion_consistency(Ledger &led) {
  Verdict v;
  const auto t0 = clock_type::now();
  std::size_t agree = 0, consistent = 0;
  for (std::size_t s = 0; s < kConsistencyKbs; ++s) {
    const std::string what = "consistency seed " + std::to_string(s);
    CorpusGenerator gen(s);
    auto kb = gen.kb();
    try {
      auto p = prepare(kb);
      TableauOptions opt;
      opt.trace = true;
      auto res = Tableau(p.ground.clauses, p.nvars, opt).run([&](const Branch &b) {
        led.branch(p, b, what);
        return true;
      });
      led.tableau_run(p, res, what);
      auto o = oracle::dl_consistent(kb);
      if (o.consistent == res.consistent)
        ++agree;
      else
        v.fail(what + ": tableau " + (res.consistent ? "consistent" : "inconsistent") + ", oracle disagrees");
      consistent += res.consistent;
    } catch (const std::exception &e) {
      v.fail(what + ": " + e.what());
    }
  }
  const double secs = since(t0);
  if (secs >= kConsistencySeconds)
    v.fail("took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "tableau vs DL oracle: " << agree << "/" << kConsistencyKbs << " agree (" << consistent
     << " consistent) in " << secs << " s (limit " << kConsistencySeconds << " s)";
  v.detail = os.str();
  return v;
}

// --- 3: both answering paths -----------------------------------------------------------

Verdict criterion_cqa(Ledger &led) {
  Verdict v;
  std::size_t equal = 0, oracle_equal = 0, nonempty = 0;
  double worst = 0;
  for (std::size_t i = 0; i < kQueryPairs; ++i) {
    const std::uint64_t s = 10'000 + i;
    const std::string what = "query seed " + std::to_string(s);
    CorpusGenerator gen(s);
    auto kb = gen.kb();
    auto q = gen.query(kb);
    if (query_vars(q).size() > 2) {
      v.fail(what + ": more than two query variables");
      continue;
    }
    try {
      const auto t0 = clock_type::now();
      auto p = prepare(kb);
      CqaOptions c;
      c.trace = true;
      c.on_branch = [&](const Branch &b) { led.branch(p, b, what); };
      auto r = answer(p, q, Engine::Both, c);
      const double secs = since(t0);
      worst = std::max(worst, secs);
      led.tableau_run(p, r.stats.tableau, what);
      if (r.agree)
        ++equal;
      else
        v.fail(what + ": answer_set and naive_answers differ on " + print(q));
      if (secs >= kPairSeconds)
        v.fail(what + ": took " + std::to_string(secs) + " s");
      nonempty += !r.answers.empty();
      if (oracle::dl_answers(kb, q) == r.answers)
        ++oracle_equal;
      else
        v.fail(what + ": the DL oracle finds a different answer set for " + print(q));
    } catch (const std::exception &e) {
      v.fail(what + ": " + e.what());
    }
  }
  std::ostringstream os;
  os << "answer_set == naive_answers on " << equal << "/" << kQueryPairs << " pairs (" << nonempty
     << " with answers), DL oracle agrees on " << oracle_equal << ", slowest pair " << worst << " s (limit "
     << kPairSeconds << " s)";
  v.detail = os.str();
  return v;
}

// --- 7: fuzz -----------------------------------------------------------------------------

Verdict criterion_fuzz() {
  Verdict v;
  std::atomic<std::int64_t> started{clock_type::now().time_since_epoch().count()};
  std::atomic<std::uint64_t> current{0};
  std::atomic<bool> done{false};
  std::thread watchdog([&] {
    while (!done) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      auto t0 = clock_type::time_point(clock_type::duration(started.load()));
      if (since(t0) > kFuzzCapSeconds) {
        std::cout << "criterion 7 FAIL fuzz run for seed " << current.load() << " exceeded the " << kFuzzCapSeconds
                  << " s cap" << std::endl;
        std::_Exit(1);
      }
    }
  });
  std::size_t budget = 0, unsupported = 0, runs = 0;
  double worst = 0;
  for (std::size_t i = 0; i < kFuzzRuns; ++i) {
    const std::uint64_t s = 20'000 + i;
    current = s;
    const auto t0 = clock_type::now();
    started = t0.time_since_epoch().count();
    auto r = testing::fuzz_one(s);
    worst = std::max(worst, since(t0));
    ++runs;
    budget += r.budget;
    unsupported += r.unsupported;
    if (!r.ok)
      v.fail(r.message);
  }
  done = true;
  watchdog.join();
  std::ostringstream os;
  os << "fuzz: " << runs << " runs, " << budget << " stopped by budget, " << unsupported
     << " refused by the normalizer, slowest " << worst << " s (cap " << kFuzzCapSeconds << " s)";
  v.detail = os.str();
  return v;
}

} // namespace

int main() {
  bool all = true;
  auto run = [&](int n, const Verdict &v) {
    report(n, v);
    all = all && v.pass;
  };
  run(1, criterion_golden());
  Ledger led;
  auto c2 = criterion_consistency(led);
  auto c3 = criterion_cqa(led);
  run(2, c2);
  run(3, c3);
  {
    std::ostringstream os;
    os << "analytic counts hold on " << led.runs << " tableau runs";
    led.counts.detail = os.str();
    run(4, led.counts);
  }
  {
    std::ostringstream os;
    os << "model soundness: " << led.branches << " open complete branches checked against every clause";
    led.models.detail = os.str();
    run(5, led.models);
  }
  {
    std::ostringstream os;
    os << "rule discipline: " << led.pb_checked << " PB splits audited";
    led.audit.detail = os.str();
    run(6, led.audit);
  }
  run(7, criterion_fuzz());
  return all ? 0 : 1;
}
