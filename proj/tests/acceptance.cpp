// Acceptance suite: runs every primary criterion at its stated bound and
// prints one PASS/FAIL line per criterion.  All comparisons are exact
// algebraic equalities; there are no tolerances anywhere.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "prophecke/verify.hpp"

using namespace prophecke;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int num, const std::string& what, bool pass, long long instances,
            double secs, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s (%lld instances, %.1f s)%s%s\n",
              pass ? "PASS" : "FAIL", num, what.c_str(), instances, secs,
              detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// Runs selected checks over a list of (group, q, max_len) configurations and
// accumulates status / instance counts.
struct SuiteRun {
  bool pass = true;
  long long instances = 0;
  std::string detail;

  void add(const std::string& group, int q, int max_len,
           const std::vector<std::string>& checks, const std::string& mode = "both") {
    SuiteConfig cfg;
    cfg.group = group;
    cfg.q = q;
    cfg.max_len = max_len;
    cfg.checks = checks;
    cfg.mode = mode;
    cfg.seed = 20240815;
    cfg.jobs = 4;
    VerificationReport rep = run_suite(cfg);
    for (const CheckResult& c : rep.checks) {
      instances += c.instances;
      if (c.status == CheckResult::Status::Fail) {
        pass = false;
        if (detail.empty())
          detail = group + " q=" + std::to_string(q) + " " + c.name + ": " +
                   c.counterexample;
      }
    }
  }
};

struct ClassifyRun {
  std::shared_ptr<const ExtendedGroup> grp;
  std::shared_ptr<GF> field;
  std::shared_ptr<Bernstein> bern;
  std::shared_ptr<CharacterTheory> theory;
  std::vector<ClassifiedModule> mods;

  ClassifyRun(const std::string& group, int q) {
    grp = std::make_shared<ExtendedGroup>(
        std::make_shared<AffineWeyl>(RootDatum::build(group, q)));
    field = classification_field(*grp);
    auto gen = std::make_shared<HeckeGen>(grp, RingGeneric{});
    auto ops = std::make_shared<HeckeOps>(gen);
    bern = std::make_shared<Bernstein>(ops);
    theory = std::make_shared<CharacterTheory>(grp);
    ClassifyOptions opts;
    for (int i = 0; i < grp->aw().n_free(); ++i) opts.pi_scalars.push_back(field->gen());
    mods = classify(theory, field, bern, opts);
  }
};

}  // namespace

int main() {
  // 1. relation soundness on {SL2, GL2, PGL2, SL3, B2} x q in {3, 4, 5}
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2", "SL3", "B2"})
      for (int q : {3, 4, 5}) {
        Timer per;
        run.add(g, q, 5, {"relations"});
        if (per.seconds() > 120 && run.detail.empty()) {
          run.pass = false;
          run.detail = std::string(g) + " exceeded the two-minute budget";
        }
      }
    report(1, "associativity and quadratic relations, both modes, 15 data", run.pass,
           run.instances, t.seconds(), run.detail);
  }
  // 2. integral triangular expansions up to length 8, all facets and signs
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2", "SL3", "B2"}) run.add(g, 3, 6, {"lemma-2.3"});
    run.add("GL2", 4, 6, {"lemma-2.3"});
    bool in_budget = t.seconds() <= 300;
    report(2, "Bernstein expansions: integer coefficients, unit leading term",
           run.pass && in_budget, run.instances, t.seconds(),
           in_budget ? run.detail : "exceeded the five-minute budget");
  }
  // 3. the involution exchanges the signs; central functions are fixed
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2", "SL3"}) run.add(g, 3, 8, {"eq-2.1", "prop-3.2"});
    run.add("B2", 3, 6, {"eq-2.1", "prop-3.2"});
    report(3, "iota_C exchanges B^+ and B^-, fixes the center", run.pass, run.instances,
           t.seconds(), run.detail);
  }
  // 4. orbit sums over all facets and signs
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "SL3"}) run.add(g, 3, 8, {"lemma-3.4"});
    run.add("B2", 3, 6, {"lemma-3.4"});
    bool in_budget = t.seconds() <= 600;
    report(4, "orbit sums independent of facet and sign", run.pass && in_budget,
           run.instances, t.seconds(),
           in_budget ? run.detail : "exceeded the ten-minute budget");
  }
  // 5. multiplicativity and centrality of the z basis
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2", "SL3"})
      run.add(g, 3, 6, {"prop-2.10", "thm-2.14-partial"});
    report(5, "z_a z_b = z_{a+b}; centrality; Iwahori projection", run.pass,
           run.instances, t.seconds(), run.detail);
  }
  // 6. Bernstein basis, filtration, power identity
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2"})
      run.add(g, 3, 6, {"eq-5.1", "lemma-5.3", "fact-iii"});
    report(6, "basis involution formula, round trip, filtration, powers", run.pass,
           run.instances, t.seconds(), run.detail);
  }
  // 7. Satake compatibility on cyclic modules for SL2 and GL2, q in {3, 5}
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2"})
      for (int q : {3, 5}) run.add(g, q, 6, {"remark-4.2"});
    bool in_budget = t.seconds() <= 300;
    report(7, "central and Bernstein actions agree on cyclic generators",
           run.pass && in_budget, run.instances, t.seconds(),
           in_budget ? run.detail : "exceeded the five-minute budget");
  }
  // 8. classification: both directions plus the independent enumeration
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "PGL2", "GL2", "SL3"})
      for (int q : {3, 5})
        run.add(g, q, 4, {"lemma-5.12", "thm-5.14", "cor-5.16-enumeration"});
    bool in_budget = t.seconds() <= 600;
    report(8, "supersingular classification, both directions, two pipelines",
           run.pass && in_budget, run.instances, t.seconds(),
           in_budget ? run.detail : "exceeded the ten-minute budget");
  }
  // 9. dimension-one claim for the simply connected data
  {
    Timer t;
    bool pass = true;
    long long count = 0;
    std::string detail;
    for (const char* g : {"SL2", "SL3"})
      for (int q : {3, 5}) {
        ClassifyRun run(g, q);
        for (const ClassifiedModule& m : run.mods) {
          ++count;
          if (m.module->dim() != 1 || !m.supersingular || !m.irreducible) {
            pass = false;
            detail = std::string(g) + " q=" + std::to_string(q) +
                     " produced a module of dimension " + std::to_string(m.module->dim());
          }
        }
        if (run.mods.empty()) {
          pass = false;
          detail = std::string(g) + " produced no modules";
        }
      }
    report(9, "simply connected data: every supersingular simple has dimension 1",
           pass, count, t.seconds(), detail);
  }
  // 10. combinatorial layer at the stated exhaustive bounds
  {
    Timer t;
    SuiteRun run;
    for (const char* g : {"SL2", "GL2", "PGL2", "SL3", "B2"})
      run.add(g, 3, 6, {"lemma-1.2", "prop-1.3"});
    report(10, "length oracle, orientation character, distinguished trichotomy",
           run.pass, run.instances, t.seconds(), run.detail);
  }

  if (g_failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures;
}
