// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "tsk/chern_engine.hpp"
#include "tsk/obstruct.hpp"
#include "tsk/prescribe.hpp"
#include "tsk/random_instances.hpp"
#include "tsk/reflexive_r2.hpp"

using namespace tsk;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

TruncIntPoly from_coeffs(const std::vector<mpz_class>& c) {
  TruncIntPoly p(static_cast<int>(c.size()) - 1);
  for (std::size_t k = 0; k < c.size(); ++k) p[static_cast<int>(k)] = c[k];
  return p;
}

TruncIntPoly quadratic(int n, const BigInt& c1, const BigInt& c2) {
  TruncIntPoly p = TruncIntPoly::one(n);
  p[1] = c1;
  p[2] = c2;
  return p;
}

// Every visited injection must close: c(F) / c(E) equals the saturated ratio.
struct ClosureAudit {
  long injections = 0;
  long failures = 0;
  long exp_log_failures = 0;

  StepVisitor visitor(int n) {
    return [this, n](const Multifiltration& before, const Multifiltration& after, const ElementaryInjection& inj) {
      ++injections;
      const TruncIntPoly ratio = ratio_saturated(inj.k0, inj.m_big_sigma, n);
      if (!(chern_general(before, Validation::Skip) * inverse(chern_general(after, Validation::Skip)) == ratio)) ++failures;
      if (!(to_integer(exp(log(ratio))) == ratio)) ++exp_log_failures;
    };
  }
};

ClosureAudit g_closure;

// The closed-form product over the whole schedule must carry the start
// polynomial to the certified one; this covers steps applied in bulk.
bool schedule_closes(const PrescriptionSolution& sol) {
  const TruncIntPoly start = chern_total(sol.problem.start());
  return schedule_ratio(sol) * sol.certificate->chern == start;
}

// 1. Chern polynomial by three methods.
void chern_triple(Check& c) {
  const auto t0 = Clock::now();
  Rng rng(101);
  long compared = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 3 + i % 3;
    const R2Filtration f = random_reflexive(rng, n, 6, LineMode::Distinct, 0);
    const TruncIntPoly klyachko = chern_general(to_multifiltration(f));
    const TruncIntPoly resolution = chern_resolution(f);
    const TruncIntPoly symmetric = chern_symmetric(f);
    std::vector<mpz_class> roots;
    for (const auto& r : f.rays()) roots.push_back(r.c());
    const TruncIntPoly roots_product = from_coeffs(oracle::linear_product(roots, n));
    c.require(klyachko == resolution && klyachko == symmetric && klyachko == roots_product,
              "mismatch at instance " + std::to_string(i));
    ++compared;
  }
  const double secs = seconds_since(t0);
  c.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  c.detail << compared << " instances, " << secs << " s";
}

// 2. Odd quartic family.
void odd_family(Check& c) {
  const auto t0 = Clock::now();
  for (int t = 1; t <= 5; ++t) {
    const PrescriptionProblem problem{4, {1, 6 * t, 6 * t, 0, 0}};
    SolveResult res = solve_p(problem);
    if (!std::holds_alternative<PrescriptionSolution>(res)) {
      c.require(false, "t=" + std::to_string(t) + " infeasible");
      continue;
    }
    auto& sol = std::get<PrescriptionSolution>(res);
    BuildOptions opt;
    opt.visitor = g_closure.visitor(4);
    if (t > 1) opt.sequential_per_block = 40;
    const Certificate cert = certify(sol, opt);
    const BigInt tt = t;
    c.require(sol.p.front() == 18 * tt * tt, "p3 at t=" + std::to_string(t));
    c.require(cert.chern == quadratic(4, 12 * tt + 1, 12 * tt * (3 * tt + 1)), "chern at t=" + std::to_string(t));
    c.require(cert.delta == 24 * tt - 1, "delta at t=" + std::to_string(t));
    c.require(cert.stability == Stability::Stable, "stability at t=" + std::to_string(t));
    c.require(schedule_closes(sol), "schedule closure at t=" + std::to_string(t));
  }
  const double secs = seconds_since(t0);
  c.require(secs < 120.0, "took " + std::to_string(secs) + " s");
  c.detail << "t=1 fully sequential, t=2..5 sampled prefix plus runs, " << secs << " s";
}

// 3. Even quartic family.
void even_family(Check& c) {
  for (int t = 1; t <= 3; ++t) {
    const Coord big_t = 4 * t + 3;
    const PrescriptionProblem problem{4, {1, big_t, big_t, big_t, 0}};
    SolveResult res = solve_p(problem);
    if (!std::holds_alternative<PrescriptionSolution>(res)) {
      c.require(false, "t=" + std::to_string(t) + " infeasible");
      continue;
    }
    auto& sol = std::get<PrescriptionSolution>(res);
    BuildOptions opt;
    opt.visitor = g_closure.visitor(4);
    if (t > 1) opt.sequential_per_block = 40;
    const Certificate cert = certify(sol, opt);
    const BigInt tt = t, T = big_t;
    c.require(cert.chern == quadratic(4, 12 * tt + 10, 12 * (tt + 1) * (4 * tt + 3)), "chern at t=" + std::to_string(t));
    const TruncIntPoly s = chern_total(problem.start());
    const BigInt lhs = 4 * (s[1] * s[3] - s[4]) + 3 * s[3] * s[3];
    const BigInt cube = T * (T + 1) * (T + 2);
    c.require(lhs == 3 * cube * cube, "identity at t=" + std::to_string(t));
    c.require(cert.delta == 3 * T * T + 6 * T - 1, "delta at t=" + std::to_string(t));
    c.require(schedule_closes(sol), "schedule closure at t=" + std::to_string(t));
  }
  c.detail << "t=1..3";
}

// 4. Quintic recipe, both candidate start vectors.
void quintic(Check& c) {
  BuildOptions opt;
  opt.sequential_per_block = 24;
  opt.visitor = g_closure.visitor(5);
  const P5Report rep = family_p5(1, opt);
  const auto* recipe = std::get_if<PrescriptionSolution>(&rep.recipe_result);
  c.require(recipe != nullptr && recipe->certificate.has_value(), "recipe infeasible");
  if (recipe == nullptr) return;
  const TruncIntPoly s = chern_total(rep.recipe.start());
  c.require(recipe->certificate->chern == quadratic(5, s[1], s[2]), "recipe chern");
  c.require(recipe->certificate->chern == quadratic(5, 241, 14640), "recipe value");
  c.require(schedule_closes(*recipe), "recipe schedule closure");
  const auto closed = solve_p_closed_p5(s);
  for (std::size_t i = 0; i < closed.size(); ++i) c.require(closed[i] == Rational(recipe->p[i]), "closed form");
  c.require(rep.reported() == recipe, "reported candidate");
  c.detail << "recipe " << render(recipe->certificate->chern) << " (delta " << recipe->certificate->delta << ")";
  if (const auto* alt = std::get_if<PrescriptionSolution>(&rep.alternative_result)) {
    c.require(schedule_closes(*alt), "alternative schedule closure");
    c.detail << "; alternative " << render(alt->certificate->chern) << " (delta " << alt->certificate->delta << ")";
  } else {
    c.detail << "; alternative " << std::get<Infeasible>(rep.alternative_result).to_string();
  }
}

// 5. Stirling table.
void stirling(Check& c) {
  for (int p = 0; p <= 5; ++p)
    for (int k = 0; k <= 5; ++k) {
      c.require(stirling_A(p, k) == oracle::kStirlingTable[p][k], "table entry " + std::to_string(p) + "," + std::to_string(k));
      c.require(stirling_A(p, k) == oracle::signed_stirling_a(p, k), "recurrence " + std::to_string(p) + "," + std::to_string(k));
    }
  c.detail << "36 entries";
}

// 6. Identity sweeps.
void identities(Check& c) {
  long checked = 0;
  for (int n = 2; n <= 5; ++n)
    for (int d = 2; d <= n; ++d)
      for (int a = -3; a <= 3; ++a)
        for (int m = -3; m <= 3; ++m) {
          c.require(identity_product(a, m, d, n), "product identity");
          ++checked;
        }
  Rng rng(606);
  std::uniform_int_distribution<int> weight(-4, 4);
  for (int n : {3, 4}) {
    const Fan fan(n);
    for (int k = 1; k <= n; ++k)
      for (const Cone& sigma : fan.cones(k))
        for (int trial = 0; trial < 5; ++trial) {
          std::vector<BigInt> m;
          for (int r = 0; r < fan.ray_count(); ++r) m.push_back(weight(rng));
          for (int p = 0; p <= fan.codim(sigma); ++p) {
            c.require(identity_cone_sum(fan, sigma, m, p), "cone sum at " + sigma.to_string());
            ++checked;
          }
        }
  }
  c.detail << checked << " cases";
}

// 7. Closure over every injection visited in 2 to 4.
void closure(Check& c) {
  c.require(g_closure.injections > 0, "no injections visited");
  c.require(g_closure.failures == 0, std::to_string(g_closure.failures) + " ratio mismatches");
  c.require(g_closure.exp_log_failures == 0, "exp(log) roundtrip");
  c.detail << g_closure.injections << " injections";
}

// 8. Factorization of random drop sequences.
void factorization(Check& c) {
  Rng rng(808);
  std::uniform_int_distribution<int> length(1, 6);
  long steps = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 3;
    const Multifiltration f = to_multifiltration(random_reflexive(rng, n, 4, LineMode::Pooled, 2));
    std::vector<int> dims;
    for (int k = 1; k <= n; ++k) dims.push_back(k);
    const DropSequence seq = random_drops(rng, f, length(rng), dims);
    const auto chain = factorize(seq.result, f);
    c.require(recompose(f, chain) == seq.result, "recomposition at instance " + std::to_string(i));
    // Listed from F down to E, so read from E the dimensions decrease.
    for (std::size_t j = 1; j < chain.size(); ++j)
      c.require(chain[j - 1].k0 <= chain[j].k0, "k0 order at instance " + std::to_string(i));
    steps += static_cast<long>(chain.size());
  }
  c.detail << "200 sequences, " << steps << " injections";
}

// 9. Bogomolov-Gieseker on semistable data.
void bogomolov(Check& c) {
  Rng rng(909);
  int found = 0, drawn = 0;
  while (found < 500 && drawn < 20000) {
    ++drawn;
    const R2Filtration f = random_reflexive(rng, 2 + drawn % 4, 6, LineMode::Pooled, 3);
    if (stability(f) == Stability::Unstable) continue;
    ++found;
    c.require(discriminant(f) >= 0, "negative discriminant");
  }
  c.require(found == 500, "only " + std::to_string(found) + " semistable instances");
  c.detail << found << " semistable of " << drawn << " drawn";
}

// 10. Smoothability obstruction.
void obstruction(Check& c) {
  Rng rng(1010);
  std::uniform_int_distribution<int> length(1, 6);
  int q4 = 0, q2 = 0, tries = 0;
  while ((q4 < 100 || q2 < 100) && tries < 10000) {
    ++tries;
    const bool want_q4 = q4 < 100 && (q2 >= 100 || tries % 2 == 1);
    const int n = want_q4 ? 4 + tries % 2 : 3 + tries % 3;
    const R2Filtration hull = random_reflexive(rng, n, 5, LineMode::Distinct, 2);
    if (!want_q4 && stability(hull) == Stability::Unstable) continue;
    std::vector<int> dims;
    if (!want_q4) dims.push_back(2);
    for (int k = 4; k <= n; ++k) dims.push_back(k);
    const Multifiltration f = to_multifiltration(hull);
    const DropSequence seq = random_drops(rng, f, length(rng), dims);
    if (seq.result == f) continue;
    const Verdict v = obstruction_verdict(seq.result);
    if (!v.which) continue;
    if (*v.which == ObstructionCase::Q4) {
      if (q4 >= 100) continue;
      ++q4;
    } else {
      if (q2 >= 100) continue;
      ++q2;
      c.require(q2_system_holds(seq.result, v.profile), "q=2 system");
    }
    c.require(v.not_smoothable && v.witness_value != 0, "zero witness for " + to_string(*v.which));
    c.require(leading_log_check(seq.result).holds(), "leading log coefficient");
  }
  c.require(q4 + q2 >= 200, "only " + std::to_string(q4 + q2) + " instances");
  c.detail << q4 << " with q>=4, " << q2 << " with q=2";
}

// 11. Schwarzenberger congruences.
void schwarzenberger_sanity(Check& c) {
  Rng rng(1111);
  std::uniform_int_distribution<int> small(-50, 50);
  for (int i = 0; i < 200; ++i) {
    const BigInt a = small(rng), b = small(rng);
    for (int n = 2; n <= 6; ++n) {
      c.require(schwarzenberger(a + b, a * b, n).ok, "split pair rejected");
      c.require(oracle::rank2_integral(a + b, a * b, n), "oracle rejects split pair");
    }
  }
  std::uniform_int_distribution<int> wide(-1000, 1000);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const BigInt c1 = wide(rng), c2 = wide(rng);
    const bool general = schwarzenberger(c1, c2, 4).ok;
    const bool by_oracle =
        oracle::rank2_integral(c1, c2, 2) && oracle::rank2_integral(c1, c2, 3) && oracle::rank2_integral(c1, c2, 4);
    c.require(general == by_oracle, "general form disagrees with the oracle");
    c.require(schwarzenberger_p4_reduced(c1, c2) == general,
              "reduction disagrees at (" + c1.get_str() + "," + c2.get_str() + ")");
    agree += schwarzenberger_p4_reduced(c1, c2) == general;
  }
  c.detail << "200 split pairs, reduction agrees on " << agree << "/200";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"chern-triple-oracle", chern_triple},    {"p4-odd-family", odd_family},
      {"p4-even-family", even_family},          {"p5-recipe", quintic},
      {"stirling-table", stirling},             {"identity-suite", identities},
      {"ratio-closure", closure},               {"factorization-recomposition", factorization},
      {"bogomolov-gieseker", bogomolov},        {"obstruction-witness", obstruction},
      {"schwarzenberger", schwarzenberger_sanity},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " threw: " << e.what();
    }
    failed += c.ok ? 0 : 1;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << index << " " << name << ": " << c.detail.str() << std::endl;
  }
  return failed;
}
