#include <doctest.h>

#include "../support/oracles.hpp"
#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"
#include "tsk/prescribe.hpp"

#include <random>

using namespace tsk;

namespace {

TruncIntPoly start_chern(int n, Coords c) { return chern_total(PrescriptionProblem{n, std::move(c)}.start()); }

PrescriptionSolution solved(int n, Coords c) {
  SolveResult r = solve_p(PrescriptionProblem{n, std::move(c)});
  REQUIRE(std::holds_alternative<PrescriptionSolution>(r));
  return std::get<PrescriptionSolution>(r);
}

}  // namespace

TEST_CASE("normalized target classes") {
  CHECK(tilde_c(start_chern(4, {1, 6, 6, 0, 0})) == std::vector<BigInt>{-108, 1872});
  CHECK(tilde_c(parse_int_poly("1 + 5*H + 7*H^2", 5)) == std::vector<BigInt>{0, 0, 0});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-20, 20);
  for (int trial = 0; trial < 30; ++trial) {
    TruncIntPoly c = TruncIntPoly::one(5);
    for (int k = 1; k <= 5; ++k) c[k] = coef(rng);
    const auto t = tilde_c(c);
    CHECK(t[0] == -3 * c[3]);
    CHECK(t[1] == 4 * (c[1] * c[3] - c[4]));
    CHECK(t[2] == -5 * (c[5] - c[1] * c[4] - c[3] * c[2] + c[3] * c[1] * c[1]));
  }
}

TEST_CASE("weight schedule") {
  CHECK(weight_schedule(1, {18, 240}, 3, 1) == -1);
  CHECK(weight_schedule(1, {18, 240}, 3, 2) == 0);
  CHECK(weight_schedule(1, {18, 240}, 4, 1) == 17);
}

TEST_CASE("block power sums") {
  CHECK(S_kl(1, {18, 240}, 3, 1) == 135);
  CHECK(S_kl(1, {0, 240}, 3, 1) == 0);
  CHECK(S_kl(1, {18, 240}, 4, 0) == 240);
}

TEST_CASE("triangular solve") {
  CHECK(solved(4, {1, 6, 6, 0, 0}).p == std::vector<BigInt>{18, 240});
  CHECK(solved(4, {1, 7, 7, 7, 0}).p == std::vector<BigInt>{245, 31752});
  const SolveResult bad = solve_p(PrescriptionProblem{4, {1, 1, 1, 0, 0}});
  REQUIRE(std::holds_alternative<Infeasible>(bad));
  CHECK(std::get<Infeasible>(bad).reason == "NonInteger");
  CHECK(std::get<Infeasible>(bad).q == 3);
  CHECK_THROWS_AS(PrescriptionProblem({2, {1, 1, 1}}).check(), RangeError);
}

TEST_CASE("closed forms agree with the solver") {
  CHECK(solve_p_closed_p4(start_chern(4, {1, 6, 6, 0, 0}), 1) == std::vector<Rational>{18, 240});
  CHECK(solve_p_closed_p4(start_chern(4, {1, 7, 7, 7, 0}), 1) == std::vector<Rational>{245, 31752});
  const auto p5 = solve_p_closed_p5(start_chern(5, {1, 120, 120, 0, 0, 0}));
  const auto p = solved(5, {1, 120, 120, 0, 0, 0}).p;
  REQUIRE(p5.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(p5[i] == Rational(p[i]));
    CHECK(p5[i] >= 0);
  }
}

TEST_CASE("positivity for the quartic case") {
  CHECK(positivity_check_p4(start_chern(4, {1, 6, 6, 0, 0}), 1));
  CHECK(positivity_check_p4(parse_int_poly("1 + 4*H + 4*H^2", 4), 1));
  CHECK_FALSE(positivity_check_p4(parse_int_poly("1 + 2*H^3 + 100*H^4", 4), 0));
}

TEST_CASE("Schwarzenberger congruences") {
  CHECK(schwarzenberger(13, 48, 4).ok);
  CHECK(schwarzenberger_p4_reduced(13, 48));
  const Schwarzenberger s = schwarzenberger(0, 1, 4);
  CHECK_FALSE(s.ok);
  CHECK((s.violated_m == 3 || s.violated_m == 4));
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int n = 2; n <= 6; ++n) CHECK(schwarzenberger(a + b, a * b, n).ok);
  for (int c1 = -6; c1 <= 6; ++c1)
    for (int c2 = -6; c2 <= 6; ++c2)
      for (int m = 2; m <= 5; ++m)
        CHECK((schwarzenberger(c1, c2, m).ok ==
               (oracle::rank2_integral(c1, c2, 2) && (m < 3 || oracle::rank2_integral(c1, c2, 3)) &&
                (m < 4 || oracle::rank2_integral(c1, c2, 4)) && (m < 5 || oracle::rank2_integral(c1, c2, 5)))));
}

TEST_CASE("build sequence for the first quartic member") {
  PrescriptionSolution sol = solved(4, {1, 6, 6, 0, 0});
  CHECK(sol.total_injections() == 258);
  std::vector<BigInt> weights;
  BuildOptions opt;
  opt.visitor = [&](const Multifiltration&, const Multifiltration&, const ElementaryInjection& inj) {
    weights.push_back(inj.m_big_sigma);
  };
  const BuildResult built = build_sequence(sol, opt);
  REQUIRE(weights.size() == 258);
  for (std::size_t i = 0; i < weights.size(); ++i) CHECK(weights[i] == BigInt(static_cast<long>(i) - 1));
  CHECK(built.sequential_steps == 258);
  CHECK(reflexive_hull(built.final_sheaf) == built.start);

  PrescriptionSolution none = solved(4, {1, 0, 0, 0, 0});
  CHECK(build_sequence(none).final_sheaf == to_multifiltration(none.problem.start()));
}

TEST_CASE("factorizing the first quartic member") {
  const PrescriptionSolution sol = solved(4, {1, 6, 6, 0, 0});
  const BuildResult built = build_sequence(sol);
  const auto chain = factorize(built.final_sheaf, built.start);
  REQUIRE(chain.size() == 258);
  long k3 = 0, k4 = 0;
  for (const auto& inj : chain) (inj.k0 == 3 ? k3 : k4) += 1;
  CHECK(k3 == 18);
  CHECK(k4 == 240);
}

TEST_CASE("family certificates") {
  PrescriptionSolution odd = family_p4_odd(1);
  REQUIRE(odd.certificate);
  CHECK(odd.certificate->chern == parse_int_poly("1 + 13*H + 48*H^2", 4));
  CHECK(odd.certificate->delta == 23);
  CHECK(odd.certificate->stability == Stability::Stable);

  BuildOptions bulk;
  bulk.sequential_per_block = 16;
  PrescriptionSolution even = family_p4_even(1, bulk);
  REQUIRE(even.certificate);
  CHECK(even.certificate->chern == parse_int_poly("1 + 22*H + 168*H^2", 4));
  // 3 T^2 + 6 T - 1 at T = 7.
  CHECK(even.certificate->delta == 188);

  BuildOptions fast;
  fast.sequential_per_block = 4;
  const P5Report p5 = family_p5(1, fast);
  REQUIRE(p5.reported() != nullptr);
  const auto& recipe = std::get<PrescriptionSolution>(p5.recipe_result);
  CHECK(recipe.certificate->chern == parse_int_poly("1 + 241*H + 14640*H^2", 5));
  CHECK(recipe.certificate->schwarzenberger.ok);

  const PnResult pn = family_pn(3, fast);
  REQUIRE(pn.solution.certificate);
  CHECK(pn.solution.certificate->schwarzenberger.ok);
  CHECK(pn.multiplier >= 1);
  CHECK_THROWS_AS(family_pn(4, fast, BigInt(1)), SearchExhaustedError);
}
