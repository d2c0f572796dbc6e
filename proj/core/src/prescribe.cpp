#include "tsk/prescribe.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"

namespace tsk {

namespace {

BigInt big(Coord x) { return BigInt(static_cast<long>(x)); }

Coord to_coord(const BigInt& x) {
  if (!x.fits_slong_p()) throw RangeError("value " + x.get_str() + " does not fit a lattice coordinate");
  return static_cast<Coord>(x.get_si());
}

BigInt pow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

BigInt choose(const BigInt& top, unsigned long k) {
  if (top < 0) return 0;
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), k);
  return r;
}

BigInt factorial(unsigned long k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

// sum_{x=0}^{count-1} x^t = sum_k k! S(t,k) C(count, k+1)
BigInt power_sum_from_zero(const BigInt& count, int t) {
  BigInt s = 0;
  for (int k = 0; k <= t; ++k) {
    const BigInt a = stirling_A(t, k);
    s += (k % 2 == 0 ? a : BigInt(-a)) * choose(count, static_cast<unsigned long>(k) + 1);
  }
  return s;
}

const BigInt& p_of(const std::vector<BigInt>& p, int k) {
  if (k < 3 || k - 3 >= static_cast<int>(p.size())) throw RangeError("block index out of range");
  return p[static_cast<std::size_t>(k - 3)];
}

TruncIntPoly expected_chern(const TruncIntPoly& start) {
  TruncIntPoly e = TruncIntPoly::one(start.n());
  for (int k = 1; k <= std::min(2, start.n()); ++k) e[k] = start[k];
  return e;
}

}  // namespace

R2Filtration PrescriptionProblem::start() const {
  check();
  return R2Filtration::b_zero(Fan(n), start_c);
}

void PrescriptionProblem::check() const {
  if (n < 3) throw RangeError("prescription needs n >= 3");
  if (static_cast<int>(start_c.size()) != n + 1) throw ShapeError("start data needs one c_rho per ray");
  if (std::any_of(start_c.begin(), start_c.end(), [](Coord c) { return c < 0; })) {
    throw RangeError("c_rho must be nonnegative");
  }
  if (start_c[0] < 1) throw RangeError("c_rho0 must be at least 1");
}

std::vector<BigInt> tilde_c(const TruncIntPoly& c) {
  if (c[0] != 1) throw DomainError("constant term must be 1");
  const int n = c.n();
  TruncRatPoly diff = log(c) - log(expected_chern(c));
  std::vector<BigInt> out;
  for (int q = 3; q <= n; ++q) {
    Rational v = -diff[q] * q;
    v.canonicalize();
    if (v.get_den() != 1) throw InternalConsistencyError("tilde c is not integral at q = " + std::to_string(q));
    out.push_back(v.get_num());
  }
  return out;
}

BigInt weight_schedule(Coord c_rho0, const std::vector<BigInt>& p, int k, const BigInt& j) {
  const BigInt& pk = p_of(p, k);
  if (j < 1 || j > pk) throw RangeError("injection index out of range");
  BigInt w = -big(c_rho0);
  for (int i = 3; i < k; ++i) w += p_of(p, i);
  return w + (j - 1);
}

namespace {

// p may be a prefix of the solution while solving; only blocks <= k are read.
BigInt block_power_sum(Coord c_rho0, const std::vector<BigInt>& p, int k, int l) {
  const BigInt& pk = p_of(p, k);
  if (pk == 0) return 0;
  const BigInt base = weight_schedule(c_rho0, p, k, 1);
  BigInt s = 0;
  for (int t = 0; t <= l; ++t) {
    s += binomial(l, t) * pow(base, static_cast<unsigned long>(l - t)) * power_sum_from_zero(pk, t);
  }
  return s;
}

}  // namespace

BigInt S_kl(Coord c_rho0, const std::vector<BigInt>& p, int k, int l) {
  const int n = static_cast<int>(p.size()) + 2;
  if (l < 0 || l > n - k) throw RangeError("power out of range");
  return block_power_sum(c_rho0, p, k, l);
}

std::string Infeasible::to_string() const {
  return reason + " at q=" + std::to_string(q) + " (value " + tsk::to_string(value) + ")";
}

BigInt PrescriptionSolution::total_injections() const {
  return std::accumulate(p.begin(), p.end(), BigInt(0));
}

std::pair<Cone, Coords> PrescriptionSolution::injection(int k, Coord j) const {
  const BigInt& pk = p_of(p, k);
  if (j < 1 || big(j) > pk) throw RangeError("injection index out of range");
  std::vector<int> rays(static_cast<std::size_t>(k));
  std::iota(rays.begin(), rays.end(), 0);
  Coords m(static_cast<std::size_t>(k), 0);
  m[0] = -problem.start_c[0];
  for (int i = 2; i <= k - 2; ++i) m[static_cast<std::size_t>(i)] = to_coord(p_of(p, i + 1));
  m[static_cast<std::size_t>(k - 1)] = j - 1;
  return {Cone::of(std::span<const int>(rays)), m};
}

SolveResult solve_p(const PrescriptionProblem& problem) {
  problem.check();
  const int n = problem.n;
  const Coord c0 = problem.start_c[0];
  const auto tilde = tilde_c(chern_total(problem.start()));
  PrescriptionSolution sol;
  sol.problem = problem;
  for (int q = 3; q <= n; ++q) {
    BigInt known = 0;
    for (int k = 3; k < q; ++k) {
      for (int l = k; l <= q; ++l) {
        known += binomial(q, l) * stirling_A(l, k) * block_power_sum(c0, sol.p, k, q - l);
      }
    }
    Rational v(tilde[static_cast<std::size_t>(q - 3)] - known, stirling_A(q, q));
    v.canonicalize();
    if (v.get_den() != 1) return Infeasible{"NonInteger", q, v};
    if (v < 0) return Infeasible{"Negative", q, v};
    sol.p.push_back(v.get_num());
  }
  for (int k = 3; k <= n; ++k) {
    const BigInt& pk = p_of(sol.p, k);
    if (pk == 0) continue;
    auto [sigma, m0] = sol.injection(k, 1);
    sol.runs.push_back(DropRun{k, sigma, m0, pk, weight_schedule(c0, sol.p, k, 1)});
  }
  return sol;
}

std::vector<Rational> solve_p_closed_p4(const TruncIntPoly& c, Coord c_rho0) {
  if (c.n() != 4) throw RangeError("closed form needs n = 4");
  const Rational c1(c[1]), c3(c[3]), c4(c[4]);
  Rational p3 = c3 / 2;
  Rational p4 = (c1 * c3 - c4) / 6 + c3 - Rational(big(c_rho0) + 1) * c3 / 2 + c3 * c3 / 8;
  p3.canonicalize();
  p4.canonicalize();
  return {p3, p4};
}

std::vector<Rational> solve_p_closed_p5(const TruncIntPoly& c) {
  if (c.n() != 5) throw RangeError("closed form needs n = 5");
  const Rational c1(c[1]), c2(c[2]), c3(c[3]), c4(c[4]), c5(c[5]);
  const Rational c3_2 = c3 * c3, c3_3 = c3_2 * c3, c3_4 = c3_3 * c3;
  Rational p3 = c3 / 2;
  Rational p4 = (c1 * c3 - c4) / 6 + c3_2 / 8;
  Rational p5 = (c5 - c1 * c4 - c3 * c2 + c3 * c1 * c1) / 24 - c3_2 * c4 / 48 - c1 * c3 * c4 / 36 - c3 * c4 / 12 +
                c3_3 * c1 / 48 + c1 * c1 * c3_2 / 72 + c3_2 * c1 / 12 + c1 * c3 / 12 + c3_4 / 128 + c3_3 / 24 +
                c3_2 / 16 - c3 / 24 + c4 * c4 / 72 - c4 / 12;
  for (Rational* x : {&p3, &p4, &p5}) x->canonicalize();
  return {p3, p4, p5};
}

bool positivity_check_p4(const TruncIntPoly& c, Coord c_rho0) {
  if (c.n() != 4) throw RangeError("positivity check needs n = 4");
  const Rational c1(c[1]), c3(c[3]), c4(c[4]);
  return (c1 * c3 - c4) / 3 + c3 + c3 * c3 / 4 >= Rational(big(c_rho0)) * c3;
}

Schwarzenberger schwarzenberger(const BigInt& c1, const BigInt& c2, int n) {
  if (n < 2) throw RangeError("Schwarzenberger conditions need n >= 2");
  for (int m = 2; m <= n; ++m) {
    // e[j]: coefficient of t^j in t (t + 1) ... (t + m - 1)
    std::vector<BigInt> e = {BigInt(0), BigInt(1)};
    for (int f = 1; f < m; ++f) {
      std::vector<BigInt> next(e.size() + 1, BigInt(0));
      for (std::size_t j = 0; j < e.size(); ++j) {
        next[j + 1] += e[j];
        next[j] += e[j] * f;
      }
      e = std::move(next);
    }
    BigInt sum = 0;
    for (int j = 2; j <= m; ++j) {
      for (int i = 1; i <= j / 2; ++i) {
        const BigInt term = e[static_cast<std::size_t>(j)] * (binomial(j - i, i) + binomial(j - i - 1, i - 1)) *
                            pow(c1, static_cast<unsigned long>(j - 2 * i)) * pow(c2, static_cast<unsigned long>(i));
        sum += i % 2 == 0 ? term : BigInt(-term);
      }
    }
    const BigInt mod = factorial(static_cast<unsigned long>(m));
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), sum.get_mpz_t(), mod.get_mpz_t());
    if (r != 0) return Schwarzenberger{false, m, r};
  }
  return Schwarzenberger{};
}

bool schwarzenberger_p4_reduced(const BigInt& c1, const BigInt& c2) {
  const BigInt v = c2 * (c2 + 1 - 3 * c1 - 2 * c1 * c1);
  return mpz_divisible_ui_p(v.get_mpz_t(), 12) != 0;
}

BuildResult build_sequence(const PrescriptionSolution& solution, const BuildOptions& options) {
  const PrescriptionProblem& problem = solution.problem;
  const Coord c0 = problem.start_c[0];
  const Subspace zero = Subspace::zero(2);
  BuildResult out{to_multifiltration(problem.start()), to_multifiltration(problem.start()), 0, 0};
  Multifiltration& current = out.final_sheaf;

  auto step = [&](const Multifiltration& before, Multifiltration after, int k, Coord j) {
    ElementaryResult res = elementary_check(after, before);
    const auto* inj = std::get_if<ElementaryInjection>(&res);
    if (inj == nullptr) {
      const auto& bad = std::get<NotElementary>(res);
      throw InternalConsistencyError("scheduled injection is not elementary: " + bad.clause + " " + bad.detail);
    }
    const BigInt want = weight_schedule(c0, solution.p, k, big(j));
    if (inj->k0 != k || !inj->saturated || inj->m_big_sigma != want) {
      throw InternalConsistencyError("injection " + std::to_string(k) + "," + std::to_string(j) + " has k0 " +
                                     std::to_string(inj->k0) + ", weight " + inj->m_big_sigma.get_str() +
                                     " (expected " + want.get_str() + ")" + (inj->saturated ? "" : ", not saturated"));
    }
    if (options.visitor) options.visitor(before, after, *inj);
    return after;
  };

  for (const DropRun& run : solution.runs) {
    const Coord count = to_coord(run.count);
    Coord seq = count;
    if (options.sequential_per_block >= 0) seq = std::min(count, to_coord(options.sequential_per_block));
    for (Coord j = 1; j <= seq; ++j) {
      auto [sigma, m] = solution.injection(run.k, j);
      current = step(current, apply_elementary(current, sigma, m, zero), run.k, j);
    }
    out.sequential_steps += seq;
    const Coord rest = count - seq;
    if (rest == 0) continue;
    auto [sigma, m_first] = solution.injection(run.k, seq + 1);
    Multifiltration before_last = apply_drop_run(current, sigma, m_first, run.k - 1, rest - 1, zero);
    auto [sigma_last, m_last] = solution.injection(run.k, count);
    current = step(before_last, apply_elementary(before_last, sigma_last, m_last, zero), run.k, count);
    out.bulk_steps += rest;
  }
  if (!(reflexive_hull(current) == out.start)) {
    throw InternalConsistencyError("the reflexive hull of the final sheaf is not the start sheaf");
  }
  return out;
}

TruncIntPoly schedule_ratio(const PrescriptionSolution& solution) {
  const int n = solution.problem.n;
  TruncIntPoly r = TruncIntPoly::one(n);
  for (const DropRun& run : solution.runs) r = r * ratio_run(run.k, run.first_weight, run.count, n);
  return r;
}

Certificate certify(PrescriptionSolution& solution, const BuildOptions& options) {
  const TruncIntPoly start_chern = chern_total(solution.problem.start());
  const TruncIntPoly target = expected_chern(start_chern);
  if (!(start_chern == target * schedule_ratio(solution))) {
    throw InternalConsistencyError("closed-form ratios do not connect the start to the target");
  }
  BuildResult built = build_sequence(solution, options);
  Certificate cert;
  cert.chern = chern_general(built.final_sheaf);
  if (!(cert.chern == target)) {
    throw InternalConsistencyError("final Chern polynomial " + render(cert.chern) + " differs from " + render(target));
  }
  cert.verification = built.bulk_steps == 0 ? "klyachko, every injection checked"
                                            : "klyachko, " + built.sequential_steps.get_str() +
                                                  " injections checked one by one, runs checked at their last step";
  cert.delta = discriminant(cert.chern);
  cert.stability = stability(hull_data(built.final_sheaf));
  cert.schwarzenberger = schwarzenberger(cert.chern[1], cert.chern[2], solution.problem.n);
  cert.indecomposable_if_smoothable = cert.stability == Stability::Stable && cert.delta > 0;
  solution.certificate = cert;
  return cert;
}

namespace {

PrescriptionSolution solve_and_certify(const PrescriptionProblem& problem, const BuildOptions& options) {
  SolveResult res = solve_p(problem);
  if (auto* bad = std::get_if<Infeasible>(&res)) {
    throw InternalConsistencyError("family instance is infeasible: " + bad->to_string());
  }
  auto sol = std::get<PrescriptionSolution>(std::move(res));
  certify(sol, options);
  return sol;
}

}  // namespace

PrescriptionSolution family_p4_odd(int t, const BuildOptions& options) {
  if (t < 1) throw RangeError("t must be positive");
  const Coord x = 6 * static_cast<Coord>(t);
  return solve_and_certify(PrescriptionProblem{4, {1, x, x, 0, 0}}, options);
}

PrescriptionSolution family_p4_even(int t, const BuildOptions& options) {
  if (t < 1) throw RangeError("t must be positive");
  const Coord big_t = 4 * static_cast<Coord>(t) + 3;
  return solve_and_certify(PrescriptionProblem{4, {1, big_t, big_t, big_t, 0}}, options);
}

const PrescriptionSolution* P5Report::reported() const {
  for (const SolveResult* r : {&recipe_result, &alternative_result}) {
    if (const auto* s = std::get_if<PrescriptionSolution>(r); s != nullptr && s->certificate) return s;
  }
  return nullptr;
}

P5Report family_p5(int t, const BuildOptions& options) {
  if (t < 1) throw RangeError("t must be positive");
  const Coord big_c = 120 * static_cast<Coord>(t);
  const Coord small_c = 12 * static_cast<Coord>(t);
  P5Report rep{PrescriptionProblem{5, {1, big_c, big_c, 0, 0, 0}}, PrescriptionProblem{5, {1, small_c, small_c, 0, 0, 0}},
               Infeasible{}, Infeasible{}};
  rep.recipe_result = solve_p(rep.recipe);
  rep.alternative_result = solve_p(rep.alternative);
  for (SolveResult* r : {&rep.recipe_result, &rep.alternative_result}) {
    if (auto* s = std::get_if<PrescriptionSolution>(r)) certify(*s, options);
  }
  return rep;
}

PnResult family_pn(int n, const BuildOptions& options, std::optional<BigInt> bound) {
  if (n < 3) throw RangeError("n must be at least 3");
  BigInt limit = factorial(static_cast<unsigned long>(n));
  if (bound) {
    limit = *bound;
  } else {
    BigInt l = 1;
    for (unsigned long i = 2; i <= static_cast<unsigned long>(n); ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
    limit *= l;
  }
  long probes = 0;
  for (BigInt m = 1; m <= limit; ++m) {
    ++probes;
    PrescriptionProblem problem{n, Coords(static_cast<std::size_t>(n) + 1, 0)};
    problem.start_c[0] = 1;
    problem.start_c[1] = problem.start_c[2] = to_coord(m);
    const TruncIntPoly c = chern_total(problem.start());
    if (!schwarzenberger(c[1], c[2], n).ok) continue;
    SolveResult res = solve_p(problem);
    if (auto* sol = std::get_if<PrescriptionSolution>(&res)) {
      certify(*sol, options);
      return PnResult{m, std::move(*sol), probes};
    }
  }
  throw SearchExhaustedError("no multiplier up to " + limit.get_str() + " works for n = " + std::to_string(n) +
                             " after " + std::to_string(probes) + " probes");
}

}  // namespace tsk
