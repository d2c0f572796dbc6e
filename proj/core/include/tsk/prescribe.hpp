#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsk/chern_ring.hpp"
#include "tsk/multifilt.hpp"
#include "tsk/reflexive_r2.hpp"

namespace tsk {

// Start data: b_zero reflexive sheaf with c_rho per ray, ray 0 playing rho_0,
// default pairwise distinct lines.
struct PrescriptionProblem {
  int n = 0;
  std::vector<Coord> start_c;

  R2Filtration start() const;
  void check() const;
};

// -q times the H^q coefficient of log(c) - log(1 + c1 H + c2 H^2), q = 3..n.
std::vector<BigInt> tilde_c(const TruncIntPoly& c);

// Weight of the j-th injection of the k-block (1 <= j <= p_k); p[0] is p_3.
BigInt weight_schedule(Coord c_rho0, const std::vector<BigInt>& p, int k, const BigInt& j);
// Power sum of the k-block weights.
BigInt S_kl(Coord c_rho0, const std::vector<BigInt>& p, int k, int l);

// Injections of one k-block: drops at sigma_k = {0..k-1} starting from m0 and
// moving along ray k-1.
struct DropRun {
  int k = 0;
  Cone sigma;
  Coords m0;
  BigInt count;
  BigInt first_weight;
};

struct Infeasible {
  std::string reason;  // "NonInteger" or "Negative"
  int q = 0;
  Rational value;

  std::string to_string() const;
};

struct Schwarzenberger {
  bool ok = true;
  int violated_m = 0;
  BigInt residue;
};

struct Certificate {
  TruncIntPoly chern = TruncIntPoly::one(0);
  BigInt delta;
  Stability stability = Stability::Unstable;
  Schwarzenberger schwarzenberger;
  bool indecomposable_if_smoothable = false;
  std::string verification;  // how the final Chern polynomial was checked
};

struct PrescriptionSolution {
  PrescriptionProblem problem;
  std::vector<BigInt> p;  // p_3 .. p_n
  std::vector<DropRun> runs;
  std::optional<Certificate> certificate;

  BigInt total_injections() const;
  // (sigma, m) of the j-th injection of the k-block.
  std::pair<Cone, Coords> injection(int k, Coord j) const;
};

using SolveResult = std::variant<PrescriptionSolution, Infeasible>;

SolveResult solve_p(const PrescriptionProblem& problem);

std::vector<Rational> solve_p_closed_p4(const TruncIntPoly& c, Coord c_rho0);
std::vector<Rational> solve_p_closed_p5(const TruncIntPoly& c);
bool positivity_check_p4(const TruncIntPoly& c, Coord c_rho0);

Schwarzenberger schwarzenberger(const BigInt& c1, const BigInt& c2, int n);
// The n = 4 form c2 (c2 + 1 - 3 c1 - 2 c1^2) = 0 mod 12.
bool schwarzenberger_p4_reduced(const BigInt& c1, const BigInt& c2);

using StepVisitor =
    std::function<void(const Multifiltration& before, const Multifiltration& after, const ElementaryInjection& inj)>;

struct BuildOptions {
  // Injections per block applied and checked one at a time; the rest of the
  // block is applied as a single run and checked through its last step.
  BigInt sequential_per_block = -1;  // negative: all
  StepVisitor visitor;
};

struct BuildResult {
  Multifiltration start;
  Multifiltration final_sheaf;
  BigInt sequential_steps;
  BigInt bulk_steps;
};

BuildResult build_sequence(const PrescriptionSolution& solution, const BuildOptions& options = {});

// Product of the closed-form ratios over every scheduled injection.
TruncIntPoly schedule_ratio(const PrescriptionSolution& solution);

// Builds, checks the final Chern polynomial and fills the certificate.
Certificate certify(PrescriptionSolution& solution, const BuildOptions& options = {});

PrescriptionSolution family_p4_odd(int t, const BuildOptions& options = {});
PrescriptionSolution family_p4_even(int t, const BuildOptions& options = {});

struct P5Report {
  PrescriptionProblem recipe;       // (1, 120t, 120t, 0, 0, 0)
  PrescriptionProblem alternative;  // (1, 12t, 12t, 0, 0, 0)
  SolveResult recipe_result;
  SolveResult alternative_result;
  // The recipe when it validates, otherwise the alternative.
  const PrescriptionSolution* reported() const;
};
P5Report family_p5(int t, const BuildOptions& options = {});

struct PnResult {
  BigInt multiplier;
  PrescriptionSolution solution;
  long probes = 0;
};
// Minimal m with (1, m, m, 0, ..., 0) solvable and satisfying Schwarzenberger.
PnResult family_pn(int n, const BuildOptions& options = {}, std::optional<BigInt> bound = std::nullopt);

}  // namespace tsk
