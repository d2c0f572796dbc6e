#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsk/chern_ring.hpp"
#include "tsk/multifilt.hpp"

namespace tsk {

// Codimension of hull/E and the number of k-elementary injections in the
// factorization of E into its reflexive hull.
struct TorsionProfile {
  int q = 0;
  std::map<int, long> p;
  std::vector<ElementaryInjection> chain;

  long count(int k) const;
};

TorsionProfile torsion_profile(const Multifiltration& e);

struct LeadingLog {
  int q = 0;
  Rational actual;     // H^q coefficient of log(c(hull) / c(E))
  Rational predicted;  // (-1)^{q-1} (q-1)! p_q
  bool holds() const { return actual == predicted; }
};

LeadingLog leading_log_check(const Multifiltration& e);

// For q = 2 with no 3-injections: c2(F) - c2(E) = -p2 and
// c3(F) - c3(E) + c1(F)(c2(E) - c2(F)) = -2 (sum of 2-injection weights + p2).
bool q2_system_holds(const Multifiltration& e, const TorsionProfile& profile);

enum class ObstructionCase { Q4, Q2 };

struct Verdict {
  bool not_smoothable = false;
  std::optional<ObstructionCase> which;  // set whenever the hypotheses of a case hold
  int witness = 0;                       // index of the nonzero Chern class, 0 if none
  BigInt witness_value;
  TorsionProfile profile;
  TruncIntPoly chern = TruncIntPoly::one(0);             // of E as given
  TruncIntPoly chern_normalized = TruncIntPoly::one(0);  // after moving the hull to b_rho = 0
  std::string note;
};

Verdict obstruction_verdict(const Multifiltration& e);

std::string to_string(ObstructionCase c);

}  // namespace tsk
