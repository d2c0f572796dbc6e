#include "tsk/obstruct.hpp"

#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"
#include "tsk/reflexive_r2.hpp"

namespace tsk {

long TorsionProfile::count(int k) const {
  auto it = p.find(k);
  return it == p.end() ? 0 : it->second;
}

TorsionProfile torsion_profile(const Multifiltration& e) {
  if (e.rank() != 2) throw UnsupportedError("torsion profiles need rank 2");
  const Multifiltration hull = reflexive_hull(e);
  if (hull == e) throw DegenerateInputError("E is reflexive; the quotient is zero");
  TorsionProfile out;
  out.chain = factorize(e, hull);
  for (const auto& inj : out.chain) ++out.p[inj.k0];
  out.q = out.p.begin()->first;
  return out;
}

LeadingLog leading_log_check(const Multifiltration& e) {
  const TorsionProfile profile = torsion_profile(e);
  const TruncIntPoly ratio = chern_general(reflexive_hull(e)) * inverse(chern_general(e));
  LeadingLog out;
  out.q = profile.q;
  out.actual = log(ratio)[profile.q];
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(profile.q - 1));
  out.predicted = Rational(f * profile.count(profile.q) * (profile.q % 2 == 1 ? 1 : -1));
  return out;
}

bool q2_system_holds(const Multifiltration& e, const TorsionProfile& profile) {
  if (profile.q != 2 || profile.count(3) != 0) throw PreconditionError("needs q = 2 and no 3-injections");
  if (e.fan().n() < 3) throw PreconditionError("needs n >= 3");
  const TruncIntPoly ce = chern_general(e);
  const TruncIntPoly cf = chern_general(reflexive_hull(e));
  const BigInt p2 = profile.count(2);
  BigInt weights = 0;
  for (const auto& inj : profile.chain) {
    if (inj.k0 == 2) weights += inj.m_big_sigma;
  }
  return cf[2] - ce[2] == -p2 && cf[3] - ce[3] + cf[1] * (ce[2] - cf[2]) == -2 * (weights + p2);
}

std::string to_string(ObstructionCase c) { return c == ObstructionCase::Q4 ? "Q4" : "Q2"; }

Verdict obstruction_verdict(const Multifiltration& e) {
  if (e.rank() != 2) throw UnsupportedError("the obstruction theorem is stated for rank 2");
  const int n = e.fan().n();
  Verdict v;
  v.chern = chern_general(e);
  v.chern_normalized = v.chern;
  const Multifiltration hull = reflexive_hull(e);
  if (hull == e) {
    v.note = "reflexive input; no quotient";
    return v;
  }
  v.profile = torsion_profile(e);

  // Twist so that the hull has b_rho = 0; the theorem is stated in that normal form.
  const R2Filtration hull_rays = hull_data(hull);
  Coords shift;
  for (const auto& d : hull_rays.rays()) shift.push_back(-d.b);
  v.chern_normalized = chern_general(e.twisted(shift), Validation::Skip);

  const int q = v.profile.q;
  if (n >= 4 && q >= 4) {
    v.which = ObstructionCase::Q4;
    for (int k : {3, q}) {
      if (v.chern_normalized[k] != 0) {
        v.witness = k;
        break;
      }
    }
  } else if (n >= 3 && q == 2 && v.profile.count(3) == 0 && stability(hull_rays) != Stability::Unstable) {
    v.which = ObstructionCase::Q2;
    if (v.chern_normalized[3] != 0) v.witness = 3;
  }
  if (!v.which) {
    v.note = "hypotheses of neither case hold";
  } else if (v.witness == 0) {
    v.note = "hypotheses hold but no nonzero witness class was found";
  } else {
    v.not_smoothable = true;
    v.witness_value = v.chern_normalized[v.witness];
  }
  return v;
}

}  // namespace tsk
