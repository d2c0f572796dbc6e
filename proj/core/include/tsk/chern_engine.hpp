#pragma once

#include <utility>
#include <vector>

#include "tsk/chern_ring.hpp"
#include "tsk/multifilt.hpp"

namespace tsk {

// A_{p,k} = sum_i C(k,i) (-1)^i i^p = (-1)^k k! S(p,k).
BigInt stirling_A(int p, int k);

enum class Validation { Check, Skip };

// Total Chern class from the mixed-difference dimensions of every cone.
TruncIntPoly chern_general(const Multifiltration& m, Validation v = Validation::Check);

// c(F)/c(E) for a saturated k0-elementary injection of weight m.
TruncIntPoly ratio_saturated(int k0, const BigInt& m, int n);

// Product of ratio_saturated(k0, m + j, n) over 0 <= j < count.
TruncIntPoly ratio_run(int k0, const BigInt& m, const BigInt& count, int n);

// Product over the cofaces of sigma0; requires a saturated injection.
TruncIntPoly ratio_saturated_conewise(const ElementaryInjection& inj, int n);

TruncRatPoly log_ratio_saturated(int k0, const BigInt& m, int n);

// Predicted coefficients of H^{k0} and H^{k0+1} in log(c(F)/c(E)).
std::pair<Rational, Rational> log_ratio_leading(int k0, const BigInt& m);
std::pair<Rational, Rational> log_ratio_leading(const ElementaryInjection& inj);

// Telescoping product identity over m >= a with exponents (-1)^{n-d+i} C(d,i).
bool identity_product(const BigInt& a, const BigInt& m, int d, int n);

// sum over cofaces sigma of sigma0 of (-1)^codim(sigma) m_sigma^p == m_Sigma^p,
// with m_sigma the sum of m_rho over the rays of sigma.
bool identity_cone_sum(const Fan& fan, const Cone& sigma0, const std::vector<BigInt>& m_rho, int p);

BigInt binomial(long n, long k);

}  // namespace tsk
