#pragma once
// Reference values and brute-force re-derivations kept apart from the library.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// A_{p,k} for 0 <= p, k <= 5, row p.
inline const std::array<std::array<long, 6>, 6> kStirlingTable = {{
    {1, 0, 0, 0, 0, 0},
    {0, -1, 0, 0, 0, 0},
    {0, -1, 2, 0, 0, 0},
    {0, -1, 6, -6, 0, 0},
    {0, -1, 14, -36, 24, 0},
    {0, -1, 30, -150, 240, -120},
}};

// S(p, k) by the triangle recurrence.
inline mpz_class stirling2(int p, int k) {
  std::vector<std::vector<mpz_class>> s(static_cast<std::size_t>(p) + 1,
                                        std::vector<mpz_class>(static_cast<std::size_t>(p) + 2, 0));
  s[0][0] = 1;
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  return k <= p ? s[p][k] : mpz_class(0);
}

inline mpz_class signed_stirling_a(int p, int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  mpz_class v = f * stirling2(p, k);
  return k % 2 == 0 ? v : mpz_class(-v);
}

// Elementary symmetric e_k by subset enumeration.
inline mpz_class elementary(const std::vector<mpz_class>& x, int k) {
  mpz_class total = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    mpz_class prod = 1;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= x[i];
    total += prod;
  }
  return total;
}

// Coefficients of (1 + x_1 H) ... (1 + x_r H) truncated at H^n.
inline std::vector<mpz_class> linear_product(const std::vector<mpz_class>& roots, int n) {
  std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (const auto& r : roots)
    for (int k = n; k >= 1; --k) c[k] += r * c[k - 1];
  return c;
}

// Chern data (c1, c2) of a rank-2 bundle fails the m-th integrality condition
// iff rising(x) + rising(y) - rising(x + y) is not divisible by m!, evaluated
// on the formal roots through Newton's recursion for power sums.
inline bool rank2_integral(const mpz_class& c1, const mpz_class& c2, int m) {
  std::vector<mpz_class> e = {0, 1};  // t (t + 1) ... (t + m - 1)
  for (int f = 1; f < m; ++f) {
    std::vector<mpz_class> next(e.size() + 1, 0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      next[j + 1] += e[j];
      next[j] += e[j] * f;
    }
    e = next;
  }
  std::vector<mpz_class> power(static_cast<std::size_t>(m) + 1);
  power[0] = 2;
  if (m >= 1) power[1] = c1;
  for (int j = 2; j <= m; ++j) power[j] = c1 * power[j - 1] - c2 * power[j - 2];
  mpz_class sum = 0, c1_pow = 1;
  for (int j = 1; j <= m; ++j) {
    c1_pow *= c1;
    sum += e[j] * (power[j] - c1_pow);
  }
  mpz_class fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  return sum % fact == 0;
}

}  // namespace oracle
