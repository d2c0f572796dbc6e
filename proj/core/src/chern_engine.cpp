#include "tsk/chern_engine.hpp"

#include <map>
#include <mutex>

#include "grid.hpp"
#include "tsk/errors.hpp"

namespace tsk {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt stirling_A(int p, int k) {
  if (p < 0 || k < 0) throw RangeError("stirling_A indices must be nonnegative");
  static std::mutex mu;
  static std::vector<std::vector<BigInt>> table = {{BigInt(1)}};
  std::lock_guard<std::mutex> lock(mu);
  if (k > p) return 0;
  while (static_cast<int>(table.size()) <= p) {
    const auto q = static_cast<int>(table.size());
    std::vector<BigInt> row(static_cast<std::size_t>(q) + 1, BigInt(0));
    const auto& prev = table.back();
    for (int j = 1; j <= q; ++j) {
      BigInt left = j < q ? prev[j] : BigInt(0);
      row[j] = j * (left - prev[j - 1]);
    }
    table.push_back(std::move(row));
  }
  return table[p][k];
}

TruncIntPoly chern_general(const Multifiltration& m, Validation v) {
  if (v == Validation::Check) {
    auto violations = validate(m);
    if (!violations.empty()) throw InvalidMultifiltrationError(violations.front().to_string());
  }
  const int n = m.fan().n();
  std::map<BigInt, BigInt> exponent;  // <u_sigma, m> -> accumulated exponent
  for (const auto& [cone, list] : m.all_jumps()) {
    const int d = cone.dim();
    detail::Grid g = detail::grid_for(d, {&list});
    auto vals = detail::dense_values(g, list, m.rank());
    const int sign = (n - d) % 2 == 0 ? 1 : -1;
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (!g.bounded_below(c)) continue;
      long mixed = 0;
      for (unsigned mask = 0; mask < (1U << d); ++mask) {
        std::size_t cell = c;
        int bits = 0;
        for (int a = 0; a < d; ++a) {
          if ((mask >> a) & 1U) {
            cell -= g.stride(a);
            ++bits;
          }
        }
        mixed += (bits % 2 == 0 ? 1 : -1) * vals[cell].dim();
      }
      if (mixed == 0) continue;
      BigInt s = 0;
      for (Coord x : g.representative(c)) s += BigInt(static_cast<long>(x));
      exponent[s] += sign * mixed;
    }
  }
  TruncIntPoly out = TruncIntPoly::one(n);
  for (const auto& [s, e] : exponent) {
    if (e != 0 && s != 0) out = out * one_minus_pow(n, s, e);
  }
  return out;
}

TruncIntPoly ratio_saturated(int k0, const BigInt& m, int n) {
  if (k0 < 1 || k0 > n) throw RangeError("k0 must lie in [1, n]");
  TruncIntPoly out = TruncIntPoly::one(n);
  for (int i = 0; i <= k0; ++i) {
    BigInt e = binomial(k0, i) * (i % 2 == 0 ? 1 : -1);
    out = out * one_minus_pow(n, m + i, e);
  }
  return out;
}

TruncIntPoly ratio_run(int k0, const BigInt& m, const BigInt& count, int n) {
  if (k0 < 1 || k0 > n) throw RangeError("k0 must lie in [1, n]");
  if (count < 0) throw RangeError("negative run length");
  // Factor (1 - (m + t)H) collects sum of (-1)^i C(k0,i) over 0 <= t - i < count,
  // which vanishes for k0 <= t < count.
  std::vector<BigInt> offsets;
  if (count <= 2 * k0 + 2) {
    for (BigInt t = 0; t < count + k0; ++t) offsets.push_back(t);
  } else {
    for (int t = 0; t < k0; ++t) offsets.push_back(t);
    for (int t = 0; t < k0; ++t) offsets.push_back(count + t);
  }
  TruncIntPoly out = TruncIntPoly::one(n);
  for (const BigInt& t : offsets) {
    BigInt e = 0;
    for (int i = 0; i <= k0; ++i) {
      BigInt j = t - i;
      if (j >= 0 && j < count) e += binomial(k0, i) * (i % 2 == 0 ? 1 : -1);
    }
    if (e != 0) out = out * one_minus_pow(n, m + t, e);
  }
  return out;
}

TruncIntPoly ratio_saturated_conewise(const ElementaryInjection& inj, int n) {
  if (!inj.saturated) throw DomainError("conewise ratio needs a saturated injection");
  TruncIntPoly out = TruncIntPoly::one(n);
  for (const CofaceWeight& w : inj.cofaces) {
    const int codim = n - w.cone.dim();
    for (int i = 0; i <= inj.k0; ++i) {
      BigInt e = binomial(inj.k0, i) * ((codim + i) % 2 == 0 ? 1 : -1);
      out = out * one_minus_pow(n, w.bold_m + i, e);
    }
  }
  return out;
}

TruncRatPoly log_ratio_saturated(int k0, const BigInt& m, int n) {
  if (k0 < 1) throw RangeError("k0 must be positive");
  TruncRatPoly out(n);
  for (int k = k0; k <= n; ++k) {
    BigInt s = 0;
    for (int l = k0; l <= k; ++l) {
      BigInt mp;
      mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(k - l));
      s += binomial(k, l) * stirling_A(l, k0) * mp;
    }
    out[k] = -Rational(s, k);
    out[k].canonicalize();
  }
  return out;
}

std::pair<Rational, Rational> log_ratio_leading(int k0, const BigInt& m) {
  if (k0 < 1) throw RangeError("k0 must be positive");
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k0 - 1));
  Rational first = Rational(k0 % 2 == 1 ? fact : BigInt(-fact));
  Rational tail(stirling_A(k0 + 1, k0), k0 + 1);
  tail.canonicalize();
  Rational second = -(Rational(stirling_A(k0, k0) * m) + tail);
  return {first, second};
}

std::pair<Rational, Rational> log_ratio_leading(const ElementaryInjection& inj) {
  return log_ratio_leading(inj.k0, inj.m_big_sigma);
}

bool identity_product(const BigInt& a, const BigInt& m, int d, int n) {
  if (d < 2 || d > n) throw PreconditionError("identity_product needs 2 <= d <= n");
  // Exponent of (1 - (m + a + j)H), collected over m' = a + x, x in [0, window].
  const int window = n + 2;
  std::vector<BigInt> alpha(static_cast<std::size_t>(window) + 1, BigInt(0));
  for (int x = 0; x <= window; ++x) {
    for (int i = 0; i <= d; ++i) {
      const int j = x + i;
      if (j > window) continue;
      alpha[j] += binomial(d, i) * ((n - d + i) % 2 == 0 ? 1 : -1);
    }
  }
  for (int j = d; j <= window; ++j) {
    if (alpha[j] != 0) {
      throw StabilizationError("exponent of offset " + std::to_string(j) + " does not cancel inside the window");
    }
  }
  TruncIntPoly lhs = TruncIntPoly::one(n);
  for (int j = 0; j < d; ++j) lhs = lhs * one_minus_pow(n, m + a + j, alpha[j]);
  TruncIntPoly rhs = TruncIntPoly::one(n);
  for (int i = 0; i < d; ++i) {
    BigInt e = binomial(d - 1, i) * ((n - d + i) % 2 == 0 ? 1 : -1);
    rhs = rhs * one_minus_pow(n, m + a + i, e);
  }
  return lhs == rhs;
}

bool identity_cone_sum(const Fan& fan, const Cone& sigma0, const std::vector<BigInt>& m_rho, int p) {
  fan.check_cone(sigma0);
  if (p < 0 || p > fan.codim(sigma0)) throw PreconditionError("power must lie in [0, codim(sigma0)]");
  if (static_cast<int>(m_rho.size()) != fan.ray_count()) throw ShapeError("one weight per ray is required");
  BigInt lhs = 0;
  for (const Cone& c : fan.cofaces(sigma0)) {
    BigInt s = 0;
    for (int r : c.rays()) s += m_rho[r];
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(p));
    lhs += fan.codim(c) % 2 == 0 ? term : BigInt(-term);
  }
  BigInt total = 0;
  for (const BigInt& x : m_rho) total += x;
  BigInt rhs;
  mpz_pow_ui(rhs.get_mpz_t(), total.get_mpz_t(), static_cast<unsigned long>(p));
  return lhs == rhs;
}

}  // namespace tsk
