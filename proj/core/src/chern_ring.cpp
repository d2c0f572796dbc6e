#include "tsk/chern_ring.hpp"

#include <cctype>
#include <optional>

namespace tsk {

namespace {

template <class T>
TruncPoly<T> inverse_impl(const TruncPoly<T>& a) {
  const int n = a.n();
  TruncPoly<T> b(n);
  const T& a0 = a[0];
  b[0] = 1 / T(a0);
  for (int k = 1; k <= n; ++k) {
    T s = 0;
    for (int i = 1; i <= k; ++i) s += a[i] * b[k - i];
    b[k] = -s * b[0];
  }
  return b;
}

template <class T>
TruncPoly<T> pow_impl(TruncPoly<T> base, unsigned long e) {
  TruncPoly<T> r = TruncPoly<T>::one(base.n());
  while (e != 0) {
    if (e & 1UL) r = r * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return r;
}

TruncRatPoly log_impl(const TruncRatPoly& a) {
  if (a[0] != 1) throw DomainError("log requires constant coefficient 1");
  const int n = a.n();
  TruncRatPoly r = a;
  r[0] = 0;
  TruncRatPoly out(n);
  TruncRatPoly power = r;
  for (int i = 1; i <= n; ++i) {
    Rational w(i % 2 == 1 ? 1 : -1, i);
    w.canonicalize();
    out += power * w;
    power = power * r;
  }
  return out;
}

std::string magnitude(const BigInt& x) { return BigInt(abs(x)).get_str(); }
std::string magnitude(const Rational& x) { return to_string(Rational(abs(x))); }

template <class T>
std::string render_impl(const TruncPoly<T>& a) {
  std::string out;
  for (int k = 0; k <= a.n(); ++k) {
    const T& c = a[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += magnitude(c);
    if (k >= 1) out += "*H";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

class PolyParser {
 public:
  PolyParser(std::string_view s, int n) : s_(s), n_(n) {}

  TruncRatPoly run() {
    TruncRatPoly out(n_);
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      auto [coef, deg] = term();
      if (deg > n_) throw ParseError("term degree " + std::to_string(deg) + " exceeds truncation degree");
      out[deg] += sign * coef;
      skip();
      if (pos_ == s_.size()) break;
    }
    return out;
  }

 private:
  ParseError error(const std::string& what) const {
    return ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::optional<BigInt> integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) return std::nullopt;
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  bool accept(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  int exponent() {
    if (!accept('^')) return 1;
    auto e = integer();
    if (!e || !e->fits_sint_p()) throw error("bad exponent");
    return static_cast<int>(e->get_si());
  }

  std::pair<Rational, int> term() {
    auto num = integer();
    if (!num) {
      if (accept('H')) return {Rational(1), exponent()};
      throw error("expected a coefficient or H");
    }
    Rational coef(*num);
    if (accept('/')) {
      auto den = integer();
      if (!den || *den == 0) throw error("bad denominator");
      coef = Rational(*num, *den);
      coef.canonicalize();
    }
    if (!accept('*')) return {coef, 0};
    if (!accept('H')) throw error("expected H after '*'");
    return {coef, exponent()};
  }

  std::string_view s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncIntPoly mul(const TruncIntPoly& a, const TruncIntPoly& b) { return a * b; }
TruncRatPoly mul(const TruncRatPoly& a, const TruncRatPoly& b) { return a * b; }

TruncIntPoly inverse(const TruncIntPoly& a) {
  if (a[0] != 1 && a[0] != -1) throw NotInvertibleError("constant coefficient is not a unit in Z");
  const int n = a.n();
  TruncIntPoly b(n);
  b[0] = a[0];
  for (int k = 1; k <= n; ++k) {
    BigInt s = 0;
    for (int i = 1; i <= k; ++i) s += a[i] * b[k - i];
    b[k] = -s * b[0];
  }
  return b;
}

TruncRatPoly inverse(const TruncRatPoly& a) {
  if (a[0] == 0) throw NotInvertibleError("constant coefficient is zero");
  return inverse_impl(a);
}

TruncIntPoly int_pow(const TruncIntPoly& a, long e) {
  if (e >= 0) return pow_impl(a, static_cast<unsigned long>(e));
  return pow_impl(inverse(a), static_cast<unsigned long>(-(e + 1)) + 1UL);
}

TruncRatPoly int_pow(const TruncRatPoly& a, long e) {
  if (e >= 0) return pow_impl(a, static_cast<unsigned long>(e));
  return pow_impl(inverse(a), static_cast<unsigned long>(-(e + 1)) + 1UL);
}

TruncIntPoly one_minus_pow(int n, const BigInt& s, const BigInt& e) {
  TruncIntPoly out(n);
  BigInt binom = 1;  // e choose k, generalized
  BigInt neg_s_pow = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (e - (k - 1));
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k));
      neg_s_pow *= -s;
    }
    out[k] = binom * neg_s_pow;
  }
  return out;
}

TruncRatPoly log(const TruncIntPoly& a) {
  if (a[0] != 1) throw DomainError("log requires constant coefficient 1");
  return log_impl(to_rational(a));
}

TruncRatPoly log(const TruncRatPoly& a) { return log_impl(a); }

TruncRatPoly exp(const TruncRatPoly& a) {
  if (a[0] != 0) throw DomainError("exp requires zero constant coefficient");
  const int n = a.n();
  TruncRatPoly out = TruncRatPoly::one(n);
  TruncRatPoly term = TruncRatPoly::one(n);
  for (int i = 1; i <= n; ++i) {
    term = term * a;
    term *= Rational(1, i);
    out += term;
  }
  return out;
}

TruncRatPoly to_rational(const TruncIntPoly& a) {
  TruncRatPoly out(a.n());
  for (int k = 0; k <= a.n(); ++k) out[k] = Rational(a[k]);
  return out;
}

TruncIntPoly to_integer(const TruncRatPoly& a) {
  TruncIntPoly out(a.n());
  for (int k = 0; k <= a.n(); ++k) {
    if (a[k].get_den() != 1) throw DomainError("coefficient of H^" + std::to_string(k) + " is not an integer");
    out[k] = a[k].get_num();
  }
  return out;
}

std::string render(const TruncIntPoly& a) { return render_impl(a); }
std::string render(const TruncRatPoly& a) { return render_impl(a); }

TruncRatPoly parse_rat_poly(std::string_view text, int n) { return PolyParser(text, n).run(); }

TruncIntPoly parse_int_poly(std::string_view text, int n) {
  TruncRatPoly r = parse_rat_poly(text, n);
  try {
    return to_integer(r);
  } catch (const DomainError&) {
    throw ParseError("polynomial has non-integer coefficients");
  }
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace tsk
