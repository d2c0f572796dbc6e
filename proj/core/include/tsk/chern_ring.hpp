#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "tsk/errors.hpp"

namespace tsk {

using BigInt = mpz_class;
using Rational = mpq_class;

// Element of Z[H]/(H^{n+1}) or Q[H]/(H^{n+1}); always holds exactly n+1 coefficients.
template <class T>
class TruncPoly {
 public:
  explicit TruncPoly(int n) : n_(check_degree(n)), c_(static_cast<std::size_t>(n) + 1) {}

  // Missing high coefficients are zero; nonzero coefficients above H^n are a shape error.
  TruncPoly(int n, std::vector<T> coeffs) : n_(check_degree(n)), c_(std::move(coeffs)) {
    for (std::size_t k = static_cast<std::size_t>(n) + 1; k < c_.size(); ++k) {
      if (c_[k] != 0) throw ShapeError("coefficient above the truncation degree");
    }
    c_.resize(static_cast<std::size_t>(n) + 1);
  }

  static TruncPoly one(int n) {
    TruncPoly p(n);
    p.c_[0] = 1;
    return p;
  }

  // c0 + c1*H
  static TruncPoly linear(int n, const T& c0, const T& c1) {
    TruncPoly p(n);
    p.c_[0] = c0;
    if (n >= 1) p.c_[1] = c1;
    return p;
  }

  int n() const { return n_; }
  const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const T& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      if (c_[k] != 0) return false;
    }
    return true;
  }

  TruncPoly& operator+=(const TruncPoly& o) {
    same_degree(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncPoly& operator-=(const TruncPoly& o) {
    same_degree(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  TruncPoly& operator*=(const TruncPoly& o) { return *this = *this * o; }
  TruncPoly& operator*=(const T& s) {
    for (T& x : c_) x *= s;
    return *this;
  }

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator-(TruncPoly a) {
    for (T& x : a.c_) x = -x;
    return a;
  }
  friend TruncPoly operator*(TruncPoly a, const T& s) { return a *= s; }
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    a.same_degree(b);
    TruncPoly r(a.n_);
    for (int i = 0; i <= a.n_; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; i + j <= a.n_; ++j) {
        if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  void same_degree(const TruncPoly& o) const {
    if (o.n_ != n_) throw ShapeError("truncation degrees differ");
  }

 private:
  static int check_degree(int n) {
    if (n < 0) throw ShapeError("negative truncation degree");
    return n;
  }
  int n_;
  std::vector<T> c_;
};

using TruncIntPoly = TruncPoly<BigInt>;
using TruncRatPoly = TruncPoly<Rational>;

TruncIntPoly mul(const TruncIntPoly& a, const TruncIntPoly& b);
TruncRatPoly mul(const TruncRatPoly& a, const TruncRatPoly& b);

TruncIntPoly inverse(const TruncIntPoly& a);
TruncRatPoly inverse(const TruncRatPoly& a);

TruncIntPoly int_pow(const TruncIntPoly& a, long e);
TruncRatPoly int_pow(const TruncRatPoly& a, long e);

// (1 - s*H)^e for any integer e, by the generalized binomial series.
TruncIntPoly one_minus_pow(int n, const BigInt& s, const BigInt& e);

TruncRatPoly log(const TruncIntPoly& a);
TruncRatPoly log(const TruncRatPoly& a);
TruncRatPoly exp(const TruncRatPoly& a);

TruncRatPoly to_rational(const TruncIntPoly& a);
// Throws DomainError if some coefficient is not an integer.
TruncIntPoly to_integer(const TruncRatPoly& a);

std::string render(const TruncIntPoly& a);
std::string render(const TruncRatPoly& a);
TruncIntPoly parse_int_poly(std::string_view text, int n);
TruncRatPoly parse_rat_poly(std::string_view text, int n);

std::string to_string(const Rational& q);

}  // namespace tsk
