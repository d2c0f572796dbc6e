#include "tsk/subspace.hpp"

#include <algorithm>

#include "tsk/errors.hpp"

namespace tsk {

Line2 Line2::make(BigInt p, BigInt q) {
  if (p == 0 && q == 0) throw ParameterError("a line needs a nonzero direction");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  return Line2{p, q};
}

std::string Line2::to_string() const { return "line(" + p.get_str() + "," + q.get_str() + ")"; }

std::vector<RatVector> rref(std::vector<RatVector> rows, int cols) {
  std::size_t lead = 0;
  for (int c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[lead], rows[piv]);
    Rational inv = 1 / rows[lead][c];
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][c] == 0) continue;
      Rational f = rows[r][c];
      for (int j = 0; j < cols; ++j) rows[r][j] -= f * rows[lead][j];
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

Subspace Subspace::zero(int rank) {
  if (rank < 1) throw ShapeError("rank must be positive");
  return Subspace(rank, {});
}

Subspace Subspace::full(int rank) {
  if (rank < 1) throw ShapeError("rank must be positive");
  std::vector<RatVector> rows(rank, RatVector(rank));
  for (int i = 0; i < rank; ++i) rows[i][i] = 1;
  return Subspace(rank, std::move(rows));
}

Subspace Subspace::line(const Line2& l) {
  Line2 c = Line2::make(l.p, l.q);
  RatVector row(2);
  if (c.p != 0) {
    row[0] = 1;
    row[1] = Rational(c.q, c.p);
    row[1].canonicalize();
  } else {
    row[1] = 1;
  }
  return Subspace(2, {row});
}

Subspace Subspace::span(int rank, std::vector<RatVector> rows) {
  if (rank < 1) throw ShapeError("rank must be positive");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != rank) throw ShapeError("spanning vector has wrong length");
  }
  return Subspace(rank, rref(std::move(rows), rank));
}

std::optional<Line2> Subspace::as_line() const {
  if (rank_ != 2 || dim() != 1) return std::nullopt;
  const RatVector& r = rows_[0];
  if (r[0] == 0) return Line2::make(0, 1);
  // Row is (1, a/b): direction (b, a).
  return Line2::make(r[1].get_den(), r[1].get_num());
}

void Subspace::same_rank(const Subspace& other) const {
  if (other.rank_ != rank_) throw ShapeError("subspaces live in different ambient spaces");
}

bool Subspace::contains_vector(const RatVector& v) const {
  if (static_cast<int>(v.size()) != rank_) throw ShapeError("vector has wrong length");
  if (is_full()) return true;
  RatVector w = v;
  for (const RatVector& row : rows_) {
    int pc = 0;
    while (row[pc] == 0) ++pc;
    if (w[pc] == 0) continue;
    Rational f = w[pc];
    for (int j = 0; j < rank_; ++j) w[j] -= f * row[j];
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  same_rank(other);
  if (other.dim() > dim()) return false;
  if (is_full() || other.is_zero()) return true;
  if (other.dim() == dim()) return *this == other;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const RatVector& r) { return contains_vector(r); });
}

Subspace Subspace::join(const Subspace& other) const {
  same_rank(other);
  if (is_full() || other.is_zero()) return *this;
  if (other.is_full() || is_zero()) return other;
  if (*this == other) return *this;
  std::vector<RatVector> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return Subspace(rank_, rref(std::move(rows), rank_));
}

std::vector<RatVector> Subspace::complement_basis() const {
  // Null space of the basis matrix: one vector per free column.
  std::vector<int> pivots;
  for (const RatVector& row : rows_) {
    int pc = 0;
    while (row[pc] == 0) ++pc;
    pivots.push_back(pc);
  }
  std::vector<RatVector> out;
  for (int f = 0; f < rank_; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    RatVector v(rank_);
    v[f] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivots[i]] = -rows_[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

Subspace Subspace::meet(const Subspace& other) const {
  same_rank(other);
  if (is_zero() || other.is_full()) return *this;
  if (other.is_zero() || is_full()) return other;
  if (*this == other) return *this;
  std::vector<RatVector> perp = complement_basis();
  std::vector<RatVector> perp2 = other.complement_basis();
  perp.insert(perp.end(), perp2.begin(), perp2.end());
  Subspace both(rank_, rref(std::move(perp), rank_));
  return Subspace(rank_, rref(both.complement_basis(), rank_));
}

Subspace Subspace::hyperplane_containing(const Subspace& inner) const {
  same_rank(inner);
  if (!contains(inner) || inner.dim() >= dim()) {
    throw ParameterError("inner subspace must be a proper subspace");
  }
  Subspace acc = inner;
  for (const RatVector& row : rows_) {
    if (acc.dim() + 1 == dim()) break;
    if (!acc.contains_vector(row)) acc = acc.join(Subspace(rank_, rref({row}, rank_)));
  }
  return acc;
}

std::string Subspace::to_string() const {
  if (is_zero()) return "zero";
  if (is_full()) return "full";
  if (auto l = as_line()) return l->to_string();
  std::string s = "span[";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ",";
    s += "(";
    for (int j = 0; j < rank_; ++j) {
      if (j) s += ",";
      s += tsk::to_string(rows_[i][j]);
    }
    s += ")";
  }
  return s + "]";
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    for (int j = 0; j < a.rank_; ++j) {
      if (a.rows_[i][j] != b.rows_[i][j]) return a.rows_[i][j] < b.rows_[i][j];
    }
  }
  return false;
}

}  // namespace tsk
