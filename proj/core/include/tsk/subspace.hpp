#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsk/chern_ring.hpp"

namespace tsk {

// A line in a 2-dimensional fiber, as a primitive integer vector whose first
// nonzero coordinate is positive.
struct Line2 {
  BigInt p;
  BigInt q;

  static Line2 make(BigInt p, BigInt q);
  // Pairwise distinct default lines: ray i gets line(1, i).
  static Line2 for_ray(int ray) { return make(1, ray); }

  friend bool operator==(const Line2& a, const Line2& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Line2& a, const Line2& b) { return a.p < b.p || (a.p == b.p && a.q < b.q); }
  std::string to_string() const;
};

using RatVector = std::vector<Rational>;

// Subspace of Q^r held as its reduced row-echelon basis, so equality is
// structural equality of the basis.
class Subspace {
 public:
  static Subspace zero(int rank);
  static Subspace full(int rank);
  static Subspace line(const Line2& l);
  static Subspace span(int rank, std::vector<RatVector> rows);

  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return dim() == rank_; }
  const std::vector<RatVector>& basis() const { return rows_; }

  // Set only for a 1-dimensional subspace of Q^2.
  std::optional<Line2> as_line() const;

  bool contains_vector(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  Subspace join(const Subspace& other) const;
  Subspace meet(const Subspace& other) const;

  // Echelon-first hyperplane of *this containing `inner`; requires inner to be
  // a proper subspace of *this.
  Subspace hyperplane_containing(const Subspace& inner) const;

  std::string to_string() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.rank_ == b.rank_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  Subspace(int rank, std::vector<RatVector> rows) : rank_(rank), rows_(std::move(rows)) {}
  void same_rank(const Subspace& other) const;
  std::vector<RatVector> complement_basis() const;

  int rank_ = 0;
  std::vector<RatVector> rows_;
};

// Reduced row-echelon form; zero rows dropped.
std::vector<RatVector> rref(std::vector<RatVector> rows, int cols);

}  // namespace tsk
