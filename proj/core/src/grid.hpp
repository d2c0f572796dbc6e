#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tsk/multifilt.hpp"

namespace tsk::detail {

// Product decomposition of Z^d induced by sorted breakpoints per axis. Along an
// axis with breaks b_1 < ... < b_k the cells are (-inf, b_1), [b_1, b_2), ...,
// [b_k, +inf), indexed 0..k. Cells are numbered row-major with axis 0 most
// significant, so increasing cell number is lexicographic order of corners.
class Grid {
 public:
  explicit Grid(std::vector<std::vector<Coord>> breaks);

  int dims() const { return static_cast<int>(breaks_.size()); }
  std::size_t size() const { return size_; }
  const std::vector<Coord>& breaks(int axis) const { return breaks_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  std::size_t index_along(std::size_t cell, int axis) const {
    return (cell / strides_[axis]) % (breaks_[axis].size() + 1);
  }

  // Lower corner of a cell; the unbounded-below interval uses b_1 - 1.
  Coords representative(std::size_t cell) const;
  bool bounded_below(std::size_t cell) const;
  // Number of lattice points in the cell; nullopt when infinite.
  std::optional<BigInt> volume(std::size_t cell) const;
  std::size_t locate(std::span<const Coord> point) const;

 private:
  std::vector<std::vector<Coord>> breaks_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

void add_jump_breaks(std::vector<std::vector<Coord>>& breaks, const std::vector<Jump>& jumps);
Grid grid_for(int d, std::initializer_list<const std::vector<Jump>*> lists,
              std::vector<std::vector<Coord>> extra = {});

// Value of the join-encoded function on every cell.
std::vector<Subspace> dense_values(const Grid& grid, const std::vector<Jump>& jumps, int rank);

// Generating corners of a monotone cellwise function: cells whose value is
// not the join of the values of their lower neighbours.
std::vector<Jump> generators(const Grid& grid, const std::vector<Subspace>& values);

std::vector<Jump> canonicalize(const std::vector<Jump>& raw, int d, int rank);

Subspace join_below(const std::vector<Jump>& jumps, std::span<const Coord> mu, int rank);

}  // namespace tsk::detail
