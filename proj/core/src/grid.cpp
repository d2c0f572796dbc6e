#include "grid.hpp"

#include <algorithm>

#include "tsk/errors.hpp"

namespace tsk::detail {

Grid::Grid(std::vector<std::vector<Coord>> breaks) : breaks_(std::move(breaks)) {
  strides_.assign(breaks_.size(), 1);
  for (auto& b : breaks_) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  for (int a = dims() - 1; a >= 0; --a) {
    strides_[a] = size_;
    size_ *= breaks_[a].size() + 1;
  }
}

Coords Grid::representative(std::size_t cell) const {
  Coords p(breaks_.size());
  for (int a = 0; a < dims(); ++a) {
    const std::size_t i = index_along(cell, a);
    const auto& b = breaks_[a];
    if (b.empty()) {
      p[a] = 0;
    } else {
      p[a] = i == 0 ? b.front() - 1 : b[i - 1];
    }
  }
  return p;
}

bool Grid::bounded_below(std::size_t cell) const {
  for (int a = 0; a < dims(); ++a) {
    if (index_along(cell, a) == 0) return false;
  }
  return true;
}

std::optional<BigInt> Grid::volume(std::size_t cell) const {
  BigInt v = 1;
  for (int a = 0; a < dims(); ++a) {
    const std::size_t i = index_along(cell, a);
    const auto& b = breaks_[a];
    if (i == 0 || i == b.size()) return std::nullopt;
    v *= BigInt(static_cast<long>(b[i] - b[i - 1]));
  }
  return v;
}

std::size_t Grid::locate(std::span<const Coord> point) const {
  std::size_t cell = 0;
  for (int a = 0; a < dims(); ++a) {
    const auto& b = breaks_[a];
    const auto i = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), point[a]) - b.begin());
    cell += i * strides_[a];
  }
  return cell;
}

void add_jump_breaks(std::vector<std::vector<Coord>>& breaks, const std::vector<Jump>& jumps) {
  for (const Jump& j : jumps) {
    for (std::size_t a = 0; a < breaks.size(); ++a) breaks[a].push_back(j.at[a]);
  }
}

Grid grid_for(int d, std::initializer_list<const std::vector<Jump>*> lists, std::vector<std::vector<Coord>> extra) {
  std::vector<std::vector<Coord>> breaks(static_cast<std::size_t>(d));
  for (const auto* l : lists) add_jump_breaks(breaks, *l);
  for (std::size_t a = 0; a < extra.size() && a < breaks.size(); ++a) {
    breaks[a].insert(breaks[a].end(), extra[a].begin(), extra[a].end());
  }
  return Grid(std::move(breaks));
}

std::vector<Subspace> dense_values(const Grid& grid, const std::vector<Jump>& jumps, int rank) {
  const Subspace zero = Subspace::zero(rank);
  std::vector<Subspace> vals(grid.size(), zero);
  std::vector<std::optional<Subspace>> corner(grid.size());
  for (const Jump& j : jumps) {
    const std::size_t c = grid.locate(j.at);
    if (grid.representative(c) != j.at) throw InternalConsistencyError("jump corner missing from grid");
    corner[c] = corner[c] ? corner[c]->join(j.space) : j.space;
  }
  const int d = grid.dims();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (!grid.bounded_below(c)) continue;
    Subspace v = corner[c] ? *corner[c] : zero;
    for (int a = 0; a < d && !v.is_full(); ++a) v = v.join(vals[c - grid.stride(a)]);
    vals[c] = std::move(v);
  }
  return vals;
}

std::vector<Jump> generators(const Grid& grid, const std::vector<Subspace>& values) {
  std::vector<Jump> out;
  const int d = grid.dims();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (!grid.bounded_below(c) || values[c].is_zero()) continue;
    Subspace below = Subspace::zero(values[c].rank());
    for (int a = 0; a < d; ++a) below = below.join(values[c - grid.stride(a)]);
    if (below != values[c]) out.push_back(Jump{grid.representative(c), values[c]});
  }
  return out;
}

std::vector<Jump> canonicalize(const std::vector<Jump>& raw, int d, int rank) {
  for (const Jump& j : raw) {
    if (static_cast<int>(j.at.size()) != d) throw ShapeError("jump coordinates do not match the cone dimension");
    if (j.space.rank() != rank) throw ShapeError("jump subspace has the wrong rank");
  }
  Grid grid = grid_for(d, {&raw});
  return generators(grid, dense_values(grid, raw, rank));
}

Subspace join_below(const std::vector<Jump>& jumps, std::span<const Coord> mu, int rank) {
  Subspace acc = Subspace::zero(rank);
  for (const Jump& j : jumps) {
    bool le = true;
    for (std::size_t a = 0; a < mu.size(); ++a) {
      if (j.at[a] > mu[a]) {
        le = false;
        break;
      }
    }
    if (le) {
      acc = acc.join(j.space);
      if (acc.is_full()) break;
    }
  }
  return acc;
}

}  // namespace tsk::detail
