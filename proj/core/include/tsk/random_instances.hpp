#pragma once

#include <optional>
#include <random>
#include <vector>

#include "tsk/multifilt.hpp"
#include "tsk/reflexive_r2.hpp"

namespace tsk {

using Rng = std::mt19937_64;

enum class LineMode {
  Distinct,  // line(1, rho)
  Pooled,    // drawn from a small pool, so coincidences occur
};

// Nonnegative c_rho <= c_max, then twisted by offsets in [-twist, twist] per ray.
R2Filtration random_reflexive(Rng& rng, int n, Coord c_max, LineMode lines, Coord twist = 0);

struct Drop {
  Cone sigma;
  Coords m0;
  Subspace target;
};

// A legal drop of dimension in `dims`: at a generating corner of the chosen
// cone, to a hyperplane containing the value just below it.
std::optional<Drop> random_drop(Rng& rng, const Multifiltration& f, const std::vector<int>& dims);

struct DropSequence {
  Multifiltration result;
  std::vector<Drop> drops;
};

DropSequence random_drops(Rng& rng, const Multifiltration& start, int length, const std::vector<int>& dims);

}  // namespace tsk
