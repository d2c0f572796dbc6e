#include "tsk/random_instances.hpp"

#include "tsk/errors.hpp"

namespace tsk {

namespace {

const std::vector<Line2>& line_pool() {
  static const std::vector<Line2> pool = {Line2::make(1, 0), Line2::make(0, 1), Line2::make(1, 1), Line2::make(1, -1),
                                          Line2::make(1, 2)};
  return pool;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

R2Filtration random_reflexive(Rng& rng, int n, Coord c_max, LineMode lines, Coord twist) {
  Fan fan(n);
  std::uniform_int_distribution<Coord> cd(0, c_max);
  std::uniform_int_distribution<Coord> td(-twist, twist);
  std::vector<Coord> c;
  std::vector<Line2> ls;
  Coords shift;
  for (int r = 0; r < fan.ray_count(); ++r) {
    c.push_back(cd(rng));
    ls.push_back(lines == LineMode::Distinct ? Line2::for_ray(r) : pick(rng, line_pool()));
    shift.push_back(td(rng));
  }
  return R2Filtration::b_zero(fan, c, ls).twisted(shift);
}

std::optional<Drop> random_drop(Rng& rng, const Multifiltration& f, const std::vector<int>& dims) {
  std::vector<Cone> cones;
  for (int k : dims) {
    if (k < 1 || k > f.fan().n()) throw RangeError("drop dimension out of range");
    for (const Cone& c : f.fan().cones(k)) {
      if (!f.jumps(c).empty()) cones.push_back(c);
    }
  }
  if (cones.empty()) return std::nullopt;
  const Cone sigma = pick(rng, cones);
  const Jump corner = pick(rng, f.jumps(sigma));
  Subspace below = Subspace::zero(f.rank());
  for (std::size_t a = 0; a < corner.at.size(); ++a) {
    Coords m = corner.at;
    m[a] -= 1;
    below = below.join(f.evaluate(sigma, m));
  }
  const Subspace value = f.evaluate(sigma, corner.at);
  Subspace target = value.hyperplane_containing(below);
  if (f.rank() == 2 && value.is_full() && below.is_zero()) target = Subspace::line(pick(rng, line_pool()));
  return Drop{sigma, corner.at, target};
}

DropSequence random_drops(Rng& rng, const Multifiltration& start, int length, const std::vector<int>& dims) {
  DropSequence out{start, {}};
  for (int i = 0; i < length; ++i) {
    auto d = random_drop(rng, out.result, dims);
    if (!d) break;
    out.result = apply_elementary(out.result, d->sigma, d->m0, d->target);
    out.drops.push_back(std::move(*d));
  }
  return out;
}

}  // namespace tsk
