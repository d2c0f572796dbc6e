#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tsk/fan.hpp"
#include "tsk/subspace.hpp"

namespace tsk {

// One stored corner of a cone's filtration: the value is `space` at every
// class >= `at` (joined with the other corners below it).
struct Jump {
  Coords at;
  Subspace space;

  friend bool operator==(const Jump&, const Jump&) = default;
};

// Equivariant torsion-free sheaf on P^n as a family of multifiltrations.
//
// Each nonzero cone carries a finite jump list; E^sigma(mu) is the join of the
// subspaces stored at corners <= mu. Jump lists are canonicalized on
// construction to the set of generating corners, so two families are equal
// exactly when they agree as functions. The zero cone is Full everywhere.
class Multifiltration {
 public:
  Multifiltration(Fan fan, int rank, std::map<Cone, std::vector<Jump>> jumps);

  const Fan& fan() const { return fan_; }
  int rank() const { return rank_; }
  const std::vector<Jump>& jumps(const Cone& cone) const;
  const std::map<Cone, std::vector<Jump>>& all_jumps() const { return jumps_; }

  Subspace evaluate(const Cone& cone, std::span<const Coord> mu) const;

  // Tensor with the invariant line bundle that moves every ray coordinate:
  // the result at mu equals *this at mu - shift (shift indexed by ray).
  Multifiltration twisted(std::span<const Coord> shift) const;

  friend bool operator==(const Multifiltration& a, const Multifiltration& b) {
    return a.fan_ == b.fan_ && a.rank_ == b.rank_ && a.jumps_ == b.jumps_;
  }

 private:
  struct Canonical {};
  Multifiltration(Canonical, Fan fan, int rank, std::map<Cone, std::vector<Jump>> jumps)
      : fan_(fan), rank_(rank), jumps_(std::move(jumps)) {}

  Fan fan_;
  int rank_;
  std::map<Cone, std::vector<Jump>> jumps_;

  friend Multifiltration replace_cones(const Multifiltration&, std::map<Cone, std::vector<Jump>>);
};

// Copy of `base` with the listed cones replaced by already-canonical jump lists.
Multifiltration replace_cones(const Multifiltration& base, std::map<Cone, std::vector<Jump>> canonical);

struct Violation {
  std::string kind;  // "shape", "union", "facet"
  Cone cone;
  std::optional<Cone> facet;
  Coords cls;
  std::string detail;

  std::string to_string() const;
};

std::vector<Violation> validate(const Multifiltration& m);

// Reflexive family with E^sigma(mu) = meet over rays of the ray filtrations.
// per_ray[r] is a one-dimensional jump list for ray r.
Multifiltration from_ray_filtrations(const Fan& fan, int rank, const std::vector<std::vector<Jump>>& per_ray);

Multifiltration reflexive_hull(const Multifiltration& m);
bool is_reflexive(const Multifiltration& m);

// Pointwise inclusion E^sigma(mu) within F^sigma(mu) for all cones and classes.
bool included(const Multifiltration& e, const Multifiltration& f);

// delta_k for k = 1..n; nullopt stands for infinity.
struct DeltaInvariant {
  std::vector<std::optional<BigInt>> values;

  bool is_zero() const;
  std::string to_string() const;
};

DeltaInvariant delta(const Multifiltration& e, const Multifiltration& f);

// Weight data attached to a coface sigma of sigma0.
struct CofaceWeight {
  Cone cone;
  Coords m_sigma;  // class coordinates in the cone's ray order
  BigInt bold_m;   // <m_sigma, u_sigma>
  bool saturated = false;
};

struct ElementaryInjection {
  int k0 = 0;
  Cone sigma0;
  Coords m0;
  Subspace hyperplane = Subspace::zero(1);  // E^{sigma0}(m0), codim 1 in F^{sigma0}(m0)
  std::map<int, Coord> thresholds;          // a_j for rays outside sigma0
  std::vector<Coord> m_rho;                 // indexed by ray
  std::vector<CofaceWeight> cofaces;        // every sigma containing sigma0
  BigInt m_big_sigma;
  bool saturated = false;
};

struct NotElementary {
  std::string clause;  // "(i)_e", "(ii)_e", "(iii)_e" or "weights"
  std::string detail;
};

using ElementaryResult = std::variant<ElementaryInjection, NotElementary>;

ElementaryResult elementary_check(const Multifiltration& e, const Multifiltration& f);

// Lower F^{sigma0}(m0) to `target` and intersect every coface value over
// classes below m0 (on the sigma0 coordinates) with it.
Multifiltration apply_elementary(const Multifiltration& f, const Cone& sigma0, std::span<const Coord> m0,
                                 const Subspace& target);

// Same as `count` successive apply_elementary calls at m0, m0 + e, ...,
// m0 + (count - 1) e where e is the unit step along `axis_ray` of sigma0.
Multifiltration apply_drop_run(const Multifiltration& f, const Cone& sigma0, std::span<const Coord> m0,
                               int axis_ray, Coord count, const Subspace& target);

// Chain of elementary injections from F down to E; k0 is non-decreasing
// along the returned list.
std::vector<ElementaryInjection> factorize(const Multifiltration& e, const Multifiltration& f);

// Applies the drops of `chain` to F in order.
Multifiltration recompose(const Multifiltration& f, const std::vector<ElementaryInjection>& chain);

std::pair<int, BigInt> quotient_dims(const ElementaryInjection& inj);

}  // namespace tsk
