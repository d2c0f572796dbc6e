#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tsk {

using Coord = std::int64_t;
using Coords = std::vector<Coord>;

// Element of the character lattice M = Z^n.
struct Weight {
  Coords coords;
};

// A cone of the fan of P^n, stored as the bit set of its rays.
// Ordering is by dimension first, then lexicographic on the sorted rays.
class Cone {
 public:
  Cone() = default;

  static Cone of(std::initializer_list<int> rays);
  static Cone of(std::span<const int> rays);
  static Cone from_mask(std::uint32_t mask) { return Cone(mask); }

  std::uint32_t mask() const { return mask_; }
  int dim() const;
  bool empty() const { return mask_ == 0; }
  bool has_ray(int ray) const;
  std::vector<int> rays() const;
  // Index of `ray` in the sorted ray list, or -1.
  int position(int ray) const;
  bool is_face_of(const Cone& other) const { return (mask_ & ~other.mask_) == 0; }
  Cone with(int ray) const;
  Cone without(int ray) const;
  std::string to_string() const;

  bool operator==(const Cone&) const = default;
  std::strong_ordering operator<=>(const Cone& other) const;

 private:
  explicit Cone(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

class Fan {
 public:
  static constexpr int kMaxDim = 30;

  explicit Fan(int n);

  int n() const { return n_; }
  int ray_count() const { return n_ + 1; }
  int codim(const Cone& cone) const { return n_ - cone.dim(); }

  Coords ray_vector(int ray) const;
  std::vector<Cone> cones(int k) const;
  std::vector<Cone> all_cones() const;
  std::vector<Cone> cofaces(const Cone& cone) const;

  Coord pairing(const Weight& m, int ray) const;
  Coords u_sigma(const Cone& cone) const;
  Coords weight_class(const Cone& cone, const Weight& m) const;

  // Throws RangeError unless every ray index is valid and the cone is proper.
  void check_cone(const Cone& cone) const;

  bool operator==(const Fan&) const = default;

 private:
  void check_ray(int ray) const;
  int n_;
};

// m <=_sigma m' on weight-class coordinates.
bool le_sigma(const Cone& cone, std::span<const Coord> m, std::span<const Coord> m_prime);

}  // namespace tsk
