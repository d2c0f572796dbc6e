#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "tsk/chern_ring.hpp"
#include "tsk/fan.hpp"
#include "tsk/multifilt.hpp"
#include "tsk/subspace.hpp"

namespace tsk {

// E^rho(i) is 0 below a, the line for a <= i < b, and the whole fiber from b on.
struct RayData {
  Coord a = 0;
  Coord b = 0;
  std::optional<Line2> line;

  Coord c() const { return b - a; }
  bool active() const { return a < b; }
  friend bool operator==(const RayData&, const RayData&) = default;
};

enum class Normalization { AZero, BZero };

class R2Filtration {
 public:
  R2Filtration(Fan fan, std::vector<RayData> rays);

  // b_rho = 0 and a_rho = -c_rho; lines default to line(1, rho).
  static R2Filtration b_zero(const Fan& fan, const std::vector<Coord>& c,
                             std::optional<std::vector<Line2>> lines = std::nullopt);

  const Fan& fan() const { return fan_; }
  int n() const { return fan_.n(); }
  const std::vector<RayData>& rays() const { return rays_; }
  const RayData& ray(int r) const { return rays_.at(static_cast<std::size_t>(r)); }

  BigInt a() const;
  BigInt b() const;
  BigInt c() const;

  // Shifted so that every ray has the chosen endpoint at 0.
  R2Filtration normalized(Normalization mode) const;
  bool is_normalized(Normalization mode) const;
  // Tensor by the invariant line bundle moving ray rho by shift[rho].
  R2Filtration twisted(std::span<const Coord> shift) const;

  friend bool operator==(const R2Filtration&, const R2Filtration&) = default;

 private:
  Fan fan_;
  std::vector<RayData> rays_;  // a stored line is dropped when a == b
};

// Distinct lines among the active rays, with the total c over each.
std::vector<std::pair<Line2, BigInt>> active_lines(const R2Filtration& f);
bool has_distinct_active_lines(const R2Filtration& f);

TruncIntPoly chern_resolution(const R2Filtration& f);
TruncIntPoly chern_split(const R2Filtration& f);
// c1 = -(a+b), c2 = ab + s2 and c_k from the symmetric functions of the c_rho;
// valid on the same data as the resolution formula.
TruncIntPoly chern_symmetric(const R2Filtration& f);
TruncIntPoly chern_total(const R2Filtration& f);
BigInt chern_k_general(const R2Filtration& f, int k);
BigInt elementary_symmetric(const R2Filtration& f, int k);
BigInt elementary_symmetric(const std::vector<BigInt>& values, int k);

bool is_locally_free(const R2Filtration& f);
Rational slope(const R2Filtration& f);

enum class Stability { Stable, StrictlySemistable, Unstable };
Stability stability(const R2Filtration& f);
std::string to_string(Stability s);

BigInt discriminant(const TruncIntPoly& c);
BigInt discriminant(const R2Filtration& f);

struct NoSplit {};
std::variant<R2Filtration, NoSplit> prescribe_reflexive(const TruncIntPoly& target);

bool normalized_positivity(const R2Filtration& f);
bool normalized_positivity(const TruncIntPoly& c);

Multifiltration to_multifiltration(const R2Filtration& f);
// Ray data of a rank-2 family; uses only the ray filtrations, so it describes the reflexive hull.
R2Filtration hull_data(const Multifiltration& m);

}  // namespace tsk
