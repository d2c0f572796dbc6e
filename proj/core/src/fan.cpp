#include "tsk/fan.hpp"

#include <algorithm>
#include <bit>

#include "tsk/errors.hpp"

namespace tsk {

Cone Cone::of(std::initializer_list<int> rays) {
  return of(std::span<const int>(rays.begin(), rays.size()));
}

Cone Cone::of(std::span<const int> rays) {
  std::uint32_t mask = 0;
  for (int r : rays) {
    if (r < 0 || r > Fan::kMaxDim) throw RangeError("ray index out of range: " + std::to_string(r));
    mask |= std::uint32_t{1} << r;
  }
  return Cone(mask);
}

int Cone::dim() const { return std::popcount(mask_); }

bool Cone::has_ray(int ray) const {
  return ray >= 0 && ray <= Fan::kMaxDim && ((mask_ >> ray) & 1U) != 0;
}

std::vector<int> Cone::rays() const {
  std::vector<int> out;
  out.reserve(dim());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

int Cone::position(int ray) const {
  if (!has_ray(ray)) return -1;
  return std::popcount(mask_ & ((std::uint32_t{1} << ray) - 1));
}

Cone Cone::with(int ray) const {
  if (ray < 0 || ray > Fan::kMaxDim) throw RangeError("ray index out of range");
  return Cone(mask_ | (std::uint32_t{1} << ray));
}

Cone Cone::without(int ray) const {
  if (ray < 0 || ray > Fan::kMaxDim) throw RangeError("ray index out of range");
  return Cone(mask_ & ~(std::uint32_t{1} << ray));
}

std::string Cone::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int r : rays()) {
    if (!first) s += ",";
    s += std::to_string(r);
    first = false;
  }
  return s + "}";
}

std::strong_ordering Cone::operator<=>(const Cone& other) const {
  if (auto c = dim() <=> other.dim(); c != 0) return c;
  if (mask_ == other.mask_) return std::strong_ordering::equal;
  // Same size: the set whose smallest differing element is smaller comes first.
  std::uint32_t diff = mask_ ^ other.mask_;
  int low = std::countr_zero(diff);
  return has_ray(low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Fan::Fan(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw RangeError("fan dimension must lie in [1, 30]");
}

void Fan::check_ray(int ray) const {
  if (ray < 0 || ray > n_) throw RangeError("ray index " + std::to_string(ray) + " not in fan");
}

void Fan::check_cone(const Cone& cone) const {
  if ((cone.mask() >> (n_ + 1)) != 0) throw RangeError("cone " + cone.to_string() + " uses unknown rays");
  if (cone.dim() > n_) throw RangeError("cone " + cone.to_string() + " is not a cone of the fan");
}

Coords Fan::ray_vector(int ray) const {
  check_ray(ray);
  Coords v(n_, 0);
  if (ray == 0) {
    std::fill(v.begin(), v.end(), -1);
  } else {
    v[ray - 1] = 1;
  }
  return v;
}

std::vector<Cone> Fan::cones(int k) const {
  if (k < 0 || k > n_) throw RangeError("cone dimension out of range: " + std::to_string(k));
  std::vector<Cone> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int top = n_ + 1;
  while (true) {
    out.push_back(Cone::of(std::span<const int>(idx)));
    int i = k - 1;
    while (i >= 0 && idx[i] == top - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Cone> Fan::all_cones() const {
  std::vector<Cone> out;
  for (int k = 0; k <= n_; ++k) {
    auto level = cones(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Cone> Fan::cofaces(const Cone& cone) const {
  check_cone(cone);
  std::vector<Cone> out;
  for (int k = cone.dim(); k <= n_; ++k) {
    for (const Cone& c : cones(k)) {
      if (cone.is_face_of(c)) out.push_back(c);
    }
  }
  return out;
}

Coord Fan::pairing(const Weight& m, int ray) const {
  check_ray(ray);
  if (static_cast<int>(m.coords.size()) != n_) throw ShapeError("weight length differs from fan dimension");
  if (ray > 0) return m.coords[ray - 1];
  Coord s = 0;
  for (Coord x : m.coords) s += x;
  return -s;
}

Coords Fan::u_sigma(const Cone& cone) const {
  check_cone(cone);
  Coords u(n_, 0);
  for (int r : cone.rays()) {
    Coords v = ray_vector(r);
    for (int i = 0; i < n_; ++i) u[i] += v[i];
  }
  return u;
}

Coords Fan::weight_class(const Cone& cone, const Weight& m) const {
  check_cone(cone);
  Coords out;
  for (int r : cone.rays()) out.push_back(pairing(m, r));
  return out;
}

bool le_sigma(const Cone& cone, std::span<const Coord> m, std::span<const Coord> m_prime) {
  const auto d = static_cast<std::size_t>(cone.dim());
  if (m.size() != d || m_prime.size() != d) throw ShapeError("class length differs from cone dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (m[i] > m_prime[i]) return false;
  }
  return true;
}

}  // namespace tsk
