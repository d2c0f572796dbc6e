#include "tsk/reflexive_r2.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"

namespace tsk {

namespace {

BigInt big(Coord x) { return BigInt(static_cast<long>(x)); }

}  // namespace

R2Filtration::R2Filtration(Fan fan, std::vector<RayData> rays) : fan_(fan), rays_(std::move(rays)) {
  if (static_cast<int>(rays_.size()) != fan_.ray_count()) throw ShapeError("one ray datum per ray is required");
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    RayData& d = rays_[r];
    if (d.a > d.b) throw RangeError("ray " + std::to_string(r) + " has a > b");
    if (!d.active()) {
      d.line.reset();
    } else if (!d.line) {
      throw ShapeError("ray " + std::to_string(r) + " has a < b but no line");
    }
  }
}

R2Filtration R2Filtration::b_zero(const Fan& fan, const std::vector<Coord>& c, std::optional<std::vector<Line2>> lines) {
  if (static_cast<int>(c.size()) != fan.ray_count()) throw ShapeError("one c_rho per ray is required");
  if (lines && static_cast<int>(lines->size()) != fan.ray_count()) throw ShapeError("one line per ray is required");
  std::vector<RayData> rays;
  for (int r = 0; r < fan.ray_count(); ++r) {
    if (c[r] < 0) throw RangeError("c_rho must be nonnegative");
    rays.push_back(RayData{-c[r], 0, lines ? (*lines)[r] : Line2::for_ray(r)});
  }
  return R2Filtration(fan, std::move(rays));
}

BigInt R2Filtration::a() const {
  BigInt s = 0;
  for (const auto& d : rays_) s += big(d.a);
  return s;
}

BigInt R2Filtration::b() const {
  BigInt s = 0;
  for (const auto& d : rays_) s += big(d.b);
  return s;
}

BigInt R2Filtration::c() const { return b() - a(); }

R2Filtration R2Filtration::normalized(Normalization mode) const {
  Coords shift;
  for (const auto& d : rays_) shift.push_back(mode == Normalization::AZero ? -d.a : -d.b);
  return twisted(shift);
}

bool R2Filtration::is_normalized(Normalization mode) const {
  return std::all_of(rays_.begin(), rays_.end(),
                     [mode](const RayData& d) { return (mode == Normalization::AZero ? d.a : d.b) == 0; });
}

R2Filtration R2Filtration::twisted(std::span<const Coord> shift) const {
  if (static_cast<int>(shift.size()) != fan_.ray_count()) throw ShapeError("one shift per ray is required");
  std::vector<RayData> rays = rays_;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    rays[r].a += shift[r];
    rays[r].b += shift[r];
  }
  return R2Filtration(fan_, std::move(rays));
}

std::vector<std::pair<Line2, BigInt>> active_lines(const R2Filtration& f) {
  std::map<Line2, BigInt> sums;
  for (const auto& d : f.rays()) {
    if (d.active()) sums[*d.line] += big(d.c());
  }
  return {sums.begin(), sums.end()};
}

bool has_distinct_active_lines(const R2Filtration& f) {
  std::size_t active = 0;
  for (const auto& d : f.rays()) active += d.active() ? 1 : 0;
  return active_lines(f).size() == active;
}

TruncIntPoly chern_resolution(const R2Filtration& f) {
  const int n = f.n();
  const BigInt b = f.b();
  TruncIntPoly quotient = one_minus_pow(n, b, -(n - 1));
  for (const auto& d : f.rays()) quotient = quotient * one_minus_pow(n, b - big(d.c()), 1);

  // Same class written as (1 - bH)^2 prod (1 + c_rho H / (1 - bH)).
  const TruncIntPoly geometric = one_minus_pow(n, b, -1);
  TruncIntPoly product = one_minus_pow(n, b, 2);
  for (const auto& d : f.rays()) {
    TruncIntPoly factor = geometric * TruncIntPoly::linear(n, 0, big(d.c()));
    factor[0] += 1;
    product = product * factor;
  }
  if (!(product == quotient)) throw InternalConsistencyError("resolution formula forms disagree");
  return quotient;
}

TruncIntPoly chern_split(const R2Filtration& f) {
  auto lines = active_lines(f);
  if (lines.size() > 2) throw DomainError("more than two distinct lines; the sheaf does not split");
  const int n = f.n();
  const BigInt b = f.b();
  TruncIntPoly out = TruncIntPoly::one(n);
  for (std::size_t i = 0; i < 2; ++i) {
    const BigInt s = i < lines.size() ? lines[i].second : BigInt(0);
    out = out * TruncIntPoly::linear(n, 1, s - b);
  }
  return out;
}

TruncIntPoly chern_symmetric(const R2Filtration& f) {
  const int n = f.n();
  TruncIntPoly out = TruncIntPoly::one(n);
  if (n >= 1) out[1] = -(f.a() + f.b());
  if (n >= 2) out[2] = f.a() * f.b() + elementary_symmetric(f, 2);
  for (int k = 3; k <= n; ++k) out[k] = chern_k_general(f, k);
  return out;
}

TruncIntPoly chern_total(const R2Filtration& f) {
  if (has_distinct_active_lines(f)) return chern_resolution(f);
  if (active_lines(f).size() <= 2) return chern_split(f);
  return chern_general(to_multifiltration(f), Validation::Skip);
}

BigInt elementary_symmetric(const std::vector<BigInt>& values, int k) {
  if (k < 0) throw RangeError("negative index");
  std::vector<BigInt> e(static_cast<std::size_t>(k) + 1, BigInt(0));
  e[0] = 1;
  for (const BigInt& x : values) {
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return e[k];
}

BigInt elementary_symmetric(const R2Filtration& f, int k) {
  if (k < 1 || k > f.n()) throw RangeError("k must lie in [1, n]");
  std::vector<BigInt> c;
  for (const auto& d : f.rays()) c.push_back(big(d.c()));
  return elementary_symmetric(c, k);
}

BigInt chern_k_general(const R2Filtration& f, int k) {
  if (k < 3 || k > f.n()) throw RangeError("k must lie in [3, n]");
  const BigInt b = f.b();
  BigInt sum = 0;
  for (int i = 0; i <= k - 3; ++i) {
    BigInt bp;
    mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k - i - 3));
    sum += binomial(k - 3, i) * elementary_symmetric(f, i + 3) * bp;
  }
  return sum;
}

bool is_locally_free(const R2Filtration& f) { return active_lines(f).size() <= 2; }

Rational slope(const R2Filtration& f) {
  Rational mu(-(f.a() + f.b()), 2);
  mu.canonicalize();
  return mu;
}

Stability stability(const R2Filtration& f) {
  const BigInt c = f.c();
  if (c == 0) return Stability::StrictlySemistable;
  bool equal = false;
  for (const auto& [line, s] : active_lines(f)) {
    if (s > c - s) return Stability::Unstable;
    if (s == c - s) equal = true;
  }
  return equal ? Stability::StrictlySemistable : Stability::Stable;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::StrictlySemistable:
      return "strictly semistable";
    case Stability::Unstable:
      return "unstable";
  }
  return "";
}

BigInt discriminant(const TruncIntPoly& c) {
  const BigInt c1 = c.n() >= 1 ? c[1] : BigInt(0);
  const BigInt c2 = c.n() >= 2 ? c[2] : BigInt(0);
  return 4 * c2 - c1 * c1;
}

BigInt discriminant(const R2Filtration& f) { return discriminant(chern_total(f)); }

std::variant<R2Filtration, NoSplit> prescribe_reflexive(const TruncIntPoly& target) {
  if (target[0] != 1) throw DomainError("constant term must be 1");
  const int n = target.n();
  if (n < 1) return NoSplit{};
  for (int k = 1; k <= n; ++k) {
    if (target[k] < 0) return NoSplit{};
  }
  if (!target[1].fits_slong_p()) throw RangeError("c1 is too large for the split search");
  const long total = target[1].get_si();
  const int slots = n + 1;

  // Ascending multisets with sum c1; prefix symmetric functions only grow.
  std::vector<long> chosen;
  std::vector<std::vector<BigInt>> e_stack = {std::vector<BigInt>(static_cast<std::size_t>(n) + 1, BigInt(0))};
  e_stack[0][0] = 1;
  std::function<bool(long, long)> search = [&](long lo, long rest) -> bool {
    const int left = slots - static_cast<int>(chosen.size());
    if (left == 0) {
      if (rest != 0) return false;
      const auto& e = e_stack.back();
      for (int k = 1; k <= n; ++k) {
        if (e[k] != target[k]) return false;
      }
      return true;
    }
    for (long v = lo; v * left <= rest; ++v) {
      if (left == 1 && v != rest) continue;
      std::vector<BigInt> e = e_stack.back();
      for (int k = n; k >= 1; --k) e[k] += e[k - 1] * v;
      bool over = false;
      for (int k = 1; k <= n && !over; ++k) over = e[k] > target[k];
      if (over) break;  // larger v only increases every prefix sum
      chosen.push_back(v);
      e_stack.push_back(std::move(e));
      if (search(v, rest - v)) return true;
      chosen.pop_back();
      e_stack.pop_back();
    }
    return false;
  };
  if (!search(0, total)) return NoSplit{};
  Fan fan(n);
  return R2Filtration::b_zero(fan, Coords(chosen.begin(), chosen.end()));
}

bool normalized_positivity(const TruncIntPoly& c) {
  const int n = c.n();
  const BigInt c1 = n >= 1 ? c[1] : BigInt(0);
  for (int k = 3; k <= n; ++k) {
    BigInt sum = 0;
    for (int i = 0; i <= k - 3; ++i) {
      BigInt p;
      mpz_pow_ui(p.get_mpz_t(), c1.get_mpz_t(), static_cast<unsigned long>(k - i - 3));
      sum += binomial(k - 3, i) * c[i + 3] * p;
    }
    if (sum < 0) return false;
  }
  return true;
}

bool normalized_positivity(const R2Filtration& f) {
  if (!f.is_normalized(Normalization::AZero)) throw PreconditionError("data must be normalized with a_rho = 0");
  return normalized_positivity(chern_total(f));
}

Multifiltration to_multifiltration(const R2Filtration& f) {
  std::vector<std::vector<Jump>> per_ray;
  for (const auto& d : f.rays()) {
    std::vector<Jump> jumps;
    if (d.active()) jumps.push_back(Jump{{d.a}, Subspace::line(*d.line)});
    jumps.push_back(Jump{{d.b}, Subspace::full(2)});
    per_ray.push_back(std::move(jumps));
  }
  return from_ray_filtrations(f.fan(), 2, per_ray);
}

R2Filtration hull_data(const Multifiltration& m) {
  if (m.rank() != 2) throw UnsupportedError("ray data needs rank 2");
  std::vector<RayData> rays;
  for (int r = 0; r < m.fan().ray_count(); ++r) {
    std::vector<Jump> jumps = m.jumps(Cone::of({r}));
    std::sort(jumps.begin(), jumps.end(), [](const Jump& x, const Jump& y) { return x.at < y.at; });
    if (jumps.empty()) throw InvalidMultifiltrationError("ray " + std::to_string(r) + " carries no jumps");
    RayData d;
    if (jumps.front().space.is_full()) {
      d.a = d.b = jumps.front().at[0];
    } else {
      if (jumps.size() != 2 || !jumps.back().space.is_full()) {
        throw InvalidMultifiltrationError("ray " + std::to_string(r) + " does not reach the full fiber");
      }
      d.a = jumps.front().at[0];
      d.b = jumps.back().at[0];
      d.line = jumps.front().space.as_line();
    }
    rays.push_back(std::move(d));
  }
  return R2Filtration(m.fan(), std::move(rays));
}

}  // namespace tsk
