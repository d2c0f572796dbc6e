#include "tsk/multifilt.hpp"

#include <algorithm>
#include <set>

#include "grid.hpp"
#include "tsk/errors.hpp"

namespace tsk {

using detail::Grid;

namespace {

const std::vector<Jump> kNoJumps;

std::string coords_str(std::span<const Coord> c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

void same_shape(const Multifiltration& a, const Multifiltration& b) {
  if (!(a.fan() == b.fan())) throw ShapeError("families live on different fans");
  if (a.rank() != b.rank()) throw ShapeError("families have different ranks");
}

// Breakpoints that make "x <= upper" and "x == upper" constant on cells along
// the sigma0 axes of sigma.
std::vector<std::vector<Coord>> region_breaks(const Cone& sigma, const Cone& sigma0, std::span<const Coord> upper) {
  std::vector<std::vector<Coord>> extra(static_cast<std::size_t>(sigma.dim()));
  const auto rays0 = sigma0.rays();
  for (std::size_t i = 0; i < rays0.size(); ++i) {
    auto& b = extra[static_cast<std::size_t>(sigma.position(rays0[i]))];
    b.push_back(upper[i]);
    b.push_back(upper[i] + 1);
  }
  return extra;
}

// Coordinates of `rep` (a class of sigma) restricted to the rays of sigma0.
Coords restrict_to(const Cone& sigma, const Cone& sigma0, std::span<const Coord> rep) {
  Coords out;
  for (int r : sigma0.rays()) out.push_back(rep[static_cast<std::size_t>(sigma.position(r))]);
  return out;
}

bool le(std::span<const Coord> a, std::span<const Coord> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

struct Compared {
  Grid grid;
  std::vector<Subspace> e;
  std::vector<Subspace> f;
};

Compared compare_on(const Multifiltration& e, const Multifiltration& f, const Cone& c,
                    std::vector<std::vector<Coord>> extra = {}) {
  Grid g = detail::grid_for(c.dim(), {&e.jumps(c), &f.jumps(c)}, std::move(extra));
  auto ev = detail::dense_values(g, e.jumps(c), e.rank());
  auto fv = detail::dense_values(g, f.jumps(c), f.rank());
  return Compared{std::move(g), std::move(ev), std::move(fv)};
}

std::optional<Coords> first_difference_on(const Multifiltration& e, const Multifiltration& f, const Cone& c) {
  if (e.jumps(c) == f.jumps(c)) return std::nullopt;
  Compared cmp = compare_on(e, f, c);
  for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
    if (cmp.e[i] != cmp.f[i]) return cmp.grid.representative(i);
  }
  return std::nullopt;
}

std::map<Cone, std::vector<Jump>> lowered_cones(const Multifiltration& f, const Cone& sigma0,
                                               std::span<const Coord> upper, const Subspace& target) {
  std::map<Cone, std::vector<Jump>> out;
  for (const Cone& c : f.fan().cofaces(sigma0)) {
    Grid g = detail::grid_for(c.dim(), {&f.jumps(c)}, region_breaks(c, sigma0, upper));
    auto vals = detail::dense_values(g, f.jumps(c), f.rank());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (vals[i].is_zero() || !g.bounded_below(i)) continue;
      Coords rep = g.representative(i);
      if (le(restrict_to(c, sigma0, rep), upper)) vals[i] = vals[i].meet(target);
    }
    out[c] = detail::generators(g, vals);
  }
  return out;
}

void check_drop_site(const Multifiltration& f, const Cone& sigma0, std::span<const Coord> m0, const Subspace& target) {
  f.fan().check_cone(sigma0);
  if (sigma0.empty()) throw ParameterError("cannot drop at the zero cone");
  if (static_cast<int>(m0.size()) != sigma0.dim()) throw ShapeError("class length differs from cone dimension");
  if (target.rank() != f.rank()) throw ShapeError("target subspace has the wrong rank");
}

void check_codim_one(const Subspace& current, const Subspace& target, std::span<const Coord> at) {
  if (!current.contains(target) || target.dim() + 1 != current.dim()) {
    throw ParameterError("target is not a hyperplane of the value " + current.to_string() + " at " + coords_str(at));
  }
}

void check_below(const Multifiltration& f, const Cone& sigma0, Coords point, int skip_axis, const Subspace& target) {
  for (std::size_t a = 0; a < point.size(); ++a) {
    if (static_cast<int>(a) == skip_axis) continue;
    Coords below = point;
    below[a] -= 1;
    if (!target.contains(f.evaluate(sigma0, below))) {
      throw MinimalityError("value at " + coords_str(below) + " is not inside the target; the drop at " +
                            coords_str(point) + " would break monotonicity");
    }
  }
}

}  // namespace

Multifiltration::Multifiltration(Fan fan, int rank, std::map<Cone, std::vector<Jump>> jumps)
    : fan_(fan), rank_(rank) {
  if (rank < 1) throw ShapeError("rank must be positive");
  for (const auto& [cone, list] : jumps) {
    fan.check_cone(cone);
    if (cone.empty() && !list.empty()) throw ShapeError("the zero cone carries no jumps");
  }
  for (const Cone& c : fan.all_cones()) {
    if (c.empty()) continue;
    auto it = jumps.find(c);
    jumps_[c] = detail::canonicalize(it == jumps.end() ? kNoJumps : it->second, c.dim(), rank);
  }
}

const std::vector<Jump>& Multifiltration::jumps(const Cone& cone) const {
  if (cone.empty()) return kNoJumps;
  auto it = jumps_.find(cone);
  if (it == jumps_.end()) throw RangeError("cone " + cone.to_string() + " is not in the fan");
  return it->second;
}

Subspace Multifiltration::evaluate(const Cone& cone, std::span<const Coord> mu) const {
  if (static_cast<int>(mu.size()) != cone.dim()) throw ShapeError("class length differs from cone dimension");
  if (cone.empty()) return Subspace::full(rank_);
  return detail::join_below(jumps(cone), mu, rank_);
}

Multifiltration Multifiltration::twisted(std::span<const Coord> shift) const {
  if (static_cast<int>(shift.size()) != fan_.ray_count()) throw ShapeError("one shift per ray is required");
  std::map<Cone, std::vector<Jump>> moved = jumps_;
  for (auto& [cone, list] : moved) {
    const auto rays = cone.rays();
    for (Jump& j : list) {
      for (std::size_t a = 0; a < rays.size(); ++a) j.at[a] += shift[rays[a]];
    }
  }
  return Multifiltration(Canonical{}, fan_, rank_, std::move(moved));
}

Multifiltration replace_cones(const Multifiltration& base, std::map<Cone, std::vector<Jump>> canonical) {
  std::map<Cone, std::vector<Jump>> all = base.jumps_;
  for (auto& [cone, list] : canonical) all[cone] = std::move(list);
  return Multifiltration(Multifiltration::Canonical{}, base.fan_, base.rank_, std::move(all));
}

std::string Violation::to_string() const {
  std::string s = kind + " at cone " + cone.to_string();
  if (facet) s += " facet " + facet->to_string();
  if (!cls.empty()) s += " class " + coords_str(cls);
  if (!detail.empty()) s += ": " + detail;
  return s;
}

std::vector<Violation> validate(const Multifiltration& m) {
  std::vector<Violation> out;
  const int r = m.rank();
  for (const auto& [cone, list] : m.all_jumps()) {
    Subspace total = Subspace::zero(r);
    for (const Jump& j : list) total = total.join(j.space);
    if (!total.is_full()) out.push_back(Violation{"union", cone, std::nullopt, {}, "join of stored values is " + total.to_string()});
    if (cone.dim() < 2) continue;
    for (int ray : cone.rays()) {
      const Cone tau = cone.without(ray);
      const auto pos = static_cast<std::size_t>(cone.position(ray));
      std::vector<Jump> projected;
      for (const Jump& j : list) {
        Coords at = j.at;
        at.erase(at.begin() + static_cast<std::ptrdiff_t>(pos));
        projected.push_back(Jump{std::move(at), j.space});
      }
      Grid g = detail::grid_for(tau.dim(), {&m.jumps(tau), &projected});
      auto tv = detail::dense_values(g, m.jumps(tau), r);
      auto pv = detail::dense_values(g, projected, r);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (tv[i] != pv[i]) {
          out.push_back(Violation{"facet", cone, tau, g.representative(i),
                                  "facet value " + tv[i].to_string() + " but limit " + pv[i].to_string()});
          break;
        }
      }
    }
  }
  return out;
}

Multifiltration from_ray_filtrations(const Fan& fan, int rank, const std::vector<std::vector<Jump>>& per_ray) {
  if (static_cast<int>(per_ray.size()) != fan.ray_count()) throw ShapeError("one filtration per ray is required");
  std::vector<std::vector<Jump>> rays;
  for (const auto& l : per_ray) rays.push_back(detail::canonicalize(l, 1, rank));
  // Ray values at each of their breakpoints.
  std::vector<Grid> ray_grid;
  std::vector<std::vector<Subspace>> ray_vals;
  for (const auto& l : rays) {
    ray_grid.push_back(detail::grid_for(1, {&l}));
    ray_vals.push_back(detail::dense_values(ray_grid.back(), l, rank));
  }
  std::map<Cone, std::vector<Jump>> out;
  for (const Cone& c : fan.all_cones()) {
    if (c.empty()) continue;
    const auto rs = c.rays();
    std::vector<std::vector<Coord>> breaks;
    for (int ray : rs) breaks.push_back(ray_grid[ray].breaks(0));
    Grid g(std::move(breaks));
    std::vector<Subspace> vals(g.size(), Subspace::zero(rank));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.bounded_below(i)) continue;
      Subspace v = Subspace::full(rank);
      for (std::size_t a = 0; a < rs.size() && !v.is_zero(); ++a) {
        v = v.meet(ray_vals[rs[a]][g.index_along(i, static_cast<int>(a))]);
      }
      vals[i] = std::move(v);
    }
    out[c] = detail::generators(g, vals);
  }
  return replace_cones(Multifiltration(fan, rank, {}), std::move(out));
}

Multifiltration reflexive_hull(const Multifiltration& m) {
  auto violations = validate(m);
  if (!violations.empty()) throw InvalidMultifiltrationError(violations.front().to_string());
  std::vector<std::vector<Jump>> per_ray;
  for (int r = 0; r < m.fan().ray_count(); ++r) per_ray.push_back(m.jumps(Cone::of({r})));
  return from_ray_filtrations(m.fan(), m.rank(), per_ray);
}

bool is_reflexive(const Multifiltration& m) { return reflexive_hull(m) == m; }

bool included(const Multifiltration& e, const Multifiltration& f) {
  same_shape(e, f);
  for (const auto& [cone, list] : e.all_jumps()) {
    if (list == f.jumps(cone)) continue;
    Compared cmp = compare_on(e, f, cone);
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
      if (!cmp.f[i].contains(cmp.e[i])) return false;
    }
  }
  return true;
}

bool DeltaInvariant::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v && *v == 0; });
}

std::string DeltaInvariant::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i] ? values[i]->get_str() : "inf";
  }
  return s + ")";
}

DeltaInvariant delta(const Multifiltration& e, const Multifiltration& f) {
  same_shape(e, f);
  if (!included(e, f)) throw ContainmentError("E is not contained in F");
  const Fan& fan = f.fan();
  DeltaInvariant out;
  out.values.assign(static_cast<std::size_t>(fan.n()), std::nullopt);
  std::set<Cone> vanishing = {Cone{}};
  for (int k = 1; k <= fan.n(); ++k) {
    std::set<Cone> next;
    std::optional<BigInt> sum = BigInt(0);
    bool any = false;
    for (const Cone& c : fan.cones(k)) {
      bool star = true;
      for (int ray : c.rays()) star = star && vanishing.count(c.without(ray)) > 0;
      if (!star) continue;
      any = true;
      std::optional<BigInt> local = BigInt(0);
      if (e.jumps(c) != f.jumps(c)) {
        Compared cmp = compare_on(e, f, c);
        for (std::size_t i = 0; i < cmp.grid.size() && local; ++i) {
          const int gap = cmp.f[i].dim() - cmp.e[i].dim();
          if (gap == 0) continue;
          auto vol = cmp.grid.volume(i);
          if (!vol) {
            local.reset();
          } else {
            *local += *vol * gap;
          }
        }
      }
      if (local && *local == 0) next.insert(c);
      if (!local) {
        sum.reset();
      } else if (sum) {
        *sum += *local;
      }
    }
    if (!any) break;
    out.values[static_cast<std::size_t>(k - 1)] = sum;
    vanishing = std::move(next);
  }
  return out;
}

ElementaryResult elementary_check(const Multifiltration& e, const Multifiltration& f) {
  same_shape(e, f);
  if (!included(e, f)) throw ContainmentError("E is not contained in F");
  const Fan& fan = f.fan();
  const int n = fan.n();

  int k0 = 0;
  Cone sigma0;
  for (int k = 1; k <= n && k0 == 0; ++k) {
    std::vector<Cone> differing;
    for (const Cone& c : fan.cones(k)) {
      if (first_difference_on(e, f, c)) differing.push_back(c);
    }
    if (differing.size() > 1) {
      return NotElementary{"(ii)_e", "cones " + differing[0].to_string() + " and " + differing[1].to_string() +
                                         " both differ in dimension " + std::to_string(k)};
    }
    if (!differing.empty()) {
      k0 = k;
      sigma0 = differing.front();
    }
  }
  if (k0 == 0) return NotElementary{"(ii)_e", "the inclusion is an isomorphism"};

  Coords m0;
  {
    Compared cmp = compare_on(e, f, sigma0);
    bool found = false;
    for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
      const int gap = cmp.f[i].dim() - cmp.e[i].dim();
      if (gap == 0) continue;
      auto vol = cmp.grid.volume(i);
      if (gap > 1 || !vol || *vol != 1 || found) {
        return NotElementary{"(ii)_e", "more than a single one-dimensional drop at " + sigma0.to_string()};
      }
      found = true;
      m0 = cmp.grid.representative(i);
    }
    if (!found) return NotElementary{"(ii)_e", "only non-dimensional differences at " + sigma0.to_string()};
  }
  const Subspace hyper = e.evaluate(sigma0, m0);

  for (int k = k0 + 1; k <= n; ++k) {
    for (const Cone& c : fan.cones(k)) {
      const bool coface = sigma0.is_face_of(c);
      if (!coface) {
        if (auto at = first_difference_on(e, f, c)) {
          return NotElementary{"(iii)_e", "unexpected change at " + c.to_string() + " class " + coords_str(*at)};
        }
        continue;
      }
      Compared cmp = compare_on(e, f, c, region_breaks(c, sigma0, m0));
      for (std::size_t i = 0; i < cmp.grid.size(); ++i) {
        Coords rep = cmp.grid.representative(i);
        const bool below = le(restrict_to(c, sigma0, rep), m0);
        const Subspace expected = below ? cmp.f[i].meet(hyper) : cmp.f[i];
        if (cmp.e[i] != expected) {
          return NotElementary{"(iii)_e", "value at " + c.to_string() + " class " + coords_str(rep) +
                                              " is not F cut by the dropped value"};
        }
      }
    }
  }

  ElementaryInjection inj;
  inj.k0 = k0;
  inj.sigma0 = sigma0;
  inj.m0 = m0;
  inj.hyperplane = hyper;
  inj.m_rho.assign(static_cast<std::size_t>(fan.ray_count()), 0);
  const auto rays0 = sigma0.rays();
  for (std::size_t i = 0; i < rays0.size(); ++i) inj.m_rho[rays0[i]] = m0[i];

  for (int r = 0; r < fan.ray_count(); ++r) {
    if (sigma0.has_ray(r) || k0 == n) continue;
    const Cone tau = sigma0.with(r);
    const auto pos = static_cast<std::size_t>(tau.position(r));
    std::vector<Coord> xs;
    for (const auto* l : {&e.jumps(tau), &f.jumps(tau)}) {
      for (const Jump& j : *l) xs.push_back(j.at[pos]);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) return NotElementary{"weights", "no data along ray " + std::to_string(r)};
    xs.insert(xs.begin(), xs.front() - 1);
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Coords pt = m0;
      pt.insert(pt.begin() + static_cast<std::ptrdiff_t>(pos), xs[i]);
      const bool differs = f.evaluate(tau, pt).dim() != e.evaluate(tau, pt).dim();
      if (differs && !first) first = i;
      if (!differs && first) {
        return NotElementary{"weights", "dimension gap along ray " + std::to_string(r) + " is not an up-set"};
      }
    }
    if (!first || *first == 0) return NotElementary{"weights", "no threshold along ray " + std::to_string(r)};
    inj.thresholds[r] = xs[*first];
    inj.m_rho[r] = xs[*first];
  }
  inj.m_big_sigma = 0;
  for (Coord x : inj.m_rho) inj.m_big_sigma += BigInt(static_cast<long>(x));

  inj.saturated = true;
  for (const Cone& c : fan.cofaces(sigma0)) {
    CofaceWeight w;
    w.cone = c;
    w.bold_m = 0;
    for (int r : c.rays()) {
      w.m_sigma.push_back(inj.m_rho[r]);
      w.bold_m += BigInt(static_cast<long>(inj.m_rho[r]));
    }
    w.saturated = true;
    if (c != sigma0) {
      auto extra = region_breaks(c, sigma0, m0);
      for (const auto& [r, a] : inj.thresholds) {
        if (c.has_ray(r)) extra[static_cast<std::size_t>(c.position(r))].push_back(a);
      }
      Compared cmp = compare_on(e, f, c, std::move(extra));
      for (std::size_t i = 0; i < cmp.grid.size() && w.saturated; ++i) {
        Coords rep = cmp.grid.representative(i);
        bool inside = true;
        for (std::size_t a = 0; a < rep.size(); ++a) {
          const int ray = c.rays()[a];
          inside = inside && (sigma0.has_ray(ray) ? rep[a] == inj.m_rho[ray] : rep[a] >= inj.m_rho[ray]);
        }
        const bool differs = cmp.f[i].dim() != cmp.e[i].dim();
        if (differs != inside) w.saturated = false;
      }
    }
    inj.saturated = inj.saturated && w.saturated;
    inj.cofaces.push_back(std::move(w));
  }
  return inj;
}

Multifiltration apply_elementary(const Multifiltration& f, const Cone& sigma0, std::span<const Coord> m0,
                                 const Subspace& target) {
  check_drop_site(f, sigma0, m0, target);
  check_codim_one(f.evaluate(sigma0, m0), target, m0);
  check_below(f, sigma0, Coords(m0.begin(), m0.end()), -1, target);
  return replace_cones(f, lowered_cones(f, sigma0, m0, target));
}

Multifiltration apply_drop_run(const Multifiltration& f, const Cone& sigma0, std::span<const Coord> m0, int axis_ray,
                               Coord count, const Subspace& target) {
  check_drop_site(f, sigma0, m0, target);
  if (count < 0) throw ParameterError("negative run length");
  if (!sigma0.has_ray(axis_ray)) throw ParameterError("run axis is not a ray of the cone");
  if (count == 0) return f;
  const auto axis = static_cast<std::size_t>(sigma0.position(axis_ray));
  // Values along the run only change where a jump coordinate falls inside it.
  std::vector<Coord> steps = {0};
  for (const Jump& j : f.jumps(sigma0)) {
    for (Coord b : {j.at[axis], j.at[axis] + 1}) {
      const Coord s = b - m0[axis];
      if (s > 0 && s < count) steps.push_back(s);
    }
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  for (Coord s : steps) {
    Coords pt(m0.begin(), m0.end());
    pt[axis] += s;
    check_codim_one(f.evaluate(sigma0, pt), target, pt);
    check_below(f, sigma0, pt, s == 0 ? -1 : static_cast<int>(axis), target);
  }
  Coords upper(m0.begin(), m0.end());
  upper[axis] += count - 1;
  return replace_cones(f, lowered_cones(f, sigma0, upper, target));
}

std::vector<ElementaryInjection> factorize(const Multifiltration& e, const Multifiltration& f) {
  same_shape(e, f);
  if (!included(e, f)) throw ContainmentError("E is not contained in F");
  for (const auto* m : {&e, &f}) {
    auto v = validate(*m);
    if (!v.empty()) throw InvalidMultifiltrationError(v.front().to_string());
  }
  std::vector<ElementaryInjection> chain;
  Multifiltration current = f;
  const Fan& fan = f.fan();
  while (true) {
    std::optional<std::pair<Cone, Coords>> site;
    for (int k = 1; k <= fan.n() && !site; ++k) {
      for (const Cone& c : fan.cones(k)) {
        if (auto at = first_difference_on(e, current, c)) {
          site.emplace(c, *at);
          break;
        }
      }
    }
    if (!site) break;
    const auto& [sigma0, m0] = *site;
    const Subspace hyper = current.evaluate(sigma0, m0).hyperplane_containing(e.evaluate(sigma0, m0));
    Multifiltration next = apply_elementary(current, sigma0, m0, hyper);
    ElementaryResult res = elementary_check(next, current);
    if (auto* bad = std::get_if<NotElementary>(&res)) {
      throw InternalConsistencyError("split-off step is not elementary: " + bad->clause + " " + bad->detail);
    }
    chain.push_back(std::get<ElementaryInjection>(std::move(res)));
    current = std::move(next);
  }
  return chain;
}

Multifiltration recompose(const Multifiltration& f, const std::vector<ElementaryInjection>& chain) {
  Multifiltration current = f;
  for (const auto& inj : chain) current = apply_elementary(current, inj.sigma0, inj.m0, inj.hyperplane);
  return current;
}

std::pair<int, BigInt> quotient_dims(const ElementaryInjection& inj) { return {inj.k0, inj.m_big_sigma}; }

}  // namespace tsk
