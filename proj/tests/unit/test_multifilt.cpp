#include <doctest.h>

#include "tsk/errors.hpp"
#include "tsk/multifilt.hpp"
#include "tsk/random_instances.hpp"
#include "tsk/reflexive_r2.hpp"

using namespace tsk;

namespace {

Multifiltration start_1110() { return to_multifiltration(R2Filtration::b_zero(Fan(4), {1, 1, 1, 0, 0})); }

Multifiltration single_drop() {
  return apply_elementary(start_1110(), Cone::of({0, 1, 2}), Coords{-1, 0, 0}, Subspace::zero(2));
}

}  // namespace

TEST_CASE("evaluation corner cases") {
  const Multifiltration m = start_1110();
  CHECK(m.evaluate(Cone{}, Coords{}).is_full());
  CHECK(m.evaluate(Cone::of({3}), Coords{-5}).is_zero());
  CHECK(m.evaluate(Cone::of({3}), Coords{0}).is_full());
}

TEST_CASE("validation reports broken families") {
  CHECK(validate(start_1110()).empty());
  const Fan p2(2);
  const Multifiltration good = to_multifiltration(R2Filtration::b_zero(p2, {1, 1, 0}));
  auto jumps = good.all_jumps();
  jumps[Cone::of({0})].clear();
  const auto empty_ray = validate(replace_cones(good, jumps));
  REQUIRE_FALSE(empty_ray.empty());

  jumps = good.all_jumps();
  jumps[Cone::of({0, 1})] = {Jump{{-1, -1}, Subspace::full(2)}};
  const auto facet = validate(replace_cones(good, jumps));
  REQUIRE_FALSE(facet.empty());
  CHECK(facet.front().cone == Cone::of({0, 1}));
  CHECK(facet.front().facet.has_value());
}

TEST_CASE("reflexive hull") {
  const Multifiltration f = start_1110();
  CHECK(reflexive_hull(f) == f);
  CHECK(is_reflexive(f));
  const Multifiltration e = single_drop();
  CHECK_FALSE(is_reflexive(e));
  CHECK(reflexive_hull(e) == f);
  CHECK(hull_data(reflexive_hull(e)) == R2Filtration::b_zero(Fan(4), {1, 1, 1, 0, 0}));
}

TEST_CASE("delta invariant") {
  const Multifiltration f = start_1110();
  CHECK(delta(f, f).is_zero());
  const DeltaInvariant d = delta(single_drop(), f);
  REQUIRE(d.values.size() == 4);
  CHECK(d.values[0] == BigInt(0));
  CHECK(d.values[1] == BigInt(0));
  CHECK(d.values[2] == BigInt(1));
  CHECK(d.values[3] == BigInt(0));

  const Multifiltration ray_drop = apply_elementary(f, Cone::of({3}), Coords{0}, Subspace::line(Line2::make(1, 0)));
  const DeltaInvariant r = delta(ray_drop, f);
  REQUIRE(r.values[0].has_value());
  CHECK(*r.values[0] > 0);
}

TEST_CASE("elementary check recovers drop parameters") {
  const Multifiltration f = start_1110();
  const Multifiltration e = single_drop();
  const ElementaryResult res = elementary_check(e, f);
  REQUIRE(std::holds_alternative<ElementaryInjection>(res));
  const auto& inj = std::get<ElementaryInjection>(res);
  CHECK(inj.k0 == 3);
  CHECK(inj.sigma0 == Cone::of({0, 1, 2}));
  CHECK(inj.m0 == Coords{-1, 0, 0});
  CHECK(inj.m_big_sigma == -1);
  CHECK(inj.saturated);
  CHECK(quotient_dims(inj).first == 3);

  const Multifiltration twice = apply_elementary(e, Cone::of({0, 1, 2}), Coords{-1, 1, 0}, Subspace::zero(2));
  const ElementaryResult bad = elementary_check(twice, f);
  REQUIRE(std::holds_alternative<NotElementary>(bad));
}

TEST_CASE("illegal drops are rejected") {
  const Multifiltration f = start_1110();
  CHECK_THROWS(apply_elementary(f, Cone::of({0, 1, 2}), Coords{-1, 0, 0}, Subspace::line(Line2::make(1, 7))));
}

TEST_CASE("factorize and recompose") {
  const Multifiltration f = start_1110();
  CHECK(factorize(f, f).empty());
  const auto one = factorize(single_drop(), f);
  REQUIRE(one.size() == 1);
  CHECK(one.front().m0 == Coords{-1, 0, 0});
  CHECK(recompose(f, one) == single_drop());
  const Multifiltration e = apply_elementary(f, Cone::of({3}), Coords{0}, Subspace::line(Line2::make(1, 0)));
  CHECK_THROWS_AS(factorize(f, e), ContainmentError);
}

TEST_CASE("bulk drop runs equal repeated single drops") {
  const Multifiltration f = to_multifiltration(R2Filtration::b_zero(Fan(4), {1, 6, 6, 0, 0}));
  const Cone s = Cone::of({0, 1, 2});
  Multifiltration step = f;
  for (Coord j = 0; j < 5; ++j) step = apply_elementary(step, s, Coords{-1, j, 0}, Subspace::zero(2));
  CHECK(apply_drop_run(f, s, Coords{-1, 0, 0}, 1, 5, Subspace::zero(2)) == step);
}

TEST_CASE("twisting shifts the weights") {
  const Multifiltration f = start_1110();
  const Coords shift = {1, 0, 0, 0, 0};
  const Multifiltration g = f.twisted(shift);
  CHECK(g.twisted(Coords{-1, 0, 0, 0, 0}) == f);
  CHECK(validate(g).empty());
}

TEST_CASE("random drop sequences factor back") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Multifiltration f = to_multifiltration(random_reflexive(rng, 3 + i % 2, 4, LineMode::Pooled, 1));
    const DropSequence seq = random_drops(rng, f, 4, {1, 2, 3});
    CHECK(validate(seq.result).empty());
    CHECK(included(seq.result, f));
    CHECK(recompose(f, factorize(seq.result, f)) == seq.result);
  }
}
