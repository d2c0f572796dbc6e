#include <doctest.h>

#include "../support/oracles.hpp"
#include "tsk/chern_engine.hpp"
#include "tsk/errors.hpp"
#include "tsk/multifilt.hpp"
#include "tsk/reflexive_r2.hpp"

using namespace tsk;

namespace {

R2Filtration bz(int n, Coords c) { return R2Filtration::b_zero(Fan(n), std::move(c)); }

TruncIntPoly poly(const char* text, int n) { return parse_int_poly(text, n); }

}  // namespace

TEST_CASE("normalization shifts each ray") {
  const Fan p2(2);
  const R2Filtration f(p2, {{-3, -1, Line2::for_ray(0)}, {-3, -1, Line2::for_ray(1)}, {0, 0, std::nullopt}});
  const R2Filtration b = f.normalized(Normalization::BZero);
  CHECK(b.ray(0).a == -2);
  CHECK(b.ray(0).b == 0);
  CHECK(b.normalized(Normalization::BZero) == b);
  const R2Filtration a = b.normalized(Normalization::AZero);
  CHECK(a.ray(0).a == 0);
  CHECK(a.ray(0).b == 2);
  CHECK(a.is_normalized(Normalization::AZero));
  CHECK_THROWS_AS(R2Filtration(p2, {{1, 0, std::nullopt}, {0, 0, std::nullopt}, {0, 0, std::nullopt}}),
                  RangeError);
}

TEST_CASE("total Chern class of normalized data") {
  CHECK(chern_total(bz(3, {1, 1, 1, 1})) == poly("1 + 4*H + 6*H^2 + 4*H^3", 3));
  CHECK(chern_total(bz(4, {1, 6, 6, 0, 0})) == poly("1 + 13*H + 48*H^2 + 36*H^3", 4));
  CHECK(chern_total(bz(4, {1, 7, 7, 7, 0})) == poly("1 + 22*H + 168*H^2 + 490*H^3 + 343*H^4", 4));
}

TEST_CASE("the three Chern formulas agree on distinct lines") {
  for (const Coords& c : {Coords{1, 6, 6, 0, 0}, Coords{2, 3, 1, 4, 5}, Coords{0, 0, 3, 0, 0}, Coords{5, 1, 2, 0}}) {
    const R2Filtration f = bz(static_cast<int>(c.size()) - 1, c);
    const TruncIntPoly klyachko = chern_general(to_multifiltration(f));
    CHECK(chern_resolution(f) == klyachko);
    CHECK(chern_symmetric(f) == klyachko);
  }
}

TEST_CASE("split formula for repeated lines") {
  const Fan p3(3);
  const Line2 l = Line2::make(1, 1);
  const R2Filtration f(p3, {{-2, 0, l}, {-1, 0, l}, {-3, 0, Line2::make(0, 1)}, {0, 0, std::nullopt}});
  CHECK_FALSE(has_distinct_active_lines(f));
  CHECK(is_locally_free(f));
  CHECK(chern_split(f) == chern_general(to_multifiltration(f)));
  CHECK(chern_split(f) == poly("1 + 6*H + 9*H^2", 3));
}

TEST_CASE("line bundle O(d) plus trivial") {
  const Fan p3(3);
  const R2Filtration f(p3, {{-2, 0, Line2::make(1, 0)}, {0, 0, std::nullopt}, {0, 0, std::nullopt}, {0, 0, std::nullopt}});
  CHECK(chern_total(f) == poly("1 + 2*H", 3));
}

TEST_CASE("elementary symmetric values") {
  const R2Filtration f = bz(4, {1, 6, 6, 0, 0});
  CHECK(elementary_symmetric(f, 2) == 48);
  CHECK(elementary_symmetric(f, 1) == 13);
  CHECK(chern_k_general(f, 3) == 36);
  CHECK(elementary_symmetric(bz(4, {1, 1, 1, 1, 1}), 4) == 5);
  CHECK(chern_k_general(bz(4, {0, 0, 0, 0, 0}), 3) == 0);
  const std::vector<BigInt> xs = {3, -2, 5, 7};
  const std::vector<mpz_class> raw(xs.begin(), xs.end());
  for (int k = 0; k <= 4; ++k) CHECK(elementary_symmetric(xs, k) == oracle::elementary(raw, k));
}

TEST_CASE("local freeness") {
  CHECK(is_locally_free(bz(3, {1, 1, 0, 0})));
  CHECK_FALSE(is_locally_free(bz(4, {1, 1, 1, 0, 0})));
  CHECK(is_locally_free(bz(3, {0, 0, 0, 0})));
}

TEST_CASE("slope") {
  CHECK(slope(bz(4, {1, 6, 6, 0, 0})) == Rational(13, 2));
  CHECK(slope(bz(4, {0, 0, 0, 0, 0})) == 0);
  CHECK(slope(bz(4, {1, 6, 6, 0, 0}).normalized(Normalization::AZero)) == Rational(-13, 2));
}

TEST_CASE("stability verdicts") {
  CHECK(stability(bz(4, {1, 1, 1, 0, 0})) == Stability::Stable);
  CHECK(stability(bz(4, {2, 1, 1, 0, 0})) == Stability::StrictlySemistable);
  CHECK(stability(bz(4, {3, 1, 1, 0, 0})) == Stability::Unstable);
  CHECK(to_string(Stability::StrictlySemistable) == "strictly semistable");
}

TEST_CASE("discriminant") {
  CHECK(discriminant(bz(4, {1, 6, 6, 0, 0})) == 23);
  // 3 T^2 + 6 T - 1 at T = 7 is 188.
  CHECK(discriminant(bz(4, {1, 7, 7, 7, 0})) == 188);
  const Fan p3(3);
  const R2Filtration split(p3, {{-2, 0, Line2::make(1, 0)}, {-2, 0, Line2::make(0, 1)}, {0, 0, std::nullopt}, {0, 0, std::nullopt}});
  CHECK(discriminant(split) == 0);
}

TEST_CASE("recovering reflexive data from a Chern polynomial") {
  auto check_roots = [](const char* text, int n, Coords expect) {
    const auto res = prescribe_reflexive(poly(text, n));
    REQUIRE(std::holds_alternative<R2Filtration>(res));
    Coords got;
    for (const auto& r : std::get<R2Filtration>(res).rays()) got.push_back(r.c());
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  };
  check_roots("1 + 4*H + 6*H^2 + 4*H^3", 3, {1, 1, 1, 1});
  check_roots("1 + 13*H + 48*H^2 + 36*H^3", 4, {1, 6, 6, 0, 0});
  CHECK(std::holds_alternative<NoSplit>(prescribe_reflexive(poly("1 + H + H^2", 2))));
}

TEST_CASE("positivity of normalized Chern classes") {
  CHECK(normalized_positivity(bz(4, {1, 6, 6, 0, 0}).normalized(Normalization::AZero)));
  CHECK_FALSE(normalized_positivity(poly("1 - H^3", 4)));
  CHECK(normalized_positivity(TruncIntPoly::one(4)));
  CHECK_THROWS_AS(normalized_positivity(bz(4, {1, 6, 6, 0, 0})), PreconditionError);
}

TEST_CASE("multifiltration of reflexive data") {
  const R2Filtration f = bz(4, {1, 6, 6, 0, 0});
  const Multifiltration m = to_multifiltration(f);
  CHECK(validate(m).empty());
  CHECK(hull_data(reflexive_hull(m)) == f);
  const Cone c = Cone::of({0, 1, 2});
  CHECK(m.evaluate(c, Coords{-1, 0, 0}) == Subspace::line(Line2::for_ray(0)));
  CHECK(m.evaluate(c, Coords{-2, 0, 0}).is_zero());
  CHECK(m.evaluate(Cone::of({0}), Coords{-1}) == Subspace::line(Line2::for_ray(0)));
}
