#include "doctest.h"

#include "logf1/errors.hpp"
#include "logf1/scheme.hpp"

#include <algorithm>
#include <set>

using namespace logf1;

namespace {

IntVector v1(long long a) { return make_vector({a}); }
IntVector v2(long long a, long long b) { return make_vector({a, b}); }

std::vector<std::string> labels(const Fan& f) {
  std::vector<std::string> out;
  for (const auto& p : rational_points(f)) out.push_back(p.label);
  std::sort(out.begin(), out.end());
  return out;
}

ConeIndices cone_of(const Fan& f, const std::vector<IntVector>& rays) {
  auto c = f.find_cone(rays);
  REQUIRE(c.has_value());
  return *c;
}

}  // namespace

TEST_CASE("images of dense open immersions") {
  Fan p1 = standard_fan("P^1");
  auto j = MonoidSchemeMorphism::open_immersion(p1, {cone_of(p1, {v1(1)})});
  SchemeImage img = scheme_image(j);
  REQUIRE(img.fan.has_value());
  CHECK(img.fan->same_as(p1));

  Fan p2 = standard_fan("P^2");
  auto torus = MonoidSchemeMorphism::open_immersion(p2, {ConeIndices{}});
  img = scheme_image(torus);
  REQUIRE(img.fan.has_value());
  CHECK(img.fan->same_as(p2));
}

TEST_CASE("torus slices into subdivisions") {
  Fan a2 = standard_fan("A^2");
  Fan bl = star_subdivide(a2, {0, 1}).fan;
  int a = *a2.ray_index(v2(1, 0));
  auto z = torus_slice_image(bl, a2, a);
  REQUIRE(z.has_value());
  int b = *bl.ray_index(v2(1, 0));
  CHECK(z->same_as(star_quotient(bl, {b}).fan));
  CHECK(z->same_as(standard_fan("A^1")));

  // A partial subdivision without a ray over e1: the fibre product is empty.
  Fan part(2, {v2(1, 1), v2(0, 1)}, {{0, 1}});
  REQUIRE(is_partial_subdivision(part, a2));
  CHECK_FALSE(torus_slice_image(part, a2, a).has_value());

  // Over P^2 blown up at a point, V(b) is a P^1.
  Fan p2 = standard_fan("P^2");
  Fan blp = star_subdivide(p2, {0, 1}).fan;
  auto w = torus_slice_image(blp, p2, *p2.ray_index(v2(1, 0)));
  REQUIRE(w.has_value());
  CHECK(w->same_as(standard_fan("P^1")));
}

TEST_CASE("images that are not normal") {
  Fan a1 = standard_fan("A^1");
  // t -> t^2: the image monoid 2N is normal (it is a copy of N in its own group).
  auto sq = MonoidSchemeMorphism::fan_map(a1, a1, IntMatrix::from_list({{2}}));
  SchemeImage img = scheme_image(sq);
  REQUIRE(img.charts.size() == 1);
  CHECK(img.charts[0].generators == std::vector<IntVector>{v1(2)});
  CHECK(img.charts[0].normal);
  REQUIRE(img.fan.has_value());
  CHECK(img.fan->same_as(a1));
  CHECK_FALSE(is_closed_immersion(sq));

  // t -> (t^2, t^3): the cusp <2,3> is not saturated.
  Fan a2 = standard_fan("A^2");
  auto cusp = MonoidSchemeMorphism::fan_map(a1, a2, IntMatrix::from_list({{2}, {3}}));
  img = scheme_image(cusp);
  REQUIRE(img.charts.size() == 1);
  CHECK(img.charts[0].generators == std::vector<IntVector>{v1(2), v1(3)});
  CHECK_FALSE(img.charts[0].normal);
  CHECK_FALSE(img.fan.has_value());
}

TEST_CASE("properness") {
  CHECK(is_proper(standard_fan("P^1")));
  CHECK_FALSE(is_proper(standard_fan("A^1")));
  CHECK(is_proper(standard_fan("P1^3")));
}

TEST_CASE("proper birational morphisms") {
  Fan p2 = standard_fan("P^2");
  Fan s1 = star_subdivide(p2, {0, 1}).fan;
  auto f = MonoidSchemeMorphism::fan_map(s1, p2, IntMatrix::identity(2));
  CHECK(is_proper_birational(f));
  auto j = MonoidSchemeMorphism::open_immersion(p2, {p2.maximal_cones()[0]});
  CHECK_FALSE(is_proper_birational(j));
  Fan s2 = star_subdivide(s1, cone_of(s1, {v2(1, 1), v2(1, 0)})).fan;
  auto g = MonoidSchemeMorphism::fan_map(s2, s1, IntMatrix::identity(2));
  CHECK(is_proper_birational(compose(f, g)));
  CHECK_FALSE(is_proper_birational(MonoidSchemeMorphism::closed_immersion(p2, {0})));
  // A lattice automorphism carrying a fan onto itself is proper birational too.
  Fan p11 = standard_fan("P1^2");
  CHECK(is_proper_birational(MonoidSchemeMorphism::fan_map(p11, p11, IntMatrix::from_list({{0, 1}, {1, 0}}))));
}

TEST_CASE("morphisms must respect cones") {
  Fan a1 = standard_fan("A^1");
  CHECK_THROWS_AS(MonoidSchemeMorphism::fan_map(a1, a1, IntMatrix::from_list({{-1}})), DomainError);
  CHECK_THROWS_AS(MonoidSchemeMorphism::fan_map(a1, a1, IntMatrix::from_list({{1, 0}})), DomainError);
}

TEST_CASE("rational points") {
  CHECK(labels(standard_fan("A^1")) == std::vector<std::string>{"0", "1"});
  CHECK(labels(Fan::point(1)) == std::vector<std::string>{"1"});
  CHECK(labels(standard_fan("P^1")) == std::vector<std::string>{"0", "1", "∞"});
  CHECK(rational_points(standard_fan("P^2")).size() == 7);
  // Relabelling rays does not change the points.
  Fan bl = standard_fan("Bl_sq");
  std::vector<IntVector> rays(bl.rays().rbegin(), bl.rays().rend());
  const int n = static_cast<int>(rays.size());
  std::vector<ConeIndices> cones;
  for (const auto& m : bl.maximal_cones()) {
    ConeIndices c;
    for (int i : m) c.push_back(n - 1 - i);
    cones.push_back(c);
  }
  Fan relabelled(2, rays, cones);
  CHECK(labels(relabelled) == labels(bl));
  CHECK(rational_points(bl).size() == 13);
  std::set<std::string> distinct;
  for (const auto& l : labels(bl)) distinct.insert(l);
  CHECK(distinct.size() == 13);
}

TEST_CASE("realization atlases") {
  Atlas p1 = realize_scheme(standard_fan("P^1"), "Z");
  REQUIRE(p1.charts.size() == 2);
  CHECK(p1.charts[0].ring.str() == "Z[x]");
  CHECK(p1.charts[1].ring.str() == "Z[x^-1]");
  REQUIRE(p1.gluings.size() == 1);
  CHECK(p1.gluings[0].shared.empty());
  CHECK(p1.gluings[0].invert_in_first == std::vector<std::string>{"x"});
  CHECK(p1.gluings[0].invert_in_second == std::vector<std::string>{"x^-1"});

  Atlas a1 = realize_scheme(standard_fan("A^1"), "Z/5");
  REQUIRE(a1.charts.size() == 1);
  CHECK(a1.charts[0].ring.str() == "Z/5[x]");
  CHECK(a1.gluings.empty());

  Atlas pt = realize_scheme(Fan::point(0), "Z");
  REQUIRE(pt.charts.size() == 1);
  CHECK(pt.charts[0].ring.str() == "Z");

  // Adjacent charts of P^2 share a ray: only the monomials vanishing on it are inverted.
  Atlas p2 = realize_scheme(standard_fan("P^2"), "Z");
  CHECK(p2.charts.size() == 3);
  for (const auto& g : p2.gluings) {
    CHECK(g.shared.size() == 1);
    CHECK(g.invert_in_first.size() == 1);
  }
  CHECK_THROWS_AS(realize_scheme(standard_fan("A^1"), "C"), InputError);
}

TEST_CASE("zariski distinguished squares") {
  Fan p1 = standard_fan("P^1");
  Fan u(1, {v1(1)}, {{0}}), v(1, {v1(-1)}, {{0}}), w = Fan::point(1);
  CHECK(is_zariski_distinguished(p1, u, v, w));
  CHECK(is_zariski_distinguished(p1, p1, p1, p1));
  CHECK_FALSE(is_zariski_distinguished(p1, u, u, u));
  Fan p11 = standard_fan("P1^2");
  Fan half = subfan(p11, {p11.maximal_cones()[0], p11.maximal_cones()[1]});
  Fan meet = subfan(p11, {ConeIndices{}});
  CHECK_FALSE(is_zariski_distinguished(p11, half, half, half));
  CHECK_THROWS_AS(is_zariski_distinguished(p1, Fan(1, {v1(1)}, {{0}}), Fan::point(1), Fan(1, {v1(1)}, {{0}})),
                  InputError);
  CHECK_THROWS_AS(is_zariski_distinguished(p11, meet, meet, half), InputError);
}

TEST_CASE("closed immersions") {
  Fan p13 = standard_fan("P1^3");
  int e1 = *p13.ray_index(make_vector({1, 0, 0}));
  auto c1 = MonoidSchemeMorphism::closed_immersion(p13, {e1});
  CHECK(is_closed_immersion(c1));
  CHECK(c1.source().same_as(standard_fan("P1^2")));
  Fan v = c1.source();
  int f1 = *v.ray_index(v2(0, 1));
  auto c2 = MonoidSchemeMorphism::closed_immersion(v, {f1});
  auto both = compose(c1, c2);
  CHECK(is_closed_immersion(both));
  CHECK(both.tau().size() == 2);
  int e3 = *p13.ray_index(make_vector({0, 0, 1}));
  CHECK(same_morphism(both, MonoidSchemeMorphism::closed_immersion(p13, ConeIndices{std::min(e1, e3), std::max(e1, e3)})));

  // Base change along open charts stays a closed immersion.
  for (const auto& m : p13.maximal_cones()) {
    auto r = restrict_to_open(c1, {m});
    if (std::find(m.begin(), m.end(), e1) == m.end()) {
      CHECK_FALSE(r.has_value());
    } else {
      REQUIRE(r.has_value());
      CHECK(is_closed_immersion(*r));
      CHECK(r->source().maximal_cones().size() == 1);
    }
  }

  // Open immersions are not closed.
  Fan a1 = standard_fan("A^1");
  CHECK_FALSE(is_closed_immersion(MonoidSchemeMorphism::open_immersion(a1, {ConeIndices{}})));
  CHECK(is_closed_immersion(MonoidSchemeMorphism::identity(a1)));
}

TEST_CASE("image through a dense open equals the image of the outer map") {
  Fan p2 = standard_fan("P^2");
  Fan blp = star_subdivide(p2, {0, 1}).fan;
  std::vector<MonoidSchemeMorphism> outer{
      MonoidSchemeMorphism::fan_map(blp, p2, IntMatrix::identity(2)),
      MonoidSchemeMorphism::closed_immersion(p2, {0}),
      MonoidSchemeMorphism::open_immersion(p2, {p2.maximal_cones()[1]}),
  };
  for (const auto& f : outer) {
    auto j = MonoidSchemeMorphism::open_immersion(f.source(), {ConeIndices{}});
    SchemeImage a = scheme_image(compose(f, j));
    SchemeImage b = scheme_image(f);
    REQUIRE(a.fan.has_value());
    REQUIRE(b.fan.has_value());
    CHECK(a.fan->same_as(*b.fan));
  }
}

TEST_CASE("morphisms agreeing on the dense torus are equal") {
  Fan p11 = standard_fan("P1^2");
  Fan p1 = standard_fan("P^1");
  auto f = MonoidSchemeMorphism::fan_map(p11, p1, IntMatrix::from_list({{1, 0}}));
  auto j = MonoidSchemeMorphism::open_immersion(p11, {ConeIndices{}});
  auto fj = compose(f, j);
  int tried = 0, agreeing = 0;
  std::vector<ConeIndices> taus = p1.cones();
  for (const auto& tau : taus)
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        std::size_t rows = tau.empty() ? 1 : 0;
        IntMatrix m(rows, 2);
        if (rows == 1) {
          m(0, 0) = a;
          m(0, 1) = b;
        } else if (a != 0 || b != 0) {
          continue;
        }
        std::optional<MonoidSchemeMorphism> g;
        try {
          g.emplace(p11, p1, tau, m);
        } catch (const DomainError&) {
          continue;
        }
        ++tried;
        if (same_morphism(compose(*g, j), fj)) {
          ++agreeing;
          CHECK(same_morphism(*g, f));
        }
      }
  CHECK(tried > 3);
  CHECK(agreeing == 1);
}
