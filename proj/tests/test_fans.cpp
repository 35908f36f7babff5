#include "doctest.h"

#include "logf1/errors.hpp"
#include "logf1/fan_ops.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace logf1;

namespace {

IntVector v2(long long a, long long b) { return make_vector({a, b}); }

std::set<IntVector> ray_set(const Fan& f) { return {f.rays().begin(), f.rays().end()}; }

long long det2(const IntVector& a, const IntVector& b) {
  return static_cast<long long>(a[0] * b[1] - a[1] * b[0]);
}

// Rank-2 tiling oracle: the 2-dimensional cones of `pieces` chain from a to b
// counterclockwise, consecutive cones sharing a ray, with no gaps or overlaps.
bool tiles_2d(const Fan& pieces, const IntVector& a, const IntVector& b) {
  std::vector<std::pair<IntVector, IntVector>> cones;
  for (const auto& m : pieces.maximal_cones()) {
    if (m.size() != 2) return false;
    IntVector p = pieces.rays()[m[0]], q = pieces.rays()[m[1]];
    if (det2(p, q) < 0) std::swap(p, q);
    if (det2(p, q) == 0) return false;
    cones.push_back({p, q});
  }
  IntVector cur = a;
  std::size_t used = 0;
  while (cur != b) {
    auto it = std::find_if(cones.begin(), cones.end(), [&](const auto& c) { return c.first == cur; });
    if (it == cones.end()) return false;
    cur = it->second;
    ++used;
  }
  return used == cones.size();
}

}  // namespace

TEST_CASE("smoothness") {
  CHECK(is_smooth(Fan(2, {v2(1, 0), v2(0, 1)}, {{0, 1}})));
  CHECK_FALSE(is_smooth(Fan(2, {v2(1, 0), v2(1, 2)}, {{0, 1}})));
  Fan p2 = standard_fan("P^2");
  for (const auto& m : p2.maximal_cones())
    CHECK(std::abs(det2(p2.rays()[m[0]], p2.rays()[m[1]])) == 1);
  CHECK(is_smooth(p2));
}

TEST_CASE("completeness") {
  CHECK(is_complete(standard_fan("P^1")));
  CHECK_FALSE(is_complete(standard_fan("A^1")));
  CHECK(is_complete(standard_fan("P1^2")));
  CHECK(is_complete(standard_fan("P^3")));
  CHECK(is_complete(standard_fan("Bl_sq")));
  CHECK_FALSE(is_complete(Fan(2, {v2(1, 0), v2(0, 1), v2(-1, 0)}, {{0, 1}, {1, 2}})));
  CHECK(is_complete(Fan::point(0)));
  CHECK_FALSE(is_complete(Fan()));
}

TEST_CASE("fan construction rejects bad input") {
  CHECK_THROWS_AS(Fan(2, {v2(2, 0)}, {{0}}), InputError);
  CHECK_THROWS_AS(Fan(2, {v2(1, 0)}, {{3}}), InputError);
  CHECK_THROWS_AS(Fan(2, {v2(1, 0), v2(-1, 0), v2(0, 1)}, {{0, 1, 2}}), DomainError);
  Fan overlapping(2, {v2(1, 0), v2(0, 1), v2(1, 1)}, {{0, 1}, {0, 2}});
  CHECK(overlapping.validate().has_value());
  CHECK_FALSE(standard_fan("Bl_sq").validate().has_value());
  CHECK_FALSE(standard_fan("P^3").validate().has_value());
}

TEST_CASE("star subdivision") {
  Fan a2 = standard_fan("A^2");
  auto s = star_subdivide(a2, {0, 1});
  CHECK(ray_set(s.fan) == std::set<IntVector>{v2(1, 0), v2(0, 1), v2(1, 1)});
  CHECK(s.fan.maximal_cones().size() == 2);
  CHECK(s.fan.has_cone({0, 2}));
  CHECK(s.fan.has_cone({1, 2}));
  CHECK(s.step.new_ray == v2(1, 1));

  auto p = star_subdivide(standard_fan("P^2"), {0, 1});
  CHECK(p.fan.maximal_cones().size() == 4);
  CHECK(is_smooth(p.fan));
  CHECK(is_complete(p.fan));
  CHECK(is_subdivision(p.fan, standard_fan("P^2")));

  CHECK_THROWS_AS(star_subdivide(a2, {0}), DomainError);
  CHECK_THROWS_AS(star_subdivide(standard_fan("P^2"), {0, 1, 2}), DomainError);

  // Non-simplicial center in rank 3: the square cone.
  Fan sq(3, {make_vector({1, 0, 1}), make_vector({0, 1, 1}), make_vector({-1, 0, 1}), make_vector({0, -1, 1})},
         {{0, 1, 2, 3}});
  auto t = star_subdivide(sq, {0, 1, 2, 3});
  CHECK(t.step.new_ray == make_vector({0, 0, 1}));
  CHECK(t.fan.maximal_cones().size() == 4);
  CHECK(is_subdivision(t.fan, sq));
}

TEST_CASE("crossing") {
  Fan orth = standard_fan("A^2");
  CHECK(crosses(Cone(2, {v2(1, 1)}), orth));
  CHECK_FALSE(crosses(Cone(2, {v2(1, 0)}), orth));
  Fan p2 = standard_fan("P^2");
  CHECK_FALSE(crosses(Cone(2, {v2(0, 1), v2(-1, -1)}), p2));
  CHECK(crosses(Cone(2, {v2(1, 1), v2(-1, 0)}), p2));
}

TEST_CASE("resolution examples") {
  Fan c12(2, {v2(1, 0), v2(1, 2)}, {{0, 1}});
  auto r = resolve(c12);
  CHECK(ray_set(r.fan) == std::set<IntVector>{v2(1, 0), v2(1, 1), v2(1, 2)});
  CHECK(r.fan.maximal_cones().size() == 2);
  CHECK(is_smooth(r.fan));
  CHECK(tiles_2d(r.fan, v2(1, 0), v2(1, 2)));
  CHECK(r.steps.size() == 1);

  Fan c13(2, {v2(1, 0), v2(1, 3)}, {{0, 1}});
  r = resolve(c13);
  CHECK(ray_set(r.fan) == std::set<IntVector>{v2(1, 0), v2(1, 1), v2(1, 2), v2(1, 3)});
  CHECK(r.fan.maximal_cones().size() == 3);
  CHECK(tiles_2d(r.fan, v2(1, 0), v2(1, 3)));
  CHECK(replay(c13, r.steps).same_as(r.fan));

  Fan p2 = standard_fan("P^2");
  r = resolve(p2);
  CHECK(r.steps.empty());
  CHECK(r.fan.same_as(p2));

  // Non-simplicial cone over a square: a barycentric star makes it smooth here.
  Fan sq(3, {make_vector({1, 0, 1}), make_vector({0, 1, 1}), make_vector({-1, 0, 1}), make_vector({0, -1, 1})},
         {{0, 1, 2, 3}});
  r = resolve(sq);
  CHECK(is_smooth(r.fan));
  CHECK(is_subdivision(r.fan, sq));
}

TEST_CASE("refinement examples") {
  Fan sigma(2, {v2(1, 0), v2(0, 1), v2(1, 1)}, {{0, 2}, {1, 2}});
  Fan delta(2, {v2(1, 0), v2(0, 1), v2(1, 2)}, {{0, 2}, {1, 2}});
  auto r = refine(sigma, delta, Cone(2, {}));
  CHECK(ray_set(r.fan).count(v2(1, 1)));
  CHECK(ray_set(r.fan).count(v2(1, 2)));
  CHECK(is_subdivision(r.fan, sigma));
  CHECK(is_subdivision(r.fan, delta));
  for (const auto& s : r.steps) CHECK(s.center.size() == 2);

  auto same = refine(sigma, sigma, Cone(2, {}));
  CHECK(same.steps.empty());
  CHECK(same.fan.same_as(sigma));

  Fan p1sq = standard_fan("P1^2");
  Fan other(2, {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1), v2(1, 3), v2(-2, -1)},
            {{0, 4}, {4, 1}, {1, 2}, {2, 5}, {5, 3}, {3, 0}});
  REQUIRE_FALSE(other.validate().has_value());
  Cone eta(2, {v2(1, 0)});
  auto q = refine(p1sq, other, eta);
  CHECK(q.fan.find_cone({v2(1, 0)}).has_value());
  CHECK(is_subdivision(q.fan, p1sq));
  CHECK(is_subdivision(q.fan, other));
  CHECK(is_smooth(q.fan));

  CHECK_THROWS_AS(refine(standard_fan("A^2"), p1sq, Cone(2, {})), DomainError);
}

TEST_CASE("refinement in rank 3") {
  Fan sigma = standard_fan("P1^3");
  // A star tower with a 3-dimensional center, then a 2-dimensional one.
  Fan delta = star_subdivide(sigma, *sigma.find_cone({make_vector({1, 0, 0}), make_vector({0, 1, 0}),
                                                      make_vector({0, 0, 1})}))
                  .fan;
  auto r = refine(sigma, delta, Cone(3, {make_vector({-1, 0, 0})}));
  CHECK(is_subdivision(r.fan, delta));
  CHECK(is_smooth(r.fan));
  for (const auto& s : r.steps) CHECK(s.center.size() == 2);
}

TEST_CASE("star quotients") {
  Fan p2 = standard_fan("P^2");
  auto q = star_quotient(p2, {0});
  CHECK(q.fan.rank() == 1);
  CHECK(ray_set(q.fan) == std::set<IntVector>{make_vector({1}), make_vector({-1})});
  CHECK(is_complete(q.fan));
  CHECK(q.ray_map.size() == 2);

  auto pt = star_quotient(p2, {0, 1});
  CHECK(pt.fan.rank() == 0);
  CHECK(pt.fan.same_as(Fan::point(0)));

  Fan p11 = standard_fan("P1^2");
  auto r = star_quotient(p11, {0});
  CHECK(r.fan.same_as(standard_fan("P^1")));

  // Non-coordinate ray: Bl_sq at e2 - e1.
  auto b = star_quotient(standard_fan("Bl_sq"), {4});
  CHECK(b.fan.rank() == 1);
  CHECK(is_complete(b.fan));
  CHECK(is_smooth(b.fan));
}

TEST_CASE("hyperplane slices") {
  Fan p11 = standard_fan("P1^2");
  CHECK(hyperplane_slice(p11, 0).same_as(standard_fan("P^1")));
  CHECK(hyperplane_slice(standard_fan("P^1"), 0).same_as(Fan::point(0)));
  auto bl = star_subdivide(p11, *p11.find_cone({v2(1, 0), v2(0, -1)})).fan;
  CHECK(hyperplane_slice(bl, 1).same_as(standard_fan("P^1")));
}

TEST_CASE("products and standard fans") {
  Fan pp = product(standard_fan("P^1"), standard_fan("P^1"));
  CHECK(pp.maximal_cones().size() == 4);
  CHECK(ray_set(pp) == std::set<IntVector>{v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)});
  Fan p2 = standard_fan("P^2");
  CHECK(product(Fan::point(0), p2).same_as(p2));
  CHECK(product(p2, Fan::point(0)).same_as(p2));
  Fan ag = product(standard_fan("A^1"), standard_fan("Gm^1"));
  CHECK(ag.rank() == 2);
  CHECK(ag.rays() == std::vector<IntVector>{v2(1, 0)});

  CHECK(standard_fan("P^1").rays() == std::vector<IntVector>{make_vector({1}), make_vector({-1})});
  CHECK(standard_fan("A^0").same_as(Fan::point(0)));
  Fan bl = standard_fan("Bl_sq");
  std::vector<std::vector<IntVector>> expected{{v2(1, 0), v2(0, 1)},  {v2(0, 1), v2(-1, 1)}, {v2(-1, 0), v2(-1, 1)},
                                               {v2(1, 0), v2(1, -1)}, {v2(0, -1), v2(1, -1)}, {v2(-1, 0), v2(0, -1)}};
  REQUIRE(bl.maximal_cones().size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    auto got = bl.ray_vectors(bl.maximal_cones()[k]);
    std::sort(got.begin(), got.end());
    std::sort(expected[k].begin(), expected[k].end());
    CHECK(got == expected[k]);
  }
  CHECK_THROWS_AS(standard_fan("P^0"), DomainError);
  CHECK_THROWS_AS(standard_fan("Q^2"), DomainError);
  Fan ins = insert_p1(standard_fan("A^1"), 0);
  CHECK(ray_set(ins) == std::set<IntVector>{v2(0, 1), v2(1, 0), v2(-1, 0)});
}

TEST_CASE("associativity of products up to reindexing") {
  Fan a = standard_fan("P^1"), b = standard_fan("A^1"), c = standard_fan("P^2");
  CHECK(product(product(a, b), c).same_as(product(a, product(b, c))));
}

TEST_CASE("completion in low rank") {
  Fan a1 = standard_fan("A^1");
  CHECK(complete_fan(a1).same_as(standard_fan("P^1")));
  Fan c(2, {v2(1, 2), v2(1, 0)}, {{0, 1}});
  Fan done = complete_fan(c);
  CHECK(is_complete(done));
  CHECK(done.has_cone(*done.find_cone({v2(1, 2), v2(1, 0)})));
  CHECK_THROWS_AS(complete_fan(standard_fan("A^3")), DomainError);
}

TEST_CASE("star subdivision preserves support on random smooth towers") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Fan f = standard_fan(t % 2 ? "P1^2" : "P^2");
    for (int k = 0; k < 4; ++k) {
      auto twos = f.cones_of_dim(2);
      auto c = twos[rng() % twos.size()];
      Fan g = star_subdivide(f, c).fan;
      CHECK(is_subdivision(g, f));
      CHECK(is_smooth(g));
      f = g;
    }
    CHECK_FALSE(f.validate().has_value());
  }
}
