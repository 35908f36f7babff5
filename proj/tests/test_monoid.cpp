#include "doctest.h"

#include "logf1/errors.hpp"
#include "logf1/monoid.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace logf1;

namespace {

IntVector v1(long long a) { return make_vector({a}); }
IntVector v2(long long a, long long b) { return make_vector({a, b}); }

// Lattice points of the box [-b, b]^2 reachable as sums of generators through
// partial sums that stay in the box.
std::set<IntVector> sums_in_box(const std::vector<IntVector>& gens, long long b) {
  std::set<IntVector> reach{v2(0, 0)};
  std::vector<IntVector> frontier{v2(0, 0)};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVector y = add(x, g);
        if (abs(y[0]) <= b && abs(y[1]) <= b && reach.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return reach;
}

}  // namespace

TEST_CASE("primes of free and group monoids") {
  CHECK(primes(PointedMonoid{ToricMonoid::free(1)}).size() == 2);
  CHECK(primes(PointedMonoid{ToricMonoid::free(2)}).size() == 4);
  CHECK(primes(PointedMonoid{ToricMonoid::group(1)}).size() == 1);
  CHECK(primes(PointedMonoid::f1()).size() == 1);

  PointedMonoid n2{ToricMonoid::free(2)};
  auto ps = primes(n2);
  // Minimal prime first (face F = M), maximal prime last (F = units).
  CHECK(face_generators(n2, ps.front()).size() == 2);
  CHECK(face_generators(n2, ps.back()).empty());
  // Complements of primes are closed under addition on sampled sums.
  std::vector<IntVector> sample;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) sample.push_back(v2(a, b));
  for (const auto& p : ps)
    for (const auto& x : sample)
      for (const auto& y : sample)
        if (!prime_contains(n2, p, x) && !prime_contains(n2, p, y)) CHECK_FALSE(prime_contains(n2, p, add(x, y)));
}

TEST_CASE("prime count matches faces of a non-simplicial cone") {
  // Dual of the cone over a square has 4 rays, 4 two-faces, the apex and itself.
  Cone sq(3, {make_vector({1, 0, 1}), make_vector({0, 1, 1}), make_vector({-1, 0, 1}), make_vector({0, -1, 1})});
  PointedMonoid a{ToricMonoid(sq)};
  CHECK(primes(a).size() == 10);
}

TEST_CASE("localization") {
  PointedMonoid n{ToricMonoid::free(1)};
  auto ps = primes(n);
  REQUIRE(ps.size() == 2);
  // tau = {} is the face N; tau = {ray} is the face {0}.
  PointedMonoid at_n = localize(n, ps[0]);
  CHECK(same_monoid(at_n.monoid, ToricMonoid::group(1)));
  PointedMonoid at_zero = localize(n, ps[1]);
  CHECK(same_monoid(at_zero.monoid, n.monoid));

  PointedMonoid n2{ToricMonoid::free(2)};
  // Face N e1 is cut out by tau = Cone(e2).
  const auto& rays = n2.monoid.cone().rays;
  PrimeFace p{{static_cast<int>(std::find(rays.begin(), rays.end(), v2(0, 1)) - rays.begin())}};
  CHECK(face_generators(n2, p) == std::vector<IntVector>{v2(1, 0)});
  PointedMonoid loc = localize(n2, p);
  CHECK(loc.monoid.contains(v2(-5, 0)));
  CHECK(loc.monoid.contains(v2(3, 2)));
  CHECK_FALSE(loc.monoid.contains(v2(0, -1)));
  CHECK(same_monoid(loc.monoid, smash(PointedMonoid{ToricMonoid::group(1)}, PointedMonoid{ToricMonoid::free(1)}).monoid));

  // Localization at the minimal prime gives the group completion.
  for (const auto& m : {ToricMonoid::free(2), normalize({v2(1, 0), v2(1, 2)}, 2).monoid}) {
    PointedMonoid a{m};
    PointedMonoid g = localize(a, primes(a).front());
    CHECK(g.monoid.is_group());
    for (const auto& x : g.monoid.generators()) CHECK(g.monoid.contains(negate(x)));
  }

  CHECK_THROWS_AS(localize(n2, PrimeFace{{5}}), DomainError);
  Cone sq(3, {make_vector({1, 0, 1}), make_vector({0, 1, 1}), make_vector({-1, 0, 1}), make_vector({0, -1, 1})});
  PointedMonoid s{ToricMonoid(sq)};
  // Two opposite rays of the square do not span a face.
  const auto& srays = s.monoid.cone().rays;
  int a = static_cast<int>(std::find(srays.begin(), srays.end(), make_vector({1, 0, 1})) - srays.begin());
  int b = static_cast<int>(std::find(srays.begin(), srays.end(), make_vector({-1, 0, 1})) - srays.begin());
  CHECK_THROWS_AS(localize(s, PrimeFace{{std::min(a, b), std::max(a, b)}}), DomainError);
}

TEST_CASE("smash products") {
  PointedMonoid n{ToricMonoid::free(1)}, z{ToricMonoid::group(1)};
  CHECK(same_monoid(smash(n, n).monoid, ToricMonoid::free(2)));
  PointedMonoid n2{ToricMonoid::free(2)};
  CHECK(same_monoid(smash(PointedMonoid::f1(), n2).monoid, n2.monoid));
  CHECK(same_monoid(smash(n2, PointedMonoid::f1()).monoid, n2.monoid));
  PointedMonoid zn = smash(z, n);
  CHECK(zn.monoid.contains(v2(-3, 1)));
  CHECK_FALSE(zn.monoid.contains(v2(0, -1)));
  CHECK(zn.monoid.unit_rank() == 1);

  PointedMonoid c = normalize({v2(1, 0), v2(1, 2)}, 2);
  PointedMonoid ab = smash(c, n), ba = smash(n, c);
  // Commutative up to the coordinate swap (x, y, t) -> (t, x, y).
  for (const auto& g : ab.monoid.generators()) {
    IntVector s = make_vector({0, 0, 0});
    s[0] = g[2];
    s[1] = g[0];
    s[2] = g[1];
    CHECK(ba.monoid.contains(s));
  }
  CHECK(ab.monoid.generators().size() == ba.monoid.generators().size());
  CHECK(same_monoid(smash(smash(n, c), z).monoid, smash(n, smash(c, z)).monoid));
}

TEST_CASE("normalization") {
  PointedMonoid a = normalize({v1(2), v1(3)}, 1);
  CHECK(a.monoid.contains(v1(1)));
  CHECK(a.monoid.generators() == std::vector<IntVector>{v1(1)});

  PointedMonoid n2 = normalize({v2(1, 0), v2(0, 1)}, 2);
  CHECK(same_monoid(n2.monoid, ToricMonoid::free(2)));

  // Inside M^gp = Z(1,0) + Z(0,2) the monoid <(1,0),(1,2)> is already saturated.
  PointedMonoid c = normalize({v2(1, 0), v2(1, 2)}, 2);
  CHECK(c.monoid.generators() == std::vector<IntVector>{v2(1, 0), v2(1, 2)});
  CHECK_FALSE(c.monoid.contains(v2(1, 1)));
  // In the saturated ambient lattice Z^2 the point (1,1) is added.
  PointedMonoid s = saturate_in_ambient({v2(1, 0), v2(1, 2)}, 2);
  CHECK(s.monoid.generators() == std::vector<IntVector>{v2(1, 0), v2(1, 1), v2(1, 2)});

  // Idempotence.
  for (const auto& m : {a, n2, c, s}) {
    PointedMonoid again = normalize(m.monoid.generators(), m.monoid.ambient());
    CHECK(same_monoid(again.monoid, m.monoid));
  }

  // Non-pointed input: the generators 1 and -1 give Z.
  CHECK(normalize({v1(1), v1(-1)}, 1).monoid.is_group());
  CHECK(normalize({}, 2).monoid.rank() == 0);
  CHECK_THROWS_AS(normalize({v1(1)}, 2), InputError);
}

TEST_CASE("hilbert bases agree with brute-force enumeration") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> d(-3, 3);
  int checked = 0;
  while (checked < 25) {
    std::vector<IntVector> gens{v2(d(rng), d(rng)), v2(d(rng), d(rng))};
    if (is_zero(gens[0]) || is_zero(gens[1])) continue;
    if (gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0] == 0) continue;
    ++checked;
    PointedMonoid m = saturate_in_ambient(gens, 2);
    auto hb = m.monoid.generators();
    // Membership test: x in the real cone generated by gens.
    auto in_cone = [&](const IntVector& x) {
      Integer det = gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0];
      Integer a = x[0] * gens[1][1] - x[1] * gens[1][0];
      Integer b = gens[0][0] * x[1] - gens[0][1] * x[0];
      if (det < 0) {
        a = -a;
        b = -b;
      }
      return a >= 0 && b >= 0;
    };
    const long long box = 6;
    std::set<IntVector> lattice_points;
    for (long long x = -box; x <= box; ++x)
      for (long long y = -box; y <= box; ++y)
        if (in_cone(v2(x, y))) lattice_points.insert(v2(x, y));
    for (const auto& p : lattice_points) CHECK(m.monoid.contains(p));
    for (const auto& h : hb) CHECK(in_cone(h));
    // Every cone point in the box is a sum of Hilbert basis elements.
    auto reach = sums_in_box(hb, 5 * box);
    for (const auto& p : lattice_points) CHECK(reach.count(p));
    // No basis element is a sum of two nonzero monoid points.
    for (const auto& h : hb)
      for (const auto& p : lattice_points)
        if (!is_zero(p) && p != h) CHECK_FALSE((in_cone(sub(h, p)) && !is_zero(sub(h, p))));
  }
}

TEST_CASE("ideals") {
  PointedMonoid n2{ToricMonoid::free(2)};
  MonoidIdeal i{n2, {v2(1, 0), v2(0, 2)}};
  CHECK(i.contains(v2(3, 0)));
  CHECK(i.contains(v2(0, 5)));
  CHECK_FALSE(i.contains(v2(0, 1)));
  // Closed under adding arbitrary elements.
  for (const auto& g : i.generators)
    for (const auto& a : std::vector<IntVector>{v2(0, 1), v2(2, 3), v2(0, 0)}) CHECK(i.contains(add(g, a)));
}

TEST_CASE("ring realizations") {
  PointedMonoid n{ToricMonoid::free(1)};
  CHECK(realize(n, "Z").str() == "Z[x]");
  CHECK(realize(PointedMonoid::f1(), "Z").str() == "Z");

  PointedMonoid c = saturate_in_ambient({v2(1, 0), v2(1, 2)}, 2);
  RingPresentation r = realize(c, "Z");
  REQUIRE(r.generators.size() == 3);
  REQUIRE(r.relations.size() == 1);
  // u = x, v = x*y, w = x*y^2 with u w = v^2.
  CHECK(r.relations[0].first == make_vector({1, 0, 1}));
  CHECK(r.relations[0].second == make_vector({0, 2, 0}));
  CHECK(r.str() == "Z[x,x*y,x*y^2]/(x*(x*y^2) - (x*y)^2)");

  RingPresentation zr = realize(PointedMonoid{ToricMonoid::group(1)}, "Z/6");
  CHECK(zr.str() == "Z/6[x^-1,x]/((x^-1)*x - 1)");

  PointedMonoid prod = smash(c, n);
  RingPresentation rp = realize(prod, "Z");
  CHECK(rp.generators.size() == r.generators.size() + 1);
  CHECK(rp.relations.size() == r.relations.size());

  CHECK_THROWS_AS(realize(n, "R"), InputError);
  CHECK_THROWS_AS(realize(n, "Z/1"), InputError);
  CHECK_NOTHROW(realize(n, "k"));
}
