#include "doctest.h"

#include "logf1/chow.hpp"
#include "logf1/errors.hpp"

#include <random>

using namespace logf1;

namespace {

IntVector v2(long long a, long long b) { return make_vector({a, b}); }

int ray_of(const Fan& f, const IntVector& v) {
  auto r = f.ray_index(v);
  REQUIRE(r.has_value());
  return *r;
}

Fan random_tower(std::mt19937& rng, const Fan& start, int steps) {
  Fan f = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<ConeIndices> centers;
    for (const auto& c : f.cones())
      if (c.size() >= 2) centers.push_back(c);
    f = star_subdivide(f, centers[rng() % centers.size()]).fan;
  }
  return f;
}

std::vector<std::size_t> ranks(const ChowRing& r) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= r.dimension(); ++q) out.push_back(r.group(q).rank());
  return out;
}

// Neighbours of ray r in a complete smooth 2-dimensional fan: u_- + u_+ = b u_r.
Integer self_intersection_oracle(const Fan& f, int r) {
  std::vector<int> nb;
  for (const auto& c : f.cones_of_dim(2))
    if (c[0] == r || c[1] == r) nb.push_back(c[0] == r ? c[1] : c[0]);
  REQUIRE(nb.size() == 2);
  IntVector s = add(f.rays()[nb[0]], f.rays()[nb[1]]);
  const IntVector& u = f.rays()[r];
  Integer b = u[0] != 0 ? s[0] / u[0] : s[1] / u[1];
  REQUIRE(scale(b, u) == s);
  return -b;
}

}  // namespace

TEST_CASE("Chow groups of projective spaces") {
  for (std::size_t n = 1; n <= 3; ++n) {
    ChowRing r(standard_fan("P", n));
    for (std::size_t q = 0; q <= n; ++q) {
      CHECK(r.group(q).rank() == 1);
      CHECK(r.group(q).torsion().empty());
    }
    CHECK(r.group(n + 1).is_trivial());
    // H^n = [pt] of degree 1.
    ChowClass h = r.ray_class(0);
    ChowClass p = r.unit();
    for (std::size_t k = 0; k < n; ++k) p = r.multiply(p, h);
    CHECK(r.degree(p) == 1);
  }
  CHECK(chow_presentation(standard_fan("P1^2"), 1).rank() == 2);
  CHECK(chow_presentation(Fan::point(0), 0).rank() == 1);
  CHECK(chow_presentation(Fan::point(0), 1).is_trivial());
  CHECK_THROWS_AS(ChowRing(standard_fan("A^2")), DomainError);
  CHECK_THROWS_AS(ChowRing(Fan(2, {v2(1, 0), v2(1, 2), v2(-1, 0), v2(0, -1), v2(-1, -2)}, {{0, 1}, {1, 2}, {2, 4}, {3, 4}, {0, 3}})), DomainError);
}

TEST_CASE("blow-up of P1 x P1 at a fixed point") {
  Fan p1p1 = standard_fan("P1^2");
  Fan bl = star_subdivide(p1p1, *p1p1.find_cone({v2(1, 0), v2(0, -1)})).fan;
  ChowRing r(bl);
  CHECK(ranks(r) == std::vector<std::size_t>{1, 3, 1});
  int e = ray_of(bl, v2(1, -1));
  CHECK(r.degree(r.multiply(r.ray_class(e), r.ray_class(e))) == -1);

  ChowRing base(p1p1);
  ChowMap pb = pullback_map(base, r);
  CHECK(pb.respects_relations());
  // D_{e2} misses the centre; D_{-e2} passes through it.
  ChowClass d_e2 = pb.apply(base.ray_class(ray_of(p1p1, v2(0, 1))));
  CHECK(r.equal(d_e2, r.ray_class(ray_of(bl, v2(0, 1)))));
  ChowClass d_me2 = pb.apply(base.ray_class(ray_of(p1p1, v2(0, -1))));
  CHECK(r.equal(d_me2, r.add(r.ray_class(ray_of(bl, v2(0, -1))), r.ray_class(e))));
  CHECK(r.degree(pb.apply(base.cone_class(p1p1.maximal_cones()[0]))) == 1);
}

TEST_CASE("rank identities on random smooth complete fans") {
  std::mt19937 rng(2024);
  const Fan start = standard_fan("P1^2");
  for (int trial = 0; trial < 20; ++trial) {
    Fan f = random_tower(rng, start, 1 + trial % 6);
    ChowRing r(f);
    auto rk = ranks(r);
    CHECK(rk.front() == 1);
    CHECK(rk.front() == rk.back());
    CHECK(rk[0] + rk[1] + rk[2] == f.maximal_cones().size());
    for (std::size_t q = 0; q <= 2; ++q) CHECK(r.group(q).torsion().empty());
    for (int ray = 0; ray < static_cast<int>(f.rays().size()); ++ray)
      CHECK(r.degree(r.multiply(r.ray_class(ray), r.ray_class(ray))) == self_intersection_oracle(f, ray));
  }
  for (int trial = 0; trial < 4; ++trial) {
    Fan f = random_tower(rng, standard_fan("P1^3"), 1 + trial);
    ChowRing r(f);
    auto rk = ranks(r);
    CHECK(rk[0] == rk[3]);
    CHECK(rk[1] == rk[2]);
    CHECK(rk[0] + rk[1] + rk[2] + rk[3] == f.maximal_cones().size());
  }
}

TEST_CASE("pullback functoriality") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    Fan a = standard_fan(trial % 2 ? "P^2" : "P1^2");
    Fan b = random_tower(rng, a, 1 + trial % 2);
    Fan c = random_tower(rng, b, 1 + trial % 3);
    ChowRing ra(a), rb(b), rc(c);
    ChowMap ab = pullback_map(ra, rb), bc = pullback_map(rb, rc), ac = pullback_map(ra, rc);
    CHECK(ab.respects_relations());
    CHECK(ac.respects_relations());
    for (std::size_t q = 0; q <= 2; ++q)
      for (const auto& g : ra.generators(q)) {
        ChowClass x = ra.cone_class(g);
        CHECK(rc.equal(bc.apply(ab.apply(x)), ac.apply(x)));
      }
    // Identity subdivision.
    ChowMap id = pullback_map(rb, rb);
    for (std::size_t q = 0; q <= 2; ++q)
      for (const auto& g : rb.generators(q)) CHECK(rb.equal(id.apply(rb.cone_class(g)), rb.cone_class(g)));
    // Ring homomorphism on degree-one products.
    for (int i = 0; i < static_cast<int>(a.rays().size()); ++i)
      for (int j = 0; j < static_cast<int>(a.rays().size()); ++j) {
        ChowClass xi = ra.ray_class(i), xj = ra.ray_class(j);
        CHECK(rc.equal(ac.apply(ra.multiply(xi, xj)), rc.multiply(ac.apply(xi), ac.apply(xj))));
      }
  }
}

TEST_CASE("restriction to star quotients") {
  Fan f = standard_fan("P1^2");
  ChowRing r(f);
  int e1 = ray_of(f, v2(1, 0)), e2 = ray_of(f, v2(0, 1));
  ChowRing q(star_quotient(f, {e1}).fan);
  ChowMap res = restrict_star_map(r, {e1}, q);
  CHECK(res.respects_relations());
  CHECK(q.is_zero(res.apply(r.ray_class(e1))));
  CHECK(q.degree(res.apply(r.ray_class(e2))) == 1);
  CHECK(q.equal(res.apply(r.unit()), q.unit()));
  CHECK(q.equal(restrict_star(r, {e1}, r.ray_class(e2)), res.apply(r.ray_class(e2))));

  // A maximal cone restricts to the point: everything of positive degree dies.
  const ConeIndices top = f.maximal_cones()[0];
  ChowRing pt(star_quotient(f, top).fan);
  ChowMap to_pt = restrict_star_map(r, top, pt);
  for (int ray = 0; ray < 4; ++ray) CHECK(pt.is_zero(to_pt.apply(r.ray_class(ray))));

  // Self-intersection: restricting D_rho to V(rho) has degree D_rho^2.
  std::mt19937 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    Fan g = random_tower(rng, f, 1 + trial % 4);
    ChowRing rg(g);
    for (int ray = 0; ray < static_cast<int>(g.rays().size()); ++ray) {
      ChowRing v(star_quotient(g, {ray}).fan);
      ChowMap m = restrict_star_map(rg, {ray}, v);
      CHECK(m.respects_relations());
      CHECK(v.degree(m.apply(rg.ray_class(ray))) == self_intersection_oracle(g, ray));
    }
  }
}

TEST_CASE("restriction to hyperplane slices and external products") {
  Fan f = standard_fan("P1^2");
  ChowRing r(f);
  ChowRing s(hyperplane_slice(f, 0));
  ChowMap m = restrict_slice_map(r, 0, s);
  CHECK(m.respects_relations());
  CHECK(s.is_zero(m.apply(r.ray_class(ray_of(f, v2(1, 0))))));
  CHECK(s.degree(m.apply(r.ray_class(ray_of(f, v2(0, 1))))) == 1);
  CHECK(s.equal(m.apply(r.unit()), s.unit()));

  // [pt] on P^1 goes to a fibre class of P1 x P1; slicing back recovers it.
  Fan p1 = standard_fan("P^1");
  ChowRing r1(p1);
  for (std::size_t pos = 0; pos <= 1; ++pos) {
    ChowRing prod(insert_p1(p1, pos));
    ChowMap ins = external_insert_map(r1, pos, prod);
    CHECK(ins.respects_relations());
    ChowClass fibre = ins.apply(r1.ray_class(0));
    CHECK(fibre.degree == 1);
    CHECK(prod.degree(prod.multiply(fibre, fibre)) == 0);
    ChowRing back(hyperplane_slice(prod.fan(), pos));
    ChowMap sl = restrict_slice_map(prod, pos, back);
    for (int ray = 0; ray < 2; ++ray) {
      ChowClass x = r1.ray_class(ray);
      ChowClass y = sl.apply(ins.apply(x));
      CHECK(back.fan().same_as(p1));
      CHECK(back.degree(y) == r1.degree(x));
    }
  }

  // Random rank-3 towers: slice and star restrictions commute with pullback.
  std::mt19937 rng(77);
  Fan root = standard_fan("P1^3");
  ChowRing rroot(root);
  for (int trial = 0; trial < 3; ++trial) {
    Fan g = random_tower(rng, root, 1 + trial);
    ChowRing rg(g);
    ChowMap pb = pullback_map(rroot, rg);
    for (std::size_t i = 0; i < 3; ++i) {
      Fan sg = hyperplane_slice(g, i), sroot = hyperplane_slice(root, i);
      ChowRing rsg(sg), rsroot(sroot);
      ChowMap a = restrict_slice_map(rg, i, rsg), b = restrict_slice_map(rroot, i, rsroot);
      ChowMap pbs = pullback_map(rsroot, rsg);
      CHECK(a.respects_relations());
      for (std::size_t q = 0; q <= 2; ++q)
        for (const auto& gen : rroot.generators(q)) {
          ChowClass x = rroot.cone_class(gen);
          CHECK(rsg.equal(a.apply(pb.apply(x)), pbs.apply(b.apply(x))));
        }
      IntVector ei(3, Integer(0));
      ei[i] = 1;
      int rg_e = ray_of(g, ei), rr_e = ray_of(root, ei);
      ChowRing vg(star_quotient(g, {rg_e}).fan), vr(star_quotient(root, {rr_e}).fan);
      ChowMap sa = restrict_star_map(rg, {rg_e}, vg), sb = restrict_star_map(rroot, {rr_e}, vr);
      ChowMap pbv = pullback_map(vr, vg);
      for (std::size_t q = 0; q <= 2; ++q)
        for (const auto& gen : rroot.generators(q)) {
          ChowClass x = rroot.cone_class(gen);
          CHECK(vg.equal(sa.apply(pb.apply(x)), pbv.apply(sb.apply(x))));
        }
    }
  }
  // P^2 meets {x1 = 0} only in the ray e2, which gives A^1.
  ChowRing p2(standard_fan("P^2"));
  CHECK_THROWS_AS(restrict_slice(p2, 0, p2.ray_class(0)), DomainError);
}
