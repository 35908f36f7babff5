#include "doctest.h"

#include "logf1/errors.hpp"
#include "logf1/sbl.hpp"

#include <random>

using namespace logf1;

namespace {

IntVector v2(long long a, long long b) { return make_vector({a, b}); }

bool same(const Fan& a, const Fan& b) { return a.canonical().key() == b.canonical().key(); }

// Random walk in C_{n,r}: d allowed star subdivisions from the cube.
Fan random_member(std::size_t n, std::size_t r, std::size_t d, std::mt19937& rng) {
  Fan f = standard_fan("P1", n + r);
  for (std::size_t k = 0; k < d; ++k) {
    auto centers = allowed_centers(f, n, r);
    if (centers.empty()) break;
    f = star_subdivide(f, centers[rng() % centers.size()]).fan;
  }
  return f.canonical();
}

}  // namespace

TEST_CASE("membership conditions") {
  CHECK_FALSE(cnr_violation(standard_fan("P1", 2), 2, 0));
  CHECK_FALSE(cnr_violation(standard_fan("P1", 2), 1, 1));
  CHECK_FALSE(cnr_violation(standard_fan("P1", 2), 0, 2));
  CHECK_FALSE(cnr_violation(standard_fan("Bl_sq"), 2, 0));
  CHECK_FALSE(cnr_violation(Fan::point(0), 0, 0));

  Fan p1sq = standard_fan("P1", 2);
  Fan corner_blown = star_subdivide(p1sq, *p1sq.find_cone({v2(1, 0), v2(0, 1)})).fan;
  CHECK(cnr_violation(corner_blown, 2, 0));  // Cone(e1, e2) is gone
  CHECK(cnr_violation(corner_blown, 0, 2));  // ray (1,1)
  CHECK(cnr_violation(corner_blown, 3, 0));  // wrong rank
  CHECK(cnr_violation(standard_fan("P", 2), 2, 0));  // not a subdivision of the cube
}

TEST_CASE("enumeration small cases") {
  CHECK(enumerate_cnr(0, 0, 3).nodes.size() == 1);
  CHECK(enumerate_cnr(1, 0, 3).nodes.size() == 1);
  CHECK(enumerate_cnr(0, 1, 3).nodes.size() == 1);

  auto d = enumerate_cnr(2, 0, 1);
  CHECK(d.nodes.size() == 4);
  CHECK(d.edges.size() == 3);
  for (const auto& [fine, coarse] : d.edges) CHECK(coarse == 0);

  // Only (-1,-1) is allowed for r = 2; (1,-1) and (-1,-1) for n = r = 1.
  CHECK(enumerate_cnr(0, 2, 1).nodes.size() == 2);
  CHECK(enumerate_cnr(1, 1, 1).nodes.size() == 3);
}

TEST_CASE("enumeration invariants at depth 2") {
  for (auto [n, r] : {std::pair<std::size_t, std::size_t>{2, 0}, {1, 1}, {0, 2}, {2, 1}}) {
    auto d = enumerate_cnr(n, r, 2);
    CHECK_FALSE(d.truncated);
    for (const auto& node : d.nodes) {
      CHECK_FALSE(cnr_violation(node.fan, n, r));
      CHECK(node.fan.rays().size() == 2 * (n + r) + node.depth);
      if (node.parent) CHECK(is_subdivision(node.fan, d.nodes[*node.parent].fan));
      CHECK(d.find(node.fan).has_value());
    }
    // Covering edges add exactly one ray in this diagram.
    for (const auto& [fine, coarse] : d.edges) {
      CHECK(d.nodes[fine].fan.rays().size() == d.nodes[coarse].fan.rays().size() + 1);
      CHECK(unique_witness(d.nodes[fine].fan, d.nodes[coarse].fan));
      CHECK_FALSE(unique_witness(d.nodes[coarse].fan, d.nodes[fine].fan));
    }
  }
}

TEST_CASE("budget truncates") {
  auto d = enumerate_cnr(2, 1, 3, 5);
  CHECK(d.truncated);
  CHECK(d.nodes.size() == 5);
}

TEST_CASE("face examples") {
  Fan bl = standard_fan("Bl_sq");
  CHECK(same(face_zero(bl, 2, 0, 1), standard_fan("P1", 1)));
  CHECK(same(face_one(bl, 2, 0, 1), standard_fan("P1", 1)));
  CHECK(same(face_one(bl, 2, 0, 2), standard_fan("P1", 1)));
  CHECK(same(degeneracy(standard_fan("P1", 1), 1, 0, 2), standard_fan("P1", 2)));
  CHECK_THROWS_AS(face_zero(bl, 2, 0, 3), DomainError);
  CHECK_THROWS_AS(face_one(bl, 2, 0, 0), DomainError);
}

TEST_CASE("cubical identities on random members") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3, r = trial % 2;
    Fan f = random_member(n, r, 1 + trial % 3, rng);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            auto face = [&](const Fan& g, std::size_t nn, std::size_t k, int e) {
              return e == 0 ? face_zero(g, nn, r, k) : face_one(g, nn, r, k);
            };
            Fan lhs = face(face(f, n, j, b), n - 1, i, a);
            Fan rhs = face(face(f, n, i, a), n - 1, j - 1, b);
            CHECK(same(lhs, rhs));
          }
  }
}

TEST_CASE("faces of degeneracies") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t m = 2, r = trial % 2;
    Fan f = random_member(m, r, trial % 3, rng);
    for (std::size_t i = 1; i <= m + 1; ++i) {
      Fan g = degeneracy(f, m, r, i);
      CHECK(same(face_zero(g, m + 1, r, i), f));
      CHECK(same(face_one(g, m + 1, r, i), f));
      for (std::size_t j = 1; j <= m + 1; ++j) {
        if (j == i) continue;
        for (int e = 0; e < 2; ++e) {
          Fan lhs = e == 0 ? face_zero(g, m + 1, r, j) : face_one(g, m + 1, r, j);
          std::size_t jj = j < i ? j : j - 1;
          std::size_t ii = j < i ? i - 1 : i;
          Fan inner = e == 0 ? face_zero(f, m, r, jj) : face_one(f, m, r, jj);
          CHECK(same(lhs, degeneracy(inner, m - 1, r, ii)));
        }
      }
    }
  }
}

TEST_CASE("multiplication") {
  auto res = multiplication(standard_fan("P1", 1), 1, 0, 1);
  CHECK(same(res.fan, standard_fan("Bl_sq")));
  CHECK(res.steps.empty());

  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t r = trial % 2;
    Fan f = random_member(2, r, trial % 3, rng);
    for (std::size_t i = 1; i <= 2; ++i) {
      auto m = multiplication(f, 2, r, i);
      CHECK_FALSE(cnr_violation(m.fan, 3, r));
      CHECK(is_subdivision(m.fan, m.unresolved));
      // mu(x, 1) = x and mu(1, y) = y.
      CHECK(same(face_one(m.fan, 3, r, i), f));
      CHECK(same(face_one(m.fan, 3, r, i + 1), f));
    }
  }
  CHECK_THROWS_AS(multiplication(standard_fan("P1", 1), 1, 0, 2), DomainError);
}
