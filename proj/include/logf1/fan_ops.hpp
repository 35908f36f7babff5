#pragma once

#include "logf1/fan.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logf1 {

// One star subdivision, recorded by vectors so it can be replayed on any
// fan that contains the center.
struct StarSubdivisionStep {
  std::vector<IntVector> center;
  IntVector new_ray;
};

struct StarResult {
  Fan fan;
  StarSubdivisionStep step;
};

struct TowerResult {
  Fan fan;
  std::vector<StarSubdivisionStep> steps;
};

bool is_smooth(const Fan& f);
bool is_complete(const Fan& f);

// Star subdivision at the primitive sum of the center's rays.
StarResult star_subdivide(const Fan& f, const ConeIndices& center);
// Star subdivision at a given lattice point v in the relative interior of the center.
StarResult star_subdivide_at(const Fan& f, const ConeIndices& center, const IntVector& v);
Fan replay(const Fan& f, const std::vector<StarSubdivisionStep>& steps);

// Some cone sigma of f has sigma ∩ tau not a face of sigma.
bool crosses(const Cone& tau, const Fan& f);

// The subfan generated by the given cones of f, keeping only the rays it uses
// (in their original relative order).
Fan subfan(const Fan& f, const std::vector<ConeIndices>& cones);

// Smallest cone of f containing all the given vectors, if any.
std::optional<ConeIndices> carrier(const Fan& f, const std::vector<IntVector>& vectors);

// Common refinement of `s` with the preimage of `x` under phi: Z^rank(s) -> Z^rank(x).
// Cones are s-cones cut by phi^-1 of x-cones; pieces outside phi^-1|x| are dropped.
Fan fibre_refinement(const Fan& s, const IntMatrix& phi, const Fan& x);
// |f| contains tau.
bool covers(const Fan& f, const Cone& tau);
bool support_contains(const Fan& big, const Fan& small);
bool same_support(const Fan& a, const Fan& b);
// For each maximal cone of `fine`, the index of a maximal cone of `coarse` containing it.
std::optional<std::vector<std::size_t>> subdivision_witness(const Fan& fine, const Fan& coarse);
bool is_partial_subdivision(const Fan& fine, const Fan& coarse);
bool is_subdivision(const Fan& fine, const Fan& coarse);

// Smooth subdivision by star subdivisions; smooth cones of f are kept.
TowerResult resolve(const Fan& f);
// Common refinement of a smooth sigma and delta with |sigma| = |delta|,
// reached from sigma by star subdivisions at 2-dimensional cones and keeping eta.
TowerResult refine(const Fan& sigma, const Fan& delta, const Cone& eta);

struct StarQuotient {
  Fan fan;
  IntMatrix projection;           // Z^n -> Z^(n - dim sigma), kernel = span(sigma) ∩ Z^n
  std::map<int, int> ray_map;     // ray of f adjacent to sigma -> ray of the quotient fan
};

StarQuotient star_quotient(const Fan& f, const ConeIndices& sigma);
// Cones of f inside {x_i = 0}, with coordinate i (0-based) deleted.
Fan hyperplane_slice(const Fan& f, std::size_t i);
Fan product(const Fan& f, const Fan& g);
// new coordinate k is old coordinate perm[k]
Fan permute_coordinates(const Fan& f, const std::vector<std::size_t>& perm);
// f x P^1 with the new coordinate placed at 0-based position pos.
Fan insert_p1(const Fan& f, std::size_t pos);

// "A^n", "Gm^n", "P^n", "P1^n" or "Bl_sq".
Fan standard_fan(const std::string& name);
Fan standard_fan(const std::string& family, std::size_t n);

// A complete fan containing f as a subfan; rank <= 2 only.
Fan complete_fan(const Fan& f);

}  // namespace logf1
