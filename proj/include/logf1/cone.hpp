#pragma once

#include "logf1/linalg.hpp"

#include <cstddef>
#include <vector>

namespace logf1 {

// Rational polyhedral cone generated by primitive rays in Z^rank.
// The generator list may be redundant until `extreme_rays` is applied.
struct Cone {
  std::size_t rank = 0;
  std::vector<IntVector> rays;

  Cone() = default;
  Cone(std::size_t rank_, std::vector<IntVector> rays_);

  std::size_t dim() const;
  bool is_simplicial() const;
  // Simplicial with rays extending to a basis of Z^rank.
  bool is_smooth() const;
  // Index of the sublattice generated by the rays in its saturation.
  Integer multiplicity() const;
};

// { x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equalities }
struct HRep {
  std::vector<IntVector> inequalities;
  std::vector<IntVector> equalities;
};

// Facet normals taken inside the linear span, plus a basis of the orthogonal complement.
HRep h_representation(const Cone& c);

// Primitive extreme rays of a pointed polyhedral cone. Throws InternalError if the cone contains a line.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equalities, std::size_t rank);

bool is_strongly_convex(const Cone& c);
bool contains(const HRep& h, const IntVector& p);
bool contains(const Cone& c, const IntVector& p);
bool contains(const Cone& outer, const Cone& inner);
bool in_relative_interior(const Cone& c, const IntVector& p);
// The cone with its generators reduced to extreme rays, sorted.
Cone normalized(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
// Indices into c.rays of the generators lying on the smallest face containing p (p in c).
std::vector<int> minimal_face(const Cone& c, const IntVector& p);
// Whether the subcone `tau` of `sigma` is a face of sigma.
bool is_face(const Cone& sigma, const Cone& tau);
// All faces as index subsets of c.rays (c given by its extreme rays), including the empty face and c.
std::vector<std::vector<int>> face_index_sets(const Cone& c);
struct ParallelepipedPoint {
  IntVector point;
  std::vector<Rational> coeffs;
  Rational total;
};

// Nonzero lattice points sum(lambda_i u_i), 0 <= lambda_i < 1, of a simplicial cone.
std::vector<ParallelepipedPoint> parallelepiped_points(const std::vector<IntVector>& rays, std::size_t n);

bool same_cone(const Cone& a, const Cone& b);

}  // namespace logf1
