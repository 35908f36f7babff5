#pragma once

#include "logf1/fan_ops.hpp"
#include "logf1/linalg.hpp"

#include <map>
#include <vector>

namespace logf1 {

// An element of CH^degree written in the orbit basis [V(sigma)], dim sigma = degree.
struct ChowClass {
  std::size_t degree = 0;
  IntVector coords;
};

// Chow ring of a smooth complete fan. CH^q is generated by the classes [V(sigma)] of
// the q-dimensional cones, with one relation sum_rho <m, u_rho> [V(tau + rho)] for
// each (q-1)-cone tau and each m in a basis of tau^perp. Products go through
// x_sigma = prod of x_rho over the rays of sigma.
class ChowRing {
 public:
  // Throws DomainError unless the fan is smooth and complete.
  explicit ChowRing(Fan fan);

  const Fan& fan() const { return fan_; }
  std::size_t dimension() const { return fan_.rank(); }
  // Cones of dimension q in generator order.
  const std::vector<ConeIndices>& generators(std::size_t q) const;
  const FPAbelianGroup& group(std::size_t q) const;
  // Relation matrix of CH^q, one relation per column.
  const IntMatrix& relations(std::size_t q) const;

  ChowClass zero(std::size_t q) const;
  ChowClass unit() const;
  ChowClass ray_class(int ray) const;
  ChowClass cone_class(const ConeIndices& cone) const;

  ChowClass add(const ChowClass& a, const ChowClass& b) const;
  ChowClass scale(const Integer& s, const ChowClass& a) const;
  ChowClass multiply_by_ray(const ChowClass& a, int ray) const;
  ChowClass multiply(const ChowClass& a, const ChowClass& b) const;

  // Smith coordinates: torsion parts reduced into [0, d), free parts kept.
  IntVector canonical(const ChowClass& c) const;
  bool equal(const ChowClass& a, const ChowClass& b) const;
  bool is_zero(const ChowClass& c) const;
  // Top-degree classes to Z by the degree of the point class.
  Integer degree(const ChowClass& top) const;

 private:
  Fan fan_;
  std::vector<std::vector<ConeIndices>> generators_;
  std::vector<std::map<ConeIndices, std::size_t>> index_;
  std::vector<IntMatrix> relations_;
  std::vector<FPAbelianGroup> groups_;
  std::vector<SmithResult> smith_;
};

FPAbelianGroup chow_presentation(const Fan& f, std::size_t q);

// A ring map CH(from) -> CH(to) fixed by the images of the ray classes of `from`.
class ChowMap {
 public:
  ChowMap(const ChowRing& from, const ChowRing& to, std::vector<ChowClass> ray_images);
  ChowClass apply(const ChowClass& c) const;
  // Column k is the image of the k-th generator of CH^q(from), in generators of CH^q(to).
  IntMatrix matrix(std::size_t q) const;
  // Every relation of `from` maps to zero.
  bool respects_relations() const;

 private:
  const ChowRing* from_;
  const ChowRing* to_;
  std::vector<ChowClass> ray_images_;
};

// Pullback along a subdivision `source` -> `target` (fans of the two rings).
// x_rho pulls back to the sum over source rays rho'' of the rho-coordinate of
// u_rho'' in its carrier cone, times x_rho''.
ChowMap pullback_map(const ChowRing& target, const ChowRing& source);
// Restriction to V(tau), whose fan must be the ring `quotient` built from star_quotient(f, tau).
ChowMap restrict_star_map(const ChowRing& f, const ConeIndices& tau, const ChowRing& quotient);
// Restriction to the fibre over 1 of coordinate i (0-based); `slice` is the ring of hyperplane_slice(f, i).
ChowMap restrict_slice_map(const ChowRing& f, std::size_t i, const ChowRing& slice);
// Pullback along the projection f x P^1 -> f forgetting coordinate i; `product` is the ring of insert_p1(f, i).
ChowMap external_insert_map(const ChowRing& f, std::size_t i, const ChowRing& product);

ChowClass pullback_subdivision(const ChowRing& target, const ChowRing& source, const ChowClass& c);
ChowClass restrict_star(const ChowRing& f, const ConeIndices& tau, const ChowClass& c);
ChowClass restrict_slice(const ChowRing& f, std::size_t i, const ChowClass& c);
ChowClass external_insert(const ChowRing& f, std::size_t i, const ChowClass& c);

}  // namespace logf1
