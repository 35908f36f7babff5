#pragma once

#include "logf1/cone.hpp"

#include <string>
#include <vector>

namespace logf1 {

// The fine saturated monoid M = sigma^vee ∩ L. L has rank `rank()` and sits in
// Z^ambient via the rows of `embedding()`; sigma lives in the dual of L.
class ToricMonoid {
 public:
  ToricMonoid() : ToricMonoid(Cone(0, {})) {}
  explicit ToricMonoid(const Cone& sigma);
  ToricMonoid(const Cone& sigma, IntMatrix embedding);

  static ToricMonoid free(std::size_t r);   // N^r
  static ToricMonoid group(std::size_t r);  // Z^r

  std::size_t rank() const { return sigma_.rank; }
  std::size_t ambient() const { return embedding_.cols(); }
  const Cone& cone() const { return sigma_; }
  const IntMatrix& embedding() const { return embedding_; }

  // Minimal generators in lattice coordinates: a basis of the units and its
  // negatives, together with the Hilbert basis of the sharp part. Sorted by ambient image.
  const std::vector<IntVector>& hilbert_basis() const { return basis_; }
  std::vector<IntVector> generators() const;  // hilbert_basis in ambient coordinates
  std::size_t unit_rank() const { return rank() - sigma_.dim(); }
  bool is_group() const { return sigma_.rays.empty(); }

  std::optional<IntVector> lattice_coordinates(const IntVector& ambient_point) const;
  IntVector to_ambient(const IntVector& lattice_point) const;
  bool contains(const IntVector& ambient_point) const;

 private:
  Cone sigma_;
  IntMatrix embedding_;
  std::vector<IntVector> basis_;
};

// Same submonoid of the same ambient group.
bool same_monoid(const ToricMonoid& a, const ToricMonoid& b);

// Hilbert basis of the pointed full-dimensional cone { x : <r, x> >= 0 for r in rays } ∩ Z^d.
std::vector<IntVector> hilbert_basis_of_dual(const std::vector<IntVector>& rays, std::size_t d);

// F_1[M] = M ∪ {∞}.
struct PointedMonoid {
  ToricMonoid monoid;
  static PointedMonoid f1() { return {ToricMonoid::free(0)}; }
  std::string str() const;
};

// The prime p_F = (M − F) ∪ {∞} of the face F = M ∩ tau^perp, tau a face of sigma
// given by indices into sigma's rays.
struct PrimeFace {
  std::vector<int> tau;
  bool operator==(const PrimeFace&) const = default;
};

std::vector<PrimeFace> primes(const PointedMonoid& a);
// Generators of the face F in ambient coordinates.
std::vector<IntVector> face_generators(const PointedMonoid& a, const PrimeFace& p);
bool prime_contains(const PointedMonoid& a, const PrimeFace& p, const IntVector& x);
PointedMonoid localize(const PointedMonoid& a, const PrimeFace& p);
PointedMonoid smash(const PointedMonoid& a, const PointedMonoid& b);

// Ideal generated by finitely many elements, plus ∞.
struct MonoidIdeal {
  PointedMonoid host;
  std::vector<IntVector> generators;
  bool contains(const IntVector& x) const;
};

// F_1[(M)^sat] for the monoid M generated by `generators` in Z^ambient; saturation
// is taken inside the group M^gp.
PointedMonoid normalize(const std::vector<IntVector>& generators, std::size_t ambient);
// Saturation inside the saturated sublattice of Z^ambient spanned by the generators.
PointedMonoid saturate_in_ambient(const std::vector<IntVector>& generators, std::size_t ambient);

// Presentation of the monoid ring base[M] = F_1[M] ⊗ base.
struct RingPresentation {
  std::string base;
  std::vector<std::string> generators;
  std::vector<IntVector> exponents;  // ambient exponent of each generator
  // lhs and rhs are exponent vectors over the generators.
  std::vector<std::pair<IntVector, IntVector>> relations;
  std::string str() const;
};

// base is "Z", "Z/m" (m >= 2), "Q" or "k" (an unspecified field).
void check_base_ring(const std::string& base);
RingPresentation realize(const PointedMonoid& a, const std::string& base);
// Torus-monomial name of an ambient exponent: x, y, z in rank <= 3, else x1, x2, ...
std::string monomial_name(const IntVector& exponent);

}  // namespace logf1
