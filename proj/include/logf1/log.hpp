#pragma once

#include "logf1/fan_ops.hpp"
#include "logf1/scheme.hpp"

#include <set>
#include <vector>

namespace logf1 {

// A log fan pair [Σ, Δ]: the fan of the underlying toric monoid scheme and the
// subfan Δ where the log structure is trivial (X - ∂X = T_Δ). Δ is closed under
// faces and always holds the zero cone.
class LogFanPair {
 public:
  // Δ = cones of `fan` containing none of the boundary rays.
  static LogFanPair from_boundary_rays(Fan fan, const std::vector<int>& boundary_rays);
  // Δ = faces of the listed maximal cones (indices into fan.maximal_cones()).
  static LogFanPair from_open_maximal_cones(Fan fan, const std::vector<std::size_t>& open_maximal);
  // Δ = faces of the given cones of `fan`.
  static LogFanPair from_open_cones(Fan fan, const std::vector<ConeIndices>& cones);
  // Trivial boundary: Δ = Σ.
  static LogFanPair trivial(Fan fan);
  // T_Σ: Δ = {0}, the log structure of the toric monoid scheme itself.
  static LogFanPair toric(Fan fan);

  const Fan& fan() const { return fan_; }
  const std::set<ConeIndices>& open_cones() const { return open_; }
  bool is_open(const ConeIndices& c) const;
  bool ray_is_open(int r) const { return is_open(ConeIndices{r}); }
  // Rays of Σ not in Δ.
  std::vector<int> boundary_rays() const;
  std::vector<ConeIndices> open_maximal_cones() const;
  // Δ as a fan on its own rays.
  Fan open_fan() const;

 private:
  LogFanPair(Fan fan, std::set<ConeIndices> open);
  Fan fan_;
  std::set<ConeIndices> open_;
};

// Same fan and same open subfan, compared through ray vectors.
bool same_pair(const LogFanPair& a, const LogFanPair& b);
LogFanPair product(const LogFanPair& a, const LogFanPair& b);

// □ = (P^1, ∞): open part Cone(e1), boundary ray -e1.
LogFanPair box_pair();
LogFanPair box_power(std::size_t n);
LogFanPair point_pair();

// Every cone of Σ not in Δ has a ray not in Δ. Throws DomainError on a singular fan.
bool is_smlsm(const LogFanPair& p);

// The underlying map sends X - ∂X into S - ∂S. Throws InputError when the fans of
// the morphism are not those of the pairs.
bool hom_exists(const MonoidSchemeMorphism& f, const LogFanPair& src, const LogFanPair& dst);

struct LogMorphism {
  LogFanPair source;
  LogFanPair target;
  MonoidSchemeMorphism underlying;
};
// Checked constructor; DomainError if the underlying map does not respect the open parts.
LogMorphism log_morphism(LogFanPair source, LogFanPair target, MonoidSchemeMorphism underlying);
LogMorphism log_identity(const LogFanPair& p);
LogMorphism compose(const LogMorphism& g, const LogMorphism& f);

// S^♯: the subfan of cones none of whose rays lie in Δ, with log structure T_{Σ''}.
// The lattice is kept, so the trivial-log directions survive as a torus factor.
LogFanPair sharpen(const LogFanPair& p);

bool is_dividing_cover(const LogMorphism& m);
bool is_partial_dividing_cover(const LogMorphism& m);
// Proper birational with an isomorphism on open parts.
bool is_admissible_blowup(const LogMorphism& m);
// The underlying subdivision is the identity or one star subdivision at a primitive ray sum.
bool is_smooth_center_blowup(const LogMorphism& m);

// The fs fibre product X ×_S S' -> S' of a dividing cover m: X -> S along a fan map
// g: S' -> S. Cones are S'-cones cut by preimages of X-cones; lattice points are taken
// in the full lattice of S', which is the saturation. Throws DomainError when m is not
// a dividing cover, g is not a fan map, or g does not land in the target of m.
LogMorphism pullback_dividing(const LogMorphism& m, const LogMorphism& g);

struct LogTowerResult {
  LogFanPair pair;
  LogMorphism morphism;  // pair -> input
  std::vector<StarSubdivisionStep> steps;
};

// Cones of Σ outside Δ all of whose rays lie in Δ.
std::vector<ConeIndices> alpha_set(const LogFanPair& p);
// Admissible blow-up to an SmlSm pair, star-subdividing a maximal-dimensional member
// of alpha_set (lexicographically least by ray index) until it is empty.
LogTowerResult smlsmify(const LogFanPair& p);
// Dividing cover by an SmlSm pair: resolve the sharpened fan and replay the steps.
LogTowerResult resolve_log(const LogFanPair& p);

struct IntervalData {
  LogFanPair point;
  LogFanPair box;
  LogFanPair box2;
  LogFanPair blowup;      // Bl_{(∞,0)+(0,∞)}(□²)
  LogMorphism i0, i1, p;
  LogMorphism blowdown;   // blowup -> box2, admissible
  LogMorphism mu_prime;   // blowup -> box, summation of coordinates
};
IntervalData interval_data_square();

// Failed interval identities pi0 = pi1 = id, mu(i0 x id) = mu(id x i0) = i0 p,
// mu(i1 x id) = mu(id x i1) = id, each checked by lifting through the blow-up.
// Empty when all hold.
std::vector<std::string> interval_identity_failures(const IntervalData& d);

}  // namespace logf1
