#pragma once

#include "logf1/fan_ops.hpp"
#include "logf1/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logf1 {

// A morphism S -> T of toric monoid schemes written as S -> V(tau) -> T: a map of
// fans from S into the star quotient V(tau) of T, followed by the closed immersion
// V(tau) -> T. Fan maps have tau = 0, and composites of fan maps and closed
// immersions stay in this form.
class MonoidSchemeMorphism {
 public:
  // `map` goes from the lattice of `source` to the lattice of star_quotient(target, tau).
  MonoidSchemeMorphism(Fan source, Fan target, ConeIndices tau, IntMatrix map);

  static MonoidSchemeMorphism fan_map(Fan source, Fan target, IntMatrix map);
  static MonoidSchemeMorphism identity(const Fan& f);
  // V(tau) -> T with source star_quotient(target, tau).fan.
  static MonoidSchemeMorphism closed_immersion(const Fan& target, const ConeIndices& tau);
  // The subfan spanned by `cones` (cones of target) -> target.
  static MonoidSchemeMorphism open_immersion(const Fan& target, const std::vector<ConeIndices>& cones);

  const Fan& source() const { return source_; }
  const Fan& target() const { return target_; }
  const ConeIndices& tau() const { return tau_; }
  const IntMatrix& map() const { return map_; }
  const StarQuotient& quotient() const { return quotient_; }
  bool is_fan_map() const { return tau_.empty(); }

  // Cone of the target whose orbit receives the relative interior of a source cone.
  ConeIndices target_carrier(const ConeIndices& source_cone) const;
  // Cone of the target containing tau that corresponds to a cone of the quotient fan.
  ConeIndices lift_quotient_cone(const ConeIndices& quotient_cone) const;
  // The lattice map from the source into N_target / N_tau, in the coordinates of
  // star_quotient(other_target, tau) for a fan with the same cone tau.
  IntMatrix map_in_coordinates(const StarQuotient& other) const;

 private:
  Fan source_;
  Fan target_;
  ConeIndices tau_;
  IntMatrix map_;
  StarQuotient quotient_;
};

// g ∘ f.
MonoidSchemeMorphism compose(const MonoidSchemeMorphism& g, const MonoidSchemeMorphism& f);
bool same_morphism(const MonoidSchemeMorphism& a, const MonoidSchemeMorphism& b);

// Fan with rays transformed by a lattice map that keeps them primitive and distinct.
Fan map_fan(const Fan& f, const IntMatrix& map);

struct ImageChart {
  ConeIndices target_cone;             // maximal cone of the target
  std::vector<IntVector> generators;   // images of the chart's generators, in the source character lattice
  bool normal = true;
};

// The scheme-theoretic image, chart by chart over the maximal cones of the target.
// `fan` is set when every chart is normal with a common group, in the lattice dual
// to that group (coordinates dual to its Hermite basis).
struct SchemeImage {
  std::size_t source_rank = 0;
  std::vector<ImageChart> charts;
  std::optional<Fan> fan;
  bool empty() const { return charts.empty(); }
};

SchemeImage scheme_image(const MonoidSchemeMorphism& m);

// Image in delta of U ×_sigma delta, where delta -> sigma is a partial subdivision
// and U is the dense torus of V(a) for the ray a of sigma. nullopt when the fibre
// product is empty.
std::optional<Fan> torus_slice_image(const Fan& delta, const Fan& sigma, int a);

// Chart maps F_1[sigma^vee] -> Gamma(preimage) are all surjective.
bool is_closed_immersion(const MonoidSchemeMorphism& m);
// Base change along the open immersion of the target subfan spanned by `cones`.
// nullopt when the preimage is empty.
std::optional<MonoidSchemeMorphism> restrict_to_open(const MonoidSchemeMorphism& m,
                                                     const std::vector<ConeIndices>& cones);

bool is_proper(const Fan& f);
bool is_proper_birational(const MonoidSchemeMorphism& m);

struct RationalPoint {
  ConeIndices cone;
  std::string label;  // coordinatewise 0, 1 or ∞ along the torus coordinates
};
std::vector<RationalPoint> rational_points(const Fan& f);

struct AtlasChart {
  ConeIndices cone;
  RingPresentation ring;
};
struct AtlasGluing {
  std::size_t first = 0;
  std::size_t second = 0;
  ConeIndices shared;
  std::vector<std::string> invert_in_first;
  std::vector<std::string> invert_in_second;
};
struct Atlas {
  std::vector<AtlasChart> charts;
  std::vector<AtlasGluing> gluings;
};
Atlas realize_scheme(const Fan& f, const std::string& base);

// U, V, W are subfans of X (compared by ray vectors). True iff W = U ∩ V and U ∪ V = X.
// Throws InputError if some inclusion is not a subfan inclusion.
bool is_zariski_distinguished(const Fan& x, const Fan& u, const Fan& v, const Fan& w);

}  // namespace logf1
