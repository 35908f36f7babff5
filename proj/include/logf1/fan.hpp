#pragma once

#include "logf1/cone.hpp"
#include "logf1/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logf1 {

// Sorted indices into a fan's ray list.
using ConeIndices = std::vector<int>;

// A fan given by its global ray list and maximal cones. All faces are
// computed once at construction. The empty fan has no cones at all; the
// point fan has the single zero cone.
class Fan {
 public:
  Fan() = default;
  // Rays must be primitive and distinct (InputError otherwise). Cones are
  // sorted and exact duplicates dropped; containment between them is not
  // checked here (see validate()).
  Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<ConeIndices> maximal_cones);
  // As above, but cones whose index set lies in another's are discarded first.
  static Fan from_cones(std::size_t rank, std::vector<IntVector> rays, std::vector<ConeIndices> cones);
  static Fan point(std::size_t rank = 0);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<ConeIndices>& maximal_cones() const { return maximal_; }
  bool empty() const { return maximal_.empty(); }

  Cone cone(const ConeIndices& idx) const;
  std::vector<IntVector> ray_vectors(const ConeIndices& idx) const;
  // Every cone of the fan, ordered by (size, lexicographic).
  const std::vector<ConeIndices>& cones() const { return cones_; }
  std::vector<ConeIndices> cones_of_dim(std::size_t d) const;
  std::size_t cone_dim(const ConeIndices& idx) const;
  bool has_cone(const ConeIndices& idx) const;
  std::optional<int> ray_index(const IntVector& v) const;
  // The cone whose rays are exactly the given vectors, if present.
  std::optional<ConeIndices> find_cone(const std::vector<IntVector>& rays) const;
  bool is_simplicial() const;

  // Rays sorted lexicographically, cones re-indexed and sorted.
  Fan canonical() const;
  // Serialization of the canonical form; equal keys iff equal fans.
  std::string key() const;
  bool same_as(const Fan& other) const { return key() == other.key(); }

  // First violated fan axiom, if any.
  std::optional<std::string> validate() const;

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<ConeIndices> maximal_;
  std::vector<ConeIndices> cones_;
  std::map<ConeIndices, std::size_t> dims_;
  std::map<IntVector, int> ray_lookup_;
};

}  // namespace logf1
