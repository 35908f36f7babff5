#pragma once

#include "logf1/chow.hpp"
#include "logf1/sbl.hpp"

#include <map>
#include <string>
#include <vector>

namespace logf1 {

using SparseVector = std::map<std::size_t, Integer>;

// Z^raw modulo sparse relations, shrunk by eliminating generators that carry a unit
// coefficient in some relation. What is left is Z^survivors / relation_lattice.
class ReducedPresentation {
 public:
  ReducedPresentation() = default;
  ReducedPresentation(std::size_t raw, std::vector<SparseVector> relations);

  std::size_t raw_size() const { return raw_; }
  std::size_t size() const { return survivors_.size(); }
  // Raw index of each surviving generator.
  const std::vector<std::size_t>& survivors() const { return survivors_; }
  // A raw vector in survivor coordinates; congruent modulo the relations.
  IntVector reduce(const SparseVector& v) const;
  IntVector reduce_generator(std::size_t raw_index) const;
  const Lattice& relation_lattice() const { return relations_; }
  FPAbelianGroup group() const;

 private:
  std::size_t raw_ = 0;
  std::vector<std::size_t> survivors_;
  std::vector<long> position_;                    // raw -> survivor slot, -1 if eliminated
  std::map<std::size_t, SparseVector> expression_;  // eliminated raw -> survivor coordinates
  Lattice relations_;
};

// The truncated colimit of CH^q over the level-m diagram (fans of rank m + r).
struct ColimitLevel {
  std::size_t level = 0;
  CnrDiagram diagram;
  std::vector<ChowRing> rings;
  std::vector<std::size_t> offset;  // raw index of the first CH^q generator of each node
  ReducedPresentation presentation;

  std::size_t raw_index(std::size_t node, std::size_t generator) const { return offset[node] + generator; }
  // Node and local generator of a raw index.
  std::pair<std::size_t, std::size_t> locate(std::size_t raw) const;
  SparseVector raw_vector(std::size_t node, const ChowClass& c) const;
  FPAbelianGroup group() const { return presentation.group(); }
};

struct NormalizedComplex {
  std::size_t q = 0;
  std::size_t r = 0;
  std::size_t n_max = 0;
  std::size_t depth = 0;
  std::size_t budget = 0;
  bool reverse = false;
  bool truncated = false;
  std::vector<ColimitLevel> levels;
  // face0[m][i-1], face1[m][i-1]: survivor coordinates of level m -> level m-1.
  std::vector<std::vector<IntMatrix>> face0;
  std::vector<std::vector<IntMatrix>> face1;
  // differential[m] = sum_i (-1)^i face1[m][i-1]; empty for m = 0.
  std::vector<IntMatrix> differential;
  std::vector<Lattice> chains;     // x with every face0 image in the relations, so chains / relations = ker of all face0
  std::vector<Lattice> relations;  // relation lattice of each level
  std::vector<FPAbelianGroup> chain_groups;  // chains / relations

  std::size_t node_count() const;
};

// Throws InternalError if delta o delta is not zero modulo relations.
// `reverse` is passed to enumerate_cnr; it changes node order but not the groups.
NormalizedComplex build_complex(std::size_t q, std::size_t r, std::size_t n_max, std::size_t depth,
                                std::size_t budget = node_budget(), bool reverse = false);

struct HomologyGroup {
  FPAbelianGroup group;
  Lattice cycles;
  Lattice boundaries;
  // Cycle representatives of the nontrivial Smith generators, in survivor coordinates.
  std::vector<IntVector> generators;
  std::vector<Integer> orders;  // 0 for infinite order
};

// H_m for m = 0..n_max; H_{n_max} has no incoming differential in the truncation.
std::vector<HomologyGroup> homology(const NormalizedComplex& c);

// Level-m comparison map from a complex to one built over a larger diagram.
IntMatrix comparison_map(const NormalizedComplex& shallow, const NormalizedComplex& deep, std::size_t m);

// Failures of the fan-level cubical identities on every node of the complex.
std::vector<std::string> fan_identity_failures(const NormalizedComplex& c);
// delta_{i,a} delta_{j,b} = delta_{j-1,b} delta_{i,a} (i < j) on survivor coordinates, modulo relations.
std::vector<std::string> face_identity_failures(const NormalizedComplex& c);

struct SearchResult {
  bool found = false;
  std::size_t depth = 0;      // depth of the witness, or the last depth explored
  IntVector witness;          // level n+1 survivor coordinates at that depth
  std::vector<std::size_t> explored_nodes;  // per explored depth
  std::string report;
};

// Looks for a level-(n+1) chain at depth <= max_depth whose differential equals the image
// of `cycle` (level n of `c`) modulo relations. Deeper complexes reuse the budget and order
// of `c`. Never claims that no witness exists.
SearchResult eventual_boundary_search(const NormalizedComplex& c, std::size_t n, const IntVector& cycle,
                                      std::size_t max_depth);

}  // namespace logf1
