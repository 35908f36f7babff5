#pragma once

#include "logf1/fan_ops.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logf1 {

// Members of C_{n,r}: smooth subdivisions of (P^1)^{n+r} such that
//  (i)  a ray with a positive coordinate among the last r is that coordinate vector;
//  (ii) Cone(e_1, ..., e_n) is a cone.
// Cube coordinates come first (1..n), the □^r coordinates last. Face indices are 1-based.

// First violated condition, if any.
std::optional<std::string> cnr_violation(const Fan& f, std::size_t n, std::size_t r);

struct CnrNode {
  Fan fan;                // canonical form
  std::size_t depth = 0;  // star subdivisions from the root; faces added on demand keep their parent's depth
  std::optional<std::size_t> parent;
  std::optional<StarSubdivisionStep> step;
  bool from_face = false;  // added to close the diagram under faces
};

struct CnrDiagram {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t depth = 0;
  std::vector<CnrNode> nodes;
  // Covering relations (fine, coarse) of the subdivision order on the nodes.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool truncated = false;
  std::size_t budget = 0;

  std::optional<std::size_t> find(const Fan& f) const;
  // Adds a member of C_{n,r} (as a face-closure extension) and returns its index.
  std::size_t add(const Fan& f, std::size_t depth);
  // Recomputes `edges` from scratch.
  void compute_edges();

 private:
  std::map<std::string, std::size_t> index_;
  friend CnrDiagram enumerate_cnr(std::size_t, std::size_t, std::size_t, std::size_t, bool);
};

// LOGF1_NODE_BUDGET from the environment, default 4000.
std::size_t node_budget();

// All fans reachable from (P^1)^{n+r} by at most d star subdivisions at 2-dimensional
// cones that keep conditions (i) and (ii). Stops with truncated = true at the budget.
// `reverse` visits centers in the opposite order; without truncation the node set is the same.
CnrDiagram enumerate_cnr(std::size_t n, std::size_t r, std::size_t d, std::size_t budget = node_budget(),
                         bool reverse = false);

// Centers allowed by the enumeration.
std::vector<ConeIndices> allowed_centers(const Fan& f, std::size_t n, std::size_t r);

// D_{i,0}: V(e_i) with coordinate i deleted. Throws DomainError "face left diagram" if
// the result is not in C_{n-1,r}; `validate = false` skips that membership test.
Fan face_zero(const Fan& f, std::size_t n, std::size_t r, std::size_t i, bool validate = true);
// D_{i,1}: cones in {x_i = 0} with coordinate i deleted.
Fan face_one(const Fan& f, std::size_t n, std::size_t r, std::size_t i, bool validate = true);
// p_i: f x P^1 with the new coordinate at position i, from C_{n-1,r} to C_{n,r}.
Fan degeneracy(const Fan& f, std::size_t n_minus_1, std::size_t r, std::size_t i, bool validate = true);

struct MultiplicationResult {
  Fan fan;
  Fan unresolved;  // before the smooth refinement
  std::vector<StarSubdivisionStep> steps;
};
// mu_i: refine Bl_sq in coordinates (i, i+1) times P^1 elsewhere by the preimage of f
// under the map adding those two coordinates, then resolve. From C_{n-1,r} to C_{n,r}.
MultiplicationResult multiplication(const Fan& f, std::size_t n_minus_1, std::size_t r, std::size_t i);

// Each maximal cone of `fine` lies in exactly one maximal cone of `coarse`.
bool unique_witness(const Fan& fine, const Fan& coarse);

}  // namespace logf1
