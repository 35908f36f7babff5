#include "logf1/sbl.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace logf1 {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

bool violates_ray_condition(const IntVector& a, std::size_t n) {
  for (std::size_t i = n; i < a.size(); ++i)
    if (a[i] > 0 && a != unit(a.size(), i)) return true;
  return false;
}

bool rays_included(const Fan& small, const Fan& big) {
  // Both canonical: ray lists are sorted.
  return std::includes(big.rays().begin(), big.rays().end(), small.rays().begin(), small.rays().end());
}

Fan checked(const Fan& f, std::size_t n, std::size_t r, const std::string& what) {
  Fan c = f.canonical();
  if (auto bad = cnr_violation(c, n, r)) throw DomainError(what + ": " + *bad);
  return c;
}

// Rays of the cone minus the unit rays e_j (j among the last r) that split off: every
// other ray has x_j = 0. The remainder is a face carrying the same singularity.
std::vector<IntVector> entangled_part(const std::vector<IntVector>& rays, std::size_t n) {
  std::vector<IntVector> out;
  for (const auto& a : rays) {
    bool split = false;
    for (std::size_t j = n; j < a.size() && !split; ++j) {
      if (a != unit(a.size(), j)) continue;
      split = std::all_of(rays.begin(), rays.end(), [&](const IntVector& b) { return b == a || b[j] == 0; });
    }
    if (!split) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool admissible_point(const IntVector& v, std::size_t n) {
  for (std::size_t j = n; j < v.size(); ++j)
    if (v[j] > 0) return false;
  return true;
}

// Resolution that only adds rays with nonpositive last r coordinates, so (i) survives.
TowerResult resolve_in_cnr(const Fan& f, std::size_t n) {
  TowerResult res{f, {}};
  auto step = [&](const StarResult& s) {
    res.fan = s.fan;
    res.steps.push_back(s.step);
  };
  // Smallest non-simplicial cones first, so coning off never creates new ones.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw InternalError("resolve_in_cnr: iteration cap reached");
    std::optional<std::vector<IntVector>> bad;
    for (const auto& c : res.fan.cones()) {
      if (res.fan.cone_dim(c) == c.size()) continue;
      auto part = entangled_part(res.fan.ray_vectors(c), n);
      if (!bad || part.size() < bad->size() || (part.size() == bad->size() && part < *bad)) bad = part;
    }
    if (!bad) break;
    step(star_subdivide(res.fan, *res.fan.find_cone(*bad)));
  }
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw InternalError("resolve_in_cnr: iteration cap reached");
    std::optional<std::vector<IntVector>> worst;
    Integer worst_mult = 1;
    for (const auto& m : res.fan.maximal_cones()) {
      Integer mult = res.fan.cone(m).multiplicity();
      if (mult == 1) continue;
      auto part = entangled_part(res.fan.ray_vectors(m), n);
      if (!worst || mult > worst_mult || (mult == worst_mult && part < *worst)) {
        worst = part;
        worst_mult = mult;
      }
    }
    if (!worst) break;
    const ParallelepipedPoint* best = nullptr;
    auto pts = parallelepiped_points(*worst, res.fan.rank());
    for (const auto& p : pts) {
      if (!admissible_point(p.point, n)) continue;
      if (!best || p.total < best->total || (p.total == best->total && p.point < best->point)) best = &p;
    }
    if (!best) throw DomainError("refinement failure: no center keeps condition (i)");
    std::vector<IntVector> center;
    for (std::size_t i = 0; i < worst->size(); ++i)
      if (best->coeffs[i] != 0) center.push_back((*worst)[i]);
    step(star_subdivide_at(res.fan, *res.fan.find_cone(center), best->point));
  }
  return res;
}

}  // namespace

std::optional<std::string> cnr_violation(const Fan& f, std::size_t n, std::size_t r) {
  const std::size_t m = n + r;
  if (f.rank() != m) return "rank is not n + r";
  if (!is_smooth(f)) return "fan is not smooth";
  Fan cube = m == 0 ? Fan::point(0) : standard_fan("P1", m);
  if (!is_subdivision(f, cube)) return "fan does not subdivide (P^1)^(n+r)";
  for (const auto& a : f.rays())
    if (violates_ray_condition(a, n)) return "ray " + to_string(a) + " breaks condition (i)";
  std::vector<IntVector> corner;
  for (std::size_t i = 0; i < n; ++i) corner.push_back(unit(m, i));
  if (!f.find_cone(corner)) return "Cone(e_1..e_n) is missing";
  return std::nullopt;
}

std::optional<std::size_t> CnrDiagram::find(const Fan& f) const {
  auto it = index_.find(f.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CnrDiagram::add(const Fan& f, std::size_t d) {
  if (auto k = find(f)) return *k;
  Fan c = checked(f, n, r, "face left diagram");
  CnrNode node{c, d, std::nullopt, std::nullopt, true};
  index_[c.key()] = nodes.size();
  nodes.push_back(std::move(node));
  return nodes.size() - 1;
}

void CnrDiagram::compute_edges() {
  const std::size_t count = nodes.size();
  std::vector<std::vector<bool>> finer(count, std::vector<bool>(count, false));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      if (a == b) continue;
      const Fan& fa = nodes[a].fan;
      const Fan& fb = nodes[b].fan;
      if (fa.rays().size() <= fb.rays().size() || !rays_included(fb, fa)) continue;
      finer[a][b] = is_subdivision(fa, fb);
    }
  edges.clear();
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      if (!finer[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < count && covered; ++c)
        if (finer[a][c] && finer[c][b]) covered = false;
      if (covered) edges.emplace_back(a, b);
    }
}

std::size_t node_budget() {
  if (const char* env = std::getenv("LOGF1_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 4000;
}

std::vector<ConeIndices> allowed_centers(const Fan& f, std::size_t n, std::size_t r) {
  const std::size_t m = n + r;
  std::vector<IntVector> corner;
  for (std::size_t i = 0; i < n; ++i) corner.push_back(unit(m, i));
  std::sort(corner.begin(), corner.end());
  std::vector<ConeIndices> out;
  for (const auto& c : f.cones_of_dim(2)) {
    std::vector<IntVector> rays = f.ray_vectors(c);
    // A face of Cone(e_1..e_n) would be removed by the subdivision.
    std::sort(rays.begin(), rays.end());
    if (std::includes(corner.begin(), corner.end(), rays.begin(), rays.end())) continue;
    IntVector s = primitive(add(rays[0], rays[1]));
    if (violates_ray_condition(s, n)) continue;
    out.push_back(c);
  }
  return out;
}

CnrDiagram enumerate_cnr(std::size_t n, std::size_t r, std::size_t d, std::size_t budget, bool reverse) {
  CnrDiagram diag;
  diag.n = n;
  diag.r = r;
  diag.depth = d;
  diag.budget = budget;
  const std::size_t m = n + r;
  Fan root = (m == 0 ? Fan::point(0) : standard_fan("P1", m)).canonical();
  diag.index_[root.key()] = 0;
  diag.nodes.push_back(CnrNode{root, 0, std::nullopt, std::nullopt, false});
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty() && !diag.truncated) {
    std::size_t k = frontier.front();
    frontier.pop_front();
    if (diag.nodes[k].depth >= d) continue;
    const Fan cur = diag.nodes[k].fan;
    auto centers = allowed_centers(cur, n, r);
    if (reverse) std::reverse(centers.begin(), centers.end());
    for (const auto& c : centers) {
      StarResult s = star_subdivide(cur, c);
      Fan f = s.fan.canonical();
      if (diag.index_.count(f.key())) continue;
      if (diag.nodes.size() >= budget) {
        diag.truncated = true;
        break;
      }
      diag.index_[f.key()] = diag.nodes.size();
      diag.nodes.push_back(CnrNode{f, diag.nodes[k].depth + 1, k, s.step, false});
      frontier.push_back(diag.nodes.size() - 1);
    }
  }
  diag.compute_edges();
  return diag;
}

Fan face_zero(const Fan& f, std::size_t n, std::size_t r, std::size_t i, bool validate) {
  if (i < 1 || i > n) throw DomainError("face index out of range");
  auto e = f.ray_index(unit(f.rank(), i - 1));
  if (!e) throw DomainError("face left diagram: e_i is not a ray");
  Fan out = star_quotient(f, {*e}).fan;
  return validate ? checked(out, n - 1, r, "face left diagram") : out.canonical();
}

Fan face_one(const Fan& f, std::size_t n, std::size_t r, std::size_t i, bool validate) {
  if (i < 1 || i > n) throw DomainError("face index out of range");
  Fan out = hyperplane_slice(f, i - 1);
  return validate ? checked(out, n - 1, r, "face left diagram") : out.canonical();
}

Fan degeneracy(const Fan& f, std::size_t n_minus_1, std::size_t r, std::size_t i, bool validate) {
  if (i < 1 || i > n_minus_1 + 1) throw DomainError("degeneracy index out of range");
  Fan out = insert_p1(f, i - 1);
  return validate ? checked(out, n_minus_1 + 1, r, "degeneracy left diagram") : out.canonical();
}

MultiplicationResult multiplication(const Fan& f, std::size_t n_minus_1, std::size_t r, std::size_t i) {
  const std::size_t n = n_minus_1 + 1;
  const std::size_t m = n + r;
  if (i < 1 || i + 1 > n) throw DomainError("multiplication index out of range");
  if (auto bad = cnr_violation(f, n_minus_1, r)) throw DomainError("multiplication input: " + *bad);
  Fan t = standard_fan("Bl_sq");
  if (m > 2) t = product(t, standard_fan("P1", m - 2));
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < m; ++k) {
    if (k + 1 == i) perm.push_back(0);
    else if (k == i) perm.push_back(1);
    else if (k + 1 < i) perm.push_back(k + 2);
    else perm.push_back(k);
  }
  t = permute_coordinates(t, perm);
  IntMatrix sum(m - 1, m);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (j + 1 < i) sum(j, j) = 1;
    else if (j + 1 == i) {
      sum(j, j) = 1;
      sum(j, j + 1) = 1;
    } else sum(j, j + 1) = 1;
  }
  Fan pulled = fibre_refinement(t, sum, f);
  TowerResult res = resolve_in_cnr(pulled, n);
  Fan out = checked(res.fan, n, r, "refinement failure");
  return MultiplicationResult{out, pulled.canonical(), res.steps};
}

bool unique_witness(const Fan& fine, const Fan& coarse) {
  for (const auto& c : fine.maximal_cones()) {
    Cone fc = fine.cone(c);
    std::size_t hits = 0;
    for (const auto& d : coarse.maximal_cones())
      if (contains(coarse.cone(d), fc)) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace logf1
