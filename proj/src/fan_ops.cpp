#include "logf1/fan_ops.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <set>

namespace logf1 {

namespace {

bool subset_of(const ConeIndices& small, const ConeIndices& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

IntVector ray_sum(const std::vector<IntVector>& rays, std::size_t rank) {
  IntVector s(rank, Integer(0));
  for (const auto& r : rays) s = add(s, r);
  return s;
}

// Facets of the maximal cone m, as global index sets.
std::vector<ConeIndices> facets_of(const Fan& f, const ConeIndices& m) {
  std::vector<ConeIndices> out;
  Cone c = f.cone(m);
  std::size_t d = c.dim();
  if (d == m.size()) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      ConeIndices g;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (i != j) g.push_back(m[i]);
      out.push_back(g);
    }
    return out;
  }
  for (const auto& local : face_index_sets(c)) {
    ConeIndices g;
    for (int i : local) g.push_back(m[i]);
    if (!g.empty() && f.cone(g).dim() + 1 == d) out.push_back(g);
    if (g.empty() && d == 1) out.push_back(g);
  }
  return out;
}

std::vector<IntVector> sorted_rays(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool is_smooth(const Fan& f) {
  for (const auto& m : f.maximal_cones())
    if (!f.cone(m).is_smooth()) return false;
  return true;
}

bool is_complete(const Fan& f) {
  if (f.empty()) return false;
  const std::size_t n = f.rank();
  if (n == 0) return true;
  std::map<ConeIndices, int> count;
  for (const auto& m : f.maximal_cones()) {
    if (f.cone_dim(m) != n) return false;
    for (const auto& g : facets_of(f, m)) ++count[g];
  }
  for (const auto& [g, c] : count)
    if (c != 2) return false;
  return true;
}

StarResult star_subdivide_at(const Fan& f, const ConeIndices& center_in, const IntVector& v) {
  ConeIndices center(center_in);
  std::sort(center.begin(), center.end());
  if (!f.has_cone(center)) throw DomainError("center is not a cone of the fan");
  if (f.cone_dim(center) < 2) throw DomainError("center must have dimension at least 2");
  if (!is_primitive(v)) throw DomainError("new ray must be primitive");
  if (!in_relative_interior(f.cone(center), v)) throw DomainError("new ray must lie in the relative interior of the center");
  std::vector<IntVector> rays = f.rays();
  const int nv = static_cast<int>(rays.size());
  rays.push_back(v);
  std::vector<ConeIndices> cones;
  for (const auto& m : f.maximal_cones()) {
    if (!subset_of(center, m)) {
      cones.push_back(m);
      continue;
    }
    for (auto g : facets_of(f, m)) {
      if (subset_of(center, g)) continue;
      g.push_back(nv);
      cones.push_back(g);
    }
  }
  StarResult res{Fan(f.rank(), std::move(rays), std::move(cones)), {f.ray_vectors(center), v}};
  return res;
}

StarResult star_subdivide(const Fan& f, const ConeIndices& center) {
  if (!f.has_cone(center)) throw DomainError("center is not a cone of the fan");
  IntVector s = ray_sum(f.ray_vectors(center), f.rank());
  if (center.size() < 2) throw DomainError("center must have dimension at least 2");
  return star_subdivide_at(f, center, primitive(s));
}

Fan replay(const Fan& f, const std::vector<StarSubdivisionStep>& steps) {
  Fan cur = f;
  for (const auto& s : steps) {
    auto c = cur.find_cone(s.center);
    if (!c) throw DomainError("replay: center missing from fan");
    cur = star_subdivide_at(cur, *c, s.new_ray).fan;
  }
  return cur;
}

bool crosses(const Cone& tau, const Fan& f) {
  for (const auto& m : f.maximal_cones()) {
    Cone sigma = f.cone(m);
    Cone meet = intersect(sigma, tau);
    if (meet.rays.empty()) continue;
    IntVector p = ray_sum(meet.rays, f.rank());
    HRep ht = h_representation(tau);
    for (int i : minimal_face(sigma, p))
      if (!contains(ht, sigma.rays[i])) return true;
  }
  return false;
}

Fan fibre_refinement(const Fan& s, const IntMatrix& phi, const Fan& x) {
  const std::size_t n = s.rank();
  if (phi.cols() != n || phi.rows() != x.rank()) throw DomainError("fibre_refinement: map has the wrong shape");
  const IntMatrix phi_t = phi.transpose();
  std::vector<IntVector> rays;
  std::map<IntVector, int> index;
  std::vector<ConeIndices> cones;
  for (const auto& c : x.maximal_cones()) {
    HRep hx = h_representation(x.cone(c));
    for (const auto& cs : s.maximal_cones()) {
      HRep h = h_representation(s.cone(cs));
      for (const auto& ineq : hx.inequalities) h.inequalities.push_back(phi_t * ineq);
      for (const auto& eq : hx.equalities) h.equalities.push_back(phi_t * eq);
      ConeIndices idx;
      for (const auto& r : extreme_rays(h.inequalities, h.equalities, n)) {
        auto [it, fresh] = index.emplace(r, static_cast<int>(rays.size()));
        if (fresh) rays.push_back(r);
        idx.push_back(it->second);
      }
      std::sort(idx.begin(), idx.end());
      cones.push_back(idx);
    }
  }
  if (cones.empty()) return Fan(n, {}, {});
  Fan out = Fan::from_cones(n, rays, cones);
  if (auto bad = out.validate()) throw InternalError("fibre refinement is not a fan: " + *bad);
  return out;
}

Fan subfan(const Fan& f, const std::vector<ConeIndices>& cones) {
  std::vector<int> used;
  for (const auto& c : cones) {
    if (!f.has_cone(c)) throw DomainError("subfan: not a cone of the fan");
    used.insert(used.end(), c.begin(), c.end());
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::map<int, int> index;
  std::vector<IntVector> rays;
  for (int i : used) {
    index[i] = static_cast<int>(rays.size());
    rays.push_back(f.rays()[i]);
  }
  std::vector<ConeIndices> out;
  for (const auto& c : cones) {
    ConeIndices d;
    for (int i : c) d.push_back(index.at(i));
    out.push_back(d);
  }
  return Fan::from_cones(f.rank(), std::move(rays), std::move(out));
}

std::optional<ConeIndices> carrier(const Fan& f, const std::vector<IntVector>& vectors) {
  for (const auto& c : f.cones()) {
    HRep h = h_representation(f.cone(c));
    if (std::all_of(vectors.begin(), vectors.end(), [&](const IntVector& v) { return contains(h, v); })) return c;
  }
  return std::nullopt;
}

bool covers(const Fan& f, const Cone& tau_in) {
  if (f.empty()) return false;
  Cone tau = normalized(tau_in);
  const std::size_t d = tau.dim();
  if (d == 0) return true;
  std::vector<Cone> pieces;
  for (const auto& m : f.maximal_cones()) {
    Cone p = intersect(f.cone(m), tau);
    if (p.dim() == d) pieces.push_back(p);
  }
  if (pieces.empty()) return false;
  HRep ht = h_representation(tau);
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    const Cone& p = pieces[a];
    for (const auto& local : face_index_sets(p)) {
      std::vector<IntVector> fr;
      for (int i : local) fr.push_back(p.rays[i]);
      Cone facet(p.rank, fr);
      if (fr.empty() ? d != 1 : facet.dim() + 1 != d) continue;
      bool on_boundary = false;
      for (const auto& ineq : ht.inequalities) {
        bool tight = true;
        for (const auto& r : fr)
          if (dot(ineq, r) != 0) tight = false;
        if (tight) {
          on_boundary = true;
          break;
        }
      }
      if (on_boundary) continue;
      bool shared = false;
      for (std::size_t b = 0; b < pieces.size() && !shared; ++b)
        if (b != a && contains(pieces[b], facet)) shared = true;
      if (!shared) return false;
    }
  }
  return true;
}

bool support_contains(const Fan& big, const Fan& small) {
  for (const auto& m : small.maximal_cones())
    if (!covers(big, small.cone(m))) return false;
  return true;
}

bool same_support(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank()) return false;
  return support_contains(a, b) && support_contains(b, a);
}

std::optional<std::vector<std::size_t>> subdivision_witness(const Fan& fine, const Fan& coarse) {
  if (fine.rank() != coarse.rank()) return std::nullopt;
  std::vector<HRep> hs;
  for (const auto& m : coarse.maximal_cones()) hs.push_back(h_representation(coarse.cone(m)));
  std::vector<std::size_t> w;
  for (const auto& m : fine.maximal_cones()) {
    bool found = false;
    for (std::size_t k = 0; k < hs.size() && !found; ++k) {
      bool inside = true;
      for (int i : m)
        if (!contains(hs[k], fine.rays()[i])) {
          inside = false;
          break;
        }
      if (inside) {
        w.push_back(k);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return w;
}

bool is_partial_subdivision(const Fan& fine, const Fan& coarse) {
  return subdivision_witness(fine, coarse).has_value();
}

bool is_subdivision(const Fan& fine, const Fan& coarse) {
  if (!subdivision_witness(fine, coarse)) return false;
  if (is_complete(fine) && is_complete(coarse)) return true;
  return support_contains(fine, coarse);
}

// ---------------------------------------------------------------- resolve

TowerResult resolve(const Fan& f) {
  TowerResult res{f, {}};
  // Make simplicial: star at barycenters of the original non-simplicial cones, largest first.
  std::vector<std::pair<std::size_t, std::vector<IntVector>>> bad;
  for (const auto& c : f.cones())
    if (f.cone_dim(c) != c.size()) bad.push_back({f.cone_dim(c), sorted_rays(f.ray_vectors(c))});
  std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (const auto& [dim, rays] : bad) {
    auto idx = res.fan.find_cone(rays);
    if (!idx) throw InternalError("resolve: non-simplicial cone vanished before its turn");
    StarResult s = star_subdivide(res.fan, *idx);
    res.fan = s.fan;
    res.steps.push_back(s.step);
  }
  // Lower multiplicities.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw InternalError("resolve: iteration cap reached");
    const ConeIndices* worst = nullptr;
    Integer worst_mult = 1;
    std::vector<IntVector> worst_rays;
    for (const auto& m : res.fan.maximal_cones()) {
      Integer mult = res.fan.cone(m).multiplicity();
      if (mult == 1) continue;
      std::vector<IntVector> rs = sorted_rays(res.fan.ray_vectors(m));
      if (!worst || mult > worst_mult || (mult == worst_mult && rs < worst_rays)) {
        worst = &m;
        worst_mult = mult;
        worst_rays = rs;
      }
    }
    if (!worst) break;
    std::vector<IntVector> rays = res.fan.ray_vectors(*worst);
    auto pts = parallelepiped_points(rays, res.fan.rank());
    const ParallelepipedPoint* best = nullptr;
    for (const auto& p : pts)
      if (!best || p.total < best->total || (p.total == best->total && p.point < best->point)) best = &p;
    ConeIndices center;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (best->coeffs[i] != 0) center.push_back((*worst)[i]);
    std::sort(center.begin(), center.end());
    StarResult s = star_subdivide_at(res.fan, center, best->point);
    res.fan = s.fan;
    res.steps.push_back(s.step);
  }
  return res;
}

// ---------------------------------------------------------------- refine

namespace {

// Coordinates with respect to the rays of a smooth cone.
struct Chart {
  std::vector<IntVector> basis;
  IntMatrix B;     // columns = basis
  IntMatrix left;  // left * B = identity

  Chart(const std::vector<IntVector>& rays, std::size_t n) : basis(rays), B(IntMatrix::from_columns(rays, n)) {
    const std::size_t k = rays.size();
    SmithResult s = smith_normal_form(B);
    for (std::size_t i = 0; i < k; ++i)
      if (s.D(i, i) != 1) throw InternalError("chart cone is not smooth");
    IntMatrix top = s.U.select_rows(0, k);
    left = s.V * top;
  }

  std::optional<IntVector> coords(const IntVector& x) const {
    IntVector y = left * x;
    if (B * y != x) return std::nullopt;
    return y;
  }
};

struct RefineState {
  Fan current;
  std::vector<StarSubdivisionStep> steps;
  Cone eta;
  std::size_t iterations = 0;
};

bool in_region(const std::vector<IntVector>& region, const IntVector& y) {
  for (const auto& a : region)
    if (dot(a, y) < 0) return false;
  return true;
}

// Star-subdivide 2-cones inside the region whose endpoints lie strictly on
// opposite sides of the functional, heaviest first, until none remain.
void clear_hyperplane(RefineState& st, const Chart& chart, const IntVector& phi,
                      const std::vector<IntVector>& region) {
  HRep heta = h_representation(st.eta);
  while (true) {
    if (++st.iterations > 200000) throw InternalError("refine: iteration cap reached");
    const Fan& f = st.current;
    std::vector<std::optional<IntVector>> ys(f.rays().size());
    std::vector<Integer> vals(f.rays().size());
    for (std::size_t i = 0; i < f.rays().size(); ++i) {
      auto y = chart.coords(f.rays()[i]);
      if (y && in_region(region, *y)) {
        ys[i] = y;
        vals[i] = dot(phi, *y);
      }
    }
    const ConeIndices* best = nullptr;
    Integer best_w = 0;
    std::vector<IntVector> best_rays;
    for (const auto& c : f.cones()) {
      if (c.size() != 2) continue;
      if (!ys[c[0]] || !ys[c[1]]) continue;
      const Integer& a = vals[c[0]];
      const Integer& b = vals[c[1]];
      if (!((a > 0 && b < 0) || (a < 0 && b > 0))) continue;
      Integer w = (a < 0 ? Integer(-a) : a) + (b < 0 ? Integer(-b) : b);
      std::vector<IntVector> rs = sorted_rays(f.ray_vectors(c));
      if (!best || w > best_w || (w == best_w && rs < best_rays)) {
        best = &c;
        best_w = w;
        best_rays = rs;
      }
    }
    if (!best) return;
    if (contains(heta, f.rays()[(*best)[0]]) && contains(heta, f.rays()[(*best)[1]]))
      throw InternalError("refine: would subdivide the protected cone");
    StarResult s = star_subdivide(f, *best);
    st.current = s.fan;
    st.steps.push_back(s.step);
  }
}

void refine_chart(RefineState& st, const Chart& chart, const Cone& tau_in) {
  if (!crosses(tau_in, st.current)) return;
  Cone tau = normalized(tau_in);
  const std::size_t k = chart.basis.size();
  const std::size_t n = st.current.rank();
  std::vector<IntVector> tau_y;
  for (const auto& r : tau.rays) {
    auto y = chart.coords(r);
    if (!y) throw InternalError("refine: wall outside its chart");
    tau_y.push_back(*y);
  }
  HRep heta = h_representation(st.eta);
  HRep htau = h_representation(tau);
  std::vector<bool> in_eta(k), in_tau(k);
  for (std::size_t i = 0; i < k; ++i) {
    in_eta[i] = contains(heta, chart.basis[i]);
    in_tau[i] = in_eta[i] && contains(htau, chart.basis[i]);
  }
  std::vector<IntVector> region = IntMatrix::identity(k).row_vectors();

  bool has_free = false;
  for (std::size_t i = 0; i < k; ++i)
    if (in_eta[i] && !in_tau[i]) has_free = true;
  if (has_free) {
    // psi = sum over eta-rays off tau minus m times the coordinates off eta; negative on the rays of tau off eta.
    Integer m = 1;
    for (const auto& y : tau_y) {
      bool is_basis_in_tau = false;
      for (std::size_t i = 0; i < k; ++i)
        if (in_tau[i]) {
          IntVector e(k, Integer(0));
          e[i] = 1;
          if (y == e) is_basis_in_tau = true;
        }
      if (is_basis_in_tau) continue;
      Integer num = 0, den = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (in_eta[i] && !in_tau[i]) num += y[i];
        if (!in_eta[i]) den += y[i];
      }
      if (den <= 0) throw InternalError("refine: wall meets the protected cone off a face");
      Integer candidate = num / den + 1;
      if (candidate > m) m = candidate;
    }
    IntVector psi(k, Integer(0));
    for (std::size_t i = 0; i < k; ++i) {
      if (in_eta[i] && !in_tau[i]) psi[i] = 1;
      if (!in_eta[i]) psi[i] = -m;
    }
    clear_hyperplane(st, chart, psi, region);
    region.push_back(negate(psi));
  }

  IntMatrix tm = IntMatrix::from_rows(tau_y, k);
  IntMatrix ker = kernel_basis(tm);
  if (ker.rows() != 1) throw InternalError("refine: wall is not a hyperplane of its chart");
  IntVector phi = ker.row(0);
  clear_hyperplane(st, chart, phi, region);

  if (k < 3) return;
  // Recurse into the (k-1)-cones now tiling the wall inside the region.
  std::vector<ConeIndices> gamma;
  {
    const Fan& f = st.current;
    for (const auto& c : f.cones()) {
      if (c.size() != k - 1) continue;
      bool ok = true;
      for (int i : c) {
        auto y = chart.coords(f.rays()[i]);
        if (!y || !in_region(region, *y) || dot(phi, *y) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) gamma.push_back(c);
    }
  }
  std::vector<std::vector<IntVector>> gamma_rays;
  for (const auto& g : gamma) gamma_rays.push_back(st.current.ray_vectors(g));
  std::vector<Cone> kappas;
  for (const auto& local : face_index_sets(tau)) {
    std::vector<IntVector> kr;
    for (int i : local) kr.push_back(tau.rays[i]);
    Cone kappa(n, kr);
    if (kr.size() >= 1 && kappa.dim() + 2 == k) kappas.push_back(kappa);
  }
  for (const auto& gr : gamma_rays) {
    Chart sub(gr, n);
    Cone g(n, gr);
    for (const auto& kappa : kappas) {
      Cone piece = intersect(kappa, g);
      if (piece.dim() + 2 != k) continue;
      refine_chart(st, sub, piece);
    }
  }
}

}  // namespace

TowerResult refine(const Fan& sigma, const Fan& delta, const Cone& eta) {
  if (sigma.rank() != delta.rank()) throw DomainError("refine: rank mismatch");
  if (!is_smooth(sigma)) throw DomainError("refine: sigma must be smooth");
  if (!sigma.find_cone(eta.rays) || !delta.find_cone(eta.rays)) throw DomainError("refine: eta is not a cone of both fans");
  if (!same_support(sigma, delta)) throw DomainError("refine: supports differ");
  RefineState st{sigma, {}, eta, 0};
  const std::size_t n = sigma.rank();
  for (const auto& C : sigma.maximal_cones()) {
    std::vector<IntVector> crays = sigma.ray_vectors(C);
    Chart chart(crays, n);
    Cone cc(n, crays);
    const std::size_t k = crays.size();
    if (k == 0) continue;
    for (const auto& rho : delta.maximal_cones()) {
      Cone piece = intersect(delta.cone(rho), cc);
      if (piece.dim() != k) continue;
      for (const auto& local : face_index_sets(piece)) {
        std::vector<IntVector> fr;
        for (int i : local) fr.push_back(piece.rays[i]);
        Cone wall(n, fr);
        if (fr.empty() || wall.dim() + 1 != k) continue;
        refine_chart(st, chart, wall);
      }
    }
  }
  if (!is_subdivision(st.current, delta) || !is_subdivision(st.current, sigma) || !st.current.find_cone(eta.rays))
    throw InternalError("refine: result is not a common refinement");
  return {st.current, st.steps};
}

// ---------------------------------------------------------------- quotients and slices

StarQuotient star_quotient(const Fan& f, const ConeIndices& sigma_in) {
  ConeIndices sigma(sigma_in);
  std::sort(sigma.begin(), sigma.end());
  if (!f.has_cone(sigma)) throw DomainError("star_quotient: not a cone of the fan");
  const std::size_t n = f.rank();
  const std::size_t d = f.cone_dim(sigma);
  StarQuotient q;
  // Coordinate rays are quotiented by deleting their coordinates.
  std::vector<std::size_t> coord;
  bool coordinate_case = true;
  for (int i : sigma) {
    const IntVector& r = f.rays()[i];
    std::size_t nz = 0, pos = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0) {
        ++nz;
        pos = j;
      }
    if (nz != 1) coordinate_case = false;
    coord.push_back(pos);
  }
  if (coordinate_case) {
    q.projection = IntMatrix(n - d, n);
    std::size_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(coord.begin(), coord.end(), j) != coord.end()) continue;
      q.projection(row++, j) = 1;
    }
  } else {
    IntMatrix A = IntMatrix::from_columns(f.ray_vectors(sigma), n);
    HermiteResult h = hermite_normal_form(A);
    q.projection = h.U.select_rows(d, n);
  }
  std::vector<IntVector> qrays;
  std::map<IntVector, int> qindex;
  std::vector<ConeIndices> qcones;
  for (const auto& m : f.maximal_cones()) {
    if (!subset_of(sigma, m)) continue;
    std::vector<IntVector> images;
    std::vector<int> sources;
    for (int i : m) {
      if (std::binary_search(sigma.begin(), sigma.end(), i)) continue;
      images.push_back(primitive(q.projection * f.rays()[i]));
      sources.push_back(i);
    }
    Cone img = normalized(Cone(n - d, images));
    ConeIndices c;
    for (const auto& r : img.rays) {
      auto it = qindex.find(r);
      if (it == qindex.end()) {
        it = qindex.emplace(r, static_cast<int>(qrays.size())).first;
        qrays.push_back(r);
      }
      c.push_back(it->second);
    }
    qcones.push_back(c);
  }
  for (const auto& c : f.cones()) {
    if (c.size() != sigma.size() + 1 || !subset_of(sigma, c)) continue;
    for (int i : c)
      if (!std::binary_search(sigma.begin(), sigma.end(), i)) {
        auto it = qindex.find(primitive(q.projection * f.rays()[i]));
        if (it != qindex.end()) q.ray_map[i] = it->second;
      }
  }
  q.fan = Fan(n - d, std::move(qrays), std::move(qcones));
  return q;
}

Fan hyperplane_slice(const Fan& f, std::size_t i) {
  const std::size_t n = f.rank();
  if (i >= n) throw DomainError("hyperplane_slice: coordinate out of range");
  std::vector<ConeIndices> inside;
  for (const auto& c : f.cones()) {
    bool ok = true;
    for (int r : c)
      if (f.rays()[r][i] != 0) ok = false;
    if (ok) inside.push_back(c);
  }
  std::map<int, int> renum;
  std::vector<IntVector> rays;
  for (const auto& c : inside)
    for (int r : c)
      if (!renum.count(r)) {
        renum[r] = 0;
      }
  for (auto& [old, idx] : renum) {
    idx = static_cast<int>(rays.size());
    IntVector v;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) v.push_back(f.rays()[old][j]);
    rays.push_back(v);
  }
  std::vector<ConeIndices> cones;
  for (const auto& c : inside) {
    ConeIndices g;
    for (int r : c) g.push_back(renum[r]);
    cones.push_back(g);
  }
  if (f.empty()) return Fan(n - 1, {}, {});
  return Fan::from_cones(n - 1, std::move(rays), std::move(cones));
}

Fan product(const Fan& f, const Fan& g) {
  const std::size_t n = f.rank(), m = g.rank();
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) {
    IntVector v(r);
    v.resize(n + m, Integer(0));
    rays.push_back(v);
  }
  for (const auto& r : g.rays()) {
    IntVector v(n, Integer(0));
    v.insert(v.end(), r.begin(), r.end());
    rays.push_back(v);
  }
  std::vector<ConeIndices> cones;
  const int off = static_cast<int>(f.rays().size());
  for (const auto& a : f.maximal_cones())
    for (const auto& b : g.maximal_cones()) {
      ConeIndices c(a);
      for (int j : b) c.push_back(j + off);
      cones.push_back(c);
    }
  return Fan(n + m, std::move(rays), std::move(cones));
}

Fan permute_coordinates(const Fan& f, const std::vector<std::size_t>& perm) {
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) {
    IntVector v(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) v[k] = r[perm[k]];
    rays.push_back(v);
  }
  return Fan(f.rank(), std::move(rays), f.maximal_cones());
}

Fan insert_p1(const Fan& f, std::size_t pos) {
  const std::size_t n = f.rank();
  if (pos > n) throw DomainError("insert_p1: position out of range");
  Fan p = product(f, standard_fan("P", 1));
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k < pos) perm.push_back(k);
    else if (k == pos) perm.push_back(n);
    else perm.push_back(k - 1);
  }
  return permute_coordinates(p, perm);
}

Fan standard_fan(const std::string& family, std::size_t n) {
  auto unit = [](std::size_t n, std::size_t i, long long s) {
    IntVector v(n, Integer(0));
    v[i] = s;
    return v;
  };
  if (family == "A") {
    std::vector<IntVector> rays;
    ConeIndices c;
    for (std::size_t i = 0; i < n; ++i) {
      rays.push_back(unit(n, i, 1));
      c.push_back(static_cast<int>(i));
    }
    return Fan(n, rays, {c});
  }
  if (family == "Gm") return Fan::point(n);
  if (family == "P") {
    if (n == 0) throw DomainError("P^n needs n >= 1");
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < n; ++i) rays.push_back(unit(n, i, 1));
    rays.push_back(IntVector(n, Integer(-1)));
    std::vector<ConeIndices> cones;
    ConeIndices first;
    for (std::size_t i = 0; i < n; ++i) first.push_back(static_cast<int>(i));
    cones.push_back(first);
    for (std::size_t skip = 0; skip < n; ++skip) {
      ConeIndices c;
      for (std::size_t i = 0; i < n; ++i)
        if (i != skip) c.push_back(static_cast<int>(i));
      c.push_back(static_cast<int>(n));
      cones.push_back(c);
    }
    return Fan(n, rays, cones);
  }
  if (family == "P1") {
    Fan f = Fan::point(0);
    for (std::size_t i = 0; i < n; ++i) f = product(f, standard_fan("P", 1));
    return f;
  }
  if (family == "Bl_sq") {
    std::vector<IntVector> rays{make_vector({1, 0}), make_vector({0, 1}),  make_vector({-1, 0}),
                                make_vector({0, -1}), make_vector({-1, 1}), make_vector({1, -1})};
    return Fan(2, rays, {{0, 1}, {1, 4}, {2, 4}, {0, 5}, {3, 5}, {2, 3}});
  }
  throw DomainError("unknown standard fan '" + family + "'");
}

Fan standard_fan(const std::string& name) {
  if (name == "Bl_sq") return standard_fan("Bl_sq", 2);
  auto caret = name.find('^');
  if (caret == std::string::npos) throw DomainError("standard fan name needs a rank, e.g. P^2");
  std::string family = name.substr(0, caret);
  std::size_t n = 0;
  try {
    n = std::stoul(name.substr(caret + 1));
  } catch (const std::exception&) {
    throw DomainError("bad rank in standard fan name '" + name + "'");
  }
  return standard_fan(family, n);
}

// ---------------------------------------------------------------- completion

namespace {

// Position on the circle: half (0 for angles in [0, pi), 1 otherwise), then cross-product order.
bool angle_less(const IntVector& a, const IntVector& b) {
  auto half = [](const IntVector& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return a[0] * b[1] - a[1] * b[0] > 0;
}

}  // namespace

Fan complete_fan(const Fan& f) {
  const std::size_t n = f.rank();
  if (n > 2) throw DomainError("fan completion is unsupported in rank " + std::to_string(n));
  if (is_complete(f)) return f;
  if (n == 0) return Fan::point(0);
  std::vector<IntVector> rays = f.rays();
  std::vector<ConeIndices> cones = f.maximal_cones();
  auto ensure_ray = [&](const IntVector& v) {
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (rays[i] == v) return static_cast<int>(i);
    rays.push_back(v);
    return static_cast<int>(rays.size() - 1);
  };
  if (n == 1) {
    for (long long s : {1LL, -1LL}) {
      IntVector v = make_vector({s});
      int idx = ensure_ray(v);
      bool present = false;
      for (const auto& c : cones)
        if (c == ConeIndices{idx}) present = true;
      if (!present) cones.push_back({idx});
    }
    return Fan::from_cones(1, rays, cones);
  }
  // Rank 2: walk around the circle; fill every uncovered sector with axis rays.
  Fan cur(2, rays, cones);
  std::vector<IntVector> circle = rays;
  for (long long s : {1LL, -1LL}) {
    circle.push_back(make_vector({s, 0}));
    circle.push_back(make_vector({0, s}));
  }
  std::sort(circle.begin(), circle.end(), angle_less);
  circle.erase(std::unique(circle.begin(), circle.end()), circle.end());
  for (std::size_t k = 0; k < circle.size(); ++k) {
    const IntVector& a = circle[k];
    const IntVector& b = circle[(k + 1) % circle.size()];
    IntVector mid = add(a, b);
    if (is_zero(mid)) throw InternalError("completion: antipodal neighbours");
    Cone sector(2, {a, b});
    bool covered = false;
    for (const auto& m : cur.maximal_cones())
      if (cur.cone_dim(m) == 2 && contains(cur.cone(m), mid)) covered = true;
    if (covered) continue;
    int ia = ensure_ray(a), ib = ensure_ray(b);
    cones.push_back({ia, ib});
  }
  return Fan::from_cones(2, rays, cones);
}

}  // namespace logf1
