#include "logf1/scheme.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <set>

namespace logf1 {

namespace {

bool is_subset(const ConeIndices& small, const ConeIndices& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<IntVector> map_all(const IntMatrix& m, const std::vector<IntVector>& vs) {
  std::vector<IntVector> out;
  for (const auto& v : vs) out.push_back(m * v);
  return out;
}

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Whether x is a sum of elements of gens. Exact when x is zero or a generator;
// otherwise a breadth-first search over partial sums inside a box around the data.
bool in_generated_monoid(const std::vector<IntVector>& gens, const IntVector& x) {
  if (is_zero(x) || std::find(gens.begin(), gens.end(), x) != gens.end()) return true;
  Integer bound = 0;
  for (const auto& c : x) bound = std::max(bound, Integer(abs(c)));
  for (const auto& g : gens)
    for (const auto& c : g) bound = std::max(bound, Integer(abs(c)));
  bound *= 4;
  auto inside = [&](const IntVector& y) {
    return std::all_of(y.begin(), y.end(), [&](const Integer& c) { return abs(c) <= bound; });
  };
  std::set<IntVector> seen{IntVector(x.size(), Integer(0))};
  std::vector<IntVector> frontier(seen.begin(), seen.end());
  while (!frontier.empty() && seen.size() < 20000) {
    std::vector<IntVector> next;
    for (const auto& y : frontier)
      for (const auto& g : gens) {
        IntVector z = add(y, g);
        if (z == x) return true;
        if (inside(z) && seen.insert(z).second) next.push_back(z);
      }
    frontier.swap(next);
  }
  return false;
}

// The cone sigma / tau of the quotient fan, as a Cone in the quotient lattice.
Cone quotient_cone(const MonoidSchemeMorphism& m, const ConeIndices& sigma) {
  std::vector<IntVector> rays;
  for (int i : sigma)
    if (!std::binary_search(m.tau().begin(), m.tau().end(), i))
      rays.push_back(primitive(m.quotient().projection * m.target().rays()[i]));
  return normalized(Cone(m.quotient().fan.rank(), rays));
}

}  // namespace

MonoidSchemeMorphism::MonoidSchemeMorphism(Fan source, Fan target, ConeIndices tau, IntMatrix map)
    : source_(std::move(source)), target_(std::move(target)), tau_(std::move(tau)), map_(std::move(map)) {
  std::sort(tau_.begin(), tau_.end());
  quotient_ = star_quotient(target_, tau_);
  if (map_.cols() != source_.rank() || map_.rows() != quotient_.fan.rank())
    throw DomainError("morphism matrix has the wrong shape");
  for (std::size_t k = 0; k < source_.maximal_cones().size(); ++k)
    if (!carrier(quotient_.fan, map_all(map_, source_.ray_vectors(source_.maximal_cones()[k]))))
      throw DomainError("morphism does not map source cone " + std::to_string(k) + " into a cone of the target");
}

MonoidSchemeMorphism MonoidSchemeMorphism::fan_map(Fan source, Fan target, IntMatrix map) {
  return MonoidSchemeMorphism(std::move(source), std::move(target), {}, std::move(map));
}

MonoidSchemeMorphism MonoidSchemeMorphism::identity(const Fan& f) {
  return fan_map(f, f, IntMatrix::identity(f.rank()));
}

MonoidSchemeMorphism MonoidSchemeMorphism::closed_immersion(const Fan& target, const ConeIndices& tau) {
  StarQuotient q = star_quotient(target, tau);
  return MonoidSchemeMorphism(q.fan, target, tau, IntMatrix::identity(q.fan.rank()));
}

MonoidSchemeMorphism MonoidSchemeMorphism::open_immersion(const Fan& target, const std::vector<ConeIndices>& cones) {
  return fan_map(subfan(target, cones), target, IntMatrix::identity(target.rank()));
}

ConeIndices MonoidSchemeMorphism::lift_quotient_cone(const ConeIndices& q) const {
  ConeIndices out = tau_;
  for (const auto& [ray, qray] : quotient_.ray_map)
    if (std::find(q.begin(), q.end(), qray) != q.end()) out.push_back(ray);
  std::sort(out.begin(), out.end());
  if (!target_.has_cone(out)) throw InternalError("quotient cone does not lift to a cone of the target");
  return out;
}

ConeIndices MonoidSchemeMorphism::target_carrier(const ConeIndices& source_cone) const {
  auto q = carrier(quotient_.fan, map_all(map_, source_.ray_vectors(source_cone)));
  if (!q) throw InternalError("source cone has no carrier");
  return lift_quotient_cone(*q);
}

IntMatrix MonoidSchemeMorphism::map_in_coordinates(const StarQuotient& other) const {
  return other.projection * right_inverse(quotient_.projection) * map_;
}

MonoidSchemeMorphism compose(const MonoidSchemeMorphism& g, const MonoidSchemeMorphism& f) {
  if (!f.target().same_as(g.source())) throw DomainError("compose: target and source differ");
  std::vector<IntVector> tau1 = f.target().ray_vectors(f.tau());
  IntMatrix s1 = right_inverse(f.quotient().projection);
  auto rho = carrier(g.quotient().fan, map_all(g.map(), tau1));
  if (!rho) throw InternalError("compose: no carrier for the image of tau");
  ConeIndices lifted = g.lift_quotient_cone(*rho);
  StarQuotient q = star_quotient(g.target(), lifted);
  IntMatrix s2 = right_inverse(g.quotient().projection);
  IntMatrix map = q.projection * s2 * g.map() * s1 * f.map();
  return MonoidSchemeMorphism(f.source(), g.target(), lifted, map);
}

bool same_morphism(const MonoidSchemeMorphism& a, const MonoidSchemeMorphism& b) {
  if (!a.source().same_as(b.source()) || !a.target().same_as(b.target())) return false;
  if (sorted(a.target().ray_vectors(a.tau())) != sorted(b.target().ray_vectors(b.tau()))) return false;
  return a.map_in_coordinates(b.quotient()) == b.map();
}

Fan map_fan(const Fan& f, const IntMatrix& map) {
  std::vector<IntVector> rays;
  for (const auto& r : f.rays()) {
    IntVector v = map * r;
    if (!is_primitive(v)) throw DomainError("map_fan: a ray image is not primitive");
    rays.push_back(v);
  }
  return Fan(map.rows(), rays, f.maximal_cones());
}

SchemeImage scheme_image(const MonoidSchemeMorphism& m) {
  SchemeImage out;
  const std::size_t n = m.source().rank();
  out.source_rank = n;
  if (m.source().cones().empty()) return out;
  IntMatrix mt = m.map().transpose();
  for (const auto& sigma : m.target().maximal_cones()) {
    if (!is_subset(m.tau(), sigma)) continue;
    ToricMonoid chart(quotient_cone(m, sigma));
    std::set<IntVector> gens;
    for (const auto& g : chart.generators()) {
      IntVector x = mt * g;
      if (!is_zero(x)) gens.insert(x);
    }
    ImageChart c;
    c.target_cone = sigma;
    c.generators.assign(gens.begin(), gens.end());
    for (const auto& h : normalize(c.generators, n).monoid.generators())
      if (!in_generated_monoid(c.generators, h)) {
        c.normal = false;
        break;
      }
    out.charts.push_back(c);
  }
  if (out.charts.empty()) return out;

  // Toric case: glue the saturated charts as cones in the dual of their common group.
  std::vector<ToricMonoid> monoids;
  for (const auto& c : out.charts) {
    if (!c.normal) return out;
    monoids.push_back(normalize(c.generators, n).monoid);
    if (!(monoids.back().embedding() == monoids.front().embedding())) return out;
  }
  const std::size_t l = monoids.front().rank();
  std::vector<IntVector> rays;
  std::vector<ConeIndices> cones;
  for (const auto& t : monoids) {
    ConeIndices c;
    for (const auto& r : t.cone().rays) {
      auto it = std::find(rays.begin(), rays.end(), r);
      if (it == rays.end()) {
        c.push_back(static_cast<int>(rays.size()));
        rays.push_back(r);
      } else {
        c.push_back(static_cast<int>(it - rays.begin()));
      }
    }
    cones.push_back(c);
  }
  Fan f = Fan::from_cones(l, rays, cones);
  if (!f.validate()) out.fan = f;
  return out;
}

std::optional<Fan> torus_slice_image(const Fan& delta, const Fan& sigma, int a) {
  if (sigma.rank() < 1 || delta.rank() != sigma.rank()) throw DomainError("torus_slice_image: rank mismatch");
  if (a < 0 || static_cast<std::size_t>(a) >= sigma.rays().size()) throw DomainError("torus_slice_image: no such ray");
  if (!is_partial_subdivision(delta, sigma)) throw DomainError("torus_slice_image: not a partial subdivision");
  // Cones of delta whose relative interior maps into the orbit of a.
  std::optional<int> b;
  for (const auto& c : delta.cones()) {
    if (c.empty()) continue;
    auto car = carrier(sigma, delta.ray_vectors(c));
    if (car && *car == ConeIndices{a}) {
      if (c.size() != 1) throw InternalError("torus_slice_image: unexpected cone over a ray");
      b = c[0];
    }
  }
  if (!b) return std::nullopt;
  const std::size_t n = delta.rank();
  MonoidSchemeMorphism torus(Fan::point(n - 1), delta, {*b}, IntMatrix::identity(n - 1));
  SchemeImage img = scheme_image(torus);
  if (!img.fan) throw InternalError("torus_slice_image: image is not toric");
  return img.fan;
}

bool is_closed_immersion(const MonoidSchemeMorphism& m) {
  const Fan& s = m.source();
  const std::size_t n = s.rank();
  IntMatrix mt = m.map().transpose();
  for (const auto& sigma : m.target().maximal_cones()) {
    if (!is_subset(m.tau(), sigma)) continue;
    Cone qc = quotient_cone(m, sigma);
    HRep h = h_representation(qc);
    std::vector<ConeIndices> pre;
    for (const auto& c : s.cones()) {
      auto imgs = map_all(m.map(), s.ray_vectors(c));
      if (std::all_of(imgs.begin(), imgs.end(), [&](const IntVector& v) { return contains(h, v); })) pre.push_back(c);
    }
    if (pre.empty()) continue;
    std::vector<ConeIndices> maximal;
    for (const auto& c : pre)
      if (std::none_of(pre.begin(), pre.end(), [&](const ConeIndices& d) { return d != c && is_subset(c, d); }))
        maximal.push_back(c);
    if (maximal.size() != 1) return false;
    ToricMonoid gamma(Cone(n, s.ray_vectors(maximal[0])));
    std::vector<IntVector> gens;
    for (const auto& g : ToricMonoid(qc).generators()) gens.push_back(mt * g);
    for (const auto& h2 : gamma.generators())
      if (!in_generated_monoid(gens, h2)) return false;
  }
  return true;
}

std::optional<MonoidSchemeMorphism> restrict_to_open(const MonoidSchemeMorphism& m,
                                                     const std::vector<ConeIndices>& cones) {
  Fan u = subfan(m.target(), cones);
  auto tau = u.find_cone(m.target().ray_vectors(m.tau()));
  if (!tau) return std::nullopt;
  std::vector<ConeIndices> kept;
  for (const auto& c : m.source().cones())
    if (u.find_cone(m.target().ray_vectors(m.target_carrier(c)))) kept.push_back(c);
  if (kept.empty()) return std::nullopt;
  Fan src = subfan(m.source(), kept);
  StarQuotient q = star_quotient(u, *tau);
  return MonoidSchemeMorphism(src, u, *tau, m.map_in_coordinates(q));
}

bool is_proper(const Fan& f) { return is_complete(f); }

bool is_proper_birational(const MonoidSchemeMorphism& m) {
  if (!m.is_fan_map()) return false;
  const IntMatrix& a = m.map();
  if (a.rows() != a.cols() || abs(determinant(a)) != 1) return false;
  return is_subdivision(map_fan(m.source(), a), m.target());
}

std::vector<RationalPoint> rational_points(const Fan& f) {
  std::vector<RationalPoint> out;
  for (const auto& c : f.cones()) {
    IntVector v(f.rank(), Integer(0));
    for (int i : c) v = add(v, f.rays()[i]);
    std::string label;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) label += ",";
      label += v[j] > 0 ? "0" : v[j] == 0 ? "1" : "∞";
    }
    if (f.rank() != 1) label = "(" + label + ")";
    out.push_back({c, label});
  }
  // Distinct cones can share a coordinate pattern; disambiguate by rays.
  std::map<std::string, int> count;
  for (const auto& p : out) ++count[p.label];
  for (auto& p : out)
    if (count[p.label] > 1) {
      std::string rays;
      for (const auto& r : sorted(f.ray_vectors(p.cone))) rays += to_string(r);
      p.label += "@" + (rays.empty() ? std::string("0") : rays);
    }
  return out;
}

Atlas realize_scheme(const Fan& f, const std::string& base) {
  check_base_ring(base);
  Atlas atlas;
  std::vector<ToricMonoid> monoids;
  for (const auto& m : f.maximal_cones()) {
    monoids.emplace_back(f.cone(m));
    atlas.charts.push_back({m, realize(PointedMonoid{monoids.back()}, base)});
  }
  auto face_names = [&](std::size_t k, const ConeIndices& shared) {
    std::vector<std::string> names;
    for (const auto& g : monoids[k].generators()) {
      bool on = true;
      for (int r : shared)
        if (dot(f.rays()[r], g) != 0) on = false;
      if (on) names.push_back(monomial_name(g));
    }
    return names;
  };
  for (std::size_t i = 0; i < atlas.charts.size(); ++i)
    for (std::size_t j = i + 1; j < atlas.charts.size(); ++j) {
      AtlasGluing g;
      g.first = i;
      g.second = j;
      const auto& a = atlas.charts[i].cone;
      const auto& b = atlas.charts[j].cone;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(g.shared));
      g.invert_in_first = face_names(i, g.shared);
      g.invert_in_second = face_names(j, g.shared);
      atlas.gluings.push_back(g);
    }
  return atlas;
}

namespace {

std::set<std::vector<IntVector>> cone_set(const Fan& f) {
  std::set<std::vector<IntVector>> out;
  for (const auto& c : f.cones()) out.insert(sorted(f.ray_vectors(c)));
  return out;
}

bool includes(const std::set<std::vector<IntVector>>& big, const std::set<std::vector<IntVector>>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

bool is_zariski_distinguished(const Fan& x, const Fan& u, const Fan& v, const Fan& w) {
  for (const Fan* f : {&u, &v, &w})
    if (f->rank() != x.rank()) throw InputError("square: lattice ranks differ");
  auto cx = cone_set(x), cu = cone_set(u), cv = cone_set(v), cw = cone_set(w);
  if (!includes(cx, cu) || !includes(cx, cv) || !includes(cu, cw) || !includes(cv, cw))
    throw InputError("square: an inclusion is not a subfan inclusion");
  std::set<std::vector<IntVector>> meet, join;
  std::set_intersection(cu.begin(), cu.end(), cv.begin(), cv.end(), std::inserter(meet, meet.end()));
  std::set_union(cu.begin(), cu.end(), cv.begin(), cv.end(), std::inserter(join, join.end()));
  return meet == cw && join == cx;
}

}  // namespace logf1
