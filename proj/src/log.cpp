#include "logf1/log.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <map>

namespace logf1 {

namespace {

using VectorSet = std::vector<IntVector>;

VectorSet vector_set(const Fan& f, const ConeIndices& c) {
  VectorSet v = f.ray_vectors(c);
  std::sort(v.begin(), v.end());
  return v;
}

bool subset_of(const ConeIndices& a, const ConeIndices& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<IntVector> map_all(const IntMatrix& m, const std::vector<IntVector>& vs) {
  std::vector<IntVector> out;
  for (const auto& v : vs) out.push_back(m * v);
  return out;
}

// Open cones of `p` moved to `f` by ray vectors; every one must survive in f.
std::vector<ConeIndices> carry_open(const LogFanPair& p, const Fan& f) {
  std::vector<ConeIndices> out;
  for (const auto& c : p.open_cones()) {
    auto d = f.find_cone(p.fan().ray_vectors(c));
    if (!d) throw InternalError("an open cone was subdivided");
    out.push_back(*d);
  }
  return out;
}

bool unimodular_fan_map(const MonoidSchemeMorphism& m) {
  if (!m.is_fan_map()) return false;
  const IntMatrix& a = m.map();
  return a.rows() == a.cols() && abs(determinant(a)) == 1;
}

// Open cones of the source are exactly the cones over open target cones, and
// each maps onto its carrier.
bool open_parts_match(const LogMorphism& m) {
  const auto& u = m.underlying;
  const Fan& src = m.source.fan();
  const Fan& dst = m.target.fan();
  for (const auto& c : src.cones()) {
    ConeIndices t = u.target_carrier(c);
    bool open_src = m.source.is_open(c);
    if (open_src != m.target.is_open(t)) return false;
    if (!open_src) continue;
    VectorSet img = map_all(u.map(), src.ray_vectors(c));
    std::sort(img.begin(), img.end());
    if (img != vector_set(dst, t)) return false;
  }
  return true;
}

bool dividing_cover_impl(const LogMorphism& m, bool partial) {
  if (!hom_exists(m.underlying, m.source, m.target)) return false;
  if (!unimodular_fan_map(m.underlying)) return false;
  const IntMatrix& a = m.underlying.map();
  Fan mapped = map_fan(m.source.fan(), a);
  if (partial ? !is_partial_subdivision(mapped, m.target.fan()) : !is_subdivision(mapped, m.target.fan())) return false;
  if (!open_parts_match(m)) return false;
  Fan sharp_src = map_fan(sharpen(m.source).fan(), a);
  Fan sharp_dst = sharpen(m.target).fan();
  return partial ? is_partial_subdivision(sharp_src, sharp_dst) : is_subdivision(sharp_src, sharp_dst);
}

// Block-diagonal product of two morphisms.
MonoidSchemeMorphism product_morphism(const MonoidSchemeMorphism& f, const MonoidSchemeMorphism& g) {
  Fan src = product(f.source(), g.source());
  Fan dst = product(f.target(), g.target());
  ConeIndices tau = f.tau();
  const int off = static_cast<int>(f.target().rays().size());
  for (int j : g.tau()) tau.push_back(j + off);
  StarQuotient q = star_quotient(dst, tau);
  IntMatrix lf = right_inverse(f.quotient().projection) * f.map();
  IntMatrix lg = right_inverse(g.quotient().projection) * g.map();
  IntMatrix block(lf.rows() + lg.rows(), lf.cols() + lg.cols());
  for (std::size_t r = 0; r < lf.rows(); ++r)
    for (std::size_t c = 0; c < lf.cols(); ++c) block(r, c) = lf(r, c);
  for (std::size_t r = 0; r < lg.rows(); ++r)
    for (std::size_t c = 0; c < lg.cols(); ++c) block(lf.rows() + r, lf.cols() + c) = lg(r, c);
  return MonoidSchemeMorphism(src, dst, tau, q.projection * block);
}

// The morphism l with down ∘ l = h, when one exists with the same cone of orbits.
std::optional<MonoidSchemeMorphism> lift_through(const MonoidSchemeMorphism& h, const MonoidSchemeMorphism& down) {
  auto tau = down.source().find_cone(h.target().ray_vectors(h.tau()));
  if (!tau) return std::nullopt;
  StarQuotient q = star_quotient(down.source(), *tau);
  try {
    MonoidSchemeMorphism l(h.source(), down.source(), *tau, h.map_in_coordinates(q));
    if (!same_morphism(compose(down, l), h)) return std::nullopt;
    return l;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

// ---------------------------------------------------------------- pairs

LogFanPair::LogFanPair(Fan fan, std::set<ConeIndices> open) : fan_(std::move(fan)), open_(std::move(open)) {
  if (!fan_.has_cone({})) throw InputError("log pair needs a nonempty fan");
  open_.insert(ConeIndices{});
  for (const auto& c : open_)
    if (!fan_.has_cone(c)) throw InputError("open cone is not a cone of the fan");
}

LogFanPair LogFanPair::from_boundary_rays(Fan fan, const std::vector<int>& boundary_rays) {
  std::set<ConeIndices> open;
  for (int b : boundary_rays)
    if (b < 0 || b >= static_cast<int>(fan.rays().size())) throw InputError("boundary ray index out of range");
  for (const auto& c : fan.cones()) {
    bool avoids = std::none_of(c.begin(), c.end(), [&](int r) {
      return std::find(boundary_rays.begin(), boundary_rays.end(), r) != boundary_rays.end();
    });
    if (avoids) open.insert(c);
  }
  return LogFanPair(std::move(fan), std::move(open));
}

LogFanPair LogFanPair::from_open_cones(Fan fan, const std::vector<ConeIndices>& cones) {
  std::vector<ConeIndices> sorted_cones;
  for (auto c : cones) {
    std::sort(c.begin(), c.end());
    if (!fan.has_cone(c)) throw InputError("open cone is not a cone of the fan");
    sorted_cones.push_back(c);
  }
  std::set<ConeIndices> open;
  for (const auto& c : fan.cones())
    for (const auto& g : sorted_cones)
      if (subset_of(c, g)) {
        open.insert(c);
        break;
      }
  return LogFanPair(std::move(fan), std::move(open));
}

LogFanPair LogFanPair::from_open_maximal_cones(Fan fan, const std::vector<std::size_t>& open_maximal) {
  std::vector<ConeIndices> cones;
  for (std::size_t k : open_maximal) {
    if (k >= fan.maximal_cones().size()) throw InputError("open maximal cone index out of range");
    cones.push_back(fan.maximal_cones()[k]);
  }
  return from_open_cones(std::move(fan), cones);
}

LogFanPair LogFanPair::trivial(Fan fan) {
  std::vector<ConeIndices> all = fan.maximal_cones();
  return from_open_cones(std::move(fan), all);
}

LogFanPair LogFanPair::toric(Fan fan) { return from_open_cones(std::move(fan), {}); }

bool LogFanPair::is_open(const ConeIndices& c) const {
  ConeIndices s(c);
  std::sort(s.begin(), s.end());
  return open_.count(s) > 0;
}

std::vector<int> LogFanPair::boundary_rays() const {
  std::vector<int> out;
  for (int r = 0; r < static_cast<int>(fan_.rays().size()); ++r)
    if (!ray_is_open(r)) out.push_back(r);
  return out;
}

std::vector<ConeIndices> LogFanPair::open_maximal_cones() const {
  std::vector<ConeIndices> out;
  for (const auto& c : open_) {
    bool maximal = std::none_of(open_.begin(), open_.end(),
                                [&](const ConeIndices& d) { return d != c && subset_of(c, d); });
    if (maximal) out.push_back(c);
  }
  return out;
}

Fan LogFanPair::open_fan() const { return subfan(fan_, open_maximal_cones()); }

bool same_pair(const LogFanPair& a, const LogFanPair& b) {
  if (!a.fan().same_as(b.fan())) return false;
  std::set<VectorSet> sa, sb;
  for (const auto& c : a.open_cones()) sa.insert(vector_set(a.fan(), c));
  for (const auto& c : b.open_cones()) sb.insert(vector_set(b.fan(), c));
  return sa == sb;
}

LogFanPair product(const LogFanPair& a, const LogFanPair& b) {
  Fan f = product(a.fan(), b.fan());
  const int off = static_cast<int>(a.fan().rays().size());
  std::vector<ConeIndices> open;
  for (const auto& x : a.open_maximal_cones())
    for (const auto& y : b.open_maximal_cones()) {
      ConeIndices c(x);
      for (int j : y) c.push_back(j + off);
      open.push_back(c);
    }
  return LogFanPair::from_open_cones(std::move(f), open);
}

LogFanPair box_pair() {
  Fan p1 = standard_fan("P", 1);
  auto inf = p1.ray_index(make_vector({-1}));
  return LogFanPair::from_boundary_rays(p1, {*inf});
}

LogFanPair point_pair() { return LogFanPair::toric(Fan::point(0)); }

LogFanPair box_power(std::size_t n) {
  LogFanPair out = point_pair();
  for (std::size_t i = 0; i < n; ++i) out = product(out, box_pair());
  return out;
}

// ---------------------------------------------------------------- predicates

bool is_smlsm(const LogFanPair& p) {
  if (!is_smooth(p.fan())) throw DomainError("SmlSm requires smooth fan");
  for (const auto& c : p.fan().cones()) {
    if (p.is_open(c)) continue;
    if (std::none_of(c.begin(), c.end(), [&](int r) { return !p.ray_is_open(r); })) return false;
  }
  return true;
}

bool hom_exists(const MonoidSchemeMorphism& f, const LogFanPair& src, const LogFanPair& dst) {
  if (!f.source().same_as(src.fan()) || !f.target().same_as(dst.fan()))
    throw InputError("morphism fans do not match the log pairs");
  // Re-index through ray vectors, the pairs may list rays in another order.
  for (const auto& c : src.open_cones()) {
    auto fc = f.source().find_cone(src.fan().ray_vectors(c));
    ConeIndices t = f.target_carrier(*fc);
    auto dt = dst.fan().find_cone(f.target().ray_vectors(t));
    if (!dst.is_open(*dt)) return false;
  }
  return true;
}

LogMorphism log_morphism(LogFanPair source, LogFanPair target, MonoidSchemeMorphism underlying) {
  if (!hom_exists(underlying, source, target))
    throw DomainError("underlying map does not send the open part into the open part");
  // Keep the morphism's fans identical to the pairs' fans so ray indices agree.
  if (underlying.source().rays() != source.fan().rays() ||
      underlying.target().rays() != target.fan().rays()) {
    source = LogFanPair::from_open_cones(underlying.source(), carry_open(source, underlying.source()));
    target = LogFanPair::from_open_cones(underlying.target(), carry_open(target, underlying.target()));
  }
  return LogMorphism{std::move(source), std::move(target), std::move(underlying)};
}

LogMorphism log_identity(const LogFanPair& p) {
  return log_morphism(p, p, MonoidSchemeMorphism::identity(p.fan()));
}

LogMorphism compose(const LogMorphism& g, const LogMorphism& f) {
  if (!same_pair(f.target, g.source)) throw DomainError("compose: target and source pairs differ");
  return log_morphism(f.source, g.target, compose(g.underlying, f.underlying));
}

LogFanPair sharpen(const LogFanPair& p) {
  std::vector<ConeIndices> kept;
  for (const auto& c : p.fan().cones())
    if (std::none_of(c.begin(), c.end(), [&](int r) { return p.ray_is_open(r); })) kept.push_back(c);
  return LogFanPair::toric(subfan(p.fan(), kept));
}

bool is_dividing_cover(const LogMorphism& m) { return dividing_cover_impl(m, false); }
bool is_partial_dividing_cover(const LogMorphism& m) { return dividing_cover_impl(m, true); }

bool is_admissible_blowup(const LogMorphism& m) {
  if (!hom_exists(m.underlying, m.source, m.target)) return false;
  return is_proper_birational(m.underlying) && open_parts_match(m);
}

bool is_smooth_center_blowup(const LogMorphism& m) {
  if (!is_proper_birational(m.underlying)) return false;
  Fan mapped = map_fan(m.source.fan(), m.underlying.map());
  const Fan& t = m.target.fan();
  if (mapped.same_as(t)) return true;
  if (mapped.rays().size() != t.rays().size() + 1) return false;
  for (const auto& v : mapped.rays()) {
    if (t.ray_index(v)) continue;
    auto c = carrier(t, {v});
    if (!c || c->size() < 2) return false;
    return star_subdivide(t, *c).fan.same_as(mapped);
  }
  return false;
}

// ---------------------------------------------------------------- fibre products

LogMorphism pullback_dividing(const LogMorphism& m, const LogMorphism& g) {
  if (!is_dividing_cover(m)) throw DomainError("pullback_dividing needs a dividing cover");
  if (!g.underlying.is_fan_map()) throw DomainError("unsupported morphism shape: base change must be a fan map");
  if (!same_pair(g.target, m.target)) throw DomainError("unsupported morphism shape: base change lands elsewhere");
  const Fan& sp = g.source.fan();
  const std::size_t n = sp.rank();
  Fan xp = fibre_refinement(sp, g.underlying.map(), map_fan(m.source.fan(), m.underlying.map()));

  std::vector<ConeIndices> open;
  for (const auto& c : xp.cones()) {
    auto t = carrier(sp, xp.ray_vectors(c));
    if (!t) throw InternalError("fibre product cone has no carrier");
    if (g.source.is_open(*t)) open.push_back(c);
  }
  LogFanPair pair = LogFanPair::from_open_cones(xp, open);
  return log_morphism(pair, g.source, MonoidSchemeMorphism::fan_map(xp, sp, IntMatrix::identity(n)));
}

// ---------------------------------------------------------------- towers

std::vector<ConeIndices> alpha_set(const LogFanPair& p) {
  std::vector<ConeIndices> out;
  for (const auto& c : p.fan().cones()) {
    if (c.empty() || p.is_open(c)) continue;
    if (std::all_of(c.begin(), c.end(), [&](int r) { return p.ray_is_open(r); })) out.push_back(c);
  }
  return out;
}

namespace {

LogTowerResult finish_tower(const LogFanPair& input, const Fan& fan, std::vector<StarSubdivisionStep> steps) {
  LogFanPair pair = LogFanPair::from_open_cones(fan, carry_open(input, fan));
  LogMorphism mor = log_morphism(pair, input, MonoidSchemeMorphism::fan_map(fan, input.fan(), IntMatrix::identity(fan.rank())));
  return LogTowerResult{std::move(pair), std::move(mor), std::move(steps)};
}

}  // namespace

LogTowerResult smlsmify(const LogFanPair& p) {
  if (!is_smooth(p.fan())) throw DomainError("SmlSm requires smooth fan; resolve the fan first");
  LogFanPair cur = p;
  std::vector<StarSubdivisionStep> steps;
  for (auto alpha = alpha_set(cur); !alpha.empty(); alpha = alpha_set(cur)) {
    // cones() is ordered by (size, lexicographic): take the first of the largest size.
    std::size_t top = 0;
    for (const auto& c : alpha) top = std::max(top, c.size());
    const ConeIndices& center = *std::find_if(alpha.begin(), alpha.end(), [&](const ConeIndices& c) { return c.size() == top; });
    StarResult s = star_subdivide(cur.fan(), center);
    steps.push_back(s.step);
    cur = LogFanPair::from_open_cones(s.fan, carry_open(cur, s.fan));
  }
  return finish_tower(p, cur.fan(), std::move(steps));
}

LogTowerResult resolve_log(const LogFanPair& p) {
  TowerResult t = resolve(sharpen(p).fan());
  Fan fan = replay(p.fan(), t.steps);
  if (!is_smooth(fan)) throw DomainError("pair is not log smooth: singular cones remain outside the sharpened fan");
  return finish_tower(p, fan, std::move(t.steps));
}

// ---------------------------------------------------------------- interval object

IntervalData interval_data_square() {
  LogFanPair point = point_pair();
  LogFanPair box = box_pair();
  LogFanPair box2 = product(box, box);
  Fan bl = standard_fan("Bl_sq");
  LogFanPair blowup = LogFanPair::from_open_cones(bl, {*bl.find_cone({make_vector({1, 0}), make_vector({0, 1})})});

  const Fan& p1 = box.fan();
  int zero = *p1.ray_index(make_vector({1}));
  MonoidSchemeMorphism i0u = MonoidSchemeMorphism::closed_immersion(p1, {zero});
  LogMorphism i0 = log_morphism(LogFanPair::toric(i0u.source()), box, i0u);
  LogMorphism i1 = log_morphism(point, box, MonoidSchemeMorphism::fan_map(point.fan(), p1, IntMatrix(1, 0)));
  LogMorphism p = log_morphism(box, point, MonoidSchemeMorphism::fan_map(p1, point.fan(), IntMatrix(0, 1)));
  LogMorphism down = log_morphism(blowup, box2, MonoidSchemeMorphism::fan_map(bl, box2.fan(), IntMatrix::identity(2)));
  LogMorphism mu = log_morphism(blowup, box, MonoidSchemeMorphism::fan_map(bl, p1, IntMatrix::from_list({{1, 1}})));
  return IntervalData{point, box, box2, blowup, i0, i1, p, down, mu};
}

std::vector<std::string> interval_identity_failures(const IntervalData& d) {
  std::vector<std::string> failed;
  const MonoidSchemeMorphism id_box = MonoidSchemeMorphism::identity(d.box.fan());
  const MonoidSchemeMorphism id_pt = MonoidSchemeMorphism::identity(d.point.fan());
  const auto& i0 = d.i0.underlying;
  const auto& i1 = d.i1.underlying;
  const auto& p = d.p.underlying;
  if (!same_morphism(compose(p, i0), id_pt)) failed.push_back("p i0 = id");
  if (!same_morphism(compose(p, i1), id_pt)) failed.push_back("p i1 = id");

  // mu ∘ h for h: □ -> □², computed as mu' ∘ l with blowdown ∘ l = h.
  auto mu_after = [&](const MonoidSchemeMorphism& h) -> std::optional<MonoidSchemeMorphism> {
    auto l = lift_through(h, d.blowdown.underlying);
    if (!l) return std::nullopt;
    return compose(d.mu_prime.underlying, *l);
  };
  auto check = [&](const MonoidSchemeMorphism& h, const MonoidSchemeMorphism& expected, const std::string& name) {
    auto got = mu_after(h);
    if (!got || !same_morphism(*got, expected)) failed.push_back(name);
  };
  const MonoidSchemeMorphism i0p = compose(i0, p);
  check(product_morphism(i0, id_box), i0p, "mu (i0 x id) = i0 p");
  check(product_morphism(id_box, i0), i0p, "mu (id x i0) = i0 p");
  check(product_morphism(i1, id_box), id_box, "mu (i1 x id) = id");
  check(product_morphism(id_box, i1), id_box, "mu (id x i1) = id");
  return failed;
}

}  // namespace logf1
