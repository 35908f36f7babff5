#include "logf1/chow.hpp"

#include "logf1/errors.hpp"

#include <algorithm>

namespace logf1 {

namespace {

IntVector zeros(std::size_t n) { return IntVector(n, Integer(0)); }

// Floor modulo for positive d.
Integer mod_floor(const Integer& a, const Integer& d) {
  Integer r = a % d;
  if (r < 0) r += d;
  return r;
}

}  // namespace

ChowRing::ChowRing(Fan fan) : fan_(std::move(fan)) {
  if (!is_smooth(fan_)) throw DomainError("Chow groups need a smooth fan");
  if (!is_complete(fan_)) throw DomainError("Chow groups need a complete fan");
  const std::size_t n = fan_.rank();
  generators_.resize(n + 1);
  index_.resize(n + 1);
  for (std::size_t q = 0; q <= n; ++q) {
    generators_[q] = fan_.cones_of_dim(q);
    for (std::size_t k = 0; k < generators_[q].size(); ++k) index_[q][generators_[q][k]] = k;
  }
  relations_.resize(n + 1);
  relations_[0] = IntMatrix(1, 0);
  for (std::size_t q = 1; q <= n; ++q) {
    std::vector<IntVector> cols;
    for (const auto& tau : generators_[q - 1]) {
      IntMatrix perp_basis;
      if (tau.empty()) {
        perp_basis = IntMatrix::identity(n);
      } else {
        perp_basis = kernel_basis(IntMatrix::from_rows(fan_.ray_vectors(tau), n));
      }
      for (const auto& m : perp_basis.row_vectors()) {
        IntVector col = zeros(generators_[q].size());
        for (int r = 0; r < static_cast<int>(fan_.rays().size()); ++r) {
          if (std::binary_search(tau.begin(), tau.end(), r)) continue;
          ConeIndices s(tau);
          s.insert(std::upper_bound(s.begin(), s.end(), r), r);
          auto it = index_[q].find(s);
          if (it == index_[q].end()) continue;
          col[it->second] += dot(m, fan_.rays()[r]);
        }
        cols.push_back(col);
      }
    }
    relations_[q] = IntMatrix::from_columns(cols, generators_[q].size());
  }
  for (std::size_t q = 0; q <= n; ++q) {
    groups_.emplace_back(relations_[q]);
    smith_.push_back(smith_normal_form(relations_[q]));
  }
}

const std::vector<ConeIndices>& ChowRing::generators(std::size_t q) const {
  static const std::vector<ConeIndices> none;
  return q < generators_.size() ? generators_[q] : none;
}

const FPAbelianGroup& ChowRing::group(std::size_t q) const {
  static const FPAbelianGroup trivial(IntMatrix(0, 0));
  return q < groups_.size() ? groups_[q] : trivial;
}

const IntMatrix& ChowRing::relations(std::size_t q) const {
  static const IntMatrix empty(0, 0);
  return q < relations_.size() ? relations_[q] : empty;
}

ChowClass ChowRing::zero(std::size_t q) const { return ChowClass{q, zeros(generators(q).size())}; }

ChowClass ChowRing::unit() const { return ChowClass{0, make_vector({1})}; }

ChowClass ChowRing::ray_class(int ray) const { return cone_class({ray}); }

ChowClass ChowRing::cone_class(const ConeIndices& cone) const {
  ConeIndices s(cone);
  std::sort(s.begin(), s.end());
  ChowClass c = zero(s.size());
  if (s.size() >= index_.size()) return c;
  auto it = index_[s.size()].find(s);
  if (it == index_[s.size()].end()) throw DomainError("cone_class: not a cone of the fan");
  c.coords[it->second] = 1;
  return c;
}

ChowClass ChowRing::add(const ChowClass& a, const ChowClass& b) const {
  if (a.degree != b.degree) throw DomainError("adding Chow classes of different degrees");
  return ChowClass{a.degree, logf1::add(a.coords, b.coords)};
}

ChowClass ChowRing::scale(const Integer& s, const ChowClass& a) const {
  return ChowClass{a.degree, logf1::scale(s, a.coords)};
}

ChowClass ChowRing::multiply_by_ray(const ChowClass& a, int ray) const {
  ChowClass out = zero(a.degree + 1);
  if (a.degree + 1 >= generators_.size()) return out;
  const auto& next = index_[a.degree + 1];
  const int nrays = static_cast<int>(fan_.rays().size());
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    if (a.coords[k] == 0) continue;
    const ConeIndices& sigma = generators_[a.degree][k];
    auto insert = [&](int r, const Integer& coeff) {
      ConeIndices s(sigma);
      s.insert(std::upper_bound(s.begin(), s.end(), r), r);
      auto it = next.find(s);
      if (it != next.end()) out.coords[it->second] += coeff * a.coords[k];
    };
    if (!std::binary_search(sigma.begin(), sigma.end(), ray)) {
      insert(ray, 1);
      continue;
    }
    // Self-intersection: x_ray = -sum <m, u_r> x_r with m dual to ray on sigma.
    IntMatrix a_sigma = IntMatrix::from_rows(fan_.ray_vectors(sigma), fan_.rank());
    IntVector rhs = zeros(sigma.size());
    rhs[std::lower_bound(sigma.begin(), sigma.end(), ray) - sigma.begin()] = 1;
    auto m = solve_integer(a_sigma, rhs);
    if (!m) throw InternalError("smooth cone without a dual basis");
    for (int r = 0; r < nrays; ++r) {
      if (std::binary_search(sigma.begin(), sigma.end(), r)) continue;
      Integer v = dot(*m, fan_.rays()[r]);
      if (v != 0) insert(r, -v);
    }
  }
  return out;
}

ChowClass ChowRing::multiply(const ChowClass& a, const ChowClass& b) const {
  ChowClass out = zero(a.degree + b.degree);
  for (std::size_t k = 0; k < b.coords.size(); ++k) {
    if (b.coords[k] == 0) continue;
    ChowClass t = a;
    for (int r : generators_[b.degree][k]) t = multiply_by_ray(t, r);
    out = add(out, scale(b.coords[k], t));
  }
  return out;
}

IntVector ChowRing::canonical(const ChowClass& c) const {
  if (c.degree >= smith_.size()) return {};
  const SmithResult& s = smith_[c.degree];
  IntVector y = s.U * c.coords;
  auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) y[i] = mod_floor(y[i], abs(d[i]));
  return y;
}

bool ChowRing::equal(const ChowClass& a, const ChowClass& b) const {
  if (a.degree != b.degree) return false;
  return canonical(a) == canonical(b);
}

bool ChowRing::is_zero(const ChowClass& c) const { return logf1::is_zero(canonical(c)); }

Integer ChowRing::degree(const ChowClass& top) const {
  if (top.degree != dimension()) throw DomainError("degree needs a top-dimensional class");
  Integer s = 0;
  for (const auto& x : top.coords) s += x;
  return s;
}

FPAbelianGroup chow_presentation(const Fan& f, std::size_t q) { return ChowRing(f).group(q); }

// ---------------------------------------------------------------- maps

ChowMap::ChowMap(const ChowRing& from, const ChowRing& to, std::vector<ChowClass> ray_images)
    : from_(&from), to_(&to), ray_images_(std::move(ray_images)) {
  if (ray_images_.size() != from.fan().rays().size()) throw InternalError("ChowMap needs one image per ray");
  for (const auto& c : ray_images_)
    if (c.degree != 1) throw InternalError("ray images must have degree one");
}

ChowClass ChowMap::apply(const ChowClass& c) const {
  ChowClass out = to_->zero(c.degree);
  const auto& gens = from_->generators(c.degree);
  for (std::size_t k = 0; k < c.coords.size(); ++k) {
    if (c.coords[k] == 0) continue;
    ChowClass t = to_->unit();
    for (int r : gens[k]) t = to_->multiply(t, ray_images_[r]);
    out = to_->add(out, to_->scale(c.coords[k], t));
  }
  return out;
}

IntMatrix ChowMap::matrix(std::size_t q) const {
  const auto& gens = from_->generators(q);
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < gens.size(); ++k) cols.push_back(apply(from_->cone_class(gens[k])).coords);
  return IntMatrix::from_columns(cols, to_->generators(q).size());
}

bool ChowMap::respects_relations() const {
  for (std::size_t q = 0; q <= from_->dimension(); ++q) {
    const IntMatrix& rel = from_->relations(q);
    IntMatrix m = matrix(q);
    for (const auto& col : rel.column_vectors())
      if (!to_->is_zero(ChowClass{q, m * col})) return false;
  }
  return true;
}

ChowMap pullback_map(const ChowRing& target, const ChowRing& source) {
  const Fan& t = target.fan();
  const Fan& s = source.fan();
  if (!is_subdivision(s, t)) throw DomainError("pullback needs a subdivision");
  std::vector<ChowClass> images(t.rays().size(), source.zero(1));
  for (int r2 = 0; r2 < static_cast<int>(s.rays().size()); ++r2) {
    const IntVector& u = s.rays()[r2];
    auto c = carrier(t, {u});
    if (!c) throw InternalError("subdivision ray without carrier");
    auto x = solve_integer(IntMatrix::from_columns(t.ray_vectors(*c), t.rank()), u);
    if (!x) throw InternalError("ray not integral in a smooth carrier");
    for (std::size_t j = 0; j < c->size(); ++j)
      images[(*c)[j]] = source.add(images[(*c)[j]], source.scale((*x)[j], source.ray_class(r2)));
  }
  return ChowMap(target, source, std::move(images));
}

ChowMap restrict_star_map(const ChowRing& f, const ConeIndices& tau_in, const ChowRing& quotient) {
  ConeIndices tau(tau_in);
  std::sort(tau.begin(), tau.end());
  const Fan& fan = f.fan();
  if (!fan.has_cone(tau)) throw DomainError("restrict_star: not a cone of the fan");
  StarQuotient q = star_quotient(fan, tau);
  if (!q.fan.same_as(quotient.fan())) throw DomainError("restrict_star: ring is not that of the star quotient");
  // Quotient rays of the ring's fan, matched through vectors.
  std::map<int, int> to_ring;
  for (const auto& [ray, qray] : q.ray_map) to_ring[ray] = *quotient.fan().ray_index(q.fan.rays()[qray]);
  ConeIndices sigma0;
  for (const auto& m : fan.maximal_cones())
    if (std::includes(m.begin(), m.end(), tau.begin(), tau.end())) {
      sigma0 = m;
      break;
    }
  IntMatrix a0 = IntMatrix::from_rows(fan.ray_vectors(sigma0), fan.rank());
  std::vector<ChowClass> images;
  for (int r = 0; r < static_cast<int>(fan.rays().size()); ++r) {
    // Cartier data of D_r on sigma0, so that D_r - div(m0) avoids tau.
    IntVector m0 = zeros(fan.rank());
    auto pos = std::find(sigma0.begin(), sigma0.end(), r);
    if (pos != sigma0.end()) {
      IntVector rhs = zeros(sigma0.size());
      rhs[pos - sigma0.begin()] = -1;
      m0 = *solve_integer(a0, rhs);
    }
    ChowClass img = quotient.zero(1);
    for (const auto& [adj, qray] : to_ring) {
      Integer coeff = dot(m0, fan.rays()[adj]) + (adj == r ? 1 : 0);
      if (coeff != 0) img = quotient.add(img, quotient.scale(coeff, quotient.ray_class(qray)));
    }
    images.push_back(img);
  }
  return ChowMap(f, quotient, std::move(images));
}

ChowMap restrict_slice_map(const ChowRing& f, std::size_t i, const ChowRing& slice) {
  const Fan& fan = f.fan();
  if (i >= fan.rank()) throw DomainError("restrict_slice: coordinate out of range");
  std::vector<ChowClass> images;
  for (const auto& u : fan.rays()) {
    if (u[i] != 0) {
      images.push_back(slice.zero(1));
      continue;
    }
    IntVector v;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != i) v.push_back(u[j]);
    auto r = slice.fan().ray_index(v);
    images.push_back(r ? slice.ray_class(*r) : slice.zero(1));
  }
  return ChowMap(f, slice, std::move(images));
}

ChowMap external_insert_map(const ChowRing& f, std::size_t i, const ChowRing& product) {
  std::vector<ChowClass> images;
  for (const auto& u : f.fan().rays()) {
    IntVector v(u);
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), Integer(0));
    auto r = product.fan().ray_index(v);
    if (!r) throw DomainError("external_insert: ring is not that of f x P^1");
    images.push_back(product.ray_class(*r));
  }
  return ChowMap(f, product, std::move(images));
}

ChowClass pullback_subdivision(const ChowRing& target, const ChowRing& source, const ChowClass& c) {
  return pullback_map(target, source).apply(c);
}

ChowClass restrict_star(const ChowRing& f, const ConeIndices& tau, const ChowClass& c) {
  ChowRing q(star_quotient(f.fan(), tau).fan);
  return restrict_star_map(f, tau, q).apply(c);
}

ChowClass restrict_slice(const ChowRing& f, std::size_t i, const ChowClass& c) {
  Fan s = hyperplane_slice(f.fan(), i);
  if (s.empty() || !is_complete(s)) throw DomainError("restrict_slice: slice is not complete in its hyperplane");
  ChowRing sr(s);
  return restrict_slice_map(f, i, sr).apply(c);
}

ChowClass external_insert(const ChowRing& f, std::size_t i, const ChowClass& c) {
  ChowRing p(insert_p1(f.fan(), i));
  return external_insert_map(f, i, p).apply(c);
}

}  // namespace logf1
