#include "logf1/cone.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace logf1 {

Cone::Cone(std::size_t rank_, std::vector<IntVector> rays_) : rank(rank_), rays(std::move(rays_)) {
  for (const auto& r : rays)
    if (r.size() != rank) throw InternalError("cone ray of wrong length");
}

std::size_t Cone::dim() const {
  if (rays.empty()) return 0;
  return logf1::rank(IntMatrix::from_rows(rays, rank));
}

bool Cone::is_simplicial() const { return dim() == rays.size(); }

Integer Cone::multiplicity() const {
  if (rays.empty()) return 1;
  SmithResult s = smith_normal_form(IntMatrix::from_rows(rays, rank));
  Integer m = 1;
  for (const auto& d : s.diagonal()) m *= d;
  return m;
}

bool Cone::is_smooth() const { return is_simplicial() && multiplicity() == 1; }

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool satisfies(const std::vector<IntVector>& ineqs, const IntVector& v) {
  for (const auto& a : ineqs)
    if (dot(a, v) < 0) return false;
  return true;
}

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equalities, std::size_t n) {
  if (n == 0) return {};
  IntMatrix E = equalities.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(equalities, n);
  // Keep an independent subset of the equalities.
  std::vector<IntVector> eq_basis;
  if (E.rows() > 0) {
    HermiteResult h = hermite_normal_form(E);
    eq_basis = h.H.select_rows(0, h.rank).row_vectors();
  }
  const std::size_t re = eq_basis.size();
  if (re >= n) return {};
  const std::size_t need = n - 1 - re;
  std::set<IntVector> found;
  auto try_kernel = [&](const std::vector<IntVector>& rows) {
    IntMatrix M = rows.empty() ? IntMatrix(0, n) : IntMatrix::from_rows(rows, n);
    IntMatrix K = kernel_basis(M);
    if (K.rows() != 1) return;
    IntVector v = primitive(K.row(0));
    bool pos = satisfies(inequalities, v);
    bool neg = satisfies(inequalities, negate(v));
    if (pos && neg) throw InternalError("extreme_rays: cone contains a line");
    if (pos) found.insert(v);
    if (neg) found.insert(negate(v));
  };
  if (need == 0) {
    try_kernel(eq_basis);
  } else {
    for_each_subset(inequalities.size(), need, [&](const std::vector<std::size_t>& s) {
      std::vector<IntVector> rows = eq_basis;
      for (auto i : s) rows.push_back(inequalities[i]);
      try_kernel(rows);
    });
  }
  return std::vector<IntVector>(found.begin(), found.end());
}

HRep h_representation(const Cone& c) {
  HRep h;
  const std::size_t n = c.rank;
  if (c.rays.empty()) {
    h.equalities = IntMatrix::identity(n).row_vectors();
    return h;
  }
  h.equalities = kernel_basis(IntMatrix::from_rows(c.rays, n)).row_vectors();
  h.inequalities = extreme_rays(c.rays, h.equalities, n);
  return h;
}

bool is_strongly_convex(const Cone& c) {
  const std::size_t k = c.rays.size();
  if (k == 0) return true;
  for (const auto& r : c.rays)
    if (is_zero(r)) return false;
  // A line exists iff some nonzero nonnegative combination of the rays vanishes.
  IntMatrix R = IntMatrix::from_columns(c.rays, c.rank);
  std::vector<IntVector> ineqs = IntMatrix::identity(k).row_vectors();
  return extreme_rays(ineqs, R.row_vectors(), k).empty();
}

bool contains(const HRep& h, const IntVector& p) {
  for (const auto& e : h.equalities)
    if (dot(e, p) != 0) return false;
  return satisfies(h.inequalities, p);
}

bool contains(const Cone& c, const IntVector& p) { return contains(h_representation(c), p); }

bool contains(const Cone& outer, const Cone& inner) {
  HRep h = h_representation(outer);
  for (const auto& r : inner.rays)
    if (!contains(h, r)) return false;
  return true;
}

bool in_relative_interior(const Cone& c, const IntVector& p) {
  HRep h = h_representation(c);
  for (const auto& e : h.equalities)
    if (dot(e, p) != 0) return false;
  for (const auto& a : h.inequalities)
    if (dot(a, p) <= 0) return false;
  return true;
}

Cone normalized(const Cone& c) {
  if (c.rays.empty()) return Cone(c.rank, {});
  HRep h = h_representation(c);
  if (h.inequalities.empty()) return Cone(c.rank, {});
  std::vector<IntVector> rays = extreme_rays(h.inequalities, h.equalities, c.rank);
  return Cone(c.rank, rays);
}

Cone intersect(const Cone& a, const Cone& b) {
  HRep ha = h_representation(a), hb = h_representation(b);
  std::vector<IntVector> ineq = ha.inequalities, eq = ha.equalities;
  ineq.insert(ineq.end(), hb.inequalities.begin(), hb.inequalities.end());
  eq.insert(eq.end(), hb.equalities.begin(), hb.equalities.end());
  return Cone(a.rank, extreme_rays(ineq, eq, a.rank));
}

std::vector<int> minimal_face(const Cone& c, const IntVector& p) {
  HRep h = h_representation(c);
  std::vector<IntVector> tight;
  for (const auto& a : h.inequalities)
    if (dot(a, p) == 0) tight.push_back(a);
  std::vector<int> face;
  for (std::size_t i = 0; i < c.rays.size(); ++i) {
    bool on = true;
    for (const auto& a : tight)
      if (dot(a, c.rays[i]) != 0) {
        on = false;
        break;
      }
    if (on) face.push_back(static_cast<int>(i));
  }
  return face;
}

bool is_face(const Cone& sigma, const Cone& tau) {
  IntVector p(sigma.rank, Integer(0));
  for (const auto& r : tau.rays) p = add(p, r);
  HRep ht = h_representation(tau);
  for (int i : minimal_face(sigma, p))
    if (!contains(ht, sigma.rays[i])) return false;
  return true;
}

std::vector<std::vector<int>> face_index_sets(const Cone& c) {
  std::vector<int> all(c.rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (c.is_simplicial()) {
    std::vector<std::vector<int>> out;
    const std::size_t k = all.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t(1) << i)) s.push_back(static_cast<int>(i));
      out.push_back(s);
    }
    return out;
  }
  HRep h = h_representation(c);
  std::vector<std::vector<int>> facets;
  for (const auto& a : h.inequalities) {
    std::vector<int> f;
    for (std::size_t i = 0; i < c.rays.size(); ++i)
      if (dot(a, c.rays[i]) == 0) f.push_back(static_cast<int>(i));
    facets.push_back(f);
  }
  std::set<std::vector<int>> seen{all};
  std::vector<std::vector<int>> queue{all};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& f : facets) {
      std::vector<int> meet;
      std::set_intersection(queue[q].begin(), queue[q].end(), f.begin(), f.end(), std::back_inserter(meet));
      if (seen.insert(meet).second) queue.push_back(meet);
    }
  }
  return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

std::vector<ParallelepipedPoint> parallelepiped_points(const std::vector<IntVector>& rays, std::size_t n) {
  const std::size_t k = rays.size();
  IntMatrix A = IntMatrix::from_columns(rays, n);
  SmithResult s = smith_normal_form(A);
  std::vector<Integer> d = s.diagonal();
  std::vector<ParallelepipedPoint> out;
  std::vector<Integer> j(k, Integer(0));
  while (true) {
    std::vector<Rational> mu(k);
    for (std::size_t i = 0; i < k; ++i) mu[i] = Rational(j[i], d[i]);
    std::vector<Rational> lambda(k, Rational(0));
    for (std::size_t r = 0; r < k; ++r) {
      Rational acc = 0;
      for (std::size_t c = 0; c < k; ++c) acc += Rational(s.V(r, c)) * mu[c];
      // fractional part
      Integer fl = numerator(acc) / denominator(acc);
      if (acc < 0 && Rational(fl) != acc) fl -= 1;
      lambda[r] = acc - Rational(fl);
    }
    bool nonzero = std::any_of(lambda.begin(), lambda.end(), [](const Rational& x) { return x != 0; });
    if (nonzero) {
      ParallelepipedPoint p;
      p.coeffs = lambda;
      p.total = 0;
      std::vector<Rational> x(n, Rational(0));
      for (std::size_t i = 0; i < k; ++i) {
        p.total += lambda[i];
        for (std::size_t r = 0; r < n; ++r) x[r] += lambda[i] * Rational(rays[i][r]);
      }
      for (const auto& xr : x) {
        if (denominator(xr) != 1) throw InternalError("parallelepiped point is not integral");
        p.point.push_back(numerator(xr));
      }
      out.push_back(p);
    }
    std::size_t i = 0;
    while (i < k) {
      j[i] += 1;
      if (j[i] < d[i]) break;
      j[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return out;
}


bool same_cone(const Cone& a, const Cone& b) { return contains(a, b) && contains(b, a); }

}  // namespace logf1
