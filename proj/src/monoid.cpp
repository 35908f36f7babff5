#include "logf1/monoid.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace logf1 {

namespace {

IntMatrix rows_or_empty(const std::vector<IntVector>& rows, std::size_t cols) {
  return rows.empty() ? IntMatrix(0, cols) : IntMatrix::from_rows(rows, cols);
}

// Basis (Hermite form) of the saturated lattice spanned by `gens`.
IntMatrix saturated_span(const std::vector<IntVector>& gens, std::size_t n) {
  IntMatrix perp = kernel_basis(rows_or_empty(gens, n));
  if (perp.rows() == 0) return IntMatrix::identity(n);
  return kernel_basis(perp);
}

bool in_dual(const std::vector<IntVector>& rays, const IntVector& x) {
  for (const auto& r : rays)
    if (dot(r, x) < 0) return false;
  return true;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<IntVector> hilbert_basis_of_dual(const std::vector<IntVector>& rays, std::size_t d) {
  if (d == 0) return {};
  std::vector<IntVector> gens = extreme_rays(rays, {}, d);
  // Every irreducible element is an extreme generator or lies in the half-open
  // parallelepiped of some simplicial cone spanned by extreme generators.
  std::set<IntVector> candidates(gens.begin(), gens.end());
  for_each_subset(gens.size(), d, [&](const std::vector<std::size_t>& s) {
    std::vector<IntVector> sub;
    for (auto i : s) sub.push_back(gens[i]);
    if (rank(IntMatrix::from_rows(sub, d)) != d) return;
    for (const auto& p : parallelepiped_points(sub, d)) candidates.insert(p.point);
  });
  IntVector grading(d, Integer(0));
  for (const auto& r : rays) grading = add(grading, r);
  std::vector<std::pair<Integer, IntVector>> order;
  for (const auto& c : candidates) order.push_back({dot(grading, c), c});
  std::sort(order.begin(), order.end());
  std::vector<IntVector> basis;
  for (const auto& [deg, x] : order) {
    bool reducible = false;
    for (const auto& h : basis)
      if (in_dual(rays, sub(x, h))) {
        reducible = true;
        break;
      }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

ToricMonoid::ToricMonoid(const Cone& sigma) : ToricMonoid(sigma, IntMatrix::identity(sigma.rank)) {}

ToricMonoid::ToricMonoid(const Cone& sigma, IntMatrix embedding) : embedding_(std::move(embedding)) {
  const std::size_t r = sigma.rank;
  if (embedding_.rows() != r) throw InternalError("monoid embedding has the wrong number of rows");
  if (r > 0 && logf1::rank(embedding_) != r) throw InternalError("monoid embedding is not injective");
  if (!is_strongly_convex(sigma)) throw DomainError("monoid cone is not strongly convex");
  sigma_ = normalized(sigma);

  std::vector<IntVector> units;
  std::vector<IntVector> sharp;
  if (sigma_.rays.empty()) {
    units = IntMatrix::identity(r).row_vectors();
  } else {
    units = kernel_basis(IntMatrix::from_rows(sigma_.rays, r)).row_vectors();
    IntMatrix B = units.empty() ? IntMatrix::identity(r) : kernel_basis(IntMatrix::from_rows(units, r));
    const std::size_t d = B.rows();
    IntMatrix Bt = B.transpose();
    std::vector<IntVector> local;
    for (const auto& ray : sigma_.rays) {
      auto c = solve_integer(Bt, ray);
      if (!c) throw InternalError("cone ray outside its saturated span");
      local.push_back(*c);
    }
    for (const auto& h : hilbert_basis_of_dual(local, d)) {
      auto m = solve_integer(B, h);
      if (!m) throw InternalError("cannot lift a dual lattice point");
      sharp.push_back(*m);
    }
  }
  basis_ = sharp;
  for (const auto& u : units) {
    basis_.push_back(u);
    basis_.push_back(negate(u));
  }
  std::sort(basis_.begin(), basis_.end(),
            [&](const IntVector& a, const IntVector& b) { return to_ambient(a) < to_ambient(b); });
}

ToricMonoid ToricMonoid::free(std::size_t r) { return ToricMonoid(Cone(r, IntMatrix::identity(r).row_vectors())); }

ToricMonoid ToricMonoid::group(std::size_t r) { return ToricMonoid(Cone(r, {})); }

std::vector<IntVector> ToricMonoid::generators() const {
  std::vector<IntVector> out;
  for (const auto& b : basis_) out.push_back(to_ambient(b));
  return out;
}

IntVector ToricMonoid::to_ambient(const IntVector& p) const {
  IntVector out(ambient(), Integer(0));
  for (std::size_t i = 0; i < rank(); ++i)
    if (p[i] != 0)
      for (std::size_t j = 0; j < ambient(); ++j) out[j] += p[i] * embedding_(i, j);
  return out;
}

std::optional<IntVector> ToricMonoid::lattice_coordinates(const IntVector& x) const {
  if (x.size() != ambient()) throw InputError("element has wrong length");
  if (rank() == 0) {
    if (is_zero(x)) return IntVector{};
    return std::nullopt;
  }
  return solve_integer(embedding_.transpose(), x);
}

bool ToricMonoid::contains(const IntVector& x) const {
  auto c = lattice_coordinates(x);
  return c && in_dual(sigma_.rays, *c);
}

bool same_monoid(const ToricMonoid& a, const ToricMonoid& b) {
  if (a.ambient() != b.ambient()) return false;
  if (!(Lattice(a.ambient(), a.embedding().row_vectors()) == Lattice(b.ambient(), b.embedding().row_vectors())))
    return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

std::string PointedMonoid::str() const {
  std::ostringstream out;
  out << "F1[";
  auto gens = monoid.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) out << (i ? "," : "") << to_string(gens[i]);
  out << "]";
  return out.str();
}

std::vector<PrimeFace> primes(const PointedMonoid& a) {
  auto faces = face_index_sets(a.monoid.cone());
  std::stable_sort(faces.begin(), faces.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::vector<PrimeFace> out;
  for (auto& f : faces) out.push_back({f});
  return out;
}

namespace {

void check_prime(const PointedMonoid& a, const PrimeFace& p) {
  const Cone& s = a.monoid.cone();
  std::vector<IntVector> rays;
  for (int i : p.tau) {
    if (i < 0 || static_cast<std::size_t>(i) >= s.rays.size()) throw DomainError("not a prime of the monoid");
    rays.push_back(s.rays[i]);
  }
  Cone tau(s.rank, rays);
  if (!is_face(s, tau) || normalized(tau).rays.size() != rays.size()) throw DomainError("not a prime of the monoid");
  // The face must be listed by all the rays it contains.
  for (std::size_t i = 0; i < s.rays.size(); ++i)
    if (std::find(p.tau.begin(), p.tau.end(), static_cast<int>(i)) == p.tau.end() && contains(tau, s.rays[i]))
      throw DomainError("not a prime of the monoid");
}

bool on_face(const PointedMonoid& a, const PrimeFace& p, const IntVector& lattice_point) {
  for (int i : p.tau)
    if (dot(a.monoid.cone().rays[i], lattice_point) != 0) return false;
  return true;
}

}  // namespace

std::vector<IntVector> face_generators(const PointedMonoid& a, const PrimeFace& p) {
  check_prime(a, p);
  std::vector<IntVector> out;
  for (const auto& b : a.monoid.hilbert_basis())
    if (on_face(a, p, b)) out.push_back(a.monoid.to_ambient(b));
  return out;
}

bool prime_contains(const PointedMonoid& a, const PrimeFace& p, const IntVector& x) {
  check_prime(a, p);
  auto c = a.monoid.lattice_coordinates(x);
  if (!c || !a.monoid.contains(x)) return false;
  return !on_face(a, p, *c);
}

PointedMonoid localize(const PointedMonoid& a, const PrimeFace& p) {
  check_prime(a, p);
  std::vector<IntVector> rays;
  for (int i : p.tau) rays.push_back(a.monoid.cone().rays[i]);
  return {ToricMonoid(Cone(a.monoid.rank(), rays), a.monoid.embedding())};
}

PointedMonoid smash(const PointedMonoid& a, const PointedMonoid& b) {
  const ToricMonoid& m = a.monoid;
  const ToricMonoid& n = b.monoid;
  const std::size_t r = m.rank() + n.rank();
  std::vector<IntVector> rays;
  for (const auto& x : m.cone().rays) {
    IntVector v(x);
    v.resize(r, Integer(0));
    rays.push_back(v);
  }
  for (const auto& y : n.cone().rays) {
    IntVector v(m.rank(), Integer(0));
    v.insert(v.end(), y.begin(), y.end());
    rays.push_back(v);
  }
  IntMatrix e(r, m.ambient() + n.ambient());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.ambient(); ++j) e(i, j) = m.embedding()(i, j);
  for (std::size_t i = 0; i < n.rank(); ++i)
    for (std::size_t j = 0; j < n.ambient(); ++j) e(m.rank() + i, m.ambient() + j) = n.embedding()(i, j);
  return {ToricMonoid(Cone(r, rays), e)};
}

bool MonoidIdeal::contains(const IntVector& x) const {
  if (!host.monoid.contains(x)) return false;
  for (const auto& g : generators)
    if (host.monoid.contains(sub(x, g))) return true;
  return false;
}

namespace {

PointedMonoid saturate_in(const std::vector<IntVector>& gens, std::size_t n, const IntMatrix& lattice) {
  const std::size_t r = lattice.rows();
  if (r == 0) return {ToricMonoid(Cone(0, {}), IntMatrix(0, n))};
  IntMatrix lt = lattice.transpose();
  std::vector<IntVector> coords;
  for (const auto& g : gens) {
    auto c = solve_integer(lt, g);
    if (!c) throw InternalError("generator outside its lattice");
    if (!is_zero(*c)) coords.push_back(*c);
  }
  // sigma is the dual of the cone generated, which is full-dimensional in L.
  std::vector<IntVector> rays = extreme_rays(coords, {}, r);
  return {ToricMonoid(Cone(r, rays), lattice)};
}

void check_generators(const std::vector<IntVector>& gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.size() != n) throw InputError("generator " + to_string(g) + " has wrong length");
}

}  // namespace

PointedMonoid normalize(const std::vector<IntVector>& gens, std::size_t n) {
  check_generators(gens, n);
  return saturate_in(gens, n, Lattice(n, gens).basis());
}

PointedMonoid saturate_in_ambient(const std::vector<IntVector>& gens, std::size_t n) {
  check_generators(gens, n);
  std::vector<IntVector> nonzero;
  for (const auto& g : gens)
    if (!is_zero(g)) nonzero.push_back(g);
  if (nonzero.empty()) return saturate_in(gens, n, IntMatrix(0, n));
  return saturate_in(gens, n, saturated_span(nonzero, n));
}

void check_base_ring(const std::string& base) {
  if (base == "Z" || base == "Q" || base == "k") return;
  if (base.size() > 2 && base.rfind("Z/", 0) == 0) {
    const std::string m = base.substr(2);
    if (std::all_of(m.begin(), m.end(), [](char c) { return c >= '0' && c <= '9'; }) && m.size() < 18 &&
        std::stoll(m) >= 2)
      return;
  }
  throw InputError("unsupported base ring '" + base + "' (expected Z, Z/m, Q or k)");
}

std::string monomial_name(const IntVector& e) {
  static const char* small[] = {"x", "y", "z"};
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += e.size() <= 3 ? std::string(small[i]) : "x" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + e[i].str();
  }
  return out.empty() ? "1" : out;
}

RingPresentation realize(const PointedMonoid& a, const std::string& base) {
  check_base_ring(base);
  RingPresentation p;
  p.base = base;
  p.exponents = a.monoid.generators();
  for (const auto& g : p.exponents) p.generators.push_back(monomial_name(g));
  if (!p.exponents.empty()) {
    IntMatrix k = kernel_basis(IntMatrix::from_columns(p.exponents, a.monoid.ambient()));
    for (std::size_t i = 0; i < k.rows(); ++i) {
      IntVector lhs(k.cols(), Integer(0)), rhs(k.cols(), Integer(0));
      for (std::size_t j = 0; j < k.cols(); ++j) {
        if (k(i, j) > 0) lhs[j] = k(i, j);
        if (k(i, j) < 0) rhs[j] = -k(i, j);
      }
      p.relations.push_back({lhs, rhs});
    }
  }
  return p;
}

std::string RingPresentation::str() const {
  if (generators.empty()) return base;
  auto mono = [&](const IntVector& e) {
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!out.empty()) out += "*";
      const std::string& g = generators[j];
      bool compound = g.find_first_of("*^") != std::string::npos;
      out += compound ? "(" + g + ")" : g;
      if (e[j] != 1) out += "^" + e[j].str();
    }
    return out.empty() ? std::string("1") : out;
  };
  std::string out = base + "[";
  for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? "," : "") + generators[i];
  out += "]";
  if (!relations.empty()) {
    out += "/(";
    for (std::size_t i = 0; i < relations.size(); ++i)
      out += (i ? ", " : "") + mono(relations[i].first) + " - " + mono(relations[i].second);
    out += ")";
  }
  return out;
}

}  // namespace logf1
