#include "logf1/fan.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace logf1 {

Fan::Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<ConeIndices> maximal_cones)
    : rank_(rank), rays_(std::move(rays)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (r.size() != rank_) throw InputError("ray " + std::to_string(i) + " has wrong length");
    if (!is_primitive(r)) throw InputError("ray " + std::to_string(i) + " " + to_string(r) + " is not primitive");
    if (!ray_lookup_.emplace(r, static_cast<int>(i)).second)
      throw InputError("ray " + std::to_string(i) + " " + to_string(r) + " is repeated");
  }
  std::set<ConeIndices> seen;
  for (auto c : maximal_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InputError("cone lists a ray twice");
    for (int i : c)
      if (i < 0 || static_cast<std::size_t>(i) >= rays_.size())
        throw InputError("cone refers to ray index " + std::to_string(i) + " out of range");
    if (seen.insert(c).second) maximal_.push_back(c);
  }
  std::set<ConeIndices> all;
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    const auto& m = maximal_[k];
    Cone c = cone(m);
    if (!c.is_simplicial() && !is_strongly_convex(c))
      throw DomainError("cone " + std::to_string(k) + " is not strongly convex");
    for (const auto& f : face_index_sets(c)) {
      ConeIndices g;
      for (int j : f) g.push_back(m[j]);
      if (all.insert(g).second) dims_[g] = g.empty() ? 0 : cone(g).dim();
    }
  }
  cones_.assign(all.begin(), all.end());
  std::stable_sort(cones_.begin(), cones_.end(),
                   [](const ConeIndices& a, const ConeIndices& b) { return a.size() < b.size(); });
}

Fan Fan::from_cones(std::size_t rank, std::vector<IntVector> rays, std::vector<ConeIndices> cones) {
  for (auto& c : cones) std::sort(c.begin(), c.end());
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::vector<ConeIndices> maximal;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cones.size() && !dominated; ++j)
      if (i != j && cones[j].size() > cones[i].size() &&
          std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end()))
        dominated = true;
    if (!dominated) maximal.push_back(cones[i]);
  }
  return Fan(rank, std::move(rays), std::move(maximal));
}

Fan Fan::point(std::size_t rank) { return Fan(rank, {}, {ConeIndices{}}); }

Cone Fan::cone(const ConeIndices& idx) const { return Cone(rank_, ray_vectors(idx)); }

std::vector<IntVector> Fan::ray_vectors(const ConeIndices& idx) const {
  std::vector<IntVector> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(rays_[i]);
  return out;
}

std::vector<ConeIndices> Fan::cones_of_dim(std::size_t d) const {
  std::vector<ConeIndices> out;
  for (const auto& c : cones_)
    if (dims_.at(c) == d) out.push_back(c);
  return out;
}

std::size_t Fan::cone_dim(const ConeIndices& idx) const {
  auto it = dims_.find(idx);
  if (it == dims_.end()) throw DomainError("not a cone of the fan");
  return it->second;
}

bool Fan::has_cone(const ConeIndices& idx) const {
  ConeIndices s(idx);
  std::sort(s.begin(), s.end());
  return dims_.count(s) > 0;
}

std::optional<int> Fan::ray_index(const IntVector& v) const {
  auto it = ray_lookup_.find(v);
  if (it == ray_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConeIndices> Fan::find_cone(const std::vector<IntVector>& rays) const {
  ConeIndices idx;
  for (const auto& r : rays) {
    auto i = ray_index(r);
    if (!i) return std::nullopt;
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  if (!has_cone(idx)) return std::nullopt;
  return idx;
}

bool Fan::is_simplicial() const {
  for (const auto& m : maximal_)
    if (dims_.at(m) != m.size()) return false;
  return true;
}

Fan Fan::canonical() const {
  std::vector<int> order(rays_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rays_[a] < rays_[b]; });
  std::vector<int> new_index(rays_.size());
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = static_cast<int>(k);
    rays.push_back(rays_[order[k]]);
  }
  std::vector<ConeIndices> cones;
  for (const auto& m : maximal_) {
    ConeIndices c;
    for (int i : m) c.push_back(new_index[i]);
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  std::sort(cones.begin(), cones.end());
  return Fan(rank_, std::move(rays), std::move(cones));
}

std::string Fan::key() const {
  std::vector<int> order(rays_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rays_[a] < rays_[b]; });
  std::vector<int> new_index(rays_.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_index[order[k]] = static_cast<int>(k);
  std::vector<ConeIndices> cones;
  for (const auto& m : maximal_) {
    ConeIndices c;
    for (int i : m) c.push_back(new_index[i]);
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  std::sort(cones.begin(), cones.end());
  std::ostringstream out;
  out << rank_ << "|";
  for (int i : order) out << to_string(rays_[i]);
  out << "|";
  for (const auto& m : cones) {
    out << "[";
    for (int i : m) out << i << ",";
    out << "]";
  }
  return out.str();
}

std::optional<std::string> Fan::validate() const {
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    Cone c = cone(maximal_[k]);
    if (!is_strongly_convex(c)) return "cone " + std::to_string(k) + " is not strongly convex";
    if (normalized(c).rays.size() != c.rays.size())
      return "cone " + std::to_string(k) + " lists a ray that is not extreme";
  }
  for (std::size_t a = 0; a < maximal_.size(); ++a)
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const auto& s = maximal_[a];
      const auto& t = maximal_[b];
      if (std::includes(t.begin(), t.end(), s.begin(), s.end()) ||
          std::includes(s.begin(), s.end(), t.begin(), t.end()))
        return "cone " + std::to_string(a) + " and cone " + std::to_string(b) + " are nested";
      ConeIndices shared;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(shared));
      Cone cs = cone(s), ct = cone(t), common = cone(shared);
      if (!is_face(cs, common) || !is_face(ct, common))
        return "shared rays of cones " + std::to_string(a) + " and " + std::to_string(b) + " do not span a common face";
      Cone meet = intersect(cs, ct);
      if (!contains(common, meet))
        return "cones " + std::to_string(a) + " and " + std::to_string(b) + " overlap beyond a common face";
    }
  return std::nullopt;
}

}  // namespace logf1
