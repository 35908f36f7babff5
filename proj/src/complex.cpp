#include "logf1/complex.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace logf1 {

namespace {

void axpy(SparseVector& target, const Integer& a, const SparseVector& x) {
  for (const auto& [k, v] : x) {
    Integer& slot = target[k];
    slot += a * v;
    if (slot == 0) target.erase(k);
  }
}

}  // namespace

ReducedPresentation::ReducedPresentation(std::size_t raw, std::vector<SparseVector> rels) : raw_(raw) {
  std::vector<std::set<std::size_t>> occurs(raw);
  for (std::size_t j = 0; j < rels.size(); ++j)
    for (const auto& [k, v] : rels[j]) occurs[k].insert(j);
  std::vector<bool> alive(rels.size(), true);
  std::vector<bool> eliminated(raw, false);
  std::vector<std::size_t> order;
  std::map<std::size_t, SparseVector> expr;

  // Shortest relations first keeps fill-in low.
  std::set<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t j = 0; j < rels.size(); ++j) queue.insert({rels[j].size(), j});
  while (!queue.empty()) {
    auto [len, j] = *queue.begin();
    queue.erase(queue.begin());
    if (!alive[j] || len != rels[j].size()) continue;
    if (rels[j].empty()) {
      alive[j] = false;
      continue;
    }
    std::optional<std::size_t> pivot;
    for (const auto& [k, v] : rels[j])
      if ((v == 1 || v == -1) && (!pivot || occurs[k].size() < occurs[*pivot].size())) pivot = k;
    if (!pivot) continue;
    const std::size_t g = *pivot;
    const Integer c = rels[j].at(g);
    SparseVector rest = rels[j];
    rest.erase(g);
    // g = -c * rest
    SparseVector e;
    axpy(e, -c, rest);
    expr[g] = e;
    order.push_back(g);
    eliminated[g] = true;
    alive[j] = false;
    for (const auto& [k, v] : rels[j]) occurs[k].erase(j);
    std::vector<std::size_t> touched(occurs[g].begin(), occurs[g].end());
    for (std::size_t t : touched) {
      const Integer a = rels[t].at(g);
      for (const auto& [k, v] : rels[t]) occurs[k].erase(t);
      axpy(rels[t], -a * c, rels[j]);
      for (const auto& [k, v] : rels[t]) occurs[k].insert(t);
      queue.insert({rels[t].size(), t});
    }
  }

  position_.assign(raw, -1);
  for (std::size_t k = 0; k < raw; ++k)
    if (!eliminated[k]) {
      position_[k] = static_cast<long>(survivors_.size());
      survivors_.push_back(k);
    }
  // Resolve expressions against later eliminations, last eliminated first.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    SparseVector out;
    for (const auto& [k, v] : expr[*it]) {
      if (position_[k] >= 0) axpy(out, v, SparseVector{{static_cast<std::size_t>(position_[k]), Integer(1)}});
      else axpy(out, v, expression_.at(k));
    }
    expression_[*it] = std::move(out);
  }
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < rels.size(); ++j) {
    if (!alive[j] || rels[j].empty()) continue;
    IntVector col(survivors_.size(), Integer(0));
    for (const auto& [k, v] : rels[j]) {
      if (position_[k] < 0) throw InternalError("reduced relation still mentions an eliminated generator");
      col[position_[k]] = v;
    }
    gens.push_back(std::move(col));
  }
  relations_ = Lattice(survivors_.size(), gens);
}

IntVector ReducedPresentation::reduce(const SparseVector& v) const {
  IntVector out(survivors_.size(), Integer(0));
  for (const auto& [k, a] : v) {
    if (k >= raw_) throw InternalError("reduce: raw index out of range");
    if (position_[k] >= 0) {
      out[position_[k]] += a;
      continue;
    }
    for (const auto& [s, b] : expression_.at(k)) out[s] += a * b;
  }
  return out;
}

IntVector ReducedPresentation::reduce_generator(std::size_t raw_index) const {
  return reduce(SparseVector{{raw_index, Integer(1)}});
}

FPAbelianGroup ReducedPresentation::group() const { return FPAbelianGroup(relations_.basis().transpose()); }

std::pair<std::size_t, std::size_t> ColimitLevel::locate(std::size_t raw) const {
  auto it = std::upper_bound(offset.begin(), offset.end(), raw);
  std::size_t node = static_cast<std::size_t>(it - offset.begin()) - 1;
  return {node, raw - offset[node]};
}

SparseVector ColimitLevel::raw_vector(std::size_t node, const ChowClass& c) const {
  SparseVector v;
  for (std::size_t k = 0; k < c.coords.size(); ++k)
    if (c.coords[k] != 0) v[offset[node] + k] = c.coords[k];
  return v;
}

std::size_t NormalizedComplex::node_count() const {
  std::size_t total = 0;
  for (const auto& l : levels) total += l.diagram.nodes.size();
  return total;
}

namespace {

std::size_t ray_of_unit(const Fan& f, std::size_t i) {
  IntVector e(f.rank(), Integer(0));
  e[i] = 1;
  auto k = f.ray_index(e);
  if (!k) throw InternalError("e_i is not a ray of a diagram member");
  return static_cast<std::size_t>(*k);
}

void build_level(ColimitLevel& L, std::size_t q) {
  const auto& nodes = L.diagram.nodes;
  L.rings.clear();
  L.rings.reserve(nodes.size());
  L.offset.clear();
  std::size_t raw = 0;
  for (const auto& node : nodes) {
    L.rings.emplace_back(node.fan);
    L.offset.push_back(raw);
    raw += L.rings.back().generators(q).size();
  }
  std::vector<SparseVector> rels;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (const auto& col : L.rings[a].relations(q).column_vectors())
      rels.push_back(L.raw_vector(a, ChowClass{q, col}));
  for (const auto& [fine, coarse] : L.diagram.edges) {
    ChowMap pb = pullback_map(L.rings[coarse], L.rings[fine]);
    const auto& gens = L.rings[coarse].generators(q);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      SparseVector rel = L.raw_vector(fine, pb.apply(L.rings[coarse].cone_class(gens[k])));
      for (auto& [idx, v] : rel) v = -v;
      axpy(rel, Integer(1), SparseVector{{L.raw_index(coarse, k), Integer(1)}});
      rels.push_back(std::move(rel));
    }
  }
  L.presentation = ReducedPresentation(raw, std::move(rels));
}

// Survivor-coordinate matrix of a face map from level m to level m-1.
IntMatrix face_matrix(const ColimitLevel& hi, const ColimitLevel& lo, std::size_t q, std::size_t r, std::size_t i,
                      int eps) {
  const std::size_t m = hi.level;
  const auto& surv = hi.presentation.survivors();
  std::vector<IntVector> cols;
  for (std::size_t raw : surv) {
    auto [node, k] = hi.locate(raw);
    const Fan& f = hi.diagram.nodes[node].fan;
    Fan face = eps == 0 ? face_zero(f, m, r, i) : face_one(f, m, r, i);
    auto target = lo.diagram.find(face);
    if (!target) throw InternalError("face of a node is missing from the lower level");
    const ChowRing& from = hi.rings[node];
    const ChowRing& to = lo.rings[*target];
    ChowClass gen = from.cone_class(from.generators(q)[k]);
    ChowClass img = eps == 0 ? restrict_star_map(from, {static_cast<int>(ray_of_unit(f, i - 1))}, to).apply(gen)
                             : restrict_slice_map(from, i - 1, to).apply(gen);
    cols.push_back(lo.presentation.reduce(lo.raw_vector(*target, img)));
  }
  return IntMatrix::from_columns(cols, lo.presentation.size());
}

bool columns_in(const IntMatrix& m, const Lattice& l) {
  for (const auto& col : m.column_vectors())
    if (!l.contains(col)) return false;
  return true;
}

}  // namespace

NormalizedComplex build_complex(std::size_t q, std::size_t r, std::size_t n_max, std::size_t depth,
                                std::size_t budget, bool reverse) {
  NormalizedComplex c;
  c.budget = budget;
  c.reverse = reverse;
  c.q = q;
  c.r = r;
  c.n_max = n_max;
  c.depth = depth;
  c.levels.resize(n_max + 1);
  for (std::size_t mm = n_max + 1; mm-- > 0;) {
    ColimitLevel& L = c.levels[mm];
    L.level = mm;
    L.diagram = enumerate_cnr(mm, r, depth, budget, reverse);
    c.truncated = c.truncated || L.diagram.truncated;
    if (mm < n_max) {
      for (const auto& node : c.levels[mm + 1].diagram.nodes)
        for (std::size_t i = 1; i <= mm + 1; ++i) {
          L.diagram.add(face_zero(node.fan, mm + 1, r, i), node.depth);
          L.diagram.add(face_one(node.fan, mm + 1, r, i), node.depth);
        }
      L.diagram.compute_edges();
    }
  }
  for (auto& L : c.levels) build_level(L, q);

  c.face0.resize(n_max + 1);
  c.face1.resize(n_max + 1);
  c.differential.resize(n_max + 1);
  for (std::size_t m = 1; m <= n_max; ++m) {
    IntMatrix d(c.levels[m - 1].presentation.size(), c.levels[m].presentation.size());
    for (std::size_t i = 1; i <= m; ++i) {
      c.face0[m].push_back(face_matrix(c.levels[m], c.levels[m - 1], q, r, i, 0));
      c.face1[m].push_back(face_matrix(c.levels[m], c.levels[m - 1], q, r, i, 1));
      d = i % 2 == 1 ? d - c.face1[m].back() : d + c.face1[m].back();
    }
    c.differential[m] = d;
  }
  for (std::size_t m = 0; m <= n_max; ++m) {
    const auto& P = c.levels[m].presentation;
    c.relations.push_back(P.relation_lattice());
    Lattice k = Lattice::full(P.size());
    for (const auto& f0 : c.face0[m]) k = preimage(k, f0, c.levels[m - 1].presentation.relation_lattice());
    if (!k.contains(c.relations.back())) throw InternalError("normalized chains miss the relations");
    c.chains.push_back(k);
    c.chain_groups.push_back(quotient(k, c.relations.back()));
  }
  for (std::size_t m = 1; m <= n_max; ++m) {
    // Face maps respect relations.
    for (const auto& f : c.face1[m])
      if (!columns_in(f * c.relations[m].basis().transpose(), c.relations[m - 1]))
        throw InternalError("a face map does not respect the colimit relations");
    if (!columns_in(c.differential[m] * c.chains[m].basis().transpose(), c.chains[m - 1] + c.relations[m - 1]))
      throw InternalError("the differential leaves the normalized chains");
  }
  for (std::size_t m = 2; m <= n_max; ++m) {
    IntMatrix dd = c.differential[m - 1] * c.differential[m] * c.chains[m].basis().transpose();
    if (!columns_in(dd, c.relations[m - 2])) throw InternalError("delta o delta is not zero");
  }
  return c;
}

std::vector<HomologyGroup> homology(const NormalizedComplex& c) {
  std::vector<HomologyGroup> out;
  for (std::size_t m = 0; m <= c.n_max; ++m) {
    HomologyGroup h;
    h.cycles = m == 0 ? c.chains[0] : preimage(c.chains[m], c.differential[m], c.relations[m - 1]);
    h.boundaries = c.relations[m];
    if (m < c.n_max) h.boundaries = h.boundaries + image(c.differential[m + 1], c.chains[m + 1]);
    if (!h.cycles.contains(h.boundaries)) throw InternalError("boundaries are not cycles");
    h.group = quotient(h.cycles, h.boundaries);
    // Generators: columns of U^{-1} for the Smith form of the boundary coordinates.
    const std::size_t z = h.cycles.rank();
    IntMatrix rel(z, h.boundaries.rank());
    for (std::size_t k = 0; k < h.boundaries.rank(); ++k) {
      auto co = h.cycles.coordinates(h.boundaries.basis().row(k));
      for (std::size_t i = 0; i < z; ++i) rel(i, k) = (*co)[i];
    }
    SmithResult s = smith_normal_form(rel);
    IntMatrix uinv = inverse_unimodular(s.U);
    for (std::size_t i = 0; i < z; ++i) {
      Integer order = i < s.rank ? Integer(s.D(i, i)) : Integer(0);
      if (order == 1) continue;
      IntVector coords = uinv.column(i);
      IntVector rep(c.levels[m].presentation.size(), Integer(0));
      for (std::size_t a = 0; a < z; ++a)
        if (coords[a] != 0)
          for (std::size_t b = 0; b < rep.size(); ++b) rep[b] += coords[a] * h.cycles.basis()(a, b);
      h.generators.push_back(rep);
      h.orders.push_back(order < 0 ? Integer(-order) : order);
    }
    out.push_back(std::move(h));
  }
  return out;
}

IntMatrix comparison_map(const NormalizedComplex& shallow, const NormalizedComplex& deep, std::size_t m) {
  const ColimitLevel& a = shallow.levels.at(m);
  const ColimitLevel& b = deep.levels.at(m);
  std::vector<IntVector> cols;
  for (std::size_t raw : a.presentation.survivors()) {
    auto [node, k] = a.locate(raw);
    auto target = b.diagram.find(a.diagram.nodes[node].fan);
    if (!target) throw DomainError("comparison_map: node missing from the deeper diagram");
    cols.push_back(b.presentation.reduce_generator(b.raw_index(*target, k)));
  }
  return IntMatrix::from_columns(cols, b.presentation.size());
}

std::vector<std::string> fan_identity_failures(const NormalizedComplex& c) {
  std::vector<std::string> out;
  const std::size_t r = c.r;
  // Nodes are already members; iterated faces are compared as canonical fans.
  std::map<std::tuple<std::string, std::size_t, std::size_t, int>, Fan> cache;
  auto face = [&](const Fan& f, std::size_t n, std::size_t i, int e) -> const Fan& {
    auto key = std::make_tuple(f.key(), n, i, e);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, e == 0 ? face_zero(f, n, r, i, false) : face_one(f, n, r, i, false)).first;
    return it->second;
  };
  auto same = [](const Fan& a, const Fan& b) { return a.key() == b.key(); };
  for (std::size_t n = 1; n <= c.n_max; ++n)
    for (const auto& node : c.levels[n].diagram.nodes) {
      const Fan& f = node.fan;
      const std::string where = "level " + std::to_string(n) + " node " + f.key();
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              if (!same(face(face(f, n, j, b), n - 1, i, a), face(face(f, n, i, a), n - 1, j - 1, b)))
                out.push_back("face identity (" + std::to_string(i) + "," + std::to_string(j) + ") at " + where);
      // p_i then faces.
      for (std::size_t i = 1; i <= n + 1; ++i) {
        Fan g = degeneracy(f, n, r, i, false);
        for (int e = 0; e < 2; ++e) {
          if (!same(face(g, n + 1, i, e), f)) out.push_back("delta p = id at index " + std::to_string(i) + " at " + where);
          for (std::size_t j = 1; j <= n + 1; ++j) {
            if (j == i) continue;
            std::size_t jj = j < i ? j : j - 1;
            std::size_t ii = j < i ? i - 1 : i;
            if (!same(face(g, n + 1, j, e), degeneracy(face(f, n, jj, e), n - 1, r, ii, false)))
              out.push_back("delta p = p delta (" + std::to_string(i) + "," + std::to_string(j) + ") at " + where);
          }
        }
      }
    }
  return out;
}

std::vector<std::string> face_identity_failures(const NormalizedComplex& c) {
  std::vector<std::string> out;
  for (std::size_t n = 2; n <= c.n_max; ++n) {
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const auto& hi_j = b == 0 ? c.face0[n][j - 1] : c.face1[n][j - 1];
            const auto& lo_i = a == 0 ? c.face0[n - 1][i - 1] : c.face1[n - 1][i - 1];
            const auto& hi_i = a == 0 ? c.face0[n][i - 1] : c.face1[n][i - 1];
            const auto& lo_j = b == 0 ? c.face0[n - 1][j - 2] : c.face1[n - 1][j - 2];
            IntMatrix diff = lo_i * hi_j - lo_j * hi_i;
            if (!columns_in(diff, c.relations[n - 2]))
              out.push_back("level " + std::to_string(n) + " faces (" + std::to_string(i) + "," + std::to_string(a) +
                            ") and (" + std::to_string(j) + "," + std::to_string(b) + ")");
          }
  }
  return out;
}

SearchResult eventual_boundary_search(const NormalizedComplex& c, std::size_t n, const IntVector& cycle,
                                      std::size_t max_depth) {
  SearchResult res;
  if (n > c.n_max) throw DomainError("search: level out of range");
  if (n > 0 && !c.relations[n - 1].contains(c.differential[n] * cycle))
    throw DomainError("search: input is not a cycle");
  if (is_zero(cycle)) {
    res.found = true;
    res.depth = c.depth;
    res.report = "zero cycle";
    return res;
  }
  for (std::size_t d = c.depth; d <= max_depth; ++d) {
    NormalizedComplex deep = build_complex(c.q, c.r, n + 1, d, c.budget, c.reverse);
    res.explored_nodes.push_back(deep.node_count());
    res.depth = d;
    IntVector target = comparison_map(c, deep, n) * cycle;
    // target = delta(w) + relation, w in the normalized chains.
    const Lattice& k = deep.chains[n + 1];
    const Lattice& rel = deep.relations[n];
    std::vector<IntVector> cols;
    for (const auto& b : k.basis_vectors()) cols.push_back(deep.differential[n + 1] * b);
    for (const auto& b : rel.basis_vectors()) cols.push_back(b);
    if (cols.empty()) {
      if (!is_zero(target)) continue;
    }
    auto sol = cols.empty() ? std::optional<IntVector>(IntVector{})
                            : solve_integer(IntMatrix::from_columns(cols, target.size()), target);
    if (!sol) continue;
    IntVector w(deep.levels[n + 1].presentation.size(), Integer(0));
    for (std::size_t a = 0; a < k.rank(); ++a)
      if ((*sol)[a] != 0)
        for (std::size_t b = 0; b < w.size(); ++b) w[b] += (*sol)[a] * k.basis()(a, b);
    if (!k.contains(w) || !rel.contains(sub(deep.differential[n + 1] * w, target)))
      throw InternalError("search: witness does not verify");
    res.found = true;
    res.witness = w;
    res.report = "witness at depth " + std::to_string(d);
    return res;
  }
  res.report = "exhausted at depth " + std::to_string(max_depth);
  return res;
}

}  // namespace logf1
