#include "logf1/json_io.hpp"

#include "logf1/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace logf1 {

Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(x));
  return Json(x.str());
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long long>()) : Integer(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Integer(s);
  }
  throw InputError(where + ": expected an integer");
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  Integer x = integer_from_json(j, where);
  if (x < 0 || x > 1000000) throw InputError(where + ": expected a small nonnegative integer");
  return static_cast<std::size_t>(x);
}

std::vector<std::size_t> index_list(const Json& j, const std::string& where, std::size_t bound) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    std::size_t k = size_from_json(x, where);
    if (k >= bound) throw InputError(where + ": index " + std::to_string(k) + " out of range");
    out.push_back(k);
  }
  return out;
}

Json cone_to_json(const ConeIndices& c) {
  Json out = Json::array();
  for (int k : c) out.push_back(k);
  return out;
}

}  // namespace

Json fan_to_json(const Fan& f) {
  Json out;
  out["rank"] = f.rank();
  Json rays = Json::array();
  for (const auto& r : f.rays()) rays.push_back(vector_to_json(r));
  out["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(cone_to_json(c));
  out["maximal_cones"] = cones;
  return out;
}

Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("fan: expected an object");
  const std::size_t rank = size_from_json(field(j, "rank"), "rank");
  const Json& jr = field(j, "rays");
  if (!jr.is_array()) throw InputError("rays: expected an array");
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < jr.size(); ++k) {
    const std::string where = "rays[" + std::to_string(k) + "]";
    if (!jr[k].is_array() || jr[k].size() != rank) throw InputError(where + ": expected " + std::to_string(rank) + " entries");
    IntVector v;
    for (const auto& x : jr[k]) v.push_back(integer_from_json(x, where));
    if (!is_primitive(v)) throw InputError(where + ": ray " + to_string(v) + " is not primitive");
    rays.push_back(std::move(v));
  }
  const Json& jc = field(j, "maximal_cones");
  if (!jc.is_array()) throw InputError("maximal_cones: expected an array");
  std::vector<ConeIndices> cones;
  for (std::size_t k = 0; k < jc.size(); ++k) {
    ConeIndices c;
    for (std::size_t i : index_list(jc[k], "maximal_cones[" + std::to_string(k) + "]", rays.size()))
      c.push_back(static_cast<int>(i));
    cones.push_back(std::move(c));
  }
  return Fan(rank, std::move(rays), std::move(cones));
}

Json log_pair_to_json(const LogFanPair& p) {
  Json out = fan_to_json(p.fan());
  std::vector<int> boundary = p.boundary_rays();
  if (same_pair(LogFanPair::from_boundary_rays(p.fan(), boundary), p)) {
    Json b = Json::array();
    for (int r : boundary) b.push_back(r);
    out["boundary_rays"] = b;
    return out;
  }
  const auto& maximal = p.fan().maximal_cones();
  std::vector<std::size_t> open_max;
  for (std::size_t k = 0; k < maximal.size(); ++k)
    if (p.is_open(maximal[k])) open_max.push_back(k);
  if (same_pair(LogFanPair::from_open_maximal_cones(p.fan(), open_max), p)) {
    out["open_maximal_cones"] = open_max;
    return out;
  }
  Json cones = Json::array();
  for (const auto& c : p.open_maximal_cones()) cones.push_back(cone_to_json(c));
  out["open_cones"] = cones;
  return out;
}

LogFanPair log_pair_from_json(const Json& j) {
  Fan f = fan_from_json(j);
  const int present = (j.contains("boundary_rays") ? 1 : 0) + (j.contains("open_maximal_cones") ? 1 : 0) +
                      (j.contains("open_cones") ? 1 : 0);
  if (present != 1) throw InputError("log pair: exactly one of boundary_rays, open_maximal_cones, open_cones required");
  if (j.contains("boundary_rays")) {
    std::vector<int> b;
    for (std::size_t k : index_list(j.at("boundary_rays"), "boundary_rays", f.rays().size()))
      b.push_back(static_cast<int>(k));
    return LogFanPair::from_boundary_rays(f, b);
  }
  if (j.contains("open_maximal_cones"))
    return LogFanPair::from_open_maximal_cones(
        f, index_list(j.at("open_maximal_cones"), "open_maximal_cones", f.maximal_cones().size()));
  const Json& jc = j.at("open_cones");
  if (!jc.is_array()) throw InputError("open_cones: expected an array");
  std::vector<ConeIndices> cones;
  for (std::size_t k = 0; k < jc.size(); ++k) {
    ConeIndices c;
    for (std::size_t i : index_list(jc[k], "open_cones[" + std::to_string(k) + "]", f.rays().size()))
      c.push_back(static_cast<int>(i));
    std::sort(c.begin(), c.end());
    cones.push_back(std::move(c));
  }
  return LogFanPair::from_open_cones(f, cones);
}

Json steps_to_json(const std::vector<StarSubdivisionStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) {
    Json center = Json::array();
    for (const auto& v : s.center) center.push_back(vector_to_json(v));
    out.push_back(Json{{"center", center}, {"new_ray", vector_to_json(s.new_ray)}});
  }
  return out;
}

Json diagram_to_json(const CnrDiagram& d) {
  Json out;
  out["n"] = d.n;
  out["r"] = d.r;
  out["depth"] = d.depth;
  out["truncated"] = d.truncated;
  Json nodes = Json::array();
  for (const auto& node : d.nodes) {
    Json jn = fan_to_json(node.fan);
    jn["depth"] = node.depth;
    jn["from_face"] = node.from_face;
    nodes.push_back(jn);
  }
  out["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& [fine, coarse] : d.edges) {
    // Witness: for each maximal cone of the fine fan, the coarse maximal cone containing it.
    auto w = subdivision_witness(d.nodes[fine].fan, d.nodes[coarse].fan);
    edges.push_back(Json{{"fine", fine}, {"coarse", coarse}, {"witness", w ? Json(*w) : Json()}});
  }
  out["edges"] = edges;
  if (d.n > 0) {
    Json faces = Json::array();
    for (std::size_t k = 0; k < d.nodes.size(); ++k)
      for (std::size_t i = 1; i <= d.n; ++i)
        for (int e = 0; e < 2; ++e) {
          Fan f = e == 0 ? face_zero(d.nodes[k].fan, d.n, d.r, i) : face_one(d.nodes[k].fan, d.n, d.r, i);
          faces.push_back(Json{{"node", k}, {"i", i}, {"epsilon", e}, {"face", fan_to_json(f)}});
        }
    out["faces"] = faces;
  }
  return out;
}

Json atlas_to_json(const Atlas& a) {
  Json out;
  Json charts = Json::array();
  for (const auto& c : a.charts) {
    Json rels = Json::array();
    for (const auto& [lhs, rhs] : c.ring.relations) rels.push_back(Json{vector_to_json(lhs), vector_to_json(rhs)});
    charts.push_back(Json{{"cone", cone_to_json(c.cone)},
                          {"ring", c.ring.str()},
                          {"generators", c.ring.generators},
                          {"relations", rels}});
  }
  out["charts"] = charts;
  Json gluings = Json::array();
  for (const auto& g : a.gluings)
    gluings.push_back(Json{{"first", g.first},
                           {"second", g.second},
                           {"shared", cone_to_json(g.shared)},
                           {"invert_in_first", g.invert_in_first},
                           {"invert_in_second", g.invert_in_second}});
  out["gluings"] = gluings;
  return out;
}

Json group_to_json(const FPAbelianGroup& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion()) torsion.push_back(integer_to_json(t));
  return Json{{"rank", g.rank()}, {"torsion", torsion}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace logf1
