#include "logf1/errors.hpp"
#include "logf1/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace logf1;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Run {
  std::string command;
  std::string output;
  unsigned long long seed = 0;
  Json parameters = Json::object();
};

void emit(const Run& run, Json body) {
  Json out;
  out["provenance"] = Json{{"tool", "logf1"}, {"version", kVersion}, {"command", run.command}, {"seed", run.seed},
                           {"parameters", run.parameters}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  const std::string text = out.dump(2) + "\n";
  if (run.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(run.output);
  if (!f) throw InputError("cannot write " + run.output);
  f << text;
}

int fan_check(const std::string& path) {
  Fan f = fan_from_json(read_json_file(path));
  const bool smooth = is_smooth(f);
  const bool complete = is_complete(f);
  std::cout << "smooth: " << (smooth ? "true" : "false") << ", complete: " << (complete ? "true" : "false") << "\n";
  if (auto bad = f.validate()) {
    std::cout << "invariant violated: " << *bad << "\n";
    return 1;
  }
  std::cout << "invariants: ok\n";
  return 0;
}

Cone eta_from_text(const std::string& text, std::size_t rank) {
  if (text.empty()) return Cone(rank, {});
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("--eta: parse error at byte " + std::to_string(e.byte));
  }
  if (!j.is_array()) throw InputError("--eta: expected a list of rays");
  std::vector<IntVector> rays;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != rank) throw InputError("--eta: ray of the wrong length");
    IntVector v;
    for (const auto& x : r) v.push_back(integer_from_json(x, "--eta"));
    rays.push_back(v);
  }
  return Cone(rank, rays);
}

Json logchow(std::size_t q, std::size_t r, std::size_t n_max, std::size_t depth, std::optional<std::size_t> search_depth,
             bool reverse) {
  NormalizedComplex c = build_complex(q, r, n_max, depth, node_budget(), reverse);
  auto h = homology(c);
  Json out;
  out["truncated"] = c.truncated;
  out["budget"] = c.budget;
  Json levels = Json::array();
  for (std::size_t m = 0; m <= n_max; ++m) {
    Json l = group_to_json(c.chain_groups[m]);
    l["n"] = m;
    l["nodes"] = c.levels[m].diagram.nodes.size();
    l["colimit"] = group_to_json(c.levels[m].group());
    levels.push_back(l);
  }
  out["chain_groups"] = levels;
  Json hom = Json::array();
  for (std::size_t m = 0; m <= n_max; ++m) {
    Json g = group_to_json(h[m].group);
    g["n"] = m;
    g["top_level"] = m == n_max;
    hom.push_back(g);
  }
  out["homology"] = hom;
  if (search_depth) {
    Json searches = Json::array();
    for (std::size_t m = 0; m < n_max; ++m)
      for (std::size_t k = 0; k < h[m].generators.size(); ++k) {
        SearchResult s = eventual_boundary_search(c, m, h[m].generators[k], *search_depth);
        Json js{{"n", m},
                {"generator", k},
                {"order", integer_to_json(h[m].orders[k])},
                {"found", s.found},
                {"depth", s.depth},
                {"explored_nodes", s.explored_nodes},
                {"report", s.report}};
        if (s.found && !s.witness.empty()) {
          NormalizedComplex deep = build_complex(q, r, m + 1, s.depth, c.budget, reverse);
          const ColimitLevel& top = deep.levels[m + 1];
          Json trace = Json::array();
          for (std::size_t i = 0; i < s.witness.size(); ++i) {
            if (s.witness[i] == 0) continue;
            auto [node, g] = top.locate(top.presentation.survivors()[i]);
            const Fan& f = top.diagram.nodes[node].fan;
            Json cone = Json::array();
            for (const auto& v : f.ray_vectors(top.rings[node].generators(q)[g])) cone.push_back(vector_to_json(v));
            trace.push_back(Json{{"coefficient", integer_to_json(s.witness[i])}, {"fan", fan_to_json(f)}, {"cone", cone}});
          }
          js["witness"] = trace;
        }
        searches.push_back(js);
      }
    out["searches"] = searches;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fans, log pairs, Chow groups and the cubical log Chow complex"};
  app.require_subcommand(1);
  Run run;
  app.add_option("--seed", run.seed, "Seed recorded in the provenance header");

  std::string path, path2, eta, base = "Z";
  std::optional<std::size_t> q_opt;
  std::size_t q = 0, r = 0, n_max = 1, depth = 0;
  std::optional<std::size_t> search_depth;
  bool reverse = false;

  auto* check = app.add_subcommand("fan-check", "Report smoothness, completeness and fan axioms");
  check->add_option("fan", path, "Fan JSON")->required();

  auto* res = app.add_subcommand("resolve", "Smooth subdivision by star subdivisions");
  res->add_option("fan", path, "Fan JSON")->required();
  res->add_option("-o,--output", run.output);

  auto* ref = app.add_subcommand("refine", "Common smooth refinement by 2-dimensional star subdivisions");
  ref->add_option("sigma", path, "Smooth fan JSON")->required();
  ref->add_option("delta", path2, "Fan JSON with the same support")->required();
  ref->add_option("--eta", eta, "Shared cone to keep, as a JSON ray list");
  ref->add_option("-o,--output", run.output);

  auto* sml = app.add_subcommand("smlsmify", "Star subdivisions until the pair is SmlSm");
  sml->add_option("pair", path, "Log pair JSON")->required();
  sml->add_option("-o,--output", run.output);

  auto* rea = app.add_subcommand("realize", "Chart atlas of the toric scheme over a base ring");
  rea->add_option("fan", path, "Fan JSON")->required();
  rea->add_option("--base", base, "Z, Z/m, Q or k");
  rea->add_option("-o,--output", run.output);

  auto* chow = app.add_subcommand("chow", "Chow groups of a smooth complete fan");
  chow->add_option("fan", path, "Fan JSON")->required();
  chow->add_option("--q", q_opt, "Single degree");
  chow->add_option("-o,--output", run.output);

  auto* dia = app.add_subcommand("diagram", "Enumerated members of C_{n,r} with edges and faces");
  dia->add_option("--n", n_max, "Cubical degree")->required();
  dia->add_option("--r", r, "Number of box factors")->required();
  dia->add_option("--depth", depth, "Star subdivisions from the cube")->required();
  dia->add_flag("--reverse", reverse, "Enumerate centers in reverse order");
  dia->add_option("-o,--output", run.output);

  auto* lc = app.add_subcommand("logchow", "Truncated normalized complex, homology and boundary search");
  lc->add_option("--q", q, "Chow degree")->required();
  lc->add_option("--r", r, "Number of box factors")->required();
  lc->add_option("--nmax", n_max, "Top cubical degree")->required();
  lc->add_option("--depth", depth, "Star subdivisions from the cube")->required();
  lc->add_option("--search-depth", search_depth, "Search deeper diagrams for boundaries");
  lc->add_flag("--reverse", reverse, "Enumerate centers in reverse order");
  lc->add_option("-o,--output", run.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return fan_check(path);
    if (res->parsed()) {
      run.command = "resolve";
      run.parameters = Json{{"fan", path}};
      TowerResult t = resolve(fan_from_json(read_json_file(path)));
      emit(run, Json{{"fan", fan_to_json(t.fan)}, {"steps", steps_to_json(t.steps)}});
    } else if (ref->parsed()) {
      run.command = "refine";
      run.parameters = Json{{"sigma", path}, {"delta", path2}, {"eta", eta}};
      Fan s = fan_from_json(read_json_file(path));
      Fan d = fan_from_json(read_json_file(path2));
      TowerResult t = refine(s, d, eta_from_text(eta, s.rank()));
      emit(run, Json{{"fan", fan_to_json(t.fan)}, {"steps", steps_to_json(t.steps)}});
    } else if (sml->parsed()) {
      run.command = "smlsmify";
      run.parameters = Json{{"pair", path}};
      LogTowerResult t = smlsmify(log_pair_from_json(read_json_file(path)));
      emit(run, Json{{"pair", log_pair_to_json(t.pair)}, {"steps", steps_to_json(t.steps)}});
    } else if (rea->parsed()) {
      run.command = "realize";
      run.parameters = Json{{"fan", path}, {"base", base}};
      emit(run, Json{{"atlas", atlas_to_json(realize_scheme(fan_from_json(read_json_file(path)), base))}});
    } else if (chow->parsed()) {
      run.command = "chow";
      run.parameters = Json{{"fan", path}};
      if (q_opt) run.parameters["q"] = *q_opt;
      ChowRing ring(fan_from_json(read_json_file(path)));
      Json groups = Json::array();
      for (std::size_t k = 0; k <= ring.dimension(); ++k) {
        if (q_opt && *q_opt != k) continue;
        Json g = group_to_json(ring.group(k));
        groups.push_back(Json{{"q", k}, {"rank", g["rank"]}, {"torsion", g["torsion"]}});
      }
      if (q_opt && groups.empty()) groups.push_back(Json{{"q", *q_opt}, {"rank", 0}, {"torsion", Json::array()}});
      emit(run, Json{{"groups", groups}});
    } else if (dia->parsed()) {
      run.command = "diagram";
      run.parameters = Json{{"n", n_max}, {"r", r}, {"depth", depth}, {"reverse", reverse}, {"budget", node_budget()}};
      emit(run, Json{{"diagram", diagram_to_json(enumerate_cnr(n_max, r, depth, node_budget(), reverse))}});
    } else if (lc->parsed()) {
      run.command = "logchow";
      run.parameters = Json{{"q", q}, {"r", r}, {"nmax", n_max}, {"depth", depth}, {"reverse", reverse},
                            {"budget", node_budget()}};
      if (search_depth) run.parameters["search_depth"] = *search_depth;
      emit(run, logchow(q, r, n_max, depth, search_depth, reverse));
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource exhausted: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
