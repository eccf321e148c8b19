// gapred: reductions, exact solvers, claim checks and gap pipelines.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gapred/gapred.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gapred;

namespace {

constexpr int kChecksFailed = 1;
constexpr int kError = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw Error("cannot write " + *path);
  out << text;
}

std::string format_for(const std::string& path, const std::string& given) {
  if (!given.empty()) return given;
  auto ext = fs::path(path).extension().string();
  if (ext == ".cnf" || ext == ".dimacs") return "dimacs";
  if (ext == ".edges" || ext == ".edgelist") return "edgelist";
  if (ext == ".setsys" || ext == ".sets") return "setsys";
  if (ext == ".json") return "minrep-json";
  throw InvalidArgument("cannot infer --format from '" + path + "'");
}

void require_format(const std::string& actual, const std::string& wanted, const std::string& what) {
  if (actual != wanted) throw InvalidArgument(what + " expects --format " + wanted + ", got " + actual);
}

json vertex_set_json(const VertexSet& s) { return s.members(); }

json assignment_json(const Assignment& a) {
  json out = json::array();
  for (std::uint32_t x = 1; x <= a.num_variables(); ++x) {
    auto v = a.value(x);
    out.push_back(v ? json(*v) : json(nullptr));
  }
  return out;
}

struct Options {
  std::string input;
  std::string format;
  std::optional<std::size_t> block_size, power, f, union_size, elements, q;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, meta, emit, csv;
  std::string halves = "per-edge";
  bool dedup = false;
  bool as_json = false;
  bool timing = false;
  std::size_t count = 100;
  SolverLimits limits;
};

void add_limit_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--cap-maxsat", o.limits.maxsat_variables, "MaxSAT variable cap");
  cmd->add_option("--cap-clique", o.limits.clique_vertices, "max-clique vertex cap");
  cmd->add_option("--cap-mmis", o.limits.mmis_vertices, "MMIS vertex cap");
  cmd->add_option("--cap-setcover", o.limits.setcover_family, "set-cover family cap");
  cmd->add_option("--cap-minrep", o.limits.minrep_vertices, "Min-Rep vertex cap");
  cmd->add_option("--cap-power", o.limits.power_vertices, "graph power vertex cap");
  cmd->add_option("--cap-supervertices", o.limits.supervertices, "supervertex cap");
  cmd->add_option("--cap-union", o.limits.union_family, "union-closure family cap");
}

HalvesMode halves_mode(const std::string& s) {
  if (s == "per-edge") return HalvesMode::per_edge;
  if (s == "per-vertex") return HalvesMode::per_vertex;
  throw InvalidArgument("--halves must be per-edge or per-vertex");
}

// ---------------------------------------------------------------------------
// reduce

int run_reduce(const std::string& chain, const Options& o) {
  const auto text = read_file(o.input);
  const auto format = format_for(o.input, o.format);
  std::string output;
  std::optional<json> meta;

  if (chain == "pad-clauses" || chain == "pad-variables") {
    require_format(format, "dimacs", chain);
    auto cnf = parse_dimacs(text);
    auto f = o.f.value_or(1);
    output = to_dimacs(chain == "pad-clauses" ? pad_clauses_to_divisible(cnf, f) : pad_variables_to_divisible(cnf, f));
  } else if (chain == "sat-clique") {
    require_format(format, "dimacs", chain);
    auto cnf = parse_dimacs(text);
    auto block = o.block_size.value_or(1);
    if (o.f) {
      cnf = pad_clauses_to_divisible(cnf, *o.f);
      block = cnf.num_clauses() / *o.f;
    } else if (block > 1) {
      cnf = pad_clauses_to_divisible(cnf, block);
    }
    auto reduced = sat_to_clique(cnf);
    json m{{"gadgets", gadgets_to_json(reduced.gadgets)}};
    SimpleGraph g = reduced.graph;
    if (block > 1) {
      auto t = supervertex_clique_transform(g, block, o.limits);
      m["supervertices"] = supervertex_map_to_json(t.map);
      g = std::move(t.graph);
    }
    if (o.power.value_or(1) > 1) {
      g = graph_power(g, *o.power, o.limits);
      m["power"] = *o.power;
    }
    output = to_edge_list(g);
    meta = m;
  } else if (chain == "supervertex") {
    require_format(format, "edgelist", chain);
    auto t = supervertex_clique_transform(parse_edge_list(text), o.block_size.value_or(1), o.limits);
    output = to_edge_list(t.graph);
    meta = supervertex_map_to_json(t.map);
  } else if (chain == "power") {
    require_format(format, "edgelist", chain);
    output = to_edge_list(graph_power(parse_edge_list(text), o.power.value_or(1), o.limits));
  } else if (chain == "sat-mmis") {
    require_format(format, "dimacs", chain);
    auto f = o.f.value_or(1);
    auto cnf = pad_variables_to_divisible(parse_dimacs(text), f);
    auto g = sat_to_mmis(cnf, f, o.limits);
    output = to_edge_list(g.graph);
    meta = mmis_metadata_to_json(g);
  } else if (chain == "setcover-union") {
    require_format(format, "setsys", chain);
    auto closure = union_closure_transform(parse_set_system(text), o.union_size.value_or(1), o.dedup, o.limits);
    output = to_set_system(closure.instance);
    meta = closure.provenance;
  } else if (chain == "minrep-setcover") {
    require_format(format, "minrep-json", chain);
    auto reduced = minrep_to_setcover(minrep_from_json(json::parse(text)), o.elements.value_or(4), o.seed.value_or(0),
                                      halves_mode(o.halves));
    output = to_set_system(reduced.instance);
    meta = element_map_to_json(reduced);
  } else {
    throw InvalidArgument("unknown chain '" + chain +
                          "' (pad-clauses, pad-variables, sat-clique, supervertex, power, sat-mmis, "
                          "setcover-union, minrep-setcover)");
  }

  write_output(o.out, output);
  if (o.meta && meta) write_output(o.meta, meta->dump(1) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// solve

int run_solve(const std::string& problem, const Options& o) {
  const auto text = read_file(o.input);
  const auto format = format_for(o.input, o.format);
  json result{{"problem", problem}};

  if (problem == "maxsat") {
    require_format(format, "dimacs", problem);
    auto cnf = parse_dimacs(text);
    auto r = max_sat_bruteforce(cnf, o.limits);
    result["optimum"] = r.satisfied;
    result["clauses"] = cnf.num_clauses();
    result["witness"] = assignment_json(r.witness);
  } else if (problem == "clique") {
    require_format(format, "edgelist", problem);
    auto r = max_clique_exact(parse_edge_list(text), o.limits);
    result["optimum"] = r.size;
    result["witness"] = vertex_set_json(r.witness);
  } else if (problem == "mmis") {
    require_format(format, "edgelist", problem);
    auto r = mmis_exact(parse_edge_list(text), o.limits);
    result["optimum"] = r.size;
    result["witness"] = vertex_set_json(r.witness);
  } else if (problem == "setcover") {
    require_format(format, "setsys", problem);
    auto r = setcover_exact(parse_set_system(text), o.limits);
    result["optimum"] = r.size;
    result["witness"] = r.indices;
  } else if (problem == "setcover-greedy") {
    require_format(format, "setsys", problem);
    auto r = setcover_greedy(parse_set_system(text));
    result["value"] = r.size();
    result["witness"] = r;
  } else if (problem == "minrep") {
    require_format(format, "minrep-json", problem);
    auto r = minrep_exact(minrep_from_json(json::parse(text)), o.limits);
    result["optimum"] = r.size;
    result["witness"] = vertex_set_json(r.witness);
  } else if (problem == "dense-subgraph") {
    require_format(format, "edgelist", problem);
    auto g = parse_edge_list(text);
    auto r = dense_q_subgraph_tree(g, o.q.value_or(g.num_vertices()));
    result["value"] = r.edge_count();
    result["witness"] = vertex_set_json(r.vertices);
    result["treeEdges"] = r.tree_edges;
  } else {
    throw InvalidArgument("unknown problem '" + problem +
                          "' (maxsat, clique, mmis, setcover, setcover-greedy, minrep, dense-subgraph)");
  }

  if (o.as_json) {
    write_output(o.out, result.dump(1) + "\n");
  } else {
    std::ostringstream ss;
    for (const auto& key : {"optimum", "value"})
      if (result.contains(key)) ss << key << ' ' << result[key].dump() << '\n';
    ss << "witness " << result["witness"].dump() << '\n';
    write_output(o.out, ss.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& suite, const Options& o) {
  json results = json::array();
  bool all_ok = true, matched = false;
  for (const auto& s : claim_suites()) {
    if (suite != "all" && suite != s.name) continue;
    matched = true;
    auto r = s.run(o.seed.value_or(1), o.count);
    all_ok = all_ok && r.passed();
    results.push_back({{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"passed", r.passed()},
                       {"firstFailure", r.first_failure.empty() ? json(nullptr) : json(r.first_failure)}});
    if (!o.as_json) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
                << " failures)\n";
      if (!r.passed() && !r.first_failure.empty()) std::cout << r.first_failure << '\n';
    }
  }
  if (!matched) {
    std::string names;
    for (const auto& s : claim_suites()) names += std::string(names.empty() ? "" : ", ") + s.name;
    throw InvalidArgument("unknown claim suite '" + suite + "' (all, " + names + ")");
  }
  if (o.as_json) write_output(o.out, results.dump(1) + "\n");
  return all_ok ? 0 : kChecksFailed;
}

// ---------------------------------------------------------------------------
// pipeline

void apply_limits(const json& j, SolverLimits& limits) {
  auto take = [&](const char* key, std::size_t& field) {
    if (j.contains(key)) field = j[key].get<std::size_t>();
  };
  take("maxsatVariables", limits.maxsat_variables);
  take("cliqueVertices", limits.clique_vertices);
  take("mmisVertices", limits.mmis_vertices);
  take("setcoverFamily", limits.setcover_family);
  take("minrepVertices", limits.minrep_vertices);
  take("powerVertices", limits.power_vertices);
  take("supervertices", limits.supervertices);
  take("unionFamily", limits.union_family);
}

PipelineConfig config_from_json(const json& j, const fs::path& base, const Options& o) {
  PipelineConfig cfg;
  cfg.chain = parse_chain(j.at("chain").get<std::string>());
  cfg.yes_text = read_file(base / j.at("yes").get<std::string>());
  cfg.no_text = read_file(base / j.at("no").get<std::string>());
  if (j.contains("blockSize")) cfg.block_size = j["blockSize"].get<std::size_t>();
  if (j.contains("f")) cfg.f = j["f"].get<std::size_t>();
  cfg.power = j.value("power", std::size_t{1});
  cfg.union_size = j.value("union", std::size_t{1});
  cfg.dedup_unions = j.value("dedup", false);
  cfg.elements_per_superedge = j.value("elementsPerSuperedge", std::size_t{4});
  cfg.halves = halves_mode(j.value("halves", std::string("per-edge")));
  cfg.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("r")) cfg.r = RtFunction::from_json(j["r"]);
  if (j.contains("t")) cfg.t = RtFunction::from_json(j["t"]);
  cfg.limits = o.limits;
  if (j.contains("limits")) apply_limits(j["limits"], cfg.limits);

  // Command-line flags win over the config file.
  if (o.block_size) cfg.block_size = o.block_size;
  if (o.f) cfg.f = o.f;
  if (o.power) cfg.power = *o.power;
  if (o.union_size) cfg.union_size = *o.union_size;
  if (o.elements) cfg.elements_per_superedge = *o.elements;
  if (o.seed) cfg.seed = *o.seed;
  if (o.dedup) cfg.dedup_unions = true;
  cfg.timing = o.timing;
  return cfg;
}

int run_pipeline_command(const std::string& config_path, const Options& o) {
  auto config = json::parse(read_file(config_path));
  const auto base = fs::path(config_path).parent_path();

  std::vector<json> runs;
  if (config.contains("sweep")) {
    for (const auto& overrides : config["sweep"]) {
      auto merged = config;
      merged.erase("sweep");
      merged.update(overrides);
      runs.push_back(merged);
    }
  } else {
    runs.push_back(config);
  }

  std::vector<GapReport> reports;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto cfg = config_from_json(runs[i], base, o);
    if (o.emit) cfg.emit_dir = runs.size() == 1 ? fs::path(*o.emit) : fs::path(*o.emit) / std::to_string(i);
    reports.push_back(run_pipeline(cfg));
  }

  bool all_ok = true;
  json out;
  if (reports.size() == 1) {
    out = reports[0].to_json();
    all_ok = reports[0].all_checks_pass();
  } else {
    out = json::array();
    for (const auto& r : reports) {
      out.push_back(r.to_json());
      all_ok = all_ok && r.all_checks_pass();
    }
  }
  write_output(o.out, out.dump(2) + "\n");
  if (o.csv) write_output(o.csv, sweep_csv(reports));
  if (!all_ok) {
    for (const auto& r : reports)
      for (const auto& [name, ok] : r.checks)
        if (!ok) std::cerr << "check failed: " << name << '\n';
  }
  return all_ok ? 0 : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapred: gap-reduction toolkit"};
  app.require_subcommand(1);
  Options o;
  std::string target;

  auto common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", o.input, "input instance path");
    if (needs_input) in->required();
    cmd->add_option("--format", o.format, "input format")
        ->check(CLI::IsMember({"dimacs", "edgelist", "setsys", "minrep-json"}));
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_flag("--json", o.as_json, "emit JSON");
    add_limit_flags(cmd, o);
  };
  auto reduction_flags = [&](CLI::App* cmd) {
    cmd->add_option("--block-size", o.block_size, "supervertex block size B");
    cmd->add_option("--power", o.power, "graph power k");
    cmd->add_option("--f", o.f, "divisor f");
    cmd->add_option("--union", o.union_size, "union size P");
    cmd->add_flag("--dedup", o.dedup, "drop duplicate unions");
    cmd->add_option("--elements-per-superedge", o.elements, "elements per superedge E (even)");
    cmd->add_option("--halves", o.halves, "per-edge or per-vertex");
    cmd->add_option("--seed", o.seed, "PRNG seed");
  };

  auto* reduce = app.add_subcommand("reduce", "apply one reduction");
  reduce->add_option("chain", target, "reduction")->required();
  common(reduce, true);
  reduction_flags(reduce);
  reduce->add_option("--meta", o.meta, "write reduction metadata JSON here");

  auto* solve = app.add_subcommand("solve", "solve an instance exactly");
  solve->add_option("problem", target, "problem")->required();
  common(solve, true);
  solve->add_option("--q", o.q, "subgraph size for dense-subgraph");

  auto* verify = app.add_subcommand("verify", "run a claim suite");
  verify->add_option("suite", target, "claim suite or 'all'")->required();
  verify->add_option("--seed", o.seed, "PRNG seed");
  verify->add_option("--count", o.count, "random cases per suite");
  verify->add_option("--out", o.out, "output path for --json");
  verify->add_flag("--json", o.as_json, "emit JSON");

  auto* pipeline = app.add_subcommand("pipeline", "run a yes/no pipeline and emit a GapReport");
  pipeline->add_option("config", target, "pipeline config JSON")->required()->check(CLI::ExistingFile);
  common(pipeline, false);
  reduction_flags(pipeline);
  pipeline->add_option("--emit", o.emit, "directory for the final instances");
  pipeline->add_option("--csv", o.csv, "write a sweep CSV here");
  pipeline->add_flag("--timing", o.timing, "record wall-clock construction time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (reduce->parsed()) return run_reduce(target, o);
    if (solve->parsed()) return run_solve(target, o);
    if (verify->parsed()) return run_verify(target, o);
    return run_pipeline_command(target, o);
  } catch (const ParseError& e) {
    std::cerr << "gapred: parse error: " << e.what() << '\n';
  } catch (const CapExceeded& e) {
    std::cerr << "gapred: cap exceeded in " << e.stage() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "gapred: " << e.what() << '\n';
  }
  return kError;
}
