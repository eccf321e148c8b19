#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapred/clique_reduction.hpp"
#include "gapred/error.hpp"
#include "gapred/graph.hpp"
#include "gapred/limits.hpp"
#include "gapred/minrep.hpp"
#include "gapred/mmis_reduction.hpp"
#include "gapred/rng.hpp"
#include "gapred/sat.hpp"
#include "gapred/setcover.hpp"

namespace gapred {

enum class Sense { minimize, maximize };

inline const char* to_string(Sense s) { return s == Sense::minimize ? "minimize" : "maximize"; }

// ---------------------------------------------------------------------------
// r / t functions.

/// The function families r and t are drawn from:
///   constant      c
///   power         a * k^b
///   polylog-power a * (ln k)^g
///   exp-exp       exp(exp((ln k)^g))
class RtFunction {
 public:
  enum class Family { constant, power, polylog_power, exp_exp };

  RtFunction() = default;
  RtFunction(Family family, double coefficient, double exponent = 1.0)
      : family_(family), coefficient_(coefficient), exponent_(exponent) {}

  static RtFunction constant(double c) { return {Family::constant, c}; }
  static RtFunction power(double a, double b) { return {Family::power, a, b}; }
  static RtFunction polylog_power(double a, double g) { return {Family::polylog_power, a, g}; }
  static RtFunction exp_exp(double g) { return {Family::exp_exp, 1.0, g}; }

  /// Parses "constant:2", "power:1,2", "polylog:1,1.5", "expexp:1.5".
  static RtFunction parse(const std::string& text) {
    auto colon = text.find(':');
    auto name = text.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
      std::stringstream ss(text.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          params.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw InvalidArgument("bad number '" + item + "' in function '" + text + "'");
        }
      }
    }
    auto need = [&](std::size_t n) {
      if (params.size() != n) throw InvalidArgument("function '" + text + "' expects " + std::to_string(n) + " parameter(s)");
    };
    if (name == "constant") return need(1), constant(params[0]);
    if (name == "power") return need(2), power(params[0], params[1]);
    if (name == "polylog" || name == "polylog-power") return need(2), polylog_power(params[0], params[1]);
    if (name == "expexp" || name == "exp-exp") return need(1), exp_exp(params[0]);
    throw InvalidArgument("unknown function family '" + name + "'");
  }

  static RtFunction from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse(j.get<std::string>());
    auto family = j.at("family").get<std::string>();
    auto a = j.value("coefficient", 1.0);
    auto e = j.value("exponent", 1.0);
    if (family == "constant") return constant(a);
    if (family == "power") return power(a, e);
    if (family == "polylog-power") return polylog_power(a, e);
    if (family == "exp-exp") return exp_exp(e);
    throw InvalidArgument("unknown function family '" + family + "'");
  }

  nlohmann::json to_json() const {
    static const char* names[] = {"constant", "power", "polylog-power", "exp-exp"};
    return {{"family", names[static_cast<int>(family_)]}, {"coefficient", coefficient_}, {"exponent", exponent_}};
  }

  double operator()(double k) const {
    switch (family_) {
      case Family::constant: return coefficient_;
      case Family::power: return coefficient_ * std::pow(k, exponent_);
      case Family::polylog_power: return coefficient_ * std::pow(std::log(k), exponent_);
      case Family::exp_exp: return std::exp(std::exp(std::pow(std::log(k), exponent_)));
    }
    return 0.0;
  }

  /// Checks monotonicity on the integer grid 1..upto.
  bool non_decreasing_on(std::size_t upto) const {
    double prev = (*this)(1.0);
    for (std::size_t k = 2; k <= upto; ++k) {
      double cur = (*this)(static_cast<double>(k));
      if (std::isnan(cur) || cur < prev) return false;
      prev = cur;
    }
    return !std::isnan(prev);
  }

  Family family() const noexcept { return family_; }

 private:
  Family family_ = Family::constant;
  double coefficient_ = 1.0;
  double exponent_ = 1.0;
};

// ---------------------------------------------------------------------------
// Reports.

struct InstanceDescriptor {
  std::string format;
  /// Ordered size fields (q/m, universe/family, vertices/superedges).
  std::vector<std::pair<std::string, std::size_t>> sizes;
  std::uint64_t hash = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"format", format}};
    for (const auto& [k, v] : sizes) j[k] = v;
    std::ostringstream hex;
    hex << "fnv1a64:" << std::hex << hash;
    j["hash"] = hex.str();
    return j;
  }
};

struct ReductionStep {
  std::string operation;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json j{{"operation", operation}, {"parameters", parameters}};
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    return j;
  }
};

struct GapReport {
  std::string chain;
  Sense sense = Sense::minimize;
  std::optional<InstanceDescriptor> yes_source, no_source;
  std::vector<ReductionStep> reduction_chain;
  /// Size fields of the final instances, keyed "yes"/"no".
  nlohmann::json output_size = nlohmann::json::object();
  std::optional<std::size_t> kappa_t, kappa_f;
  std::string kappa_t_source, kappa_f_source;
  std::optional<double> construction_time;
  /// Named pass/fail checks performed along the way.
  std::map<std::string, bool> checks;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json gap_condition;

  /// kappa_F / kappa_T for minimisation, kappa_T / kappa_F for maximisation.
  std::optional<double> gap_ratio() const {
    if (!kappa_t || !kappa_f) return std::nullopt;
    double num = static_cast<double>(sense == Sense::minimize ? *kappa_f : *kappa_t);
    double den = static_cast<double>(sense == Sense::minimize ? *kappa_t : *kappa_f);
    if (den == 0) return std::nullopt;
    return num / den;
  }

  bool all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
  }

  /// Size of the larger final instance (vertices or sets).
  std::size_t largest_output() const {
    std::size_t best = 0;
    for (const auto& side : {"yes", "no"}) {
      if (!output_size.contains(side)) continue;
      for (const auto& key : {"vertices", "sets"})
        if (output_size[side].contains(key)) best = std::max(best, output_size[side][key].get<std::size_t>());
    }
    return best;
  }

  nlohmann::json to_json() const {
    auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json source{{"yes", yes_source ? yes_source->to_json() : nlohmann::json(nullptr)},
                          {"no", no_source ? no_source->to_json() : nlohmann::json(nullptr)}};
    auto chain_json = nlohmann::json::array();
    for (const auto& step : reduction_chain) chain_json.push_back(step.to_json());
    return {{"schema", "gapred.gap-report/1"},
            {"chain", chain},
            {"sense", to_string(sense)},
            {"sourceInstance", source},
            {"reductionChain", chain_json},
            {"outputSize", output_size},
            {"kappaT", opt(kappa_t)},
            {"kappaTSource", kappa_t_source},
            {"kappaF", opt(kappa_f)},
            {"kappaFSource", kappa_f_source},
            {"gapRatio", opt(gap_ratio())},
            {"constructionTime", opt(construction_time)},
            {"checks", checks},
            {"details", details},
            {"gapCondition", gap_condition}};
  }
};

struct GapCondition {
  bool verdict = false;
  Sense sense = Sense::minimize;
  double kappa_t = 0, kappa_f = 0;
  double r_at_kappa_t = 0;
  /// kappa_T * r(kappa_T) when minimising, kappa_F * r(kappa_T) when maximising.
  double lhs = 0;
  double rhs = 0;
  double t_at_kappa_t = 0;
  std::size_t output_size = 0;
  std::size_t source_clauses = 0;

  nlohmann::json to_json() const {
    auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"verdict", verdict},
            {"inequality", sense == Sense::minimize ? "kappaT*r(kappaT) < kappaF" : "kappaF*r(kappaT) < kappaT"},
            {"kappaT", kappa_t},
            {"kappaF", kappa_f},
            {"rAtKappaT", finite(r_at_kappa_t)},
            {"lhs", finite(lhs)},
            {"rhs", finite(rhs)},
            {"tAtKappaT", finite(t_at_kappa_t)},
            {"outputSize", output_size},
            {"m", source_clauses}};
  }
};

/// Evaluates the gap inequality for the report's optima. For minimisation
/// this is kappa_T * r(kappa_T) < kappa_F; for maximisation the mirrored
/// kappa_F * r(kappa_T) < kappa_T. t(kappa_T) and the output size are
/// reported for inspection only; no asymptotic verdict is attempted.
inline GapCondition check_gap_condition(const GapReport& report, const RtFunction& r, const RtFunction& t,
                                        std::size_t m) {
  if (!report.kappa_t || !report.kappa_f) throw InvalidArgument("gap condition needs both kappaT and kappaF");
  const auto grid = std::max<std::size_t>({*report.kappa_t, *report.kappa_f, 2});
  if (!r.non_decreasing_on(grid)) throw InvalidArgument("r is not non-decreasing on 1.." + std::to_string(grid));
  if (!t.non_decreasing_on(grid)) throw InvalidArgument("t is not non-decreasing on 1.." + std::to_string(grid));
  GapCondition c;
  c.sense = report.sense;
  c.kappa_t = static_cast<double>(*report.kappa_t);
  c.kappa_f = static_cast<double>(*report.kappa_f);
  c.r_at_kappa_t = r(c.kappa_t);
  c.t_at_kappa_t = t(c.kappa_t);
  if (report.sense == Sense::minimize) {
    c.lhs = c.kappa_t * c.r_at_kappa_t;
    c.rhs = c.kappa_f;
  } else {
    c.lhs = c.kappa_f * c.r_at_kappa_t;
    c.rhs = c.kappa_t;
  }
  c.verdict = c.lhs < c.rhs;
  c.output_size = report.largest_output();
  c.source_clauses = m;
  return c;
}

// ---------------------------------------------------------------------------
// Pipelines.

enum class Chain { sat_clique, sat_mmis, setcover_union, minrep_setcover };

inline Chain parse_chain(const std::string& name) {
  if (name == "sat-clique") return Chain::sat_clique;
  if (name == "sat-mmis") return Chain::sat_mmis;
  if (name == "setcover-union") return Chain::setcover_union;
  if (name == "minrep-setcover") return Chain::minrep_setcover;
  throw InvalidArgument("unknown pipeline chain '" + name +
                        "' (expected sat-clique, sat-mmis, setcover-union, minrep-setcover)");
}

inline const char* to_string(Chain c) {
  switch (c) {
    case Chain::sat_clique: return "sat-clique";
    case Chain::sat_mmis: return "sat-mmis";
    case Chain::setcover_union: return "setcover-union";
    case Chain::minrep_setcover: return "minrep-setcover";
  }
  return "";
}

struct PipelineConfig {
  Chain chain = Chain::sat_clique;
  /// Instance texts in the chain's input format (DIMACS, set system, Min-Rep JSON).
  std::string yes_text, no_text;
  std::optional<std::size_t> block_size;  // sat-clique: B
  std::optional<std::size_t> f;           // sat-clique: B = m/f; sat-mmis: block count
  std::size_t power = 1;                  // sat-clique
  std::size_t union_size = 1;             // setcover-union, minrep-setcover
  bool dedup_unions = false;
  std::size_t elements_per_superedge = 4;  // minrep-setcover
  HalvesMode halves = HalvesMode::per_edge;
  std::uint64_t seed = 0;
  std::optional<RtFunction> r, t;
  SolverLimits limits;
  bool timing = false;
  /// When set, final instances are written here as yes.* / no.* files.
  std::optional<std::filesystem::path> emit_dir;
};

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

inline InstanceDescriptor describe(const CnfInstance& cnf) {
  return {"dimacs", {{"q", cnf.num_variables()}, {"m", cnf.num_clauses()}}, fnv1a64(to_dimacs(cnf))};
}
inline InstanceDescriptor describe(const SetCoverInstance& inst) {
  return {"setsys", {{"universe", inst.universe_size()}, {"family", inst.family_size()}},
          fnv1a64(to_set_system(inst))};
}
inline InstanceDescriptor describe(const MinRepInstance& inst) {
  return {"minrep-json", {{"vertices", inst.num_vertices()}, {"superedges", inst.superedges().size()}},
          fnv1a64(minrep_to_json(inst).dump())};
}

inline nlohmann::json graph_size(const SimpleGraph& g) {
  return {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}};
}
inline nlohmann::json cover_size(const SetCoverInstance& s) {
  return {{"sets", s.family_size()}, {"elements", s.universe_size()}};
}

struct CliqueSide {
  CnfInstance padded;
  CliqueGadgetGraph gadgets;
  std::optional<SupervertexGraph> blocked;
  SimpleGraph final_graph;
  std::size_t block = 1;
  std::size_t maxsat = 0;
};

inline CliqueSide build_clique_side(const CnfInstance& source, std::size_t block, std::size_t power,
                                    const SolverLimits& limits) {
  CliqueSide side;
  side.block = block;
  side.padded = pad_clauses_to_divisible(source, block);
  side.maxsat = max_sat_bruteforce(side.padded, limits).satisfied;
  side.gadgets = sat_to_clique(side.padded);
  const SimpleGraph* base = &side.gadgets.graph;
  if (block > 1) {
    side.blocked = supervertex_clique_transform(side.gadgets.graph, block, limits);
    base = &side.blocked->graph;
  }
  if (power > 1) {
    if (base->num_vertices() == 0) throw InvalidArgument("power step on an empty graph (no B-cliques)");
    side.final_graph = graph_power(*base, power, limits);
  } else {
    side.final_graph = *base;
  }
  return side;
}

/// Walks a clique of the final graph back to an assignment of the padded
/// formula and checks every layer on the way.
inline bool clique_witness_expands(const CliqueSide& side, const VertexSet& clique, std::size_t power) {
  const SimpleGraph& base = side.blocked ? side.blocked->graph : side.gadgets.graph;
  VertexSet projected = clique;
  if (power > 1) {
    std::vector<Vertex> coords;
    for (auto v : clique) coords.push_back(power_tuple(v, base.num_vertices(), power).front());
    projected = VertexSet(std::move(coords));
  }
  if (!verify_vertex_set(base, projected, VertexSetMode::clique)) return false;
  VertexSet gadget_clique = side.blocked ? expand_supervertices(side.blocked->map, projected) : projected;
  if (gadget_clique.size() != projected.size() * side.block) return false;
  if (!verify_vertex_set(side.gadgets.graph, gadget_clique, VertexSetMode::clique)) return false;
  auto a = assignment_from_clique(side.padded, side.gadgets, gadget_clique);
  return evaluate(side.padded, a) >= gadget_clique.size();
}

inline std::size_t ipow(std::size_t base, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Runs a yes/no pair through one reduction chain, solves both outputs with
/// the exact oracles and assembles the report.
inline GapReport run_pipeline(const PipelineConfig& cfg) {
  using namespace detail;
  const auto started = std::chrono::steady_clock::now();
  GapReport report;
  report.chain = to_string(cfg.chain);
  std::size_t source_m = 0;

  switch (cfg.chain) {
    case Chain::sat_clique: {
      report.sense = Sense::maximize;
      auto yes = parse_dimacs(cfg.yes_text);
      auto no = parse_dimacs(cfg.no_text);
      report.yes_source = describe(yes);
      report.no_source = describe(no);
      source_m = yes.num_clauses();
      if (cfg.block_size && cfg.f) throw InvalidArgument("give either a block size or f, not both");
      std::size_t block_yes = cfg.block_size.value_or(1), block_no = block_yes;
      if (cfg.f) {
        auto py = pad_clauses_to_divisible(yes, *cfg.f), pn = pad_clauses_to_divisible(no, *cfg.f);
        if (py.num_clauses() != pn.num_clauses())
          throw InvalidArgument("yes and no formulas must have equal clause counts after padding");
        block_yes = block_no = py.num_clauses() / *cfg.f;
        if (block_yes == 0) throw InvalidArgument("f exceeds the clause count");
      }
      report.reduction_chain.push_back({"pad_clauses_to_divisible", {{"divisor", block_yes}}, std::nullopt});
      report.reduction_chain.push_back({"sat_to_clique", nlohmann::json::object(), std::nullopt});
      if (block_yes > 1)
        report.reduction_chain.push_back({"supervertex_clique_transform", {{"blockSize", block_yes}}, std::nullopt});
      if (cfg.power > 1) report.reduction_chain.push_back({"graph_power", {{"k", cfg.power}}, std::nullopt});

      auto ys = build_clique_side(yes, block_yes, cfg.power, cfg.limits);
      auto ns = build_clique_side(no, block_no, cfg.power, cfg.limits);
      report.output_size = {{"yes", graph_size(ys.final_graph)}, {"no", graph_size(ns.final_graph)}};
      auto yc = max_clique_exact(ys.final_graph, cfg.limits);
      auto nc = max_clique_exact(ns.final_graph, cfg.limits);
      report.kappa_t = yc.size;
      report.kappa_f = nc.size;
      report.kappa_t_source = report.kappa_f_source = "oracle:max_clique_exact";
      auto predicted_yes = ipow(ys.maxsat / block_yes, cfg.power);
      auto predicted_no = ipow(ns.maxsat / block_no, cfg.power);
      report.details = {{"maxsat", {{"yes", ys.maxsat}, {"no", ns.maxsat}}},
                        {"paddedClauses", {{"yes", ys.padded.num_clauses()}, {"no", ns.padded.num_clauses()}}},
                        {"predictedOptimum", {{"yes", predicted_yes}, {"no", predicted_no}}}};
      report.checks["yes_optimum_matches_maxsat"] = yc.size == predicted_yes;
      report.checks["no_optimum_matches_maxsat"] = nc.size == predicted_no;
      report.checks["yes_witness_expands"] = clique_witness_expands(ys, yc.witness, cfg.power);
      report.checks["no_witness_expands"] = clique_witness_expands(ns, nc.witness, cfg.power);
      if (cfg.emit_dir) {
        std::filesystem::create_directories(*cfg.emit_dir);
        write_text(*cfg.emit_dir / "yes.edges", to_edge_list(ys.final_graph));
        write_text(*cfg.emit_dir / "no.edges", to_edge_list(ns.final_graph));
      }
      break;
    }

    case Chain::sat_mmis: {
      report.sense = Sense::minimize;
      const auto f = cfg.f.value_or(1);
      auto yes = pad_variables_to_divisible(parse_dimacs(cfg.yes_text), f);
      auto no = pad_variables_to_divisible(parse_dimacs(cfg.no_text), f);
      report.yes_source = describe(parse_dimacs(cfg.yes_text));
      report.no_source = describe(parse_dimacs(cfg.no_text));
      source_m = parse_dimacs(cfg.yes_text).num_clauses();
      report.reduction_chain.push_back({"pad_variables_to_divisible", {{"divisor", f}}, std::nullopt});
      report.reduction_chain.push_back({"sat_to_mmis", {{"f", f}}, std::nullopt});
      auto yg = sat_to_mmis(yes, f, cfg.limits);
      auto ng = sat_to_mmis(no, f, cfg.limits);
      report.output_size = {{"yes", graph_size(yg.graph)}, {"no", graph_size(ng.graph)}};

      auto ysat = max_sat_bruteforce(yes, cfg.limits);
      auto nsat = max_sat_bruteforce(no, cfg.limits);
      report.checks["yes_satisfiable"] = ysat.satisfied == yes.num_clauses();
      report.checks["no_unsatisfiable"] = nsat.satisfied < no.num_clauses();
      std::optional<VertexSet> certificate;
      if (ysat.satisfied == yes.num_clauses()) {
        certificate = build_yes_solution(yes, ysat.witness, f, yg);
        report.checks["yes_certificate_maximal_independent"] =
            bool(verify_vertex_set(yg.graph, *certificate, VertexSetMode::maximal_independent));
      }
      if (yg.graph.num_vertices() <= cfg.limits.mmis_vertices) {
        auto y = mmis_exact(yg.graph, cfg.limits);
        report.kappa_t = y.size;
        report.kappa_t_source = "oracle:mmis_exact";
        if (certificate) report.checks["yes_optimum_at_most_f"] = y.size <= f;
      } else if (certificate) {
        report.kappa_t = certificate->size();
        report.kappa_t_source = "certificate:build_yes_solution";
      }
      auto n = mmis_exact(ng.graph, cfg.limits);
      report.kappa_f = n.size;
      report.kappa_f_source = "oracle:mmis_exact";
      report.checks["no_witness_maximal_independent"] =
          bool(verify_vertex_set(ng.graph, n.witness, VertexSetMode::maximal_independent));
      report.checks["no_witness_assignment_consistent"] =
          induced_assignment(ng, n.witness, no.num_variables()).has_value();
      report.checks["no_optimum_exceeds_q"] = n.size > no.num_variables();
      report.details = {{"paddedVariables", {{"yes", yes.num_variables()}, {"no", no.num_variables()}}},
                        {"maxsat", {{"yes", ysat.satisfied}, {"no", nsat.satisfied}}},
                        {"certificateSize", certificate ? nlohmann::json(certificate->size()) : nlohmann::json(nullptr)}};
      if (cfg.emit_dir) {
        std::filesystem::create_directories(*cfg.emit_dir);
        write_text(*cfg.emit_dir / "yes.edges", to_edge_list(yg.graph));
        write_text(*cfg.emit_dir / "no.edges", to_edge_list(ng.graph));
        write_text(*cfg.emit_dir / "yes.meta.json", mmis_metadata_to_json(yg).dump(1) + "\n");
        write_text(*cfg.emit_dir / "no.meta.json", mmis_metadata_to_json(ng).dump(1) + "\n");
      }
      break;
    }

    case Chain::setcover_union:
    case Chain::minrep_setcover: {
      report.sense = Sense::minimize;
      SetCoverInstance yes, no;
      std::optional<MinRepInstance> yes_mr, no_mr;
      if (cfg.chain == Chain::setcover_union) {
        yes = parse_set_system(cfg.yes_text);
        no = parse_set_system(cfg.no_text);
        report.yes_source = describe(yes);
        report.no_source = describe(no);
      } else {
        yes_mr = minrep_from_json(nlohmann::json::parse(cfg.yes_text));
        no_mr = minrep_from_json(nlohmann::json::parse(cfg.no_text));
        report.yes_source = describe(*yes_mr);
        report.no_source = describe(*no_mr);
        report.reduction_chain.push_back(
            {"minrep_to_setcover",
             {{"elementsPerSuperedge", cfg.elements_per_superedge},
              {"halves", cfg.halves == HalvesMode::per_edge ? "per-edge" : "per-vertex"}},
             cfg.seed});
        yes = minrep_to_setcover(*yes_mr, cfg.elements_per_superedge, cfg.seed, cfg.halves).instance;
        no = minrep_to_setcover(*no_mr, cfg.elements_per_superedge, cfg.seed, cfg.halves).instance;
      }
      const auto parts = std::min(cfg.union_size, std::max<std::size_t>(1, std::min(yes.family_size(), no.family_size())));
      if (cfg.union_size > 1)
        report.reduction_chain.push_back(
            {"union_closure_transform", {{"P", parts}, {"dedup", cfg.dedup_unions}}, std::nullopt});
      auto close = [&](const SetCoverInstance& s) {
        if (cfg.union_size > 1 && s.family_size() > 0)
          return union_closure_transform(s, parts, cfg.dedup_unions, cfg.limits);
        UnionClosure identity{s, {}};
        for (std::size_t i = 0; i < s.family_size(); ++i) identity.provenance.push_back({i});
        return identity;
      };
      auto yu = close(yes), nu = close(no);
      report.output_size = {{"yes", cover_size(yu.instance)}, {"no", cover_size(nu.instance)}};
      auto y = setcover_exact(yu.instance, cfg.limits);
      auto n = setcover_exact(nu.instance, cfg.limits);
      report.kappa_t = y.size;
      report.kappa_f = n.size;
      report.kappa_t_source = report.kappa_f_source = "oracle:setcover_exact";
      auto expands = [&](const UnionClosure& u, const SetCoverInstance& original, const SetCoverResult& r) {
        auto old = expand_union_cover(u, r.indices);
        return original.is_cover(old) && old.size() <= parts * r.size;
      };
      report.checks["yes_witness_expands"] = expands(yu, yes, y);
      report.checks["no_witness_expands"] = expands(nu, no, n);
      if (cfg.chain == Chain::minrep_setcover) {
        nlohmann::json mr = nlohmann::json::object();
        auto side = [&](const char* name, const MinRepInstance& inst, std::size_t cover_opt) {
          if (inst.num_vertices() > cfg.limits.minrep_vertices) return;
          auto exact = minrep_exact(inst, cfg.limits);
          mr[name] = exact.size;
          if (cfg.union_size == 1)
            report.checks[std::string(name) + "_setcover_at_most_minrep"] = cover_opt <= exact.size;
        };
        side("yes", *yes_mr, y.size);
        side("no", *no_mr, n.size);
        report.details["minrepOptimum"] = mr;
      }
      if (cfg.emit_dir) {
        std::filesystem::create_directories(*cfg.emit_dir);
        write_text(*cfg.emit_dir / "yes.setsys", to_set_system(yu.instance));
        write_text(*cfg.emit_dir / "no.setsys", to_set_system(nu.instance));
      }
      break;
    }
  }

  if (cfg.r || cfg.t) {
    auto cond = check_gap_condition(report, cfg.r.value_or(RtFunction::constant(1)),
                                    cfg.t.value_or(RtFunction::constant(1)), source_m);
    report.gap_condition = cond.to_json();
    report.gap_condition["r"] = cfg.r.value_or(RtFunction::constant(1)).to_json();
    report.gap_condition["t"] = cfg.t.value_or(RtFunction::constant(1)).to_json();
    report.checks["gap_condition"] = cond.verdict;
  }
  if (cfg.timing)
    report.construction_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

/// One CSV row per report for size-vs-m sweeps.
inline std::string sweep_csv(const std::vector<GapReport>& reports) {
  std::ostringstream out;
  out << "index,chain,q_yes,m_yes,q_no,m_no,output_yes,output_no,kappaT,kappaF,gapRatio\n";
  auto size_of = [](const std::optional<InstanceDescriptor>& d, const char* key) -> std::string {
    if (!d) return "";
    for (const auto& [k, v] : d->sizes)
      if (k == key) return std::to_string(v);
    return "";
  };
  auto out_of = [](const nlohmann::json& j) -> std::string {
    for (const auto& key : {"vertices", "sets"})
      if (j.contains(key)) return std::to_string(j[key].get<std::size_t>());
    return "";
  };
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << i << ',' << r.chain << ',' << size_of(r.yes_source, "q") << ',' << size_of(r.yes_source, "m") << ','
        << size_of(r.no_source, "q") << ',' << size_of(r.no_source, "m") << ','
        << (r.output_size.contains("yes") ? out_of(r.output_size["yes"]) : "") << ','
        << (r.output_size.contains("no") ? out_of(r.output_size["no"]) : "") << ','
        << (r.kappa_t ? std::to_string(*r.kappa_t) : "") << ',' << (r.kappa_f ? std::to_string(*r.kappa_f) : "")
        << ',';
    if (auto g = r.gap_ratio()) out << nlohmann::json(*g).dump();
    out << '\n';
  }
  return out.str();
}

}  // namespace gapred
