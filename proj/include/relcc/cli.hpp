#pragma once

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "relcc/io.hpp"

namespace relcc {
namespace cli_detail {

inline ParsedGraph load_graph(const std::string& path, BuildMode mode) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_edge_list(in, mode);
}

inline ParsedMembership load_membership(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_membership(in);
}

inline void warn_dropped(std::ostream& err, const std::string& path, const BuildStats& stats) {
  if (stats.self_loops_dropped > 0)
    err << "warning: dropped " << stats.self_loops_dropped << " self-loop(s) from " << path
        << "\n";
  if (stats.duplicate_edges_dropped > 0)
    err << "warning: dropped " << stats.duplicate_edges_dropped << " duplicate edge(s) from "
        << path << "\n";
}

inline std::string render_fraction(const Coefficient& c, bool coerce_undefined) {
  if (!c.defined()) return coerce_undefined ? "0/1" : "undefined";
  return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

inline std::string render_coefficient(const Coefficient& c, bool coerce_undefined) {
  if (!c.defined() && !coerce_undefined) return "undefined";
  const Coefficient shown = c.defined() ? c : Coefficient::ratio(0, 1);
  return render_fraction(shown, coerce_undefined) + " = " + format_decimal(shown.value());
}

// Rebuilds the membership rows against the graph's vertex numbering. Every
// individual label must name a graph vertex; graph vertices without
// memberships are fine.
inline CapacityMask mask_from_membership(const ParsedGraph& parsed,
                                         const ParsedMembership& membership) {
  std::vector<Membership> remapped;
  remapped.reserve(membership.affiliation.membership_count());
  for (const auto& m : membership.affiliation.memberships()) {
    const std::string& label = membership.individuals.label(m.individual);
    const auto id = parsed.labels.find(label);
    if (!id) throw UnknownLabelError(label, "graph");
    remapped.push_back({*id, m.group});
  }
  const auto affiliation = build_affiliation(
      parsed.graph.vertex_count(), membership.affiliation.group_count(), remapped);
  return capacity_from_affiliation(affiliation);
}

inline CapacityMask mask_from_pair_file(const ParsedGraph& parsed,
                                        const ParsedGraph& pair_file) {
  std::vector<VertexPair> remapped;
  remapped.reserve(pair_file.graph.edge_count());
  for (const auto& e : pair_file.graph.edges()) {
    const auto a = parsed.labels.find(pair_file.labels.label(e.a));
    if (!a) throw UnknownLabelError(pair_file.labels.label(e.a), "graph");
    const auto b = parsed.labels.find(pair_file.labels.label(e.b));
    if (!b) throw UnknownLabelError(pair_file.labels.label(e.b), "graph");
    remapped.push_back({*a, *b});
  }
  return CapacityMask::from_pairs(parsed.graph.vertex_count(), remapped);
}

struct MetricsArgs {
  std::string graph_path;
  std::string membership_path;
  std::string capacity_path;
  bool lenient = false;
  bool allow_violations = false;
  bool undefined_as_zero = false;
  bool per_vertex = false;
};

inline int run_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err) {
  const BuildMode mode = args.lenient ? BuildMode::lenient : BuildMode::strict;
  const ParsedGraph parsed = load_graph(args.graph_path, mode);
  warn_dropped(err, args.graph_path, parsed.stats);
  const Graph& g = parsed.graph;

  std::optional<CapacityMask> mask;
  if (!args.membership_path.empty()) {
    const ParsedMembership membership = load_membership(args.membership_path);
    if (membership.duplicates_dropped > 0)
      err << "warning: dropped " << membership.duplicates_dropped
          << " duplicate membership(s) from " << args.membership_path << "\n";
    mask = mask_from_membership(parsed, membership);
  } else if (!args.capacity_path.empty()) {
    const ParsedGraph pair_file = load_graph(args.capacity_path, mode);
    warn_dropped(err, args.capacity_path, pair_file.stats);
    mask = mask_from_pair_file(parsed, pair_file);
  }

  TriangleCensus census;
  Count allowed_pairs = 0;
  if (mask) {
    const auto report = validate_against(g, *mask);
    if (!report.ok()) {
      for (const auto& e : report.violations)
        err << "violation: edge " << parsed.labels.label(e.a) << " "
            << parsed.labels.label(e.b) << " is not an allowed pair\n";
      if (!args.allow_violations) throw MaskViolationError(report.violations);
      err << "note: continuing despite " << report.violations.size() << " violation(s)\n";
    }
    CensusOptions options;
    options.validate = false;  // validated above
    census = triangle_census(g, *mask, options);
    allowed_pairs = mask->pair_count();
  } else {
    err << "note: no capacity input; assuming the complete mask, where the relative "
           "coefficient equals the global one\n";
    census.triangles = triangle_count(g);
    census.wedges = wedge_count(g);
    census.closed_allowed = census.triangles;
    census.open_allowed = census.wedges - 3 * census.triangles;
    census.allowed_triangles = choose3(g.vertex_count());
    allowed_pairs = choose2(g.vertex_count());
  }

  out << "vertices: " << g.vertex_count() << "\n";
  out << "edges: " << g.edge_count() << "\n";
  out << "allowed pairs: " << allowed_pairs << "\n";
  out << "triangles: " << census.triangles << "\n";
  out << "wedges: " << census.wedges << "\n";
  out << "allowed triangles: " << census.allowed_triangles << "\n";
  out << "closed allowed: " << census.closed_allowed << "\n";
  out << "open allowed: " << census.open_allowed << "\n";

  const Coefficient c_global = Coefficient::ratio(
      checked_mul(3, census.triangles, "triangle count"), census.wedges);
  const Count closed3 = checked_mul(3, census.closed_allowed, "closed count");
  const Coefficient c_relative =
      Coefficient::ratio(closed3, checked_add(closed3, census.open_allowed));
  out << "C = " << render_coefficient(c_global, args.undefined_as_zero) << "\n";
  out << "C_R = " << render_coefficient(c_relative, args.undefined_as_zero) << "\n";
  try {
    out << "C_avg = " << render_coefficient(average_local_clustering(g), args.undefined_as_zero)
        << "\n";
  } catch (const OverflowError&) {
    // The exact rational mean can outgrow 64 bits; fall back to a decimal.
    double sum = 0.0;
    Count counted = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const Count possible = choose2(g.degree(v));
      if (possible == 0) continue;
      sum += static_cast<double>(neighborhood_edge_count(g, v)) /
             static_cast<double>(possible);
      ++counted;
    }
    out << "C_avg ~= " << format_decimal(sum / static_cast<double>(counted)) << "\n";
  }

  if (args.per_vertex) {
    out << "vertex degree local relative_local\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const Coefficient local = local_clustering(g, v);
      const Coefficient relative = mask ? relative_local_clustering(g, *mask, v) : local;
      out << parsed.labels.label(v) << " " << g.degree(v) << " "
          << render_fraction(local, args.undefined_as_zero) << " "
          << render_fraction(relative, args.undefined_as_zero) << "\n";
    }
  }
  return 0;
}

struct FullGraphArgs {
  std::string membership_path;
  std::string out_path;
};

inline int run_fullgraph(const FullGraphArgs& args, std::ostream& out, std::ostream& err) {
  const ParsedMembership membership = load_membership(args.membership_path);
  if (membership.duplicates_dropped > 0)
    err << "warning: dropped " << membership.duplicates_dropped
        << " duplicate membership(s) from " << args.membership_path << "\n";
  const CapacityMask mask = capacity_from_affiliation(membership.affiliation);
  const Graph graph = full_graph(mask);
  err << "individuals: " << membership.affiliation.individual_count()
      << ", groups: " << membership.affiliation.group_count()
      << ", allowed pairs: " << mask.pair_count() << "\n";
  const auto writer = [&](std::ostream& o) { write_edge_list(o, graph, membership.individuals); };
  if (args.out_path.empty()) {
    writer(out);
  } else {
    write_file_atomic(args.out_path, writer);
    out << "wrote " << graph.edge_count() << " edge(s) to " << args.out_path << "\n";
  }
  return 0;
}

struct GenerateArgs {
  VertexId individuals = 0;
  VertexId groups = 0;
  double q = 0.0;
  VertexId k = 0;
  const CLI::Option* q_option = nullptr;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string graph_out;
  std::string mask_out;
};

inline ModelParams make_params(VertexId individuals, VertexId groups,
                               const CLI::Option* q_option, double q, VertexId k, double p) {
  ModelParams params;
  params.individuals = individuals;
  params.groups = groups;
  params.edge_prob = p;
  if (q_option != nullptr && q_option->count() > 0)
    params.membership = BernoulliMembership{q};
  else
    params.membership = FixedMembership{k};
  return params;
}

inline int run_generate(const GenerateArgs& args, std::ostream& out, std::ostream&) {
  const ModelParams params =
      make_params(args.individuals, args.groups, args.q_option, args.q, args.k, args.p);
  const Seed master{args.seed};
  const auto affiliation = sample_affiliation(params, derive_seed(master, 0));
  const auto mask = capacity_from_affiliation(affiliation);
  const auto graph = sample_network(mask, args.p, derive_seed(master, 1));
  const auto labels = LabelTable::identity(params.individuals);
  write_file_atomic(args.graph_out,
                    [&](std::ostream& o) { write_edge_list(o, graph, labels); });
  write_file_atomic(args.mask_out,
                    [&](std::ostream& o) { write_edge_list(o, full_graph(mask), labels); });
  out << "vertices: " << graph.vertex_count() << ", allowed pairs: " << mask.pair_count()
      << ", edges: " << graph.edge_count() << "\n";
  out << "wrote " << args.graph_out << " and " << args.mask_out << "\n";
  return 0;
}

struct SweepArgs {
  VertexId individuals = 0;
  VertexId groups = 0;
  double q = 0.0;
  VertexId k = 0;
  const CLI::Option* q_option = nullptr;
  std::vector<double> p_values;
  Count replicates = 30;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_path;
};

inline int run_sweep_command(const SweepArgs& args, std::ostream& out, std::ostream&) {
  ExperimentConfig config;
  config.params = make_params(args.individuals, args.groups, args.q_option, args.q, args.k,
                              args.p_values.empty() ? 0.0 : args.p_values.front());
  config.p_values = args.p_values;
  config.replicates = args.replicates;
  config.seed = Seed{args.seed};
  config.threads = args.threads;
  const SweepResult result = run_sweep(config);
  if (args.out_path.empty()) {
    write_sweep_csv(out, result);
  } else {
    write_file_atomic(args.out_path, [&](std::ostream& o) { write_sweep_csv(o, result); });
    out << "wrote " << result.replicates.size() << " replicate row(s) to " << args.out_path
        << "\n";
  }
  return 0;
}

struct OracleCheckArgs {
  Count instances = 1000;
  VertexId max_vertices = 8;
  std::uint64_t seed = 0;
};

inline int run_oracle_check(const OracleCheckArgs& args, std::ostream& out,
                            std::ostream& err) {
  const OracleCheckReport report =
      oracle_spot_check(args.instances, args.max_vertices, Seed{args.seed});
  out << report.agreements << "/" << report.instances << " agree\n";
  if (!report.all_agree()) {
    const auto& m = *report.first_mismatch;
    err << "first mismatch: instance " << m.instance << " (" << m.vertices
        << " vertices, mask density " << format_decimal(m.mask_density) << ", edge density "
        << format_decimal(m.edge_density) << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace cli_detail

// Entry point behind the relcc binary. Exit codes: 0 success, 1 data or
// computation error, 2 usage error.
inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"clustering coefficients under edge-capacity masks"};
  app.name("relcc");
  app.require_subcommand(1);

  cli_detail::MetricsArgs metrics_args;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "compute coefficients and the triangle census");
  metrics_cmd->add_option("--graph", metrics_args.graph_path, "edge list file")->required();
  auto* membership_opt =
      metrics_cmd->add_option("--membership", metrics_args.membership_path,
                              "group membership file defining the capacity mask");
  auto* capacity_opt = metrics_cmd->add_option("--capacity", metrics_args.capacity_path,
                                               "explicit allowed-pair list");
  membership_opt->excludes(capacity_opt);
  capacity_opt->excludes(membership_opt);
  metrics_cmd->add_flag("--lenient", metrics_args.lenient,
                        "drop self-loops and duplicate edges instead of failing");
  metrics_cmd->add_flag("--allow-violations", metrics_args.allow_violations,
                        "keep going when network edges fall outside the mask");
  metrics_cmd->add_flag("--undefined-as-zero", metrics_args.undefined_as_zero,
                        "print undefined coefficients as 0");
  metrics_cmd->add_flag("--per-vertex", metrics_args.per_vertex,
                        "print per-vertex local coefficients");

  cli_detail::FullGraphArgs fullgraph_args;
  auto* fullgraph_cmd =
      app.add_subcommand("fullgraph", "write the graph of all allowed pairs");
  fullgraph_cmd->add_option("--membership", fullgraph_args.membership_path,
                            "group membership file")
      ->required();
  fullgraph_cmd->add_option("--out", fullgraph_args.out_path,
                            "output path (stdout when omitted)");

  cli_detail::GenerateArgs generate_args;
  auto* generate_cmd =
      app.add_subcommand("generate", "sample one affiliation network and mask");
  generate_cmd->add_option("--n", generate_args.individuals, "individuals")->required();
  generate_cmd->add_option("--m", generate_args.groups, "groups")->required();
  auto* generate_rule = generate_cmd->add_option_group("membership rule");
  auto* generate_q = generate_rule->add_option("--q", generate_args.q,
                                               "Bernoulli membership probability");
  generate_rule->add_option("--k", generate_args.k, "exact groups per individual");
  generate_rule->require_option(1);
  generate_args.q_option = generate_q;
  generate_cmd->add_option("--p", generate_args.p, "edge probability for allowed pairs")
      ->required();
  generate_cmd->add_option("--seed", generate_args.seed, "master seed")->required();
  generate_cmd->add_option("--graph-out", generate_args.graph_out, "edge list output path")
      ->required();
  generate_cmd->add_option("--mask-out", generate_args.mask_out, "allowed-pair output path")
      ->required();

  cli_detail::SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over p values");
  sweep_cmd->add_option("--n", sweep_args.individuals, "individuals")->required();
  sweep_cmd->add_option("--m", sweep_args.groups, "groups")->required();
  auto* sweep_rule = sweep_cmd->add_option_group("membership rule");
  auto* sweep_q =
      sweep_rule->add_option("--q", sweep_args.q, "Bernoulli membership probability");
  sweep_rule->add_option("--k", sweep_args.k, "exact groups per individual");
  sweep_rule->require_option(1);
  sweep_args.q_option = sweep_q;
  sweep_cmd->add_option("--p", sweep_args.p_values, "comma-separated edge probabilities")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--reps", sweep_args.replicates, "replicates per p value");
  sweep_cmd->add_option("--seed", sweep_args.seed, "master seed")->required();
  sweep_cmd->add_option("--threads", sweep_args.threads, "worker threads");
  sweep_cmd->add_option("--out", sweep_args.out_path, "CSV path (stdout when omitted)");

  cli_detail::OracleCheckArgs oracle_args;
  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "cross-check the census against the subset oracle");
  oracle_cmd->add_option("--instances", oracle_args.instances, "random instances to run");
  oracle_cmd->add_option("--max-n", oracle_args.max_vertices, "largest instance size")
      ->check(CLI::Range(3, 12));
  oracle_cmd->add_option("--seed", oracle_args.seed, "master seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(metrics_cmd))
      return cli_detail::run_metrics(metrics_args, std::cout, std::cerr);
    if (app.got_subcommand(fullgraph_cmd))
      return cli_detail::run_fullgraph(fullgraph_args, std::cout, std::cerr);
    if (app.got_subcommand(generate_cmd))
      return cli_detail::run_generate(generate_args, std::cout, std::cerr);
    if (app.got_subcommand(sweep_cmd))
      return cli_detail::run_sweep_command(sweep_args, std::cout, std::cerr);
    if (app.got_subcommand(oracle_cmd))
      return cli_detail::run_oracle_check(oracle_args, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "relcc: error[" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "relcc: error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace relcc
