#include "wngf/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <set>

#include "wngf/brokerage.hpp"
#include "wngf/dichotomize.hpp"
#include "wngf/io.hpp"
#include "wngf/stats.hpp"

namespace wngf::cli {

namespace {

namespace fs = std::filesystem;

/// A bad flag combination or value detected after parsing.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Re-raises domain errors as file-scoped diagnostics.
template <class F> auto at_file(const fs::path &path, F &&f) {
  try {
    return f();
  } catch (const io::IoError &) {
    throw;
  } catch (const std::exception &e) {
    throw io::IoError(path, 0, e.what());
  }
}

struct GraphInput {
  std::string edges;
  std::vector<std::string> matrices;
  bool aggregate = false;
  bool drop_self_loops = false;
  char delimiter = ',';

  void add_to(CLI::App &cmd) {
    auto *e = cmd.add_option("--edges", edges, "Edge-list CSV (source,target,weight)");
    auto *m = cmd.add_option("--matrix", matrices, "Square adjacency-matrix CSV (repeatable)");
    e->excludes(m);
    cmd.add_flag("--aggregate", aggregate, "Sum several --matrix files element-wise");
    cmd.add_flag("--drop-self-loops", drop_self_loops, "Discard self-loop records");
    cmd.add_option("--delimiter", delimiter, "Field delimiter of the input")
        ->capture_default_str();
  }

  void validate() const {
    if (edges.empty() && matrices.empty())
      throw UsageError("--edges: one of --edges or --matrix is required");
    if (matrices.size() > 1 && !aggregate)
      throw UsageError("--matrix: several matrices need --aggregate");
  }

  std::string source() const { return edges.empty() ? matrices.front() : edges; }

  WeightedDigraph load(std::span<const std::string> extra_nodes = {}) const {
    if (!edges.empty()) {
      const auto records = io::read_edge_list(edges, {delimiter, true});
      return at_file(edges, [&] { return build_graph(records, drop_self_loops, extra_nodes); });
    }
    io::MatrixInput input;
    input.paths.assign(matrices.begin(), matrices.end());
    input.aggregate = aggregate;
    input.drop_self_loops = drop_self_loops;
    input.delimiter = delimiter;
    auto data = io::load_adjacency_matrices(input);
    data.labels.insert(data.labels.end(), extra_nodes.begin(), extra_nodes.end());
    return at_file(matrices.front(),
                   [&] { return build_graph(data.records, drop_self_loops, data.labels); });
  }
};

struct Reduction {
  std::string method;
  std::optional<double> fraction;
  std::optional<double> alpha;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--method", method, "threshold or backbone")
        ->check(CLI::IsMember({"threshold", "backbone"}));
    cmd.add_option("--fraction", fraction, "Share of lowest-weight edges removed, [0,1)");
    cmd.add_option("--alpha", alpha, "Backbone significance level, (0,1]");
  }

  bool requested() const { return !method.empty() || fraction || alpha; }

  DichotomizationSpec spec() const {
    if (method.empty())
      throw UsageError("--method: required with --fraction or --alpha");
    if (method == "threshold") {
      if (!fraction)
        throw UsageError("--fraction: required for --method threshold");
      if (alpha)
        throw UsageError("--alpha: only valid with --method backbone");
      if (!(*fraction >= 0.0 && *fraction < 1.0))
        throw UsageError("--fraction: must lie in [0, 1)");
      return DichotomizationSpec::threshold(*fraction);
    }
    if (!alpha)
      throw UsageError("--alpha: required for --method backbone");
    if (fraction)
      throw UsageError("--fraction: only valid with --method threshold");
    if (!(*alpha > 0.0 && *alpha <= 1.0))
      throw UsageError("--alpha: must lie in (0, 1]");
    return DichotomizationSpec::backbone(*alpha);
  }
};

void print_retention(std::ostream &out, std::ostream &err, const RetentionReport &r,
                     const WeightedDigraph &original, const WeightedDigraph &reduced) {
  out << "edges " << r.edges_before << " -> " << r.edges_after << '\n';
  out << "nodes retained " << r.nodes_retained << " / " << r.nodes_before << '\n';
  if (!r.all_nodes_retained) {
    std::string lost;
    for (const auto &label : original.labels()) {
      const auto v = reduced.find(label);
      if (!v || (reduced.out_neighbors(*v).empty() && reduced.in_neighbors(*v).empty()))
        lost += (lost.empty() ? "" : " ") + label;
    }
    err << "warning: " << (r.nodes_before - r.nodes_retained)
        << " nodes lost all edges: " << lost << '\n';
  }
}

struct ComputeCmd {
  GraphInput input;
  Reduction reduction;
  std::string groups;
  std::string mode = "wngf";
  std::string out;
  std::string kernel = "auto";
  unsigned workers = 1;
  bool oracle_check = false;
  bool keep_isolated = false;

  void add_to(CLI::App &cmd) {
    input.add_to(cmd);
    reduction.add_to(cmd);
    cmd.add_option("--groups", groups, "Partition CSV (node,group)")->required();
    cmd.add_option("--mode", mode, "wngf or binary")
        ->check(CLI::IsMember({"wngf", "binary"}))
        ->capture_default_str();
    cmd.add_option("--out", out, "Profile CSV to write")->required();
    cmd.add_option("--kernel", kernel, "Triad kernel: auto, scalar, avx2 or neon")
        ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}))
        ->capture_default_str();
    cmd.add_option("--workers", workers, "Worker threads, 0 for all cores")
        ->capture_default_str();
    cmd.add_flag("--oracle-check", oracle_check,
                 "Cross-check counts against the brute-force oracle (n <= 64)");
    cmd.add_flag("--keep-isolated", keep_isolated,
                 "Add partition nodes without edges as isolated nodes");
  }

  int run(std::ostream &os, std::ostream &err) const {
    input.validate();
    const BrokerageMode m = *parse_mode(mode);
    std::optional<DichotomizationSpec> reduce;
    if (reduction.requested()) {
      if (m != BrokerageMode::Binary)
        throw UsageError("--method: dichotomization requires --mode binary");
      reduce = reduction.spec();
    }
    CountOptions options;
    if (kernel != "auto") {
      options.kernel = *simd::parse_isa(kernel);
      if (!simd::isa_available(options.kernel))
        throw UsageError("--kernel: " + kernel + " is not available on this machine");
    }
    options.workers = workers;

    const GroupPartition partition = io::read_partition(groups);
    std::vector<std::string> extra;
    if (keep_isolated)
      for (const auto &[node, group] : partition.assignment())
        extra.push_back(node);
    WeightedDigraph g = input.load(extra);
    if (reduce) {
      WeightedDigraph reduced = dichotomize(g, *reduce);
      os << "dichotomized by " << method_name(reduce->method) << '\n';
      print_retention(os, err, retention_report(g, reduced), g, reduced);
      g = std::move(reduced);
    }
    const PartitionedGraph pg = at_file(groups, [&] { return attach_partition(std::move(g), partition); });

    const RoleCounts counts = count_roles(pg, m, options);
    os << "nodes " << pg.graph().node_count() << " edges " << pg.graph().edge_count()
       << " groups " << pg.group_labels().size() << " mode " << mode_name(m) << '\n';

    if (oracle_check) {
      if (pg.graph().node_count() > 64) {
        os << "oracle-check skipped: " << pg.graph().node_count() << " nodes exceeds 64\n";
      } else if (!check_oracle(pg, m, counts, err)) {
        return kExitData;
      } else {
        os << "oracle-check passed\n";
      }
    }

    const BrokerageProfile profile = normalize(counts, pg);
    io::write_profile(profile, out);
    os << "wrote " << out << '\n';
    return kExitOk;
  }

  static bool check_oracle(const PartitionedGraph &pg, BrokerageMode m, const RoleCounts &fast,
                           std::ostream &err) {
    const RoleCounts slow = brute_force_counts(pg, m);
    const WeightedDigraph &g = pg.graph();
    for (NodeId v = 0; v < g.node_count(); ++v)
      for (Role role : kRoles) {
        const auto a = fast.count(v, role);
        const auto b = slow.count(v, role);
        if (a == b)
          continue;
        err << "oracle-check: node " << g.label(v) << " role " << role_name(role)
            << " count_roles=" << a << " brute_force=" << b;
        if (auto t = first_brokered_triad(pg, m, v, role))
          err << " triad " << g.label((*t)[0]) << "->" << g.label((*t)[1]) << "->"
              << g.label((*t)[2]);
        err << '\n';
        return false;
      }
    return true;
  }
};

struct DichotomizeCmd {
  GraphInput input;
  Reduction reduction;
  std::string out;
  bool keep_weights = false;

  void add_to(CLI::App &cmd) {
    input.add_to(cmd);
    reduction.add_to(cmd);
    cmd.add_option("--out", out, "Reduced edge-list CSV to write")->required();
    cmd.add_flag("--keep-weights", keep_weights, "Keep original weights on surviving edges");
  }

  int run(std::ostream &os, std::ostream &err) const {
    input.validate();
    if (reduction.method.empty())
      throw UsageError("--method: required");
    const DichotomizationSpec spec = reduction.spec();
    const WeightedDigraph g = input.load();
    const WeightedDigraph reduced = dichotomize(g, spec, keep_weights);
    os << "method " << method_name(spec.method) << ' '
       << (spec.method == DichotomizationMethod::Threshold ? "fraction " : "alpha ")
       << io::format_real(spec.method == DichotomizationMethod::Threshold ? spec.fraction
                                                                           : spec.alpha)
       << '\n';
    print_retention(os, err, retention_report(g, reduced), g, reduced);
    io::write_edge_list(reduced, out);
    os << "wrote " << out << '\n';
    return kExitOk;
  }
};

struct CompareCmd {
  std::string a, b, out;
  std::size_t top_k = 5;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--a", a, "First profile CSV")->required();
    cmd.add_option("--b", b, "Second profile CSV")->required();
    cmd.add_option("--top-k", top_k, "Nodes listed per role by score difference")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--out", out, "Report CSV to write")->required();
  }

  int run(std::ostream &os, std::ostream &err) const {
    const BrokerageProfile pa = io::read_profile(a);
    const BrokerageProfile pb = io::read_profile(b);
    const ComparisonReport report =
        at_file(b, [&] { return compare_profiles(pa, pb, top_k); });
    for (const auto &rc : report.roles) {
      os << role_name(rc.role);
      for (const CorrelationResult *c : {&rc.pearson, &rc.spearman})
        os << ' ' << correlation_name(c->kind) << ' '
           << (c->coefficient ? io::format_real(*c->coefficient) : "NA");
      os << '\n';
    }
    if (pa.nodes.size() < 10)
      err << "warning: " << pa.nodes.size()
          << " nodes; p-values from the t-approximation are unreliable below 10\n";
    io::write_report(report, out);
    os << "wrote " << out << '\n';
    return kExitOk;
  }
};

struct EcdfCmd {
  std::vector<std::string> profiles;
  std::vector<std::string> names;
  std::string out;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--profile", profiles, "Profile CSV (repeatable)")->required();
    cmd.add_option("--name", names, "Method name per --profile (default: file stem)");
    cmd.add_option("--out", out, "ECDF CSV to write")->required();
  }

  int run(std::ostream &os, std::ostream &) const {
    if (!names.empty() && names.size() != profiles.size())
      throw UsageError("--name: give one name per --profile");
    std::vector<io::EcdfSeries> series;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const std::string method = names.empty() ? fs::path(profiles[i]).stem().string() : names[i];
      if (!seen.insert(method).second)
        throw UsageError("--name: duplicate method name '" + method + "'");
      const BrokerageProfile p = io::read_profile(profiles[i]);
      for (Role role : kRoles) {
        const auto scores = p.scores(role);
        series.push_back({role, method, at_file(profiles[i], [&] { return ecdf(scores); })});
      }
    }
    io::write_ecdf(series, out);
    os << "wrote " << out << '\n';
    return kExitOk;
  }
};

} // namespace

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Weighted and binary Gould-Fernandez brokerage roles", "wngf"};
  app.require_subcommand(1);

  ComputeCmd compute;
  DichotomizeCmd dichot;
  CompareCmd compare;
  EcdfCmd ecdf_cmd;
  auto *c1 = app.add_subcommand("compute", "Brokerage profile of a partitioned graph");
  compute.add_to(*c1);
  auto *c2 = app.add_subcommand("dichotomize", "Reduce a weighted graph to a binary one");
  dichot.add_to(*c2);
  auto *c3 = app.add_subcommand("compare", "Correlate two brokerage profiles");
  compare.add_to(*c3);
  auto *c4 = app.add_subcommand("ecdf", "ECDF points of normalized scores per role");
  ecdf_cmd.add_to(*c4);

  std::vector<std::string> storage{"wngf"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &s : storage)
    argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c1->parsed())
      return compute.run(out, err);
    if (c2->parsed())
      return dichot.run(out, err);
    if (c3->parsed())
      return compare.run(out, err);
    return ecdf_cmd.run(out, err);
  } catch (const UsageError &e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << e.what() << '\n';
    return kExitData;
  }
}

} // namespace wngf::cli
