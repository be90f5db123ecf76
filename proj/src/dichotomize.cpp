#include "wngf/dichotomize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace wngf {

namespace {

WeightedDigraph rebuild(const WeightedDigraph &g, std::vector<Edge> kept, bool keep_weights) {
  if (!keep_weights)
    for (Edge &e : kept)
      e.weight = 1.0;
  return WeightedDigraph::from_indexed({g.labels().begin(), g.labels().end()},
                                       std::move(kept));
}

} // namespace

DichotomizationSpec DichotomizationSpec::threshold(double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw std::invalid_argument("threshold fraction must lie in [0, 1)");
  return {DichotomizationMethod::Threshold, fraction, 1.0};
}

DichotomizationSpec DichotomizationSpec::backbone(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("backbone alpha must lie in (0, 1]");
  return {DichotomizationMethod::Backbone, 0.0, alpha};
}

WeightedDigraph threshold_cut(const WeightedDigraph &g, double fraction, bool keep_weights) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw std::invalid_argument("threshold fraction must lie in [0, 1)");
  std::vector<Edge> edges = g.edges();
  const auto removed = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(edges.size())));
  // Node ids follow label order, so comparing ids compares labels.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
    if (a.weight != b.weight)
      return a.weight < b.weight;
    if (a.source != b.source)
      return a.source < b.source;
    return a.target < b.target;
  });
  edges.erase(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(removed));
  return rebuild(g, std::move(edges), keep_weights);
}

double disparity_significance(double p, std::size_t k) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("edge share p must lie in (0, 1]");
  if (k < 1)
    throw std::invalid_argument("degree k must be at least 1");
  return std::pow(1.0 - p, static_cast<double>(k - 1));
}

WeightedDigraph backbone(const WeightedDigraph &g, double alpha, bool keep_weights) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("backbone alpha must lie in (0, 1]");
  const std::size_t n = g.node_count();
  std::vector<double> out_strength(n, 0.0), in_strength(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (double w : g.out_weights(v))
      out_strength[v] += w;
    for (double w : g.in_weights(v))
      in_strength[v] += w;
  }

  auto passes = [alpha](double w, double strength, std::size_t degree) {
    if (degree == 1)
      return true;
    // For k >= 2 the exact tail probability is < 1; at alpha = 1 that must
    // hold even when (1 - p) rounds to 1 for a vanishing share.
    if (alpha == 1.0)
      return true;
    return disparity_significance(std::min(w / strength, 1.0), degree) < alpha;
  };

  std::vector<Edge> kept;
  for (const Edge &e : g.edges()) {
    const bool out_ok = passes(e.weight, out_strength[e.source], g.out_neighbors(e.source).size());
    const bool in_ok = passes(e.weight, in_strength[e.target], g.in_neighbors(e.target).size());
    if (out_ok || in_ok)
      kept.push_back(e);
  }
  return rebuild(g, std::move(kept), keep_weights);
}

WeightedDigraph dichotomize(const WeightedDigraph &g, const DichotomizationSpec &spec,
                            bool keep_weights) {
  return spec.method == DichotomizationMethod::Threshold
             ? threshold_cut(g, spec.fraction, keep_weights)
             : backbone(g, spec.alpha, keep_weights);
}

RetentionReport retention_report(const WeightedDigraph &original,
                                 const WeightedDigraph &reduced) {
  for (const auto &label : reduced.labels())
    if (!original.find(label))
      throw GraphError("reduced graph has node " + label + " absent from the original");

  RetentionReport r;
  r.nodes_before = original.node_count();
  r.edges_before = original.edge_count();
  r.edges_after = reduced.edge_count();
  for (const auto &label : original.labels()) {
    const auto v = reduced.find(label);
    if (v && (!reduced.out_neighbors(*v).empty() || !reduced.in_neighbors(*v).empty()))
      ++r.nodes_retained;
  }
  r.all_nodes_retained = r.nodes_retained == r.nodes_before;
  return r;
}

std::string_view method_name(DichotomizationMethod m) {
  return m == DichotomizationMethod::Threshold ? "threshold" : "backbone";
}

} // namespace wngf
