#pragma once

#include <cstddef>
#include <string_view>

#include "wngf/graph.hpp"

namespace wngf {

enum class DichotomizationMethod { Threshold, Backbone };

/// Which reduction to apply and its one meaningful parameter.
struct DichotomizationSpec {
  DichotomizationMethod method = DichotomizationMethod::Threshold;
  double fraction = 0.0; // Threshold: share of lowest-weight edges removed, [0, 1)
  double alpha = 1.0;    // Backbone: significance level, (0, 1]

  static DichotomizationSpec threshold(double fraction);
  static DichotomizationSpec backbone(double alpha);
};

struct RetentionReport {
  std::size_t nodes_before = 0;
  /// Original nodes with at least one incident edge after the cut.
  std::size_t nodes_retained = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  bool all_nodes_retained = false;
};

/// Removes exactly floor(fraction * m) edges, the smallest under
/// (weight, source label, target label). Survivors get weight 1.0 unless
/// `keep_weights` is set. The node set is preserved. Throws
/// std::invalid_argument unless 0 <= fraction < 1.
WeightedDigraph threshold_cut(const WeightedDigraph &g, double fraction,
                              bool keep_weights = false);

/// Disparity-filter null-model tail probability (1 - p)^(k - 1) for an edge
/// carrying share `p` of its endpoint's strength among `k` edges.
double disparity_significance(double p, std::size_t k);

/// Directed multiscale backbone. An edge survives if its significance is
/// below `alpha` at the source (out-share, out-degree) or at the target
/// (in-share, in-degree). A test at an endpoint of direction-degree 1 always
/// passes. Survivors get weight 1.0 unless `keep_weights` is set.
WeightedDigraph backbone(const WeightedDigraph &g, double alpha, bool keep_weights = false);

WeightedDigraph dichotomize(const WeightedDigraph &g, const DichotomizationSpec &spec,
                            bool keep_weights = false);

/// Throws GraphError if `reduced` has a node `original` lacks.
RetentionReport retention_report(const WeightedDigraph &original,
                                 const WeightedDigraph &reduced);

std::string_view method_name(DichotomizationMethod m);

} // namespace wngf
