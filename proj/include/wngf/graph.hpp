#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wngf {

using NodeId = std::uint32_t;
using GroupId = std::int32_t;

/// Raised for any violation of the graph or partition invariants.
class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One labeled input edge as read from a file or built by hand.
struct EdgeRecord {
  std::string source;
  std::string target;
  double weight = 0.0;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  double weight = 0.0;
};

/// Immutable directed graph with strictly positive edge weights.
///
/// Nodes are indexed by the lexicographic (byte-wise) order of their labels.
/// Out- and in-adjacency are stored as CSR arrays with neighbors sorted by
/// index; an edge map gives constant-time weight lookup.
class WeightedDigraph {
public:
  WeightedDigraph() = default;

  /// Builds from already-indexed edges. `labels` must be sorted and unique;
  /// every edge must reference a valid node, carry a finite positive weight,
  /// and not be a self-loop or a duplicate.
  static WeightedDigraph from_indexed(std::vector<std::string> labels,
                                      std::vector<Edge> edges);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const std::string> labels() const { return labels_; }
  const std::string &label(NodeId v) const { return labels_.at(v); }

  std::optional<NodeId> find(std::string_view label) const;
  /// Throws GraphError for an unknown label.
  NodeId index_of(std::string_view label) const;

  /// Weight of q->s, or exactly 0 when no such edge exists.
  double weight(NodeId q, NodeId s) const;
  double weight(std::string_view q, std::string_view s) const;
  bool has_edge(NodeId q, NodeId s) const { return weight(q, s) > 0.0; }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return row(out_offsets_, out_targets_, v);
  }
  std::span<const double> out_weights(NodeId v) const {
    return row(out_offsets_, out_w_, v);
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return row(in_offsets_, in_sources_, v);
  }
  std::span<const double> in_weights(NodeId v) const {
    return row(in_offsets_, in_w_, v);
  }

  /// All edges ordered by (source, target) index.
  std::vector<Edge> edges() const;

  friend bool operator==(const WeightedDigraph &a, const WeightedDigraph &b) {
    return a.labels_ == b.labels_ && a.out_offsets_ == b.out_offsets_ &&
           a.out_targets_ == b.out_targets_ && a.out_w_ == b.out_w_;
  }

private:
  template <class T>
  static std::span<const T> row(const std::vector<std::size_t> &offsets,
                                const std::vector<T> &data, NodeId v) {
    return std::span<const T>(data).subspan(offsets.at(v),
                                            offsets[v + 1] - offsets[v]);
  }

  std::uint64_t key(NodeId q, NodeId s) const {
    return static_cast<std::uint64_t>(q) * labels_.size() + s;
  }

  std::vector<std::string> labels_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<double> out_w_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_w_;
  std::unordered_map<std::uint64_t, double> lookup_;
};

/// Builds a graph from labeled records. The node set is the union of edge
/// endpoints and `extra_nodes` (the latter lets isolated nodes survive).
/// Duplicate (source, target) records are rejected, never summed.
WeightedDigraph build_graph(std::span<const EdgeRecord> records,
                            bool drop_self_loops,
                            std::span<const std::string> extra_nodes = {});

/// Total map node label -> group label.
class GroupPartition {
public:
  GroupPartition() = default;
  GroupPartition(std::initializer_list<std::pair<std::string, std::string>> entries);

  /// Throws GraphError on an empty node or group label, or a repeated node.
  void assign(std::string node, std::string group);

  const std::map<std::string, std::string> &assignment() const {
    return assignment_;
  }
  std::size_t size() const { return assignment_.size(); }

  friend bool operator==(const GroupPartition &, const GroupPartition &) = default;

private:
  std::map<std::string, std::string> assignment_;
};

/// A graph together with a partition covering exactly its node set. Groups
/// get dense ids in lexicographic label order.
class PartitionedGraph {
public:
  const WeightedDigraph &graph() const { return graph_; }

  std::span<const std::string> group_labels() const { return group_labels_; }
  GroupId group_id(NodeId v) const { return node_group_.at(v); }
  std::span<const GroupId> node_groups() const { return node_group_; }
  const std::string &group(NodeId v) const { return group_labels_[node_group_.at(v)]; }
  const std::string &group(std::string_view node) const;

  /// Node count per group id.
  std::span<const std::size_t> group_size_by_id() const { return sizes_; }
  /// Node count per group label; every value >= 1, values sum to n.
  std::map<std::string, std::size_t> group_sizes() const;

private:
  friend PartitionedGraph attach_partition(WeightedDigraph g,
                                           const GroupPartition &p);

  WeightedDigraph graph_;
  std::vector<std::string> group_labels_;
  std::vector<GroupId> node_group_;
  std::vector<std::size_t> sizes_;
};

/// Throws GraphError listing every graph node absent from `p` and every
/// partition entry naming a node that is not in the graph.
PartitionedGraph attach_partition(WeightedDigraph g, const GroupPartition &p);

inline std::map<std::string, std::size_t> group_sizes(const PartitionedGraph &pg) {
  return pg.group_sizes();
}

} // namespace wngf
