#include "wngf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wngf {

namespace {

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items) {
    if (!out.empty())
      out += ' ';
    out += s;
  }
  return out;
}

void check_weight(double w, std::string_view where) {
  if (!std::isfinite(w))
    throw GraphError("non-finite weight on edge " + std::string(where));
  if (w <= 0.0)
    throw GraphError("non-positive weight on edge " + std::string(where));
}

} // namespace

WeightedDigraph WeightedDigraph::from_indexed(std::vector<std::string> labels,
                                              std::vector<Edge> edges) {
  for (std::size_t i = 1; i < labels.size(); ++i)
    if (!(labels[i - 1] < labels[i]))
      throw GraphError("node labels must be sorted and unique");

  WeightedDigraph g;
  g.labels_ = std::move(labels);
  const std::size_t n = g.labels_.size();

  std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge &e = edges[i];
    if (e.source >= n || e.target >= n)
      throw GraphError("edge references a node index out of range");
    const std::string where = g.labels_[e.source] + "->" + g.labels_[e.target];
    if (e.source == e.target)
      throw GraphError("self-loop on node " + g.labels_[e.source]);
    check_weight(e.weight, where);
    if (i > 0 && edges[i - 1].source == e.source && edges[i - 1].target == e.target)
      throw GraphError("duplicate edge " + where);
  }

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge &e : edges) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.target + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }

  g.out_targets_.resize(edges.size());
  g.out_w_.resize(edges.size());
  g.in_sources_.resize(edges.size());
  g.in_w_.resize(edges.size());
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  g.lookup_.reserve(edges.size());
  // Edges are sorted by (source, target), so both CSR rows come out sorted.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge &e = edges[i];
    g.out_targets_[i] = e.target;
    g.out_w_[i] = e.weight;
    const std::size_t slot = in_fill[e.target]++;
    g.in_sources_[slot] = e.source;
    g.in_w_[slot] = e.weight;
    g.lookup_.emplace(g.key(e.source, e.target), e.weight);
  }
  return g;
}

std::optional<NodeId> WeightedDigraph::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

NodeId WeightedDigraph::index_of(std::string_view label) const {
  if (auto v = find(label))
    return *v;
  throw GraphError("unknown node " + std::string(label));
}

double WeightedDigraph::weight(NodeId q, NodeId s) const {
  if (q >= labels_.size() || s >= labels_.size())
    throw GraphError("node index out of range");
  auto it = lookup_.find(key(q, s));
  return it == lookup_.end() ? 0.0 : it->second;
}

double WeightedDigraph::weight(std::string_view q, std::string_view s) const {
  return weight(index_of(q), index_of(s));
}

std::vector<Edge> WeightedDigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId v = 0; v < node_count(); ++v)
    for (std::size_t i = out_offsets_[v]; i < out_offsets_[v + 1]; ++i)
      out.push_back({v, out_targets_[i], out_w_[i]});
  return out;
}

WeightedDigraph build_graph(std::span<const EdgeRecord> records,
                            bool drop_self_loops,
                            std::span<const std::string> extra_nodes) {
  std::set<std::string> names(extra_nodes.begin(), extra_nodes.end());
  for (const auto &r : records) {
    if (r.source.empty() || r.target.empty())
      throw GraphError("empty node label");
    check_weight(r.weight, r.source + "->" + r.target);
    if (r.source == r.target) {
      if (!drop_self_loops)
        throw GraphError("self-loop on node " + r.source);
      // A dropped self-loop still declares its node.
    }
    names.insert(r.source);
    names.insert(r.target);
  }
  if (names.empty())
    throw GraphError("graph has no nodes");

  std::vector<std::string> labels(names.begin(), names.end());
  auto index = [&](const std::string &s) {
    return static_cast<NodeId>(
        std::lower_bound(labels.begin(), labels.end(), s) - labels.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(records.size());
  for (const auto &r : records)
    if (r.source != r.target)
      edges.push_back({index(r.source), index(r.target), r.weight});
  return WeightedDigraph::from_indexed(std::move(labels), std::move(edges));
}

GroupPartition::GroupPartition(
    std::initializer_list<std::pair<std::string, std::string>> entries) {
  for (const auto &[node, group] : entries)
    assign(node, group);
}

void GroupPartition::assign(std::string node, std::string group) {
  if (node.empty())
    throw GraphError("empty node label in partition");
  if (group.empty())
    throw GraphError("empty group label for node " + node);
  auto [it, inserted] = assignment_.emplace(std::move(node), std::move(group));
  if (!inserted)
    throw GraphError("duplicate partition entry for node " + it->first);
}

const std::string &PartitionedGraph::group(std::string_view node) const {
  return group(graph_.index_of(node));
}

std::map<std::string, std::size_t> PartitionedGraph::group_sizes() const {
  std::map<std::string, std::size_t> out;
  for (std::size_t j = 0; j < group_labels_.size(); ++j)
    out.emplace(group_labels_[j], sizes_[j]);
  return out;
}

PartitionedGraph attach_partition(WeightedDigraph g, const GroupPartition &p) {
  std::vector<std::string> missing;
  for (const auto &label : g.labels())
    if (!p.assignment().contains(label))
      missing.push_back(label);
  std::vector<std::string> unknown;
  for (const auto &[node, group] : p.assignment())
    if (!g.find(node))
      unknown.push_back(node);
  if (!missing.empty() || !unknown.empty()) {
    std::string msg;
    if (!missing.empty())
      msg = "partition missing nodes: " + join(missing);
    if (!unknown.empty())
      msg += (msg.empty() ? "" : "; ") + std::string("partition has unknown nodes: ") +
             join(unknown);
    throw GraphError(msg);
  }

  PartitionedGraph pg;
  std::set<std::string> groups;
  for (const auto &[node, group] : p.assignment())
    groups.insert(group);
  pg.group_labels_.assign(groups.begin(), groups.end());
  pg.sizes_.assign(pg.group_labels_.size(), 0);
  pg.node_group_.reserve(g.node_count());
  for (const auto &label : g.labels()) {
    const std::string &group = p.assignment().at(label);
    const auto id = static_cast<GroupId>(
        std::lower_bound(pg.group_labels_.begin(), pg.group_labels_.end(), group) -
        pg.group_labels_.begin());
    pg.node_group_.push_back(id);
    ++pg.sizes_[id];
  }
  pg.graph_ = std::move(g);
  return pg;
}

} // namespace wngf
