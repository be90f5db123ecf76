#include "wngf/brokerage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace wngf {

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "coordinator", "gatekeeper", "representative", "itinerant", "liaison"};

// Reciprocal flows fed to the triad kernel. Binary mode treats every edge as
// unit flow, which turns the weighted test into the open two-path test.
double resistance(double w, BrokerageMode mode) {
  return mode == BrokerageMode::Weighted ? 1.0 / w : 1.0;
}

struct BrokerRows {
  std::vector<std::size_t> offsets;
  std::vector<double> inv;
  std::vector<GroupId> groups;
};

BrokerRows out_rows(const PartitionedGraph &pg, BrokerageMode mode) {
  const WeightedDigraph &g = pg.graph();
  BrokerRows rows;
  rows.offsets.reserve(g.node_count() + 1);
  rows.offsets.push_back(0);
  rows.inv.reserve(g.edge_count());
  rows.groups.reserve(g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto targets = g.out_neighbors(v);
    const auto weights = g.out_weights(v);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      rows.inv.push_back(resistance(weights[i], mode));
      rows.groups.push_back(pg.group_id(targets[i]));
    }
    rows.offsets.push_back(rows.inv.size());
  }
  return rows;
}

void count_block(const PartitionedGraph &pg, BrokerageMode mode, const BrokerRows &rows,
                 simd::TriadKernel kernel, NodeId first, NodeId last,
                 std::vector<PerRole<std::uint64_t>> &out) {
  constexpr double kAbsent = std::numeric_limits<double>::infinity();
  const WeightedDigraph &g = pg.graph();
  std::vector<double> direct(g.node_count(), kAbsent);

  for (NodeId r = first; r < last; ++r) {
    const auto targets = g.out_neighbors(r);
    if (targets.empty())
      continue;
    const GroupId g_r = pg.group_id(r);
    const auto sources = g.in_neighbors(r);
    const auto in_w = g.in_weights(r);
    auto &c = out[r];

    for (std::size_t k = 0; k < sources.size(); ++k) {
      const NodeId q = sources[k];
      const auto q_targets = g.out_neighbors(q);
      const auto q_w = g.out_weights(q);
      for (std::size_t i = 0; i < q_targets.size(); ++i)
        direct[q_targets[i]] = resistance(q_w[i], mode);
      direct[q] = std::numeric_limits<double>::quiet_NaN();

      const GroupId g_q = pg.group_id(q);
      simd::TriadBatch batch;
      batch.inv_qr = resistance(in_w[k], mode);
      batch.inv_from_source = direct.data();
      batch.targets = targets.data();
      batch.inv_rs = rows.inv.data() + rows.offsets[r];
      batch.target_groups = rows.groups.data() + rows.offsets[r];
      batch.count = targets.size();
      batch.source_group = g_q;
      batch.broker_group = g_r;
      const simd::TriadTally t = kernel(batch);

      if (g_q == g_r) {
        c[role_index(Role::Coordinator)] += t.same_as_broker;
        c[role_index(Role::Representative)] += t.brokered - t.same_as_broker;
      } else {
        c[role_index(Role::Gatekeeper)] += t.same_as_broker;
        c[role_index(Role::Itinerant)] += t.same_as_source;
        c[role_index(Role::Liaison)] += t.brokered - t.same_as_broker - t.same_as_source;
      }

      for (NodeId s : q_targets)
        direct[s] = kAbsent;
      direct[q] = kAbsent;
    }
  }
}

std::uint64_t checked_denominator(std::uint64_t c, std::uint64_t d, const std::string &node,
                                  Role role) {
  if (c > d)
    throw std::logic_error("count " + std::to_string(c) + " exceeds denominator " +
                           std::to_string(d) + " for node " + node + " role " +
                           std::string(role_name(role)));
  return d;
}

} // namespace

std::string_view role_name(Role r) { return kRoleNames.at(role_index(r)); }

std::optional<Role> parse_role(std::string_view name) {
  for (Role r : kRoles)
    if (role_name(r) == name)
      return r;
  return std::nullopt;
}

std::string_view mode_name(BrokerageMode m) {
  return m == BrokerageMode::Weighted ? "wngf" : "binary";
}

std::optional<BrokerageMode> parse_mode(std::string_view name) {
  if (name == "wngf" || name == "weighted")
    return BrokerageMode::Weighted;
  if (name == "binary")
    return BrokerageMode::Binary;
  return std::nullopt;
}

bool is_weighted_broker(double z_qr, double z_rs, double z_qs) {
  if (!(z_qr > 0.0) || !(z_rs > 0.0))
    throw std::invalid_argument("broker edges must carry positive flow");
  if (!(z_qs >= 0.0))
    throw std::invalid_argument("direct flow must be non-negative");
  const double direct =
      z_qs == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / z_qs;
  return 1.0 / z_qr + 1.0 / z_rs < direct;
}

std::uint64_t RoleCounts::total(NodeId v) const {
  std::uint64_t t = 0;
  for (std::uint64_t c : nodes.at(v))
    t += c;
  return t;
}

RoleCounts count_roles(const PartitionedGraph &pg, BrokerageMode mode,
                       const CountOptions &options) {
  const std::size_t n = pg.graph().node_count();
  RoleCounts counts;
  counts.nodes.assign(n, PerRole<std::uint64_t>{});
  if (n < 3)
    return counts;

  const simd::TriadKernel kernel = simd::kernel_for(options.kernel);
  const BrokerRows rows = out_rows(pg, mode);

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(n));
  if (workers == 1) {
    count_block(pg, mode, rows, kernel, 0, static_cast<NodeId>(n), counts.nodes);
    return counts;
  }

  // Each worker owns a contiguous block of brokers and writes only their rows.
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const auto first = static_cast<NodeId>(n * w / workers);
    const auto last = static_cast<NodeId>(n * (w + 1) / workers);
    pool.emplace_back([&, first, last] {
      count_block(pg, mode, rows, kernel, first, last, counts.nodes);
    });
  }
  pool.clear();
  return counts;
}

RoleCounts brute_force_counts(const PartitionedGraph &pg, BrokerageMode mode,
                              std::size_t max_nodes) {
  const WeightedDigraph &g = pg.graph();
  const std::size_t n = g.node_count();
  if (n > max_nodes)
    throw std::invalid_argument("brute-force oracle limited to " + std::to_string(max_nodes) +
                                " nodes, graph has " + std::to_string(n));
  RoleCounts counts;
  counts.nodes.assign(n, PerRole<std::uint64_t>{});
  for (NodeId q = 0; q < n; ++q)
    for (NodeId r = 0; r < n; ++r)
      for (NodeId s = 0; s < n; ++s) {
        if (q == r || r == s || q == s)
          continue;
        const double z_qr = g.weight(q, r);
        const double z_rs = g.weight(r, s);
        const double z_qs = g.weight(q, s);
        const bool brokered =
            mode == BrokerageMode::Weighted
                ? z_qr > 0.0 && z_rs > 0.0 && is_weighted_broker(z_qr, z_rs, z_qs)
                : is_binary_broker(z_qr > 0.0, z_rs > 0.0, z_qs > 0.0);
        if (brokered)
          ++counts.nodes[r][role_index(classify_role(pg.group(q), pg.group(r), pg.group(s)))];
      }
  return counts;
}

std::optional<std::array<NodeId, 3>> first_brokered_triad(const PartitionedGraph &pg,
                                                          BrokerageMode mode,
                                                          NodeId broker, Role role) {
  const WeightedDigraph &g = pg.graph();
  const NodeId r = broker;
  for (NodeId q : g.in_neighbors(r))
    for (NodeId s : g.out_neighbors(r)) {
      if (q == s || classify_role(pg.group(q), pg.group(r), pg.group(s)) != role)
        continue;
      const double z_qs = g.weight(q, s);
      const bool brokered = mode == BrokerageMode::Weighted
                                ? is_weighted_broker(g.weight(q, r), g.weight(r, s), z_qs)
                                : z_qs == 0.0;
      if (brokered)
        return std::array<NodeId, 3>{q, r, s};
    }
  return std::nullopt;
}

std::uint64_t role_denominator(Role role, GroupId own_group,
                               std::span<const std::size_t> sizes) {
  if (own_group < 0 || static_cast<std::size_t>(own_group) >= sizes.size())
    throw GraphError("unknown group id " + std::to_string(own_group));
  const std::uint64_t mi = sizes[own_group];
  std::uint64_t others = 0;     // sum of m^j, j != i
  std::uint64_t others_sq = 0;  // sum of m^j * m^j, j != i
  std::uint64_t others_ord = 0; // sum of m^j (m^j - 1), j != i
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (static_cast<GroupId>(j) == own_group)
      continue;
    const std::uint64_t mj = sizes[j];
    others += mj;
    others_sq += mj * mj;
    others_ord += mj * (mj - (mj > 0 ? 1 : 0));
  }
  switch (role) {
  case Role::Coordinator:
    return mi >= 2 ? (mi - 1) * (mi - 2) : 0;
  case Role::Gatekeeper:
  case Role::Representative:
    return mi >= 1 ? others * (mi - 1) : 0;
  case Role::Itinerant:
    return others_ord;
  case Role::Liaison:
    // Ordered pairs (j, k) of distinct groups other than i.
    return others * others - others_sq;
  }
  return 0;
}

std::uint64_t role_denominator(Role role, std::string_view own_group,
                               const std::map<std::string, std::size_t> &sizes) {
  std::vector<std::size_t> by_id;
  GroupId own = -1;
  for (const auto &[label, size] : sizes) {
    if (label == own_group)
      own = static_cast<GroupId>(by_id.size());
    by_id.push_back(size);
  }
  if (own < 0)
    throw GraphError("unknown group " + std::string(own_group));
  return role_denominator(role, own, by_id);
}

const NodeProfile *BrokerageProfile::find(std::string_view node) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node,
                             [](const NodeProfile &p, std::string_view n) { return p.node < n; });
  return it != nodes.end() && it->node == node ? &*it : nullptr;
}

std::vector<double> BrokerageProfile::scores(Role r) const {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const auto &p : nodes)
    out.push_back(p.scores[role_index(r)]);
  return out;
}

BrokerageProfile profile_from_counts(std::vector<NodeProfile> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const NodeProfile &a, const NodeProfile &b) { return a.node < b.node; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i - 1].node == rows[i].node)
      throw GraphError("duplicate node " + rows[i].node + " in profile");

  std::map<std::string, std::size_t> sizes;
  for (const auto &row : rows)
    ++sizes[row.group];
  std::map<std::string, PerRole<std::uint64_t>> denominators;
  for (const auto &[group, size] : sizes) {
    PerRole<std::uint64_t> d{};
    for (Role r : kRoles)
      d[role_index(r)] = role_denominator(r, group, sizes);
    denominators.emplace(group, d);
  }

  BrokerageProfile profile;
  profile.nodes = std::move(rows);
  for (auto &row : profile.nodes) {
    row.denominators = denominators.at(row.group);
    for (Role r : kRoles) {
      const std::size_t i = role_index(r);
      const std::uint64_t c = row.counts[i];
      const std::uint64_t d = checked_denominator(c, row.denominators[i], row.node, r);
      row.scores[i] = d > 0 ? static_cast<double>(c) / static_cast<double>(d) : 0.0;
    }
  }
  return profile;
}

BrokerageProfile normalize(const RoleCounts &counts, const PartitionedGraph &pg) {
  const WeightedDigraph &g = pg.graph();
  if (counts.nodes.size() != g.node_count())
    throw std::invalid_argument("role counts do not match the graph's node count");
  std::vector<NodeProfile> rows;
  rows.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    NodeProfile row;
    row.node = g.label(v);
    row.group = pg.group(v);
    row.counts = counts.nodes[v];
    rows.push_back(std::move(row));
  }
  return profile_from_counts(std::move(rows));
}

} // namespace wngf
