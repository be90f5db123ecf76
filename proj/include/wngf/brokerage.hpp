#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wngf/graph.hpp"
#include "wngf/simd/triad_kernel.hpp"

namespace wngf {

/// The five Gould-Fernandez brokerage roles, named from the broker's view.
enum class Role : std::uint8_t {
  Coordinator,    // source, broker and target share a group
  Gatekeeper,     // outside source, broker shares the target's group
  Representative, // broker shares the source's group, target is outside
  Itinerant,      // source and target share a group the broker is not in
  Liaison,        // three distinct groups
};

inline constexpr std::size_t kRoleCount = 5;
inline constexpr std::array<Role, kRoleCount> kRoles = {
    Role::Coordinator, Role::Gatekeeper, Role::Representative, Role::Itinerant,
    Role::Liaison};

template <class T> using PerRole = std::array<T, kRoleCount>;

constexpr std::size_t role_index(Role r) { return static_cast<std::size_t>(r); }
std::string_view role_name(Role r);
std::optional<Role> parse_role(std::string_view name);

enum class BrokerageMode {
  Weighted, // reciprocal-flow condition on edge weights
  Binary,   // classical open two-path, weights ignored
};

std::string_view mode_name(BrokerageMode m);
std::optional<BrokerageMode> parse_mode(std::string_view name);

/// True iff 1/z_qr + 1/z_rs < 1/z_qs, with z_qs == 0 (no direct edge) read as
/// infinite resistance. Strict: equality is not brokerage. Throws
/// std::invalid_argument unless z_qr, z_rs > 0 and z_qs >= 0.
bool is_weighted_broker(double z_qr, double z_rs, double z_qs);

constexpr bool is_binary_broker(bool edge_qr, bool edge_rs, bool edge_qs) {
  return edge_qr && edge_rs && !edge_qs;
}

/// Role of broker r on the triad q -> r -> s, from the three group labels.
template <class G>
constexpr Role classify_role(const G &source, const G &broker, const G &target) {
  if (source == broker)
    return broker == target ? Role::Coordinator : Role::Representative;
  if (broker == target)
    return Role::Gatekeeper;
  if (source == target)
    return Role::Itinerant;
  return Role::Liaison;
}

/// Raw role counts, indexed by node id.
struct RoleCounts {
  std::vector<PerRole<std::uint64_t>> nodes;

  std::uint64_t count(NodeId v, Role r) const { return nodes.at(v)[role_index(r)]; }
  std::uint64_t total(NodeId v) const;

  friend bool operator==(const RoleCounts &, const RoleCounts &) = default;
};

struct CountOptions {
  simd::Isa kernel = simd::best_isa();
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 1;
};

/// Counts every ordered triad q -> r -> s (pairwise distinct) on which r
/// brokers under `mode`, credited to r under the triad's role. Enumerates
/// each broker's in-neighbors against its out-neighbors; work is split by
/// broker, so the result does not depend on the worker count or kernel.
RoleCounts count_roles(const PartitionedGraph &pg, BrokerageMode mode,
                       const CountOptions &options = {});

/// Literal triple loop over all ordered distinct (q, r, s). Test oracle for
/// count_roles; throws std::invalid_argument when n exceeds `max_nodes`.
RoleCounts brute_force_counts(const PartitionedGraph &pg, BrokerageMode mode,
                              std::size_t max_nodes = 64);

/// First brokered triad (source, broker, target) at `broker` with `role`, in
/// lexicographic (source, target) order. Used for oracle-check diagnostics.
std::optional<std::array<NodeId, 3>> first_brokered_triad(const PartitionedGraph &pg,
                                                          BrokerageMode mode,
                                                          NodeId broker, Role role);

/// Upper bound on how often a node of `own_group` can hold `role`, given the
/// group sizes: the number of ordered (source, target) pairs of other nodes
/// whose group pattern matches the role. Throws GraphError for an unknown
/// group.
std::uint64_t role_denominator(Role role, std::string_view own_group,
                               const std::map<std::string, std::size_t> &sizes);

/// Same, with groups given by dense id.
std::uint64_t role_denominator(Role role, GroupId own_group,
                               std::span<const std::size_t> sizes);

struct NodeProfile {
  std::string node;
  std::string group;
  PerRole<std::uint64_t> counts{};
  PerRole<std::uint64_t> denominators{};
  PerRole<double> scores{};

  friend bool operator==(const NodeProfile &, const NodeProfile &) = default;
};

/// Per-node counts and normalized scores, sorted by node label.
struct BrokerageProfile {
  std::vector<NodeProfile> nodes;

  const NodeProfile *find(std::string_view node) const;
  /// Normalized scores of one role in node order.
  std::vector<double> scores(Role r) const;

  friend bool operator==(const BrokerageProfile &, const BrokerageProfile &) = default;
};

/// score = count / denominator, or 0 when the denominator is 0. A count above
/// its denominator throws std::logic_error: it can only come from a
/// counting bug.
BrokerageProfile normalize(const RoleCounts &counts, const PartitionedGraph &pg);

/// Rebuilds a profile from node, group and raw counts, recomputing the
/// denominators from the group sizes implied by the rows.
BrokerageProfile profile_from_counts(std::vector<NodeProfile> rows);

} // namespace wngf
