#pragma once

// Inner loop of brokerage counting: for one (source q, broker r) pair, scan
// r's out-neighbors s and count the triads q->r->s that pass the broker test
//
//     inv_qr + inv_rs[s] < inv_from_source[s]
//
// where every inv_* is a reciprocal flow. Absent q->s edges are encoded as
// +inf and the source itself as NaN, so the comparison alone rejects s == q.
// Every variant performs the same IEEE double add and ordered less-than, so
// all of them return identical tallies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wngf/graph.hpp"

namespace wngf::simd {

struct TriadBatch {
  double inv_qr = 0.0;
  /// Indexed by node id; length is the graph's node count.
  const double *inv_from_source = nullptr;
  const NodeId *targets = nullptr;
  const double *inv_rs = nullptr;
  const GroupId *target_groups = nullptr;
  std::size_t count = 0;
  GroupId source_group = 0;
  GroupId broker_group = 0;
};

struct TriadTally {
  std::uint64_t brokered = 0;
  /// Brokered triads whose target shares the broker's group.
  std::uint64_t same_as_broker = 0;
  /// Brokered triads whose target shares the source's group.
  std::uint64_t same_as_source = 0;

  friend bool operator==(const TriadTally &, const TriadTally &) = default;
};

using TriadKernel = TriadTally (*)(const TriadBatch &);

enum class Isa { Scalar, Avx2, Neon };

TriadTally tally_scalar(const TriadBatch &batch);
#if defined(WNGF_HAVE_AVX2)
TriadTally tally_avx2(const TriadBatch &batch);
#endif
#if defined(WNGF_HAVE_NEON)
TriadTally tally_neon(const TriadBatch &batch);
#endif

/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();
/// Widest available variant.
Isa best_isa();
/// Throws std::invalid_argument when `isa` is not available.
TriadKernel kernel_for(Isa isa);

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

} // namespace wngf::simd
