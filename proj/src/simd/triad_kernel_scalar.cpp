#include "wngf/simd/triad_kernel.hpp"

namespace wngf::simd {

TriadTally tally_scalar(const TriadBatch &b) {
  TriadTally t;
  for (std::size_t i = 0; i < b.count; ++i) {
    const double lhs = b.inv_qr + b.inv_rs[i];
    if (!(lhs < b.inv_from_source[b.targets[i]]))
      continue;
    ++t.brokered;
    const GroupId g = b.target_groups[i];
    t.same_as_broker += g == b.broker_group;
    t.same_as_source += g == b.source_group;
  }
  return t;
}

} // namespace wngf::simd
