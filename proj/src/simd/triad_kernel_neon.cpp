#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

#include "wngf/simd/triad_kernel.hpp"

namespace wngf::simd {

// Two double lanes per step. NEON has no gather, so the direct-edge lookups
// are loaded lane by lane. Lane masks are all-ones, so subtracting a mask
// from an accumulator adds one per set lane.
TriadTally tally_neon(const TriadBatch &b) {
  const float64x2_t inv_qr = vdupq_n_f64(b.inv_qr);
  const int32x2_t broker_group = vdup_n_s32(b.broker_group);
  const int32x2_t source_group = vdup_n_s32(b.source_group);

  uint64x2_t brokered = vdupq_n_u64(0);
  uint64x2_t same_broker = vdupq_n_u64(0);
  uint64x2_t same_source = vdupq_n_u64(0);

  std::size_t i = 0;
  for (; i + 2 <= b.count; i += 2) {
    float64x2_t direct = vdupq_n_f64(b.inv_from_source[b.targets[i]]);
    direct = vsetq_lane_f64(b.inv_from_source[b.targets[i + 1]], direct, 1);
    const float64x2_t lhs = vaddq_f64(inv_qr, vld1q_f64(b.inv_rs + i));
    const uint64x2_t hit = vcltq_f64(lhs, direct);

    const int32x2_t groups = vld1_s32(b.target_groups + i);
    const uint64x2_t eq_broker =
        vreinterpretq_u64_s64(vmovl_s32(vreinterpret_s32_u32(vceq_s32(groups, broker_group))));
    const uint64x2_t eq_source =
        vreinterpretq_u64_s64(vmovl_s32(vreinterpret_s32_u32(vceq_s32(groups, source_group))));

    brokered = vsubq_u64(brokered, hit);
    same_broker = vsubq_u64(same_broker, vandq_u64(hit, eq_broker));
    same_source = vsubq_u64(same_source, vandq_u64(hit, eq_source));
  }

  TriadTally t;
  t.brokered = vaddvq_u64(brokered);
  t.same_as_broker = vaddvq_u64(same_broker);
  t.same_as_source = vaddvq_u64(same_source);

  if (i < b.count) {
    TriadBatch tail = b;
    tail.targets += i;
    tail.inv_rs += i;
    tail.target_groups += i;
    tail.count -= i;
    const TriadTally rest = tally_scalar(tail);
    t.brokered += rest.brokered;
    t.same_as_broker += rest.same_as_broker;
    t.same_as_source += rest.same_as_source;
  }
  return t;
}

} // namespace wngf::simd

#endif
