#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#include "wngf/simd/triad_kernel.hpp"

#ifndef __AVX2__
#error triad_kernel_avx2.cpp must be compiled with -mavx2
#endif

namespace wngf::simd {

TriadTally tally_avx2(const TriadBatch &b) {
  static_assert(sizeof(NodeId) == 4 && sizeof(GroupId) == 4);

  const __m256d inv_qr = _mm256_set1_pd(b.inv_qr);
  const __m128i broker_group = _mm_set1_epi32(b.broker_group);
  const __m128i source_group = _mm_set1_epi32(b.source_group);

  TriadTally t;
  std::size_t i = 0;
  for (; i + 4 <= b.count; i += 4) {
    // Node ids fit in int32: the gather index is signed.
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i *>(b.targets + i));
    const __m256d direct = _mm256_i32gather_pd(b.inv_from_source, idx, 8);
    const __m256d lhs = _mm256_add_pd(inv_qr, _mm256_loadu_pd(b.inv_rs + i));
    // Ordered compare: NaN (the source itself) never brokers.
    const unsigned hit =
        static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(lhs, direct, _CMP_LT_OQ)));
    if (hit == 0)
      continue;

    const __m128i groups =
        _mm_loadu_si128(reinterpret_cast<const __m128i *>(b.target_groups + i));
    const unsigned eq_broker = static_cast<unsigned>(
        _mm_movemask_ps(_mm_castsi128_ps(_mm_cmpeq_epi32(groups, broker_group))));
    const unsigned eq_source = static_cast<unsigned>(
        _mm_movemask_ps(_mm_castsi128_ps(_mm_cmpeq_epi32(groups, source_group))));

    t.brokered += std::popcount(hit);
    t.same_as_broker += std::popcount(hit & eq_broker);
    t.same_as_source += std::popcount(hit & eq_source);
  }

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
