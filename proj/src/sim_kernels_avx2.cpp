// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variant of the per-block evaluation loop.  Must stay arithmetically
// identical to eval_blocks_scalar: same lane assignment (block i -> lane
// i % 4), same operations, so the merged report is kernel-independent.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "linkopt/sim_kernels.hpp"

namespace linkopt {

void eval_blocks_avx2(const PolicyTable& table, const double* snr,
                      std::size_t n, BlockAccumulators& acc) {
    const double* th = table.thresholds.data();
    const std::size_t m = table.thresholds.size();
    const bool kappa_law = table.law == PolicyTable::PowerLaw::KappaOverSnr;

    __m256d rate_sum = _mm256_loadu_pd(acc.rate_sum);
    __m256d rate_sq = _mm256_loadu_pd(acc.rate_sq);
    __m256d power_sum = _mm256_loadu_pd(acc.power_sum);
    __m256d power_sq = _mm256_loadu_pd(acc.power_sq);
    __m256i no_tx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.no_tx));
    __m256i violations =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.violations));

    const std::size_t main = n & ~static_cast<std::size_t>(3);
    for (std::size_t i = 0; i < main; i += 4) {
        const __m256d g = _mm256_loadu_pd(snr + i);
        // flat index = (count of thresholds <= g) - 1
        __m256i idx = _mm256_set1_epi64x(-1);
        for (std::size_t j = 0; j < m; ++j) {
            const __m256d cmp =
                _mm256_cmp_pd(g, _mm256_set1_pd(th[j]), _CMP_GE_OQ);
            idx = _mm256_sub_epi64(idx, _mm256_castpd_si256(cmp));
        }
        const __m256d transmit = _mm256_castsi256_pd(
            _mm256_cmpgt_epi64(idx, _mm256_set1_epi64x(-1)));
        const __m256i safe_idx =
            _mm256_and_si256(idx, _mm256_castpd_si256(transmit));

        const __m256d rate = _mm256_mask_i64gather_pd(
            _mm256_setzero_pd(), table.rate.data(), safe_idx, transmit, 8);
        const __m256d value = _mm256_mask_i64gather_pd(
            _mm256_setzero_pd(), table.value.data(), safe_idx, transmit, 8);
        const __m256d min_post = _mm256_mask_i64gather_pd(
            _mm256_setzero_pd(), table.min_post.data(), safe_idx, transmit, 8);

        // mask the division result: a buffered block with g = 0 would
        // otherwise produce 0/0 in its dead lane
        const __m256d power =
            kappa_law ? _mm256_and_pd(_mm256_div_pd(value, g), transmit)
                      : value;
        const __m256d post = _mm256_mul_pd(g, power);
        const __m256d violated = _mm256_and_pd(
            _mm256_cmp_pd(post, min_post, _CMP_LT_OQ), transmit);

        rate_sum = _mm256_add_pd(rate_sum, rate);
        rate_sq = _mm256_add_pd(rate_sq, _mm256_mul_pd(rate, rate));
        power_sum = _mm256_add_pd(power_sum, power);
        power_sq = _mm256_add_pd(power_sq, _mm256_mul_pd(power, power));
        // masks are all-ones (-1) per set lane; subtracting counts them
        const __m256i not_transmit = _mm256_xor_si256(
            _mm256_castpd_si256(transmit), _mm256_set1_epi64x(-1));
        no_tx = _mm256_sub_epi64(no_tx, not_transmit);
        violations = _mm256_sub_epi64(violations, _mm256_castpd_si256(violated));
    }

    _mm256_storeu_pd(acc.rate_sum, rate_sum);
    _mm256_storeu_pd(acc.rate_sq, rate_sq);
    _mm256_storeu_pd(acc.power_sum, power_sum);
    _mm256_storeu_pd(acc.power_sq, power_sq);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.no_tx), no_tx);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.violations), violations);

    // ragged tail: same lane rule as the scalar kernel
    if (main < n) eval_blocks_scalar(table, snr + main, n - main, acc);
}

}  // namespace linkopt

#endif  // x86_64
