/*
 * Copyright 2026 The fecam-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "fecam/kernels/kernels.hpp"

namespace fecam::kernels {

const KernelTable* avx2_table();

namespace {

// Cephes-style exp: range reduction by ln2 and a (2,3) Pade approximant on
// [-ln2/2, ln2/2]. Accurate to a couple of ulp for |x| < 708.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878E-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300E-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910E-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042E-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192E-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766E-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000009E0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);

    const __m256d lo_limit = _mm256_set1_pd(-708.0);
    const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, lo_limit), _mm256_set1_pd(708.0));

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    const __m256d rr = _mm256_mul_pd(r, r);
    __m256d px = _mm256_fmadd_pd(p0, rr, p1);
    px = _mm256_fmadd_pd(px, rr, p2);
    px = _mm256_mul_pd(px, r);
    __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
    qx = _mm256_fmadd_pd(qx, rr, q2);
    qx = _mm256_fmadd_pd(qx, rr, q3);
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(two, e, one);

    __m256i bits = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    bits = _mm256_slli_epi64(_mm256_add_epi64(bits, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, e);
}

double sum_channel_currents_avx2(const ChannelModel& model, std::span<const double> gate,
                                 std::span<const double> vth) {
    const std::size_t n = gate.size();
    const __m256d scale = _mm256_set1_pd(std::numbers::ln10 / model.subthreshold_slope);
    const __m256d span = _mm256_set1_pd(model.i_threshold - model.i_off);
    const __m256d floor = _mm256_set1_pd(model.i_off);
    const __m256d on = _mm256_set1_pd(model.i_on);

    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d od = _mm256_sub_pd(_mm256_loadu_pd(gate.data() + i),
                                         _mm256_loadu_pd(vth.data() + i));
        const __m256d sub = _mm256_fmadd_pd(span, exp_pd(_mm256_mul_pd(od, scale)), floor);
        acc = _mm256_add_pd(acc, _mm256_min_pd(sub, on));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double sub =
            model.i_off + (model.i_threshold - model.i_off) *
                              std::exp((gate[i] - vth[i]) * std::numbers::ln10 /
                                       model.subthreshold_slope);
        total += std::min(sub, model.i_on);
    }
    return total;
}

std::ptrdiff_t first_ternary_match_avx2(std::span<const std::uint32_t> value,
                                        std::span<const std::uint32_t> care, std::uint32_t key) {
    const std::size_t n = value.size();
    const __m256i k = _mm256_set1_epi32(static_cast<int>(key));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(care.data() + i));
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(value.data() + i));
        const __m256i eq = _mm256_cmpeq_epi32(_mm256_and_si256(k, c), v);
        const auto mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
        if (mask != 0) return static_cast<std::ptrdiff_t>(i + std::countr_zero(mask));
    }
    for (; i < n; ++i)
        if ((key & care[i]) == value[i]) return static_cast<std::ptrdiff_t>(i);
    return -1;
}

std::ptrdiff_t first_digit_range_match_avx2(std::span<const std::int32_t> lo,
                                            std::span<const std::int32_t> hi,
                                            std::size_t n_entries,
                                            std::span<const std::int32_t> key_digits) {
    const std::size_t n_digits = key_digits.size();
    std::size_t e = 0;
    for (; e + 8 <= n_entries; e += 8) {
        __m256i miss = _mm256_setzero_si256();
        for (std::size_t d = 0; d < n_digits; ++d) {
            const __m256i k = _mm256_set1_epi32(key_digits[d]);
            const __m256i l = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(lo.data() + d * n_entries + e));
            const __m256i h = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(hi.data() + d * n_entries + e));
            miss = _mm256_or_si256(miss, _mm256_cmpgt_epi32(l, k));
            miss = _mm256_or_si256(miss, _mm256_cmpgt_epi32(k, h));
            if (_mm256_movemask_ps(_mm256_castsi256_ps(miss)) == 0xff) break;
        }
        const auto hit =
            ~static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(miss))) & 0xffu;
        if (hit != 0) return static_cast<std::ptrdiff_t>(e + std::countr_zero(hit));
    }
    for (; e < n_entries; ++e) {
        bool ok = true;
        for (std::size_t d = 0; d < n_digits && ok; ++d) {
            const std::int32_t k = key_digits[d];
            ok = lo[d * n_entries + e] <= k && k <= hi[d * n_entries + e];
        }
        if (ok) return static_cast<std::ptrdiff_t>(e);
    }
    return -1;
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{Isa::Avx2, &sum_channel_currents_avx2,
                                   &first_ternary_match_avx2, &first_digit_range_match_avx2};
    return &table;
}

}  // namespace fecam::kernels
