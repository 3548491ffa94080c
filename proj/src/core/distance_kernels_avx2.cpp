// AVX2 haversine batch kernel: 4 double lanes per iteration.
//
// The inputs are bounded (|lat| <= 90 deg, |lon| <= 180 deg), so every trig
// argument lies in [-pi, pi] and a single Cody-Waite quadrant reduction is
// enough. sin/cos use plain Taylor kernels on [-pi/4, pi/4] (odd to y^15,
// even to y^16); asin seeds an order-11 Taylor and polishes with Newton
// steps against the same kernels. Agreement with the scalar reference is
// pinned by tests to 1e-12 relative.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "edgetransit/core/distance_kernels.hpp"

namespace edgetransit::core {

namespace {

const __m256d kDeg2Rad = _mm256_set1_pd(0.017453292519943295);
const __m256d kHalf = _mm256_set1_pd(0.5);
const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kZero = _mm256_setzero_pd();
const __m256d kTwoOverPi = _mm256_set1_pd(0.63661977236758138);
// pi/2 split: high part has a 33-bit mantissa, so k * hi is exact for small k.
const __m256d kPio2Hi = _mm256_set1_pd(1.57079632673412561417e+00);
const __m256d kPio2Lo = _mm256_set1_pd(6.07710050650619224932e-11);
const __m256d kHalfPi = _mm256_set1_pd(1.5707963267948966);
const __m256d kInvSqrt2 = _mm256_set1_pd(0.70710678118654752);

// sin(y)/y - 1 and cos(y) - 1 Taylor coefficients (reciprocal factorials).
const __m256d kS3 = _mm256_set1_pd(-1.6666666666666666e-01);   // -1/3!
const __m256d kS5 = _mm256_set1_pd(8.3333333333333333e-03);    //  1/5!
const __m256d kS7 = _mm256_set1_pd(-1.9841269841269841e-04);   // -1/7!
const __m256d kS9 = _mm256_set1_pd(2.7557319223985893e-06);    //  1/9!
const __m256d kS11 = _mm256_set1_pd(-2.5052108385441719e-08);  // -1/11!
const __m256d kS13 = _mm256_set1_pd(1.6059043836821615e-10);   //  1/13!
const __m256d kS15 = _mm256_set1_pd(-7.6471637318198165e-13);  // -1/15!

const __m256d kC2 = _mm256_set1_pd(-5.0000000000000000e-01);   // -1/2!
const __m256d kC4 = _mm256_set1_pd(4.1666666666666666e-02);    //  1/4!
const __m256d kC6 = _mm256_set1_pd(-1.3888888888888889e-03);   // -1/6!
const __m256d kC8 = _mm256_set1_pd(2.4801587301587302e-05);    //  1/8!
const __m256d kC10 = _mm256_set1_pd(-2.7557319223985888e-07);  // -1/10!
const __m256d kC12 = _mm256_set1_pd(2.0876756987868099e-09);   //  1/12!
const __m256d kC14 = _mm256_set1_pd(-1.1470745597729725e-11);  // -1/14!
const __m256d kC16 = _mm256_set1_pd(4.7794773323873853e-14);   //  1/16!

// asin(u)/u - 1 Taylor coefficients in z = u^2.
const __m256d kA3 = _mm256_set1_pd(1.6666666666666666e-01);   // 1/6
const __m256d kA5 = _mm256_set1_pd(7.5000000000000000e-02);   // 3/40
const __m256d kA7 = _mm256_set1_pd(4.4642857142857144e-02);   // 15/336
const __m256d kA9 = _mm256_set1_pd(3.0381944444444444e-02);   // 105/3456
const __m256d kA11 = _mm256_set1_pd(2.2372159090909091e-02);  // 945/42240

// sin on [-pi/4, pi/4] (valid slightly beyond).
inline __m256d sin_small(__m256d y) {
    const __m256d z = _mm256_mul_pd(y, y);
    __m256d p = kS15;
    p = _mm256_fmadd_pd(p, z, kS13);
    p = _mm256_fmadd_pd(p, z, kS11);
    p = _mm256_fmadd_pd(p, z, kS9);
    p = _mm256_fmadd_pd(p, z, kS7);
    p = _mm256_fmadd_pd(p, z, kS5);
    p = _mm256_fmadd_pd(p, z, kS3);
    // y + y*z*p
    return _mm256_fmadd_pd(_mm256_mul_pd(y, z), p, y);
}

// cos on [-pi/4, pi/4].
inline __m256d cos_small(__m256d y) {
    const __m256d z = _mm256_mul_pd(y, y);
    __m256d p = kC16;
    p = _mm256_fmadd_pd(p, z, kC14);
    p = _mm256_fmadd_pd(p, z, kC12);
    p = _mm256_fmadd_pd(p, z, kC10);
    p = _mm256_fmadd_pd(p, z, kC8);
    p = _mm256_fmadd_pd(p, z, kC6);
    p = _mm256_fmadd_pd(p, z, kC4);
    p = _mm256_fmadd_pd(p, z, kC2);
    return _mm256_fmadd_pd(z, p, kOne);
}

struct Reduced {
    __m256d y;       // argument reduced into [-pi/4, pi/4]
    __m128i q;       // quadrant index, 4 x int32, value k & 3
};

inline Reduced reduce_pio2(__m256d x) {
    const __m256d kd =
        _mm256_round_pd(_mm256_mul_pd(x, kTwoOverPi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d y = _mm256_fnmadd_pd(kd, kPio2Hi, x);
    y = _mm256_fnmadd_pd(kd, kPio2Lo, y);
    const __m128i ki = _mm256_cvtpd_epi32(kd);
    return Reduced{y, _mm_and_si128(ki, _mm_set1_epi32(3))};
}

// Widen a 4 x int32 0/-1 mask to a 4 x double blend mask.
inline __m256d widen_mask(__m128i m32) {
    return _mm256_castsi256_pd(_mm256_cvtepi32_epi64(m32));
}

inline __m256d apply_quadrant(__m256d sy, __m256d cy, __m128i q, int negate_mask_bias) {
    const __m128i one = _mm_set1_epi32(1);
    const __m128i two = _mm_set1_epi32(2);
    const __m128i swap32 = _mm_cmpeq_epi32(_mm_and_si128(q, one), one);
    const __m128i qn = _mm_add_epi32(q, _mm_set1_epi32(negate_mask_bias));
    const __m128i neg32 = _mm_cmpeq_epi32(_mm_and_si128(qn, two), two);
    __m256d r = _mm256_blendv_pd(sy, cy, widen_mask(swap32));
    const __m256d negated = _mm256_sub_pd(kZero, r);
    return _mm256_blendv_pd(r, negated, widen_mask(neg32));
}

// sin(x) for |x| <= pi (plus reduction slack).
inline __m256d sin_pd(__m256d x) {
    const Reduced r = reduce_pio2(x);
    return apply_quadrant(sin_small(r.y), cos_small(r.y), r.q, 0);
}

// cos(x) for |x| <= pi.
inline __m256d cos_pd(__m256d x) {
    const Reduced r = reduce_pio2(x);
    // cos quadrants are the sine table shifted by one.
    const __m128i one = _mm_set1_epi32(1);
    const __m128i two = _mm_set1_epi32(2);
    const __m128i swap32 = _mm_cmpeq_epi32(_mm_and_si128(r.q, one), _mm_setzero_si128());
    const __m128i qn = _mm_add_epi32(r.q, one);
    const __m128i neg32 = _mm_cmpeq_epi32(_mm_and_si128(qn, two), two);
    __m256d out = _mm256_blendv_pd(sin_small(r.y), cos_small(r.y), widen_mask(swap32));
    const __m256d negated = _mm256_sub_pd(kZero, out);
    return _mm256_blendv_pd(out, negated, widen_mask(neg32));
}

// asin(u) for u in [0, 1/sqrt(2) + eps]: Taylor seed + Newton polish.
inline __m256d asin_core(__m256d u) {
    const __m256d z = _mm256_mul_pd(u, u);
    __m256d p = kA11;
    p = _mm256_fmadd_pd(p, z, kA9);
    p = _mm256_fmadd_pd(p, z, kA7);
    p = _mm256_fmadd_pd(p, z, kA5);
    p = _mm256_fmadd_pd(p, z, kA3);
    __m256d y = _mm256_fmadd_pd(_mm256_mul_pd(u, z), p, u);
    // Three Newton steps on f(y) = sin(y) - u; cos(y) >= 0.7 on this range.
    for (int it = 0; it < 3; ++it) {
        const __m256d err = _mm256_sub_pd(u, sin_small(y));
        y = _mm256_add_pd(y, _mm256_div_pd(err, cos_small(y)));
    }
    return y;
}

}  // namespace

void pairwise_distances_avx2(const double* lat1, const double* lon1, const double* lat2,
                             const double* lon2, double* out_m, std::size_t n) {
    const __m256d two_r = _mm256_set1_pd(2.0 * kEarthRadiusM);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d la1 = _mm256_loadu_pd(lat1 + i);
        const __m256d la2 = _mm256_loadu_pd(lat2 + i);
        const __m256d lo1 = _mm256_loadu_pd(lon1 + i);
        const __m256d lo2 = _mm256_loadu_pd(lon2 + i);

        const __m256d phi1 = _mm256_mul_pd(la1, kDeg2Rad);
        const __m256d phi2 = _mm256_mul_pd(la2, kDeg2Rad);
        const __m256d half_dphi =
            _mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(la2, la1), kDeg2Rad), kHalf);
        const __m256d half_dlmb =
            _mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(lo2, lo1), kDeg2Rad), kHalf);

        const __m256d sp = sin_pd(half_dphi);
        const __m256d sl = sin_pd(half_dlmb);
        const __m256d cc = _mm256_mul_pd(cos_pd(phi1), cos_pd(phi2));
        __m256d a = _mm256_fmadd_pd(_mm256_mul_pd(cc, sl), sl, _mm256_mul_pd(sp, sp));
        a = _mm256_min_pd(_mm256_max_pd(a, kZero), kOne);

        const __m256d x = _mm256_sqrt_pd(a);
        const __m256d big = _mm256_cmp_pd(x, kInvSqrt2, _CMP_GT_OQ);
        // complement, sqrt(1 - a), is the sine of the co-angle
        const __m256d xc = _mm256_sqrt_pd(_mm256_sub_pd(kOne, a));
        const __m256d u = _mm256_blendv_pd(x, xc, big);
        const __m256d y = asin_core(u);
        const __m256d half_angle = _mm256_blendv_pd(y, _mm256_sub_pd(kHalfPi, y), big);
        _mm256_storeu_pd(out_m + i, _mm256_mul_pd(two_r, half_angle));
    }
    if (i < n) {
        pairwise_distances_scalar(lat1 + i, lon1 + i, lat2 + i, lon2 + i, out_m + i, n - i);
    }
}

}  // namespace edgetransit::core
