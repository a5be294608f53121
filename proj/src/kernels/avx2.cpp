#include "backends.hpp"
#include "fof/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

// AVX2 variants of the numeric kernels.  exp and log follow the classic
// Cephes rational approximations; lgamma shifts the argument above 13 by
// the recurrence and closes with the Stirling series.  Accuracy is a few
// ulp, checked against the scalar backend by the equivalence tests.

namespace fof::kern {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline __m256d pow2(__m256d n) {
    // 2^n for integral-valued n within the normal exponent range
    __m128i i32 = _mm256_cvtpd_epi32(n);
    __m256i i64 = _mm256_cvtepi32_epi64(i32);
    __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(i64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
}

inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d max_x = _mm256_set1_pd(709.782712893383996843);
    const __m256d min_x = _mm256_set1_pd(-708.396418532264106224);

    __m256d too_big = _mm256_cmp_pd(x, max_x, _CMP_GT_OQ);
    __m256d too_small = _mm256_cmp_pd(x, min_x, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

    __m256d px = _mm256_floor_pd(_mm256_fmadd_pd(log2e, x, _mm256_set1_pd(0.5)));
    x = _mm256_fnmadd_pd(px, c1, x);
    x = _mm256_fnmadd_pd(px, c2, x);
    __m256d xx = _mm256_mul_pd(x, x);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, x);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000005e0));

    __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

    // split the scale to keep both halves inside the normal range
    __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(px, _mm256_set1_pd(0.5)));
    __m256d n2 = _mm256_sub_pd(px, n1);
    r = _mm256_mul_pd(_mm256_mul_pd(r, pow2(n1)), pow2(n2));

    r = _mm256_blendv_pd(r, _mm256_setzero_pd(), too_small);
    r = _mm256_blendv_pd(r, _mm256_set1_pd(std::numeric_limits<double>::infinity()), too_big);
    return r;
}

inline __m256d log4(__m256d x) {
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i half_exp = _mm256_set1_epi64x(0x3FE0000000000000LL);
    const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);

    __m256d bad = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LE_OQ);
    __m256d is_zero = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ);

    __m256i bits = _mm256_castpd_si256(x);
    __m256i e_i = _mm256_sub_epi64(
        _mm256_srli_epi64(_mm256_castpd_si256(_mm256_max_pd(x, _mm256_set1_pd(1e-308))), 52),
        _mm256_set1_epi64x(1022));
    __m256d m = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_exp));

    // pack the four 64-bit exponents into 32-bit lanes and widen to double
    __m256i packed = _mm256_permutevar8x32_epi32(
        e_i, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
    __m256d e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(packed));

    __m256d low = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
    m = _mm256_add_pd(m, _mm256_and_pd(low, m));
    e = _mm256_sub_pd(e, _mm256_and_pd(low, _mm256_set1_pd(1.0)));

    // log(m) = 2 atanh(u), u = (m-1)/(m+1), |u| <= 3 - 2 sqrt(2)
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d u = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d w = _mm256_mul_pd(u, u);
    __m256d s = _mm256_set1_pd(1.0 / 19.0);
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 17.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 15.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 13.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 11.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 9.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 7.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 5.0));
    s = _mm256_fmadd_pd(s, w, _mm256_set1_pd(1.0 / 3.0));
    s = _mm256_fmadd_pd(s, w, one);

    // ln2 split: hi is exact in binary, lo = ln2 - hi
    __m256d r = _mm256_mul_pd(_mm256_add_pd(u, u), s);
    r = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), r);
    r = _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);

    r = _mm256_blendv_pd(r, _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN()), bad);
    r = _mm256_blendv_pd(r, _mm256_set1_pd(kNegInf), is_zero);
    return r;
}

inline __m256d lgamma4(__m256d x) {
    const __m256d thresh = _mm256_set1_pd(13.0);
    __m256d y = x;
    __m256d prod = _mm256_set1_pd(1.0);
    for (int pass = 0; pass < 13; ++pass) {
        __m256d mask = _mm256_cmp_pd(y, thresh, _CMP_LT_OQ);
        if (_mm256_movemask_pd(mask) == 0) break;
        prod = _mm256_blendv_pd(prod, _mm256_mul_pd(prod, y), mask);
        y = _mm256_add_pd(y, _mm256_and_pd(mask, _mm256_set1_pd(1.0)));
    }

    __m256d w = _mm256_div_pd(_mm256_set1_pd(1.0), y);
    __m256d w2 = _mm256_mul_pd(w, w);
    __m256d s = _mm256_set1_pd(8.41750841750841751e-4);
    s = _mm256_fmadd_pd(s, w2, _mm256_set1_pd(-5.95238095238095238e-4));
    s = _mm256_fmadd_pd(s, w2, _mm256_set1_pd(7.93650793650793651e-4));
    s = _mm256_fmadd_pd(s, w2, _mm256_set1_pd(-2.77777777777777778e-3));
    s = _mm256_fmadd_pd(s, w2, _mm256_set1_pd(8.33333333333333333e-2));
    s = _mm256_mul_pd(s, w);

    __m256d ylog = log4(y);
    __m256d r = _mm256_fmadd_pd(_mm256_sub_pd(y, _mm256_set1_pd(0.5)), ylog,
                                _mm256_set1_pd(0.91893853320467274178));
    r = _mm256_sub_pd(r, y);
    r = _mm256_add_pd(r, s);
    return _mm256_sub_pd(r, log4(prod));
}

void exp_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void log_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, log4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::log(x[i]);
}

void lgamma_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, lgamma4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::lgamma(x[i]);
}

void log_add_exp_avx2(const double* x, const double* y, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg_inf = _mm256_set1_pd(kNegInf);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        __m256d b = _mm256_loadu_pd(y + i);
        __m256d hi = _mm256_max_pd(a, b);
        __m256d lo = _mm256_min_pd(a, b);
        __m256d e = exp4(_mm256_sub_pd(lo, hi));
        // log1p(e) = log(1+e) + (e - ((1+e)-1))/(1+e)
        __m256d u = _mm256_add_pd(one, e);
        __m256d corr = _mm256_div_pd(
            _mm256_sub_pd(e, _mm256_sub_pd(u, one)), u);
        __m256d l1p = _mm256_add_pd(log4(u), corr);
        __m256d r = _mm256_add_pd(hi, l1p);
        __m256d both_zero = _mm256_cmp_pd(hi, neg_inf, _CMP_EQ_OQ);
        r = _mm256_blendv_pd(r, neg_inf, both_zero);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) {
        double hi = x[i] > y[i] ? x[i] : y[i];
        double lo = x[i] > y[i] ? y[i] : x[i];
        out[i] = hi == kNegInf ? kNegInf : hi + std::log1p(std::exp(lo - hi));
    }
}

double log_sum_exp_avx2(const double* x, std::size_t n) {
    double hi = kNegInf;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vhi = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4)
            vhi = _mm256_max_pd(vhi, _mm256_loadu_pd(x + i));
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vhi);
        hi = tmp[0];
        for (int k = 1; k < 4; ++k)
            if (tmp[k] > hi) hi = tmp[k];
    }
    for (; i < n; ++i)
        if (x[i] > hi) hi = x[i];
    if (hi == kNegInf) return kNegInf;

    __m256d vhi4 = _mm256_set1_pd(hi);
    __m256d acc = _mm256_setzero_pd();
    for (i = 0; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, exp4(_mm256_sub_pd(_mm256_loadu_pd(x + i), vhi4)));
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, acc);
    double s = (tmp[0] + tmp[1]) + (tmp[2] + tmp[3]);
    for (; i < n; ++i) s += std::exp(x[i] - hi);
    return hi + std::log(s);
}

}  // namespace

const Backend* avx2_backend_impl() {
    static const Backend b{"avx2",          exp_avx2,
                           log_avx2,        lgamma_avx2,
                           log_add_exp_avx2, log_sum_exp_avx2};
    return &b;
}

}  // namespace fof::kern

#else

namespace fof::kern {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace fof::kern

#endif
