#include "qgibbs/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define QGIBBS_HAVE_AVX2_TU 1
#else
#define QGIBBS_HAVE_AVX2_TU 0
#endif

namespace qgibbs::kernels {

#if QGIBBS_HAVE_AVX2_TU

namespace {

// complex<double> arrays are (re,im) interleaved; one __m256d holds two
// complex values.

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpy_d(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_z(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d var = _mm256_set1_pd(a.real());
  const __m256d vai = _mm256_set1_pd(a.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vxs = _mm256_permute_pd(vx, 0b0101);  // (im,re) per value
    __m256d t = _mm256_mul_pd(vai, vxs);
    // even lanes: ar*xr - ai*xi ; odd lanes: ar*xi + ai*xr
    __m256d prod = _mm256_fmaddsub_pd(var, vx, t);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_d(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void scale_z(cplx a, cplx* x, std::size_t n) {
  const __m256d var = _mm256_set1_pd(a.real());
  const __m256d vai = _mm256_set1_pd(a.imag());
  double* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vxs = _mm256_permute_pd(vx, 0b0101);
    __m256d t = _mm256_mul_pd(vai, vxs);
    _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(var, vx, t));
  }
  for (; i < n; ++i) x[i] *= a;
}

double dot_d(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

cplx dotc_z(const cplx* x, const cplx* y, std::size_t n) {
  // acc1 lanes: xr*yr / xi*yi pairs -> total sum = real part.
  // acc2 lanes: xi*yr (even) / xr*yi (odd) -> odd-sum minus even-sum = imag.
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    acc1 = _mm256_fmadd_pd(vx, vy, acc1);
    acc2 = _mm256_fmadd_pd(_mm256_permute_pd(vx, 0b0101), vy, acc2);
  }
  double re = hsum(acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc2);
  double im = (lanes[1] + lanes[3]) - (lanes[0] + lanes[2]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void add_const_stride_d(double a, double* y, std::size_t stride, std::size_t n) {
  if (stride == 1) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
      _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), va));
    for (; i < n; ++i) y[i] += a;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) y[i * stride] += a;
}

void add_const_stride_z(cplx a, cplx* y, std::size_t stride, std::size_t n) {
  if (stride == 1) {
    const __m256d va = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
      _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), va));
    for (; i < n; ++i) y[i] += a;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) y[i * stride] += a;
}

double sum_stride_d(const double* x, std::size_t stride, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  if (stride == 1) {
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  } else {
    const __m256i vidx = _mm256_setr_epi64x(0, static_cast<long long>(stride),
                                            static_cast<long long>(2 * stride),
                                            static_cast<long long>(3 * stride));
    for (; i + 4 <= n; i += 4)
      acc = _mm256_add_pd(acc, _mm256_i64gather_pd(x + i * stride, vidx, 8));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i * stride];
  return s;
}

cplx sum_stride_z(const cplx* x, std::size_t stride, std::size_t n) {
  // two complex values per vector when contiguous; otherwise gather re/im.
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  if (stride == 1) {
    for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, _mm256_loadu_pd(xd + 2 * i));
  } else {
    const long long s2 = static_cast<long long>(2 * stride);
    const __m256i vidx = _mm256_setr_epi64x(0, 1, s2, s2 + 1);
    for (; i + 2 <= n; i += 2)
      acc = _mm256_add_pd(acc, _mm256_i64gather_pd(xd + 2 * i * stride, vidx, 8));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    re += x[i * stride].real();
    im += x[i * stride].imag();
  }
  return {re, im};
}

void gather_d(const double* x, std::size_t stride, double* y, std::size_t n) {
  if (stride == 1) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_loadu_pd(x + i));
    for (; i < n; ++i) y[i] = x[i];
    return;
  }
  const __m256i vidx = _mm256_setr_epi64x(0, static_cast<long long>(stride),
                                          static_cast<long long>(2 * stride),
                                          static_cast<long long>(3 * stride));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_i64gather_pd(x + i * stride, vidx, 8));
  for (; i < n; ++i) y[i] = x[i * stride];
}

void gather_z(const cplx* x, std::size_t stride, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  if (stride == 1) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
      _mm256_storeu_pd(yd + 2 * i, _mm256_loadu_pd(xd + 2 * i));
    for (; i < n; ++i) y[i] = x[i];
    return;
  }
  const long long s2 = static_cast<long long>(2 * stride);
  const __m256i vidx = _mm256_setr_epi64x(0, 1, s2, s2 + 1);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(yd + 2 * i, _mm256_i64gather_pd(xd + 2 * i * stride, vidx, 8));
  for (; i < n; ++i) y[i] = x[i * stride];
}

}  // namespace

namespace detail {
const Ops avx2_ops = {
    axpy_d, axpy_z, scale_d, scale_z, dot_d, dotc_z,
    add_const_stride_d, add_const_stride_z, sum_stride_d, sum_stride_z,
    gather_d, gather_z,
};
}

#else  // non-x86 build: alias the scalar table so dispatch still links

namespace detail {
const Ops avx2_ops = scalar_ops;
}

#endif

}  // namespace qgibbs::kernels
