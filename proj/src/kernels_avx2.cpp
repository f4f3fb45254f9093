// AVX2 variants of the complex kernels. This TU is the only one compiled with
// -mavx2 -mfma; entry happens solely through the runtime dispatch table, which
// checks CPU support first. Layout: packed interleaved doubles, two complexes
// per 256-bit vector.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "mpdo/kernels.hpp"

namespace mpdo::kernels::avx2 {

namespace {

// [a0*b0, a1*b1] for complexes packed as [re0 im0 re1 im1]
inline __m256d cmul2(__m256d a, __m256d b) {
  __m256d br = _mm256_movedup_pd(b);        // [b0r b0r b1r b1r]
  __m256d bi = _mm256_permute_pd(b, 0xF);   // [b0i b0i b1i b1i]
  __m256d asw = _mm256_permute_pd(a, 0x5);  // [a0i a0r a1i a1r]
  return _mm256_addsub_pd(_mm256_mul_pd(a, br), _mm256_mul_pd(asw, bi));
}

inline cplx reduce2(__m256d acc) {
  alignas(32) double v[4];
  _mm256_store_pd(v, acc);
  return {v[0] + v[2], v[1] + v[3]};
}

}  // namespace

cplx cdot(const cplx* a, const cplx* b, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    acc0 = _mm256_add_pd(acc0, cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k)));
    acc1 = _mm256_add_pd(acc1, cmul2(_mm256_loadu_pd(pa + 2 * k + 4), _mm256_loadu_pd(pb + 2 * k + 4)));
  }
  if (k + 2 <= len) {
    acc0 = _mm256_add_pd(acc0, cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k)));
    k += 2;
  }
  cplx s = reduce2(acc0) + reduce2(acc1);
  for (; k < len; ++k) s += a[k] * b[k];
  return s;
}

cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const double* pc = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2) {
    __m256d t = cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k));
    acc = _mm256_add_pd(acc, cmul2(t, _mm256_loadu_pd(pc + 2 * k)));
  }
  cplx s = reduce2(acc);
  for (; k < len; ++k) s += a[k] * b[k] * c[k];
  return s;
}

double sum_abs2(const cplx* a, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double v[4];
  _mm256_store_pd(v, acc);
  double s = ((v[0] + v[1]) + v[2]) + v[3];
  for (; k < len; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return s;
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2)
    _mm256_storeu_pd(po + 2 * k, cmul2(_mm256_loadu_pd(pa + 2 * k), _mm256_loadu_pd(pb + 2 * k)));
  for (; k < len; ++k) out[k] = a[k] * b[k];
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= len; k += 2) {
    __m256d v = _mm256_loadu_pd(px + 2 * k);
    __m256d vsw = _mm256_permute_pd(v, 0x5);
    __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(v, ar), _mm256_mul_pd(vsw, ai));
    _mm256_storeu_pd(py + 2 * k, _mm256_add_pd(_mm256_loadu_pd(py + 2 * k), prod));
  }
  for (; k < len; ++k) y[k] += alpha * x[k];
}

}  // namespace mpdo::kernels::avx2

#endif  // x86_64
