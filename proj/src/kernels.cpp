#include "mpdo/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace mpdo::kernels {

namespace ref {

cplx cdot(const cplx* a, const cplx* b, std::size_t len) {
  double re = 0, im = 0;
  for (std::size_t k = 0; k < len; ++k) {
    re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
  }
  return {re, im};
}

cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len) {
  double re = 0, im = 0;
  for (std::size_t k = 0; k < len; ++k) {
    double tr = a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    double ti = a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
    re += tr * c[k].real() - ti * c[k].imag();
    im += tr * c[k].imag() + ti * c[k].real();
  }
  return {re, im};
}

double sum_abs2(const cplx* a, std::size_t len) {
  double s = 0;
  for (std::size_t k = 0; k < len; ++k)
    s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return s;
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k)
    out[k] = cplx(a[k].real() * b[k].real() - a[k].imag() * b[k].imag(),
                  a[k].real() * b[k].imag() + a[k].imag() * b[k].real());
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t k = 0; k < len; ++k)
    y[k] += cplx(ar * x[k].real() - ai * x[k].imag(), ar * x[k].imag() + ai * x[k].real());
}

}  // namespace ref

#if defined(__x86_64__) || defined(_M_X64)
#define MPDO_X86 1
namespace avx2 {
cplx cdot(const cplx* a, const cplx* b, std::size_t len);
cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len);
double sum_abs2(const cplx* a, std::size_t len);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define MPDO_AARCH64 1
#include <arm_neon.h>
namespace neon {

cplx cdot(const cplx* a, const cplx* b, std::size_t len) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < len; ++k) {
    float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(a + k));
    float64x2_t vb = vld1q_f64(reinterpret_cast<const double*>(b + k));
    float64x2_t br = vdupq_laneq_f64(vb, 0);
    float64x2_t bi = vdupq_laneq_f64(vb, 1);
    float64x2_t sw = vextq_f64(va, va, 1);
    float64x2_t prod = vmulq_f64(va, br);
    float64x2_t cross = vmulq_f64(sw, bi);
    const float64x2_t sign = {-1.0, 1.0};
    acc = vaddq_f64(acc, vfmaq_f64(prod, cross, sign));
  }
  double out[2];
  vst1q_f64(out, acc);
  return {out[0], out[1]};
}

cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len) {
  // One complex per vector; reuses the cdot pattern after forming a*b.
  cplx acc = 0;
  for (std::size_t k = 0; k < len; ++k) {
    cplx t(a[k].real() * b[k].real() - a[k].imag() * b[k].imag(),
           a[k].real() * b[k].imag() + a[k].imag() * b[k].real());
    acc += t * c[k];
  }
  return acc;
}

double sum_abs2(const cplx* a, std::size_t len) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < len; ++k) {
    float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(a + k));
    acc = vfmaq_f64(acc, va, va);
  }
  return vaddvq_f64(acc);
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len) { ref::cmul(a, b, out, len); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) { ref::caxpy(alpha, x, y, len); }

}  // namespace neon
#endif

namespace {

struct Table {
  Isa isa;
  cplx (*cdot)(const cplx*, const cplx*, std::size_t);
  cplx (*cdot3)(const cplx*, const cplx*, const cplx*, std::size_t);
  double (*sum_abs2)(const cplx*, std::size_t);
  void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*caxpy)(cplx, const cplx*, cplx*, std::size_t);
};

Table select() {
  Table t{Isa::scalar, &ref::cdot, &ref::cdot3, &ref::sum_abs2, &ref::cmul, &ref::caxpy};
  const char* env = std::getenv("MPDO_KERNELS");
  bool force_scalar = env && std::strcmp(env, "scalar") == 0;
#if defined(MPDO_X86)
  bool want_avx2 = !env || std::strcmp(env, "avx2") == 0;
  if (!force_scalar && want_avx2 && __builtin_cpu_supports("avx2")) {
    t = {Isa::avx2, &avx2::cdot, &avx2::cdot3, &avx2::sum_abs2, &avx2::cmul, &avx2::caxpy};
  }
#endif
#if defined(MPDO_AARCH64)
  bool want_neon = !env || std::strcmp(env, "neon") == 0;
  if (!force_scalar && want_neon) {
    t = {Isa::neon, &neon::cdot, &neon::cdot3, &neon::sum_abs2, &neon::cmul, &neon::caxpy};
  }
#endif
  return t;
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

Isa active() { return table().isa; }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
  }
}

cplx cdot(const cplx* a, const cplx* b, std::size_t len) { return table().cdot(a, b, len); }
cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len) {
  return table().cdot3(a, b, c, len);
}
double sum_abs2(const cplx* a, std::size_t len) { return table().sum_abs2(a, len); }
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len) { table().cmul(a, b, out, len); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) { table().caxpy(alpha, x, y, len); }

}  // namespace mpdo::kernels

namespace mpdo {

std::string digest_hex(std::span<const cplx> data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  for (cplx z : data) {
    mix(z.real());
    mix(z.imag());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mpdo
