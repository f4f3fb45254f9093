#pragma once

#include <cstddef>

#include "mpdo/types.hpp"

// Data-parallel inner loops used by the transforms, quantizers and norms.
// Scalar reference implementations live in kernels::ref; AVX2 (and NEON on
// aarch64) variants are selected once at runtime from CPU features, with the
// MPDO_KERNELS environment variable ("scalar", "avx2", "neon") as override.
// For a fixed selection every kernel accumulates in a fixed order, so results
// are bit-identical across runs.

namespace mpdo::kernels {

enum class Isa { scalar, avx2, neon };

Isa active();
const char* isa_name(Isa isa);

// sum_k a[k]*b[k]  (bilinear, no conjugation)
cplx cdot(const cplx* a, const cplx* b, std::size_t len);
// sum_k a[k]*b[k]*c[k]
cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len);
// sum_k |a[k]|^2
double sum_abs2(const cplx* a, std::size_t len);
// out[k] = a[k]*b[k]
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len);
// y[k] += alpha*x[k]
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);

namespace ref {
cplx cdot(const cplx* a, const cplx* b, std::size_t len);
cplx cdot3(const cplx* a, const cplx* b, const cplx* c, std::size_t len);
double sum_abs2(const cplx* a, std::size_t len);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t len);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
}  // namespace ref

}  // namespace mpdo::kernels
