#pragma once

#include "mpdo/lattice.hpp"

namespace mpdo {

// Forward/inverse Fourier transforms on T^n and Z^n with the paper's
// conventions: forward kernel e^{-2 pi i x.xi}, unit-mass Haar measure on T^n.
// Every operation states and enforces its anti-aliasing precondition instead
// of silently aliasing; all exactness contracts below depend on it.

// F f(xi) = (1/M^n) sum_x e^{-2 pi i x.xi} f(x), xi over a rank-1 FreqBox.
// Requires M > 2*radius; exact for trig polynomials of degree <= radius.
FreqTable dft_torus(const TorusFunction& f, const FreqBox& box);

// f(x) = sum_xi e^{+2 pi i x.xi} c(xi) sampled on the grid. Requires M > 2*radius.
TorusFunction idft_torus(const FreqTable& coeffs, const TorusGrid& grid);

// F_{Z^n} g(eta) = sum_ell e^{sign 2 pi i ell.eta} g(ell) sampled at grid
// points eta; sign=-1 is the forward transform. Requires M > 2*support radius.
TorusFunction dft_lattice(const LatticeFunction& g, const TorusGrid& grid, int sign = -1);

// (1/M^n) sum_x f(x); exact for trig polynomials of degree < M.
cplx quadrature_torus(const TorusFunction& f);

// Phase row e^{sign 2 pi i xi (k+offset)/m}, k = 0..m-1. Shared by the
// transforms and the quantizers.
std::vector<cplx> phase_row(int m, double offset, long xi, int sign);

}  // namespace mpdo
