#pragma once

#include "mpdo/symbols.hpp"
#include "mpdo/transforms.hpp"

namespace mpdo {

// The four quantization engines plus the discrete kernel representation.
//
//   T_m f(x)   = sum_{xi in box} e^{2 pi i x.(xi_1+...+xi_r)} m(x,xi) prod_j F f_j(xi_j)
//   T_a g(ell) = int_{T^{nr}} e^{2 pi i ell.(eta_1+...+eta_r)} a(ell,eta) prod_j F_{Z^n} g_j(eta_j) d eta
//   kappa(ell~,ell') = int_{T^{nr}} e^{2 pi i (ell~-ell').xi} a(ell,xi) d xi,  ell~ = (ell,...,ell)
//   A f(x)     = sum_{xi} e^{i phi(x,xi)} a(x,xi) prod_j F f_j(xi_j)
//
// Integrals over T^{nr} are tensor-product uniform quadrature on the symbol's
// grid. Summation order within each output point is fixed, so internal
// parallelism over output points cannot change results.

// Requires each f_j alias-free for the box (grid M > 2*radius) and
// out_grid.m >= 2*r*radius + 2 (output frequencies reach r*radius). When the
// symbol is x-dependent its grid must equal out_grid. A declared tensor
// factorization (x-independent) takes the factored fast path: r independent
// multiplier applications followed by a pointwise product.
TorusFunction apply_periodic_multilinear(const PeriodicSymbol& m,
                                         std::span<const TorusFunction> f,
                                         const TorusGrid& out_grid);

// Kernel-path equivalence tests need the direct summation regardless of a
// declared factorization.
namespace detail {
TorusFunction apply_periodic_direct(const PeriodicSymbol& m, std::span<const TorusFunction> f,
                                    const TorusGrid& out_grid);
}

// Requires a.grid.m > 2*(max_j support(g_j) + out_box.radius) so the
// eta-integrand is integrated exactly for symbols tabulated on the grid.
LatticeFunction apply_discrete_multilinear(const DiscreteSymbol& a,
                                           std::span<const LatticeFunction> g,
                                           const LatticeBox& out_box);

// kappa(ell~, ell') by uniform quadrature at the symbol's grid resolution.
// ell has length n, ellp length n*rank.
cplx discrete_kernel(const DiscreteSymbol& a, std::span<const int> ell,
                     std::span<const int> ellp);

// T_a g(ell) = sum_{ell'} kappa(ell~,ell') prod_j g_j(ell'_j), the sum
// truncated to the support boxes of g. Equals apply_discrete_multilinear on
// identical inputs up to roundoff.
LatticeFunction apply_via_kernel(const DiscreteSymbol& a, std::span<const LatticeFunction> g,
                                 const LatticeBox& out_box);

// Fourier integral operator with tabulated real phase. With the linear phase
// phi = 2 pi x.(xi_1+...+xi_r) this reduces exactly to
// apply_periodic_multilinear; for general phi the output need not be
// band-limited and out_grid is an approximation parameter.
TorusFunction apply_periodic_fio(const Phase& phi, const PeriodicSymbol& a,
                                 std::span<const TorusFunction> f, const TorusGrid& out_grid);

}  // namespace mpdo
