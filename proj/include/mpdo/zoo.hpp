#pragma once

#include "mpdo/quantize.hpp"

namespace mpdo {

// Concrete symbols: toroidal Laplacian and its fractional powers, multilinear
// Bessel potentials, the Kato-Ponce splitting, the smooth cutoff bridge, and
// the point-singular FIO symbol.

// prod_j |xi_j|^2; r = 1 recovers the symbol |xi|^2 of the torus Laplacian.
PeriodicSymbol laplacian_symbol(const FreqBox& box);

enum class FractionalVariant { homogeneous, bessel };

// |xi|^s or (1+|xi|^2)^{s/2} on a rank-1 box. The homogeneous variant
// annihilates the xi = 0 mode for s > 0 (symbol value 0 there) and rejects
// s < 0 at the origin (pole).
PeriodicSymbol fractional_symbol(double s, FractionalVariant variant, const FreqBox& box);

struct BesselOrder {
  std::vector<double> alpha;  // one order per factor, each >= 0
};

// prod_j (1+|xi_j|^2)^{-alpha_j/2}, tensor-factored and x-independent.
PeriodicSymbol bessel_multilinear_symbol(const BesselOrder& order, const FreqBox& box);

// Smooth bridge: 1 for t <= 1, 0 for t >= 2, exponential blend between.
double cutoff_phi(double t);

// tau(xi,eta) = (|xi+eta|^s/|xi|^s)(1-phi)(|xi|/|eta|) and
// alpha(xi,eta) = (|xi+eta|^s/|eta|^s) phi(|xi|/|eta|), with the degenerate
// conventions: at eta = 0 the alpha term vanishes (phi := 0); at
// xi = eta = 0 both terms vanish, matching |xi+eta|^s = 0 for s > 0. Then
// tau|xi|^s + alpha|eta|^s = |xi+eta|^s at every pair in the box.
struct KatoPonceSplit {
  PeriodicSymbol tau;
  PeriodicSymbol alpha;
  double s = 1;
};

KatoPonceSplit kato_ponce_split(double s, const FreqBox& pair_box);  // pair_box.r == 2

// a(x,xi) = |x|^{-rho} kappa(xi) with |x| the distance to 0 of the
// fundamental-cell representative in [-1/2,1/2)^n. Requires a midpoint grid
// so x = 0 is never sampled.
PeriodicSymbol singular_symbol(double rho, const FreqTable& kappa, const TorusGrid& grid);

// Convenience: J^s or any rank-1 multiplier applied through quantize.
TorusFunction apply_multiplier(const PeriodicSymbol& m, const TorusFunction& f,
                               const TorusGrid& out_grid);

}  // namespace mpdo
