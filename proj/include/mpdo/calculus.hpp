#pragma once

#include "mpdo/symbols.hpp"

namespace mpdo {

// Per-factor, per-axis non-negative orders alpha = (alpha_1,...,alpha_r),
// flattened to n*r components in box axis order.
struct MultiIndex {
  int n = 1;
  int r = 1;
  std::vector<int> comps;

  MultiIndex() = default;
  MultiIndex(int n_, int r_, std::vector<int> comps_) : n(n_), r(r_), comps(std::move(comps_)) {
    require(int(comps.size()) == n * r, "MultiIndex: need n*r components");
    for (int c : comps) require(c >= 0, "MultiIndex: components must be >= 0");
  }

  int order() const {
    int s = 0;
    for (int c : comps) s += c;
    return s;
  }
};

// Forward difference Delta_{xi_{jk}} t(xi) = t(xi + e_{jk}) - t(xi), composed
// per alpha. Each first difference shrinks the valid window by one at the
// upper end of its own axis; differences along distinct axes commute exactly.
FreqTable difference_op(const FreqTable& t, const MultiIndex& alpha);

// <xi> = max(1, |xi_1| + ... + |xi_r|), Euclidean norm per factor block.
double japanese_bracket(std::span<const int> xi, int n, int r);

// Estimated symbol-class constants with radius-doubling growth flags.
// Finiteness over all of Z^{nr} is not decidable from finite data, so the
// report carries the constants at radius N and N/2 plus a flag, never a
// boolean "in class".
struct ClassReport {
  struct Row {
    std::vector<int> alpha;  // n*r components
    double constant_at_n = 0;
    double constant_at_half_n = 0;
    bool growth_flag = false;
  };
  int n = 1, r = 1;
  int max_order = 0;
  int radius = 0;     // truncation radius the constants were taken at
  std::vector<Row> rows;
};

// C_alpha = sup over grid x and box xi of <xi>^{|alpha|} |Delta^alpha m(x,xi)|
// for all |alpha| <= max_order; growth flagged when the radius-N constant
// exceeds 1.25x the radius-N/2 constant.
ClassReport kohn_nirenberg_constants(const PeriodicSymbol& m, int max_order);

// d/dxi^beta per lattice point: the xi-slice is transformed to lattice
// coefficients, multiplied by (2 pi i k)^beta, and transformed back. Exact
// for slices band-limited strictly below the grid Nyquist degree; for even M
// the k = M/2 bin is mapped to frequency +M/2 (its coefficient vanishes for
// compliant inputs).
DiscreteSymbol spectral_derivative(const DiscreteSymbol& a, const MultiIndex& beta);

// sup_{ell,xi} |d^beta a| for every beta with |beta| <= 2*kappa; the
// theorem-relevant rows |beta| = 2*kappa are marked at_order.
struct DiscreteClassReport {
  struct Row {
    std::vector<int> beta;
    double constant = 0;
    bool at_order = false;
  };
  int kappa = 1;
  std::vector<Row> rows;
};

DiscreteClassReport class_check_discrete(const DiscreteSymbol& a, int kappa);

// All multi-indices over `axes` axes with total order <= max_order, ordered
// by (order, lexicographic). Used by the class checks and their oracles.
std::vector<std::vector<int>> multi_indices_up_to(int axes, int max_order);

}  // namespace mpdo
