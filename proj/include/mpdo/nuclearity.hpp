#pragma once

#include <optional>

#include "mpdo/symbols.hpp"

namespace mpdo {

// Factor exponents p_1..p_r and output exponent p, all in [1, inf].
struct ExponentTuple {
  std::vector<double> p;  // one per factor
  double p_out = 2;

  void validate() const {
    require(!p.empty(), "ExponentTuple: need at least one factor exponent");
    for (double e : p) require(e >= 1.0, "ExponentTuple: exponents must lie in [1, inf]");
    require(p_out >= 1.0, "ExponentTuple: exponents must lie in [1, inf]");
  }

  static double conjugate(double e) {
    if (e == 1.0) return kInf;
    if (e == kInf) return 1.0;
    return e / (e - 1.0);
  }
  double conj(int j) const { return conjugate(p[std::size_t(j)]); }
  double conj_out() const { return conjugate(p_out); }

  // 1/p = sum_j 1/p_j, required by the boundedness theorems.
  void require_holder() const {
    validate();
    double sum = 0;
    for (double e : p) sum += e == kInf ? 0.0 : 1.0 / e;
    double lhs = p_out == kInf ? 0.0 : 1.0 / p_out;
    require(std::abs(lhs - sum) <= 1e-12,
            "ExponentTuple: Hoelder relation violated, 1/p != 1/p_1 + ... + 1/p_r (1/p = " +
                std::to_string(lhs) + ", sum = " + std::to_string(sum) + ")");
  }
};

// Finite truncation of the paper's nuclear series: terms (g_k tuple, h_k)
// with order s in (0,1]. Finite sums are honest s-nuclear operators, so every
// "if and only if" characterization is exercised as an exact finite-rank
// identity.
template <class Fn>
struct NuclearDecompositionT {
  struct Term {
    std::vector<Fn> g;  // r factors
    Fn h;
  };
  std::vector<Term> terms;
  double s = 1.0;
  ExponentTuple exps;

  int rank() const { return terms.empty() ? int(exps.p.size()) : int(terms[0].g.size()); }

  void validate() const {
    require(s > 0 && s <= 1.0, "NuclearDecomposition: order s must lie in (0,1]");
    exps.validate();
    require(int(exps.p.size()) == rank(), "NuclearDecomposition: exponent count != rank");
    for (const auto& t : terms)
      require(int(t.g.size()) == rank(), "NuclearDecomposition: ragged term rank");
  }
};

using DiscreteDecomposition = NuclearDecompositionT<LatticeFunction>;
using PeriodicDecomposition = NuclearDecompositionT<TorusFunction>;

// sum_k (prod_j ||g_kj||_{p_j'})^s ||h_k||_p^s
double quasi_norm(const DiscreteDecomposition& d);
double quasi_norm(const PeriodicDecomposition& d);

// T f = sum_k <f,g_k> h_k with <f,g_k> = prod_j <f_j, g_kj>, the pairing
// bilinear (no conjugation): sums on Z^n, unit-mass quadrature on T^n.
LatticeFunction apply_decomposition(const DiscreteDecomposition& d,
                                    std::span<const LatticeFunction> f);
TorusFunction apply_decomposition(const PeriodicDecomposition& d,
                                  std::span<const TorusFunction> f);

// a(x,xi) = e^{-2 pi i x~.xi} sum_k h_k(x) F_{Z^{nr}}(g_k)(-xi), tabulated for
// x in x_box on the given quadrature grid.
DiscreteSymbol symbol_from_decomposition_discrete(const DiscreteDecomposition& d,
                                                  const LatticeBox& x_box, const TorusGrid& grid);

// m(x,eta) = e^{-2 pi i x~.eta} sum_k h_k(x) (F_{T^{nr}} g_k)(-eta) over the box.
PeriodicSymbol symbol_from_decomposition_periodic(const PeriodicDecomposition& d,
                                                  const TorusGrid& x_grid, const FreqBox& box);

// Partial sums over a doubling radius schedule with a fitted increment-ratio
// trend flag; convergence of infinite sums is reported as a trend, never a
// boolean theorem claim. `extrapolated` (Neville in 1/R) is set when the
// trend is converging; `log_slope` is the least-squares slope of sum vs ln R.
struct PartialSumReport {
  struct Row {
    long radius = 0;
    double partial_sum = 0;
    double increment_ratio = 0;
  };
  std::vector<Row> rows;
  double fitted_ratio = 0;
  bool converging = false;
  std::optional<double> extrapolated;
  std::optional<double> log_slope;
  const char* flag() const { return converging ? "converging" : "diverging"; }
};

PartialSumReport analyze_partial_sums(std::span<const long> radii, std::span<const double> sums);

// Partial sums of sum_xi ||a(.,xi)||_{L^p(T^n)}^s over growing FreqBox radii.
PartialSumReport summability_criterion(const PeriodicSymbol& a, double p, double s,
                                       std::span<const long> radii);

// Theorem 5.2 diagnostic: F(ell') = || int a(x,xi) e^{2 pi i (x~-ell').xi} dxi ||_{L^p(Z^n,x)}
// followed by the mixed L^{p_1'} x ... x L^{p_r'} norm over ell', plus the
// dual ordering (norms over ell' first, then L^p over x).
struct NecessaryConditionReport {
  Indexer probe;          // ell' window, cube of Z^{nr}
  std::vector<double> f;  // F(ell') over probe
  PartialSumReport mixed;  // mixed norms over growing ell' radii
  PartialSumReport dual;   // dual ordering over growing x radii
};

NecessaryConditionReport necessary_condition_discrete(const DiscreteSymbol& a,
                                                      const ExponentTuple& e, int probe_radius);

// Dense singular values of the truncated Bessel operator (I+L)^{-alpha/2}
// built through the quantization path, compared with the analytic multiset
// {(1+|xi|^2)^{-alpha/2}}, plus partial sums of lambda^s over the radii.
struct SchattenReport {
  double alpha = 1, s = 1;
  int n = 1;
  std::vector<double> singular_values;  // at the largest radius, descending
  double max_multiset_deviation = 0;
  PartialSumReport sums;
};

SchattenReport schatten_check_bessel(double alpha, double s, std::span<const long> radii, int n);

inline constexpr long kSchattenMatrixSideCap = 4096;

}  // namespace mpdo
