#pragma once

#include <functional>

#include "mpdo/nuclearity.hpp"
#include "mpdo/zoo.hpp"

namespace mpdo {

// L^p norms: torus norms via grid quadrature (grid maxima are lower bounds to
// the true essential supremum), lattice norms via summation, p = inf via max.
double lp_norm(const TorusFunction& f, double p);
double lp_norm(const LatticeFunction& g, double p);

// Seeded random test family: trig polynomials (resp. finitely supported
// sequences) with i.i.d. standard complex Gaussian coefficients up to the
// cap. Each trial derives its generator state from (seed, trial index).
struct ProbeConfig {
  int trials = 100;
  std::uint64_t seed = 0;
  int degree_cap = 3;   // torus inputs: max frequency per axis
  int support_cap = 3;  // lattice inputs: support radius
  ExponentTuple exps;
  bool include_characters = false;  // prepend the pure characters as trials
};

TorusFunction random_trig_poly(Rng& rng, const TorusGrid& grid, int degree_cap);
LatticeFunction random_lattice_function(Rng& rng, int n, int support_cap);

// Apply-capable wrappers the norm prober understands.
struct PeriodicApply {
  int rank = 1;
  int degree_cap = 3;  // inputs are drawn band-limited to this degree
  TorusGrid out_grid;
  std::function<TorusFunction(std::span<const TorusFunction>)> fn;

  static PeriodicApply from_symbol(const PeriodicSymbol& m, const TorusGrid& out_grid,
                                   int degree_cap);
};

struct DiscreteApply {
  int rank = 1;
  int support_cap = 3;
  LatticeBox out_box;
  std::function<LatticeFunction(std::span<const LatticeFunction>)> fn;

  static DiscreteApply from_symbol(const DiscreteSymbol& a, const LatticeBox& out_box,
                                   int support_cap);
};

// sup over the family of ||Tf||_p / prod_j ||f_j||_{p_j}; a certified lower
// bound on the operator norm, never an upper bound. All norms of a trial are
// taken on the operator's output grid, so discrete Hoelder holds per sample.
struct RatioReport {
  struct Trial {
    int index = 0;
    double ratio = 0;
    std::string digest;
  };
  std::vector<Trial> trials;
  double sup_ratio = 0;
  int argmax_index = -1;
  std::string argmax_descriptor;
  int skipped = 0;  // zero-input degenerate ratios
};

RatioReport empirical_bound_ratio(const PeriodicApply& op, const ProbeConfig& cfg);
RatioReport empirical_bound_ratio(const DiscreteApply& op, const ProbeConfig& cfg);

// ||J^s(f g)||_r / (||J^s f||_{p1} ||g||_{q1} + ||f||_{p2} ||J^s g||_{q2})
// with 1/p1 + 1/q1 = 1/p2 + 1/q2 = 1/r.
struct KatoPonceExponents {
  double p1 = 2, q1 = 2, p2 = 2, q2 = 2, r = 1;
  void validate() const;
};

struct KatoPonceProbeReport {
  std::vector<double> ratios;
  double max_ratio = 0;
  double max_ratio_refined = 0;  // same seed, doubled degree cap
  double stability = 0;          // |refined - base| / base
  int degree_cap = 0;
};

KatoPonceProbeReport kato_ponce_probe(double s, FractionalVariant variant,
                                      const KatoPonceExponents& e, const ProbeConfig& cfg,
                                      int n = 1);

// Gaussian transference probe from the Stein-Weiss limit identity:
//   raw(eps) = eps^{n/2} int_R (T(P_1 w_{a1 eps},...,P_r w_{ar eps}))(x)
//              conj(Q(x)) w_{beta eps}(x) dx,
// with the self-dual convention w_d(x) = e^{-pi d |x|^2} throughout, computed
// by truncated quadrature on |x| <= 8/sqrt(eps). normalized = raw / c with
// c = beta^{n/2} pi^{-nr/2}; the normalized sequence converges to
// beta^{-n/2} pi^{nr/2} a(m) [k = sum m_j]. n = 1 only at desk scale.
struct TransferenceResult {
  struct Row {
    double epsilon = 0;
    cplx raw;
    cplx normalized;
  };
  std::vector<Row> rows;
  cplx extrapolated;      // of the normalized sequence
  double limit_constant;  // beta^{-n/2} pi^{nr/2}
};

TransferenceResult transference_limit_probe(
    const std::function<cplx(std::span<const double>)>& multiplier, std::span<const int> modes,
    int out_mode, std::span<const double> eps_schedule, double beta,
    std::span<const double> alpha_weights, int hermite_nodes = 64);

}  // namespace mpdo
