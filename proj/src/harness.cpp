#include "mpdo/harness.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "mpdo/kernels.hpp"
#include "mpdo/quantize.hpp"
#include "mpdo/transforms.hpp"

namespace mpdo {

double lp_norm(const TorusFunction& f, double p) {
  require(p >= 1.0, "lp_norm: p < 1 rejected");
  require(all_finite(f.values), "lp_norm: non-finite samples");
  if (f.values.empty()) return 0;
  if (p == kInf) {
    double m = 0;
    for (cplx z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  const double scale = 1.0 / double(f.grid.points());
  if (p == 2.0) return std::sqrt(scale * kernels::sum_abs2(f.values.data(), f.values.size()));
  double acc = 0;
  for (cplx z : f.values) acc += std::pow(std::abs(z), p);
  return std::pow(scale * acc, 1.0 / p);
}

double lp_norm(const LatticeFunction& g, double p) {
  require(p >= 1.0, "lp_norm: p < 1 rejected");
  require(all_finite(g.values), "lp_norm: non-finite samples");
  if (p == kInf) {
    double m = 0;
    for (cplx z : g.values) m = std::max(m, std::abs(z));
    return m;
  }
  if (p == 2.0) return std::sqrt(kernels::sum_abs2(g.values.data(), g.values.size()));
  double acc = 0;
  for (cplx z : g.values) acc += std::pow(std::abs(z), p);
  return std::pow(acc, 1.0 / p);
}

TorusFunction random_trig_poly(Rng& rng, const TorusGrid& grid, int degree_cap) {
  FreqBox box(grid.n, 1, degree_cap);
  FreqTable coeffs = FreqTable::zeros(box);
  for (auto& c : coeffs.v) c = rng.cgauss();
  return idft_torus(coeffs, grid);
}

LatticeFunction random_lattice_function(Rng& rng, int n, int support_cap) {
  LatticeFunction g = LatticeFunction::zeros(LatticeBox(n, support_cap));
  for (auto& c : g.values) c = rng.cgauss();
  return g;
}

PeriodicApply PeriodicApply::from_symbol(const PeriodicSymbol& m, const TorusGrid& out_grid,
                                         int degree_cap) {
  require(degree_cap <= m.box.radius, "PeriodicApply: degree cap exceeds the symbol box");
  PeriodicApply op;
  op.rank = m.box.r;
  op.degree_cap = degree_cap;
  op.out_grid = out_grid;
  op.fn = [m, out_grid](std::span<const TorusFunction> f) {
    return apply_periodic_multilinear(m, f, out_grid);
  };
  return op;
}

DiscreteApply DiscreteApply::from_symbol(const DiscreteSymbol& a, const LatticeBox& out_box,
                                         int support_cap) {
  DiscreteApply op;
  op.rank = a.rank;
  op.support_cap = support_cap;
  op.out_box = out_box;
  op.fn = [a, out_box](std::span<const LatticeFunction> g) {
    return apply_discrete_multilinear(a, g, out_box);
  };
  return op;
}

namespace {

std::string dominant_frequency_descriptor(std::span<const TorusFunction> f, int degree_cap) {
  std::string desc = "dominant frequencies";
  for (const auto& fj : f) {
    FreqTable c = dft_torus(fj, FreqBox(fj.grid.n, 1, degree_cap));
    long best = 0;
    double mag = -1;
    for (long q = 0; q < c.size(); ++q)
      if (std::abs(c.v[std::size_t(q)]) > mag) {
        mag = std::abs(c.v[std::size_t(q)]);
        best = q;
      }
    std::vector<int> xi = c.idx.point(best);
    desc += " [";
    for (std::size_t ax = 0; ax < xi.size(); ++ax)
      desc += (ax ? "," : "") + std::to_string(xi[ax]);
    desc += "]";
  }
  return desc;
}

template <class Op, class MakeInputs, class Describe>
RatioReport ratio_sweep(const Op& op, const ProbeConfig& cfg, const MakeInputs& make_inputs,
                        const Describe& describe) {
  require(cfg.trials >= 1, "ProbeConfig: trials >= 1");
  require(int(cfg.exps.p.size()) == op.rank, "empirical_bound_ratio: exponent count != rank");
  cfg.exps.validate();

  RatioReport rep;
  auto inputs_for = [&](int index) { return make_inputs(index); };
  int total = cfg.trials + (cfg.include_characters ? make_inputs.character_count() : 0);

  std::remove_cvref_t<decltype(make_inputs(0))> argmax_inputs;
  for (int i = 0; i < total; ++i) {
    auto f = inputs_for(i);
    double den = 1;
    std::vector<cplx> flat;
    for (const auto& fj : f) {
      den *= lp_norm(fj, cfg.exps.p[std::size_t(&fj - f.data())]);
      flat.insert(flat.end(), fj.values.begin(), fj.values.end());
    }
    if (!(den > 1e-300)) {
      ++rep.skipped;
      continue;
    }
    auto out = op.fn(f);
    double ratio = lp_norm(out, cfg.exps.p_out) / den;
    rep.trials.push_back({i, ratio, digest_hex(flat)});
    if (ratio > rep.sup_ratio) {
      rep.sup_ratio = ratio;
      rep.argmax_index = i;
      argmax_inputs = f;
    }
  }
  if (rep.argmax_index >= 0) rep.argmax_descriptor = describe(argmax_inputs);
  return rep;
}

struct PeriodicInputs {
  const ProbeConfig* cfg;
  const PeriodicApply* op;
  Indexer chars = Indexer::cube(1, 0);

  PeriodicInputs(const ProbeConfig& c, const PeriodicApply& o) : cfg(&c), op(&o) {
    chars = Indexer::cube(o.out_grid.n, cfg->include_characters ? o.degree_cap : 0);
  }
  int character_count() const { return int(chars.size()); }
  std::vector<TorusFunction> operator()(int index) const {
    std::vector<TorusFunction> f;
    if (cfg->include_characters && index < character_count()) {
      std::vector<int> xi = chars.point(index);
      for (int j = 0; j < op->rank; ++j) f.push_back(TorusFunction::character(op->out_grid, xi));
      return f;
    }
    int trial = index - (cfg->include_characters ? character_count() : 0);
    Rng rng = Rng::for_trial(cfg->seed, std::uint64_t(trial));
    for (int j = 0; j < op->rank; ++j)
      f.push_back(random_trig_poly(rng, op->out_grid, op->degree_cap));
    return f;
  }
};

struct DiscreteInputs {
  const ProbeConfig* cfg;
  const DiscreteApply* op;
  Indexer chars = Indexer::cube(1, 0);

  DiscreteInputs(const ProbeConfig& c, const DiscreteApply& o) : cfg(&c), op(&o) {
    chars = Indexer::cube(o.out_box.n, cfg->include_characters ? o.support_cap : 0);
  }
  int character_count() const { return int(chars.size()); }
  std::vector<LatticeFunction> operator()(int index) const {
    std::vector<LatticeFunction> g;
    if (cfg->include_characters && index < character_count()) {
      std::vector<int> at = chars.point(index);
      LatticeBox box(op->out_box.n, op->support_cap);
      for (int j = 0; j < op->rank; ++j) g.push_back(LatticeFunction::delta(box, at));
      return g;
    }
    int trial = index - (cfg->include_characters ? character_count() : 0);
    Rng rng = Rng::for_trial(cfg->seed, std::uint64_t(trial));
    for (int j = 0; j < op->rank; ++j)
      g.push_back(random_lattice_function(rng, op->out_box.n, op->support_cap));
    return g;
  }
};

}  // namespace

RatioReport empirical_bound_ratio(const PeriodicApply& op, const ProbeConfig& cfg) {
  PeriodicInputs inputs(cfg, op);
  return ratio_sweep(op, cfg, inputs, [&](const std::vector<TorusFunction>& f) {
    return dominant_frequency_descriptor(f, op.degree_cap);
  });
}

RatioReport empirical_bound_ratio(const DiscreteApply& op, const ProbeConfig& cfg) {
  DiscreteInputs inputs(cfg, op);
  return ratio_sweep(op, cfg, inputs, [&](const std::vector<LatticeFunction>& g) {
    std::string desc = "dominant lattice points";
    for (const auto& gj : g) {
      long best = 0;
      double mag = -1;
      for (long q = 0; q < long(gj.values.size()); ++q)
        if (std::abs(gj.values[std::size_t(q)]) > mag) {
          mag = std::abs(gj.values[std::size_t(q)]);
          best = q;
        }
      std::vector<int> p = gj.box.indexer().point(best);
      desc += " [";
      for (std::size_t ax = 0; ax < p.size(); ++ax) desc += (ax ? "," : "") + std::to_string(p[ax]);
      desc += "]";
    }
    return desc;
  });
}

void KatoPonceExponents::validate() const {
  for (double e : {p1, q1, p2, q2, r}) require(e >= 1.0, "kato_ponce: exponents must lie in [1, inf]");
  auto inv = [](double e) { return e == kInf ? 0.0 : 1.0 / e; };
  require(std::abs(inv(p1) + inv(q1) - inv(r)) <= 1e-12,
          "kato_ponce: exponent relation violated, 1/p1 + 1/q1 != 1/r");
  require(std::abs(inv(p2) + inv(q2) - inv(r)) <= 1e-12,
          "kato_ponce: exponent relation violated, 1/p2 + 1/q2 != 1/r");
}

namespace {

double kato_ponce_max_ratio(double s, FractionalVariant variant, const KatoPonceExponents& e,
                            const ProbeConfig& cfg, int n, int cap,
                            std::vector<double>* ratios_out) {
  TorusGrid grid(n, 4 * cap + 2);
  PeriodicSymbol js_small = fractional_symbol(s, variant, FreqBox(n, 1, cap));
  PeriodicSymbol js_big = fractional_symbol(s, variant, FreqBox(n, 1, 2 * cap));

  double max_ratio = 0;
  for (int i = 0; i < cfg.trials; ++i) {
    Rng rng = Rng::for_trial(cfg.seed, std::uint64_t(i));
    TorusFunction f = random_trig_poly(rng, grid, cap);
    TorusFunction g = random_trig_poly(rng, grid, cap);
    TorusFunction prod = TorusFunction::zeros(grid);
    kernels::cmul(f.values.data(), g.values.data(), prod.values.data(), prod.values.size());
    prod.degree_hint = 2 * cap;

    double lhs = lp_norm(apply_multiplier(js_big, prod, grid), e.r);
    double den = lp_norm(apply_multiplier(js_small, f, grid), e.p1) * lp_norm(g, e.q1) +
                 lp_norm(f, e.p2) * lp_norm(apply_multiplier(js_small, g, grid), e.q2);
    if (!(den > 1e-300)) continue;
    double ratio = lhs / den;
    if (ratios_out) ratios_out->push_back(ratio);
    max_ratio = std::max(max_ratio, ratio);
  }
  return max_ratio;
}

}  // namespace

KatoPonceProbeReport kato_ponce_probe(double s, FractionalVariant variant,
                                      const KatoPonceExponents& e, const ProbeConfig& cfg,
                                      int n) {
  require(s > 0, "kato_ponce_probe: s must be > 0");
  e.validate();
  require(cfg.trials >= 1, "ProbeConfig: trials >= 1");

  KatoPonceProbeReport rep;
  rep.degree_cap = cfg.degree_cap;
  rep.max_ratio = kato_ponce_max_ratio(s, variant, e, cfg, n, cfg.degree_cap, &rep.ratios);
  rep.max_ratio_refined =
      kato_ponce_max_ratio(s, variant, e, cfg, n, 2 * cfg.degree_cap, nullptr);
  rep.stability = std::abs(rep.max_ratio_refined - rep.max_ratio) / std::max(rep.max_ratio, 1e-300);
  return rep;
}

namespace {

// Gauss-Hermite nodes/weights for the physicists' weight e^{-t^2} via
// Golub-Welsch on the Jacobi matrix.
void gauss_hermite(int nodes, std::vector<double>& t, std::vector<double>& w) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int i = 0; i + 1 < nodes; ++i) {
    double b = std::sqrt((i + 1) / 2.0);
    jac(i, i + 1) = b;
    jac(i + 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  t.assign(std::size_t(nodes), 0.0);
  w.assign(std::size_t(nodes), 0.0);
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  for (int i = 0; i < nodes; ++i) {
    t[std::size_t(i)] = eig.eigenvalues()(i);
    double v0 = eig.eigenvectors()(0, i);
    w[std::size_t(i)] = sqrt_pi * v0 * v0;
  }
}

}  // namespace

TransferenceResult transference_limit_probe(
    const std::function<cplx(std::span<const double>)>& multiplier, std::span<const int> modes,
    int out_mode, std::span<const double> eps_schedule, double beta,
    std::span<const double> alpha_weights, int hermite_nodes) {
  const int r = int(modes.size());
  require(r >= 1, "transference_limit_probe: need at least one input mode");
  require(int(alpha_weights.size()) == r, "transference_limit_probe: one alpha weight per mode");
  require(!eps_schedule.empty(), "transference_limit_probe: empty epsilon schedule");
  for (std::size_t i = 1; i < eps_schedule.size(); ++i)
    require(eps_schedule[i] < eps_schedule[i - 1],
            "transference_limit_probe: schedule not decreasing");
  double wsum = beta;
  require(beta > 0, "transference_limit_probe: beta must be > 0");
  for (double a : alpha_weights) {
    require(a > 0, "transference_limit_probe: alpha weights must be > 0");
    wsum += a;
  }
  require(std::abs(wsum - 1.0) <= 1e-12,
          "transference_limit_probe: weight-sum violation, sum alpha_j + beta must equal 1");
  require(hermite_nodes >= 8, "transference_limit_probe: need at least 8 Hermite nodes");

  const double pi = std::acos(-1.0);
  std::vector<double> t, w;
  gauss_hermite(hermite_nodes, t, w);
  const double sqrt_pi = std::sqrt(pi);

  TransferenceResult res;
  res.limit_constant = std::pow(beta, -0.5) * std::pow(pi, 0.5 * r);

  int sum_m = 0;
  for (int m : modes) sum_m += m;
  const double base_freq = std::abs(double(sum_m - out_mode));

  Indexer nodes_idx = Indexer::grid(r, hermite_nodes);
  std::vector<int> node(std::size_t(r), 0);
  std::vector<double> xi(std::size_t(r), 0.0);

  for (double eps : eps_schedule) {
    require(eps > 0, "transference_limit_probe: epsilon must be > 0");
    const double x_max = 8.0 / std::sqrt(eps);
    double freq_bound = base_freq;
    for (int j = 0; j < r; ++j)
      freq_bound += std::sqrt(alpha_weights[std::size_t(j)] * eps) *
                    (std::abs(t[std::size_t(hermite_nodes - 1)]) / sqrt_pi);
    const double h = 1.0 / (4.0 * (freq_bound + 4.0));
    const long half_steps = long(std::ceil(x_max / h));

    // damping samples e^{-pi beta eps x^2}, trapezoid weights at the ends
    std::vector<double> damp(std::size_t(2 * half_steps + 1));
    for (long i = -half_steps; i <= half_steps; ++i) {
      double x = double(i) * h;
      damp[std::size_t(i + half_steps)] = std::exp(-pi * beta * eps * x * x);
    }
    damp.front() *= 0.5;
    damp.back() *= 0.5;

    auto window_integral = [&](double u) {
      // h * sum_x e^{2 pi i u x} e^{-pi beta eps x^2}
      cplx acc = 0;
      const cplx step = std::polar(1.0, kTwoPi * u * h);
      cplx phase = std::polar(1.0, kTwoPi * u * (-double(half_steps) * h));
      for (long i = 0; i < long(damp.size()); ++i) {
        acc += damp[std::size_t(i)] * phase;
        phase *= step;
      }
      return h * acc;
    };

    cplx raw = 0;
    for (long q = 0; q < nodes_idx.size(); ++q) {
      nodes_idx.unflatten(q, node.data());
      double weight = 1;
      double u = double(sum_m - out_mode);
      for (int j = 0; j < r; ++j) {
        double eta = t[std::size_t(node[std::size_t(j)])] / sqrt_pi;
        weight *= w[std::size_t(node[std::size_t(j)])] / sqrt_pi;
        xi[std::size_t(j)] = modes[std::size_t(j)] +
                             std::sqrt(alpha_weights[std::size_t(j)] * eps) * eta;
        u += std::sqrt(alpha_weights[std::size_t(j)] * eps) * eta;
      }
      raw += weight * multiplier(xi) * window_integral(u);
    }
    raw *= std::sqrt(eps);
    res.rows.push_back({eps, raw, raw * res.limit_constant});
  }

  // one Richardson step in sqrt(eps) on the normalized sequence
  if (res.rows.size() >= 2) {
    const auto& a = res.rows[res.rows.size() - 2];
    const auto& b = res.rows.back();
    double sa = std::sqrt(a.epsilon), sb = std::sqrt(b.epsilon);
    res.extrapolated = b.normalized + (b.normalized - a.normalized) * (sb / (sa - sb));
  } else {
    res.extrapolated = res.rows.back().normalized;
  }
  return res;
}

}  // namespace mpdo
