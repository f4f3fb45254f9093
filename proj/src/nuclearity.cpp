#include "mpdo/nuclearity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>

#include "mpdo/harness.hpp"
#include "mpdo/kernels.hpp"
#include "mpdo/quantize.hpp"
#include "mpdo/transforms.hpp"
#include "mpdo/zoo.hpp"

namespace mpdo {

namespace {

template <class D>
double quasi_norm_impl(const D& d) {
  d.validate();
  double acc = 0;
  for (const auto& term : d.terms) {
    double prod = 1;
    for (int j = 0; j < d.rank(); ++j) prod *= lp_norm(term.g[std::size_t(j)], d.exps.conj(j));
    acc += std::pow(prod * lp_norm(term.h, d.exps.p_out), d.s);
  }
  return acc;
}

cplx pairing(const LatticeFunction& f, const LatticeFunction& g) {
  // bilinear sum over the intersection of the supports
  Indexer fi = f.box.indexer();
  std::vector<int> p(std::size_t(f.box.n));
  cplx acc = 0;
  for (long q = 0; q < fi.size(); ++q) {
    fi.unflatten(q, p.data());
    acc += f.values[std::size_t(q)] * g.at(p);
  }
  return acc;
}

cplx pairing(const TorusFunction& f, const TorusFunction& g) {
  require(f.grid == g.grid, "apply_decomposition: pairing requires matching grids");
  std::vector<cplx> prod(f.values.size());
  kernels::cmul(f.values.data(), g.values.data(), prod.data(), prod.size());
  cplx acc = 0;
  for (cplx z : prod) acc += z;
  return acc / double(f.grid.points());
}

}  // namespace

double quasi_norm(const DiscreteDecomposition& d) { return quasi_norm_impl(d); }
double quasi_norm(const PeriodicDecomposition& d) { return quasi_norm_impl(d); }

LatticeFunction apply_decomposition(const DiscreteDecomposition& d,
                                    std::span<const LatticeFunction> f) {
  d.validate();
  require(int(f.size()) == d.rank(), "apply_decomposition: input tuple rank mismatch");
  require(!d.terms.empty(), "apply_decomposition: empty decomposition has no output shape");
  LatticeFunction out = LatticeFunction::zeros(d.terms[0].h.box);
  for (const auto& term : d.terms) {
    require(term.h.box.n == out.box.n && term.h.box.radius == out.box.radius,
            "apply_decomposition: terms must share the output box");
    cplx c = 1;
    for (int j = 0; j < d.rank(); ++j) c *= pairing(f[std::size_t(j)], term.g[std::size_t(j)]);
    kernels::caxpy(c, term.h.values.data(), out.values.data(), out.values.size());
  }
  return out;
}

TorusFunction apply_decomposition(const PeriodicDecomposition& d,
                                  std::span<const TorusFunction> f) {
  d.validate();
  require(int(f.size()) == d.rank(), "apply_decomposition: input tuple rank mismatch");
  require(!d.terms.empty(), "apply_decomposition: empty decomposition has no output shape");
  TorusFunction out = TorusFunction::zeros(d.terms[0].h.grid);
  for (const auto& term : d.terms) {
    require(term.h.grid == out.grid, "apply_decomposition: terms must share the output grid");
    cplx c = 1;
    for (int j = 0; j < d.rank(); ++j) c *= pairing(f[std::size_t(j)], term.g[std::size_t(j)]);
    kernels::caxpy(c, term.h.values.data(), out.values.data(), out.values.size());
  }
  out.degree_hint.reset();
  return out;
}

DiscreteSymbol symbol_from_decomposition_discrete(const DiscreteDecomposition& d,
                                                  const LatticeBox& x_box,
                                                  const TorusGrid& grid) {
  d.validate();
  require(!d.terms.empty(), "symbol_from_decomposition_discrete: empty decomposition");
  const int n = x_box.n;
  const int r = d.rank();
  require(grid.n == n, "symbol_from_decomposition_discrete: grid dimension mismatch");

  // F_{Z^n}(g_kj)(-eta) sampled on the grid (sign +1 transform); dft_lattice
  // enforces the aliasing precondition against each support radius.
  std::vector<std::vector<std::vector<cplx>>> bkj(d.terms.size());
  for (std::size_t k = 0; k < d.terms.size(); ++k)
    for (int j = 0; j < r; ++j)
      bkj[k].push_back(dft_lattice(d.terms[k].g[std::size_t(j)], grid, +1).values);

  Indexer xi = x_box.indexer();
  Indexer gi = grid.indexer();
  Indexer ti = Indexer::grid(n * r, grid.m);
  std::vector<cplx> entries(std::size_t(xi.size() * ti.size()), cplx(0));
  std::vector<int> x(std::size_t(n), 0), neg_x(std::size_t(n), 0), t(std::size_t(n * r), 0);

  for (long xf = 0; xf < xi.size(); ++xf) {
    xi.unflatten(xf, x.data());
    for (int ax = 0; ax < n; ++ax) neg_x[std::size_t(ax)] = -x[std::size_t(ax)];
    // e^{-2 pi i x.eta(t_j)} per factor grid point
    std::vector<std::vector<cplx>> mod;
    mod.resize(std::size_t(r));
    cplx* dst = entries.data() + xf * ti.size();
    for (std::size_t k = 0; k < d.terms.size(); ++k) {
      cplx hx = d.terms[k].h.at(x);
      if (hx == cplx(0)) continue;
      for (int j = 0; j < r; ++j) {
        mod[std::size_t(j)].assign(std::size_t(gi.size()), cplx(0));
        if (n == 1) {
          std::vector<cplx> row = phase_row(grid.m, grid.offset(), neg_x[0], +1);
          kernels::cmul(row.data(), bkj[k][std::size_t(j)].data(), mod[std::size_t(j)].data(),
                        mod[std::size_t(j)].size());
        } else {
          std::vector<std::vector<cplx>> rows;
          rows.resize(std::size_t(n));
          for (int ax = 0; ax < n; ++ax)
            rows[std::size_t(ax)] = phase_row(grid.m, grid.offset(), neg_x[std::size_t(ax)], +1);
          std::vector<int> tt(std::size_t(n), 0);
          for (long q = 0; q < gi.size(); ++q) {
            gi.unflatten(q, tt.data());
            cplx p = bkj[k][std::size_t(j)][std::size_t(q)];
            for (int ax = 0; ax < n; ++ax)
              p *= rows[std::size_t(ax)][std::size_t(tt[std::size_t(ax)])];
            mod[std::size_t(j)][std::size_t(q)] = p;
          }
        }
      }
      for (long q = 0; q < ti.size(); ++q) {
        ti.unflatten(q, t.data());
        cplx p = hx;
        for (int j = 0; j < r; ++j) {
          long tf = 0;
          for (int ax = 0; ax < n; ++ax) tf = tf * grid.m + t[std::size_t(j * n + ax)];
          p *= mod[std::size_t(j)][std::size_t(tf)];
        }
        dst[q] += p;
      }
    }
  }
  return DiscreteSymbol::from_table(x_box, grid, r, std::move(entries));
}

PeriodicSymbol symbol_from_decomposition_periodic(const PeriodicDecomposition& d,
                                                  const TorusGrid& x_grid, const FreqBox& box) {
  d.validate();
  require(!d.terms.empty(), "symbol_from_decomposition_periodic: empty decomposition");
  const int n = box.n;
  const int r = d.rank();
  require(x_grid.n == n, "symbol_from_decomposition_periodic: grid dimension mismatch");

  const FreqBox sub = box.factor_box();
  std::vector<std::vector<FreqTable>> ghat(d.terms.size());
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    require(d.terms[k].h.grid == x_grid,
            "symbol_from_decomposition_periodic: h grids must equal the x grid");
    for (int j = 0; j < r; ++j)
      ghat[k].push_back(dft_torus(d.terms[k].g[std::size_t(j)], sub));
  }

  Indexer gi = x_grid.indexer();
  Indexer bi = box.indexer();
  std::vector<cplx> entries(std::size_t(gi.size() * bi.size()), cplx(0));
  std::vector<int> kdig(std::size_t(n), 0), eta(std::size_t(n * r), 0), neg(std::size_t(n), 0);

  for (long xf = 0; xf < gi.size(); ++xf) {
    gi.unflatten(xf, kdig.data());
    cplx* dst = entries.data() + xf * bi.size();
    for (long q = 0; q < bi.size(); ++q) {
      bi.unflatten(q, eta.data());
      // e^{-2 pi i x~.eta} = prod over all nr axes
      double phase = 0;
      for (int j = 0; j < r; ++j)
        for (int ax = 0; ax < n; ++ax)
          phase += x_grid.coord(kdig[std::size_t(ax)]) * eta[std::size_t(j * n + ax)];
      cplx mod = std::polar(1.0, -kTwoPi * phase);
      cplx acc = 0;
      for (std::size_t k = 0; k < d.terms.size(); ++k) {
        cplx p = d.terms[k].h.values[std::size_t(xf)];
        for (int j = 0; j < r && p != cplx(0); ++j) {
          for (int ax = 0; ax < n; ++ax) neg[std::size_t(ax)] = -eta[std::size_t(j * n + ax)];
          p *= ghat[k][std::size_t(j)].at(neg);
        }
        acc += p;
      }
      dst[q] = mod * acc;
    }
  }
  return PeriodicSymbol::from_table(x_grid, box, std::move(entries), false);
}

PartialSumReport analyze_partial_sums(std::span<const long> radii, std::span<const double> sums) {
  require(radii.size() == sums.size() && !radii.empty(),
          "analyze_partial_sums: radii/sums size mismatch");
  PartialSumReport rep;
  double scale = 0;
  for (double s : sums) scale = std::max(scale, std::abs(s));
  const double tiny = scale * 1e-14 + 1e-300;

  for (std::size_t i = 0; i < radii.size(); ++i) {
    double inc = i == 0 ? sums[0] : sums[i] - sums[i - 1];
    double prev_inc = i <= 1 ? 0.0 : sums[i - 1] - sums[i - 2];
    double ratio = (i >= 2 && std::abs(prev_inc) > tiny) ? inc / prev_inc : 0.0;
    rep.rows.push_back({radii[i], sums[i], ratio});
  }

  // geometric-mean fit of the increment decay over the doubling schedule
  double log_acc = 0;
  int used = 0;
  bool saw_dead_pair = false;
  for (std::size_t i = 2; i < sums.size(); ++i) {
    double inc = sums[i] - sums[i - 1];
    double prev = sums[i - 1] - sums[i - 2];
    if (std::abs(prev) <= tiny || std::abs(inc) <= tiny) {
      saw_dead_pair = true;
      continue;
    }
    log_acc += std::log(std::abs(inc / prev));
    ++used;
  }
  if (used > 0)
    rep.fitted_ratio = std::exp(log_acc / used);
  else
    rep.fitted_ratio = saw_dead_pair || sums.size() < 3 ? 0.0 : 1.0;
  rep.converging = rep.fitted_ratio < 0.98;

  if (sums.size() >= 2) {
    // least-squares slope of S against ln R
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      double x = std::log(double(radii[i]));
      sx += x;
      sy += sums[i];
      sxx += x * x;
      sxy += x * sums[i];
    }
    double den = sums.size() * sxx - sx * sx;
    if (den > 0) rep.log_slope = (sums.size() * sxy - sx * sy) / den;
  }

  if (rep.converging) {
    // Neville in u = 1/R at u = 0 over the last (up to) 4 points
    int pts = int(std::min<std::size_t>(4, sums.size()));
    std::vector<double> u(std::size_t(pts), 0.0), val(std::size_t(pts), 0.0);
    for (int i = 0; i < pts; ++i) {
      std::size_t idx = sums.size() - std::size_t(pts) + std::size_t(i);
      u[std::size_t(i)] = 1.0 / double(radii[idx]);
      val[std::size_t(i)] = sums[idx];
    }
    for (int level = 1; level < pts; ++level)
      for (int i = 0; i < pts - level; ++i)
        val[std::size_t(i)] =
            (u[std::size_t(i + level)] * val[std::size_t(i)] - u[std::size_t(i)] * val[std::size_t(i + 1)]) /
            (u[std::size_t(i + level)] - u[std::size_t(i)]);
    rep.extrapolated = val[0];
  }
  return rep;
}

PartialSumReport summability_criterion(const PeriodicSymbol& a, double p, double s,
                                       std::span<const long> radii) {
  a.validate();
  require(p >= 1.0, "summability_criterion: p must lie in [1, inf]");
  require(s > 0 && s <= 1.0, "summability_criterion: order s must lie in (0,1]");
  require(!radii.empty(), "summability_criterion: need at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i] > radii[i - 1], "summability_criterion: radii must increase");
  require(radii.back() <= a.box.radius,
          "summability_criterion: symbol box radius smaller than the largest requested radius");

  // shell sums bucketed by max |component|
  std::vector<double> shell(std::size_t(a.box.radius + 1), 0.0);
  Indexer bi = a.box.indexer();
  std::vector<int> xi(std::size_t(a.box.axes()));
  const long xc = a.x_count();
  std::vector<cplx> column(std::size_t(xc), cplx(0));
  for (long q = 0; q < bi.size(); ++q) {
    bi.unflatten(q, xi.data());
    int rad = 0;
    for (int c : xi) rad = std::max(rad, std::abs(c));
    double norm;
    if (a.x_independent) {
      norm = std::abs(a.entries[std::size_t(q)]);
    } else {
      for (long g = 0; g < xc; ++g) column[std::size_t(g)] = a.value(g, q);
      TorusFunction slice(a.grid, column);
      norm = lp_norm(slice, p);
    }
    shell[std::size_t(rad)] += std::pow(norm, s);
  }

  std::vector<double> sums;
  std::vector<double> prefix(shell.size() + 1, 0.0);
  for (std::size_t i = 0; i < shell.size(); ++i) prefix[i + 1] = prefix[i] + shell[i];
  for (long r : radii) sums.push_back(prefix[std::size_t(r + 1)]);
  return analyze_partial_sums(radii, sums);
}

namespace {

// Nested mixed norm over the cube sub-box of the probe window: factor 1
// innermost, reduced first; p' = inf handled as a maximum.
double mixed_norm_on_subbox(const Indexer& probe, std::span<const double> values, int n, int r,
                            const std::vector<double>& conj, int rho) {
  Indexer sub = Indexer::cube(n * r, rho);
  std::vector<double> cur(std::size_t(sub.size()));
  std::vector<int> p(std::size_t(n * r), 0);
  for (long q = 0; q < sub.size(); ++q) {
    sub.unflatten(q, p.data());
    cur[std::size_t(q)] = values[std::size_t(probe.flatten(p))];
  }
  long block = sub.size();
  long rest = 1;
  const long per_factor = Indexer::cube(n, rho).size();
  // reduce the leading (slowest) factor r times
  std::vector<double> next;
  for (int j = 0; j < r; ++j) {
    block /= per_factor;
    (void)rest;
    next.assign(std::size_t(block), 0.0);
    double pj = conj[std::size_t(j)];
    for (long rem = 0; rem < block; ++rem) {
      double acc = 0;
      for (long b = 0; b < per_factor; ++b) {
        double v = std::abs(cur[std::size_t(b * block + rem)]);
        if (pj == kInf)
          acc = std::max(acc, v);
        else
          acc += std::pow(v, pj);
      }
      next[std::size_t(rem)] = pj == kInf ? acc : std::pow(acc, 1.0 / pj);
    }
    cur.swap(next);
  }
  return cur[0];
}

std::vector<long> doubling_radii(int max_radius) {
  std::vector<long> radii;
  for (long r = 1; r < max_radius; r *= 2) radii.push_back(r);
  radii.push_back(max_radius);
  if (max_radius == 0) radii = {0};
  return radii;
}

}  // namespace

NecessaryConditionReport necessary_condition_discrete(const DiscreteSymbol& a,
                                                      const ExponentTuple& e, int probe_radius) {
  a.validate();
  e.validate();
  require(int(e.p.size()) == a.rank, "necessary_condition_discrete: exponent count != rank");
  require(probe_radius >= 0, "necessary_condition_discrete: probe radius >= 0");

  const int n = a.box.n, r = a.rank;
  Indexer probe = Indexer::cube(n * r, probe_radius);
  Indexer xs = a.box.indexer();

  // K(x, ell') = kappa(x~, ell')
  std::vector<double> kmod(std::size_t(xs.size() * probe.size()));
  std::vector<int> x(std::size_t(n), 0), lp(std::size_t(n * r), 0);
  for (long xf = 0; xf < xs.size(); ++xf) {
    xs.unflatten(xf, x.data());
    for (long q = 0; q < probe.size(); ++q) {
      probe.unflatten(q, lp.data());
      kmod[std::size_t(xf * probe.size() + q)] = std::abs(discrete_kernel(a, x, lp));
    }
  }

  NecessaryConditionReport rep{probe, {}, {}, {}};
  rep.f.resize(std::size_t(probe.size()));
  const double pout = e.p_out;
  for (long q = 0; q < probe.size(); ++q) {
    double acc = 0;
    for (long xf = 0; xf < xs.size(); ++xf) {
      double v = kmod[std::size_t(xf * probe.size() + q)];
      if (pout == kInf)
        acc = std::max(acc, v);
      else
        acc += std::pow(v, pout);
    }
    rep.f[std::size_t(q)] = pout == kInf ? acc : std::pow(acc, 1.0 / pout);
  }

  std::vector<double> conj(std::size_t(r), 0.0);
  for (int j = 0; j < r; ++j) conj[std::size_t(j)] = e.conj(j);

  std::vector<long> radii = doubling_radii(probe_radius);
  std::vector<double> sums;
  for (long rho : radii)
    sums.push_back(mixed_norm_on_subbox(probe, rep.f, n, r, conj, int(rho)));
  rep.mixed = analyze_partial_sums(radii, sums);

  // dual ordering: mixed norm over ell' per x, then L^p over growing x boxes
  std::vector<double> g(std::size_t(xs.size()));
  for (long xf = 0; xf < xs.size(); ++xf)
    g[std::size_t(xf)] = mixed_norm_on_subbox(
        probe, std::span<const double>(kmod.data() + xf * probe.size(), std::size_t(probe.size())),
        n, r, conj, probe_radius);
  std::vector<long> xradii = doubling_radii(a.box.radius);
  std::vector<double> dual_sums;
  for (long rho : xradii) {
    Indexer subx = Indexer::cube(n, int(rho));
    std::vector<int> xp(std::size_t(n), 0);
    double acc = 0;
    for (long q = 0; q < subx.size(); ++q) {
      subx.unflatten(q, xp.data());
      double v = g[std::size_t(xs.flatten(xp))];
      if (pout == kInf)
        acc = std::max(acc, v);
      else
        acc += std::pow(v, pout);
    }
    dual_sums.push_back(pout == kInf ? acc : std::pow(acc, 1.0 / pout));
  }
  rep.dual = analyze_partial_sums(xradii, dual_sums);
  return rep;
}

SchattenReport schatten_check_bessel(double alpha, double s, std::span<const long> radii, int n) {
  require(alpha >= 0, "schatten_check_bessel: alpha >= 0");
  require(s > 0 && s <= 1.0, "schatten_check_bessel: order s must lie in (0,1]");
  require(!radii.empty(), "schatten_check_bessel: need at least one radius");

  SchattenReport rep;
  rep.alpha = alpha;
  rep.s = s;
  rep.n = n;

  std::vector<double> sums;
  for (long nrad : radii) {
    FreqBox box(n, 1, int(nrad));
    const long side = box.size();
    require(side <= kSchattenMatrixSideCap,
            "schatten_check_bessel: matrix side cap exceeded (side " + std::to_string(side) + ")");
    TorusGrid grid(n, int(2 * nrad + 2));
    PeriodicSymbol m = bessel_multilinear_symbol({{alpha}}, box);

    // operator matrix in the character basis, column by column through the
    // quantization path
    Eigen::MatrixXcd mat(side, side);
    Indexer bi = box.indexer();
    std::vector<int> xi(std::size_t(n), 0);
    for (long col = 0; col < side; ++col) {
      bi.unflatten(col, xi.data());
      TorusFunction f = TorusFunction::character(grid, xi);
      FreqTable coeffs = dft_torus(apply_multiplier(m, f, grid), box);
      for (long row = 0; row < side; ++row) mat(row, col) = coeffs.v[std::size_t(row)];
    }

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
    Eigen::VectorXd sv = svd.singularValues();  // non-increasing
    std::vector<double> computed(sv.data(), sv.data() + sv.size());

    std::vector<double> analytic(std::size_t(side), 0.0);
    for (long q = 0; q < side; ++q) {
      bi.unflatten(q, xi.data());
      double n2 = 0;
      for (int c : xi) n2 += double(c) * double(c);
      analytic[std::size_t(q)] = std::pow(1.0 + n2, -alpha / 2);
    }
    std::sort(analytic.begin(), analytic.end(), std::greater<>());

    double dev = 0;
    double partial = 0;
    for (long q = 0; q < side; ++q) {
      dev = std::max(dev, std::abs(computed[std::size_t(q)] - analytic[std::size_t(q)]));
      partial += std::pow(computed[std::size_t(q)], s);
    }
    rep.max_multiset_deviation = std::max(rep.max_multiset_deviation, dev);
    sums.push_back(partial);
    if (nrad == radii.back()) rep.singular_values = std::move(computed);
  }
  rep.sums = analyze_partial_sums(radii, sums);
  return rep;
}

}  // namespace mpdo
