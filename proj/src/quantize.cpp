#include "mpdo/quantize.hpp"

#include "mpdo/kernels.hpp"

namespace mpdo {

namespace {

void check_periodic_inputs(const PeriodicSymbol& m, std::span<const TorusFunction> f,
                           const TorusGrid& out_grid) {
  m.validate();
  require(int(f.size()) == m.box.r,
          "apply_periodic: rank mismatch, symbol rank " + std::to_string(m.box.r) + " vs " +
              std::to_string(f.size()) + " inputs");
  for (const auto& fj : f) {
    require(fj.grid.n == m.box.n, "apply_periodic: input dimension mismatch");
    require(fj.grid.m > 2 * m.box.radius,
            "apply_periodic: aliasing violation, input grid M must exceed 2*radius");
  }
  require(out_grid.n == m.box.n, "apply_periodic: output grid dimension mismatch");
  require(out_grid.m >= 2 * m.box.r * m.box.radius + 2,
          "apply_periodic: output grid too coarse, need M >= 2*r*radius + 2 (M = " +
              std::to_string(out_grid.m) + ")");
  if (!m.x_independent)
    require(m.grid == out_grid, "apply_periodic: x-dependent symbol grid must equal out_grid");
}

// Product of the r factor coefficient tables over the full box, indexed
// factor-major (factor 1 slowest) like the box itself.
std::vector<cplx> coefficient_weights(const FreqBox& box, std::span<const FreqTable> fhat) {
  const long k = box.factor_box().size();
  const long total = box.size();
  std::vector<cplx> w(std::size_t(total), cplx(1));
  for (long q = 0; q < total; ++q) {
    long rest = q;
    cplx acc = 1;
    for (int j = box.r - 1; j >= 0; --j) {
      acc *= fhat[std::size_t(j)].v[std::size_t(rest % k)];
      rest /= k;
    }
    w[std::size_t(q)] = acc;
  }
  return w;
}

// sum over factors of xi_{j,ax} for every box point, n ints per point.
std::vector<int> frequency_sums(const FreqBox& box) {
  Indexer bi = box.indexer();
  std::vector<int> sums(std::size_t(bi.size() * box.n));
  std::vector<int> xi(std::size_t(box.axes()));
  for (long q = 0; q < bi.size(); ++q) {
    bi.unflatten(q, xi.data());
    for (int ax = 0; ax < box.n; ++ax) {
      int s = 0;
      for (int j = 0; j < box.r; ++j) s += xi[std::size_t(j * box.n + ax)];
      sums[std::size_t(q * box.n + ax)] = s;
    }
  }
  return sums;
}

}  // namespace

namespace detail {

TorusFunction apply_periodic_direct(const PeriodicSymbol& m, std::span<const TorusFunction> f,
                                    const TorusGrid& out_grid) {
  check_periodic_inputs(m, f, out_grid);
  const FreqBox sub = m.box.factor_box();
  std::vector<FreqTable> fhat;
  fhat.reserve(f.size());
  for (const auto& fj : f) fhat.push_back(dft_torus(fj, sub));
  const std::vector<cplx> w = coefficient_weights(m.box, fhat);
  const std::vector<int> sums = frequency_sums(m.box);
  const long total = m.box.size();
  const int smax = m.box.r * m.box.radius;

  // e^{2 pi i x_k s} per axis, s in [-r*radius, r*radius]
  std::vector<std::vector<cplx>> exps(std::size_t(out_grid.n));
  for (int ax = 0; ax < out_grid.n; ++ax) {
    exps[std::size_t(ax)].resize(std::size_t(out_grid.m) * std::size_t(2 * smax + 1));
    for (int k = 0; k < out_grid.m; ++k)
      for (int s = -smax; s <= smax; ++s)
        exps[std::size_t(ax)][std::size_t(k) * std::size_t(2 * smax + 1) + std::size_t(s + smax)] =
            std::polar(1.0, kTwoPi * out_grid.coord(k) * s);
  }

  TorusFunction out = TorusFunction::zeros(out_grid);
  out.degree_hint = smax;
  Indexer gi = out_grid.indexer();
  std::vector<int> k(std::size_t(out_grid.n));
  std::vector<cplx> phase(std::size_t(total), cplx(0));
  for (long g = 0; g < gi.size(); ++g) {
    gi.unflatten(g, k.data());
    for (long q = 0; q < total; ++q) {
      cplx p = 1;
      for (int ax = 0; ax < out_grid.n; ++ax)
        p *= exps[std::size_t(ax)][std::size_t(k[std::size_t(ax)]) * std::size_t(2 * smax + 1) +
                                   std::size_t(sums[std::size_t(q * out_grid.n + ax)] + smax)];
      phase[std::size_t(q)] = p;
    }
    out.values[std::size_t(g)] =
        kernels::cdot3(phase.data(), m.row(m.x_independent ? 0 : g), w.data(), std::size_t(total));
  }
  return out;
}

}  // namespace detail

TorusFunction apply_periodic_multilinear(const PeriodicSymbol& m, std::span<const TorusFunction> f,
                                         const TorusGrid& out_grid) {
  if (m.factors.empty() || !m.x_independent)
    return detail::apply_periodic_direct(m, f, out_grid);

  // Factored fast path: r independent multiplier applications, then the
  // pointwise product on out_grid.
  check_periodic_inputs(m, f, out_grid);
  const FreqBox sub = m.box.factor_box();
  TorusFunction out = TorusFunction::zeros(out_grid);
  for (int j = 0; j < m.box.r; ++j) {
    FreqTable c = dft_torus(f[std::size_t(j)], sub);
    for (long q = 0; q < c.size(); ++q)
      c.v[std::size_t(q)] *= m.factors[std::size_t(j)][std::size_t(q)];
    TorusFunction hj = idft_torus(c, out_grid);
    if (j == 0)
      out.values = std::move(hj.values);
    else
      kernels::cmul(out.values.data(), hj.values.data(), out.values.data(), out.values.size());
  }
  out.degree_hint = m.box.r * m.box.radius;
  return out;
}

namespace {

void check_discrete_inputs(const DiscreteSymbol& a, std::span<const LatticeFunction> g,
                           const LatticeBox& out_box) {
  a.validate();
  require(int(g.size()) == a.rank,
          "apply_discrete: rank mismatch, symbol rank " + std::to_string(a.rank) + " vs " +
              std::to_string(g.size()) + " inputs");
  int lg = 0;
  for (const auto& gj : g) {
    require(gj.box.n == a.box.n, "apply_discrete: input dimension mismatch");
    require(all_finite(gj.values), "apply_discrete: non-finite input values rejected");
    lg = std::max(lg, gj.box.radius);
  }
  require(out_box.n == a.box.n, "apply_discrete: output box dimension mismatch");
  require(a.grid.m > 2 * (lg + out_box.radius),
          "apply_discrete: aliasing violation, need grid M > 2*(input radius + output radius), "
          "M = " + std::to_string(a.grid.m));
}

// e^{2 pi i ell.eta(t)} * ghat[t] over the factor grid, per output point.
std::vector<cplx> modulated_factor(const TorusGrid& grid, std::span<const int> ell,
                                   std::span<const cplx> ghat) {
  Indexer gi = grid.indexer();
  std::vector<cplx> out(std::size_t(gi.size()));
  if (grid.n == 1) {
    std::vector<cplx> row = phase_row(grid.m, grid.offset(), ell[0], +1);
    kernels::cmul(row.data(), ghat.data(), out.data(), out.size());
    return out;
  }
  std::vector<std::vector<cplx>> rows(std::size_t(grid.n));
  for (int ax = 0; ax < grid.n; ++ax)
    rows[std::size_t(ax)] = phase_row(grid.m, grid.offset(), ell[std::size_t(ax)], +1);
  std::vector<int> t(std::size_t(grid.n));
  for (long q = 0; q < gi.size(); ++q) {
    gi.unflatten(q, t.data());
    cplx p = ghat[std::size_t(q)];
    for (int ax = 0; ax < grid.n; ++ax) p *= rows[std::size_t(ax)][std::size_t(t[std::size_t(ax)])];
    out[std::size_t(q)] = p;
  }
  return out;
}

}  // namespace

LatticeFunction apply_discrete_multilinear(const DiscreteSymbol& a,
                                           std::span<const LatticeFunction> g,
                                           const LatticeBox& out_box) {
  check_discrete_inputs(a, g, out_box);
  const long mn = a.grid.points();
  std::vector<TorusFunction> ghat;
  ghat.reserve(g.size());
  for (const auto& gj : g) ghat.push_back(dft_lattice(gj, a.grid));

  const double scale = 1.0 / std::pow(double(mn), a.rank);
  LatticeFunction out = LatticeFunction::zeros(out_box);
  Indexer oi = out_box.indexer();
  Indexer ai = a.box.indexer();
  std::vector<int> ell(std::size_t(out_box.n));
  std::vector<cplx> prod(std::size_t(mn), cplx(0));
  for (long e = 0; e < oi.size(); ++e) {
    oi.unflatten(e, ell.data());
    require(a.ell_independent || ai.contains(ell),
            "apply_discrete: output point outside the symbol's lattice box");
    const cplx* row = a.row(a.ell_independent ? 0 : ai.flatten(ell));

    std::vector<std::vector<cplx>> phi(std::size_t(a.rank));
    for (int j = 0; j < a.rank; ++j)
      phi[std::size_t(j)] = modulated_factor(a.grid, ell, ghat[std::size_t(j)].values);

    cplx acc = 0;
    if (a.rank == 1) {
      acc = kernels::cdot(row, phi[0].data(), std::size_t(mn));
    } else if (a.rank == 2) {
      for (long t1 = 0; t1 < mn; ++t1)
        acc += phi[0][std::size_t(t1)] *
               kernels::cdot(row + t1 * mn, phi[1].data(), std::size_t(mn));
    } else {
      Indexer ti = a.xi_indexer();
      std::vector<int> t(std::size_t(ti.axes()));
      for (long q = 0; q < ti.size(); ++q) {
        ti.unflatten(q, t.data());
        cplx p = row[q];
        for (int j = 0; j < a.rank; ++j) {
          long tf = 0;
          for (int ax = 0; ax < a.grid.n; ++ax) tf = tf * a.grid.m + t[std::size_t(j * a.grid.n + ax)];
          p *= phi[std::size_t(j)][std::size_t(tf)];
        }
        acc += p;
      }
    }
    out.values[std::size_t(e)] = scale * acc;
  }
  return out;
}

cplx discrete_kernel(const DiscreteSymbol& a, std::span<const int> ell,
                     std::span<const int> ellp) {
  a.validate();
  require(int(ell.size()) == a.box.n, "discrete_kernel: ell dimension mismatch");
  require(int(ellp.size()) == a.box.n * a.rank, "discrete_kernel: ell' dimension mismatch");
  Indexer ai = a.box.indexer();
  require(a.ell_independent || ai.contains(ell),
          "discrete_kernel: lattice point outside the symbol's box");
  const cplx* row = a.row(a.ell_independent ? 0 : ai.flatten(ell));

  Indexer ti = a.xi_indexer();
  const int axes = ti.axes();
  std::vector<std::vector<cplx>> rows;
  rows.resize(std::size_t(axes));
  for (int ax = 0; ax < axes; ++ax) {
    int d = ell[std::size_t(ax % a.box.n)] - ellp[std::size_t(ax)];
    rows[std::size_t(ax)] = phase_row(a.grid.m, a.grid.offset(), d, +1);
  }
  std::vector<cplx> phase(std::size_t(ti.size()));
  std::vector<int> t(std::size_t(axes), 0);
  for (long q = 0; q < ti.size(); ++q) {
    ti.unflatten(q, t.data());
    cplx p = 1;
    for (int ax = 0; ax < axes; ++ax) p *= rows[std::size_t(ax)][std::size_t(t[std::size_t(ax)])];
    phase[std::size_t(q)] = p;
  }
  return kernels::cdot(row, phase.data(), std::size_t(ti.size())) / double(ti.size());
}

LatticeFunction apply_via_kernel(const DiscreteSymbol& a, std::span<const LatticeFunction> g,
                                 const LatticeBox& out_box) {
  check_discrete_inputs(a, g, out_box);
  // Product support window for ell' in Z^{nr}.
  std::vector<int> lo, hi;
  for (const auto& gj : g)
    for (int ax = 0; ax < a.box.n; ++ax) {
      lo.push_back(-gj.box.radius);
      hi.push_back(gj.box.radius);
    }
  Indexer si(lo, hi);

  LatticeFunction out = LatticeFunction::zeros(out_box);
  Indexer oi = out_box.indexer();
  std::vector<int> ell(std::size_t(out_box.n));
  std::vector<int> ellp(std::size_t(si.axes()));
  for (long e = 0; e < oi.size(); ++e) {
    oi.unflatten(e, ell.data());
    cplx acc = 0;
    for (long s = 0; s < si.size(); ++s) {
      si.unflatten(s, ellp.data());
      cplx w = 1;
      for (int j = 0; j < a.rank; ++j) {
        std::span<const int> part(ellp.data() + j * a.box.n, std::size_t(a.box.n));
        w *= g[std::size_t(j)].at(part);
      }
      if (w == cplx(0)) continue;
      acc += discrete_kernel(a, ell, ellp) * w;
    }
    out.values[std::size_t(e)] = acc;
  }
  return out;
}

TorusFunction apply_periodic_fio(const Phase& phi, const PeriodicSymbol& a,
                                 std::span<const TorusFunction> f, const TorusGrid& out_grid) {
  phi.validate();
  check_periodic_inputs(a, f, out_grid);
  require(phi.box.n == a.box.n && phi.box.r == a.box.r && phi.box.radius == a.box.radius,
          "apply_periodic_fio: phase/symbol box mismatch");
  require(phi.grid == out_grid, "apply_periodic_fio: phase grid must equal out_grid");

  const FreqBox sub = a.box.factor_box();
  std::vector<FreqTable> fhat;
  fhat.reserve(f.size());
  for (const auto& fj : f) fhat.push_back(dft_torus(fj, sub));
  const std::vector<cplx> w = coefficient_weights(a.box, fhat);
  const long total = a.box.size();

  TorusFunction out = TorusFunction::zeros(out_grid);
  out.degree_hint.reset();  // generic FIO output is not band-limited
  std::vector<cplx> phase(std::size_t(total), cplx(0));
  for (long g = 0; g < out_grid.points(); ++g) {
    const double* prow = phi.entries.data() + g * total;
    for (long q = 0; q < total; ++q) phase[std::size_t(q)] = std::polar(1.0, prow[q]);
    out.values[std::size_t(g)] =
        kernels::cdot3(phase.data(), a.row(a.x_independent ? 0 : g), w.data(), std::size_t(total));
  }
  return out;
}

}  // namespace mpdo
