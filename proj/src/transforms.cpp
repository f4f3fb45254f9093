#include "mpdo/transforms.hpp"

#include "mpdo/kernels.hpp"

namespace mpdo {

std::vector<cplx> phase_row(int m, double offset, long xi, int sign) {
  std::vector<cplx> row(static_cast<std::size_t>(m), cplx(0));
  const double w = sign * kTwoPi * double(xi) / m;
  for (int k = 0; k < m; ++k) row[std::size_t(k)] = std::polar(1.0, w * (k + offset));
  return row;
}

namespace {

// Per-axis phase tables P[ax][xi-lo][k]; the full n-dim phase is the product.
struct PhaseTables {
  std::vector<std::vector<std::vector<cplx>>> p;  // [axis][xi_index][k]

  PhaseTables(const TorusGrid& g, const Indexer& freq, int sign) {
    p.resize(std::size_t(freq.axes()));
    for (int ax = 0; ax < freq.axes(); ++ax) {
      int count = freq.hi[std::size_t(ax)] - freq.lo[std::size_t(ax)] + 1;
      p[std::size_t(ax)].reserve(std::size_t(count));
      for (int t = 0; t < count; ++t)
        p[std::size_t(ax)].push_back(phase_row(g.m, g.offset(), freq.lo[std::size_t(ax)] + t, sign));
    }
  }

  cplx at(int ax, int xi_index, int k) const { return p[std::size_t(ax)][std::size_t(xi_index)][std::size_t(k)]; }
  const std::vector<cplx>& row(int ax, int xi_index) const { return p[std::size_t(ax)][std::size_t(xi_index)]; }
};

std::vector<std::vector<int>> grid_digits(const Indexer& gi) {
  std::vector<std::vector<int>> d(std::size_t(gi.size()), std::vector<int>(std::size_t(gi.axes())));
  for (long f = 0; f < gi.size(); ++f) gi.unflatten(f, d[std::size_t(f)].data());
  return d;
}

}  // namespace

FreqTable dft_torus(const TorusFunction& f, const FreqBox& box) {
  require(box.r == 1, "dft_torus: box must have rank r = 1");
  require(box.n == f.grid.n, "dft_torus: dimension mismatch");
  require(f.grid.m > 2 * box.radius,
          "dft_torus: aliasing violation, need grid M > 2*radius (M = " +
              std::to_string(f.grid.m) + ", radius = " + std::to_string(box.radius) + ")");
  require(all_finite(f.values), "dft_torus: non-finite samples rejected");

  FreqTable out = FreqTable::zeros(box);
  const double scale = 1.0 / double(f.grid.points());
  PhaseTables ph(f.grid, out.idx, -1);

  if (box.n == 1) {
    for (long q = 0; q < out.size(); ++q) {
      out.v[std::size_t(q)] =
          scale * kernels::cdot(f.values.data(), ph.row(0, int(q)).data(), f.values.size());
    }
    return out;
  }

  Indexer gi = f.grid.indexer();
  auto digits = grid_digits(gi);
  std::vector<int> xi(std::size_t(box.axes()));
  for (long q = 0; q < out.size(); ++q) {
    out.idx.unflatten(q, xi.data());
    cplx acc = 0;
    for (long g = 0; g < gi.size(); ++g) {
      cplx w = f.values[std::size_t(g)];
      for (int ax = 0; ax < box.n; ++ax)
        w *= ph.at(ax, xi[std::size_t(ax)] + box.radius, digits[std::size_t(g)][std::size_t(ax)]);
      acc += w;
    }
    out.v[std::size_t(q)] = scale * acc;
  }
  return out;
}

TorusFunction idft_torus(const FreqTable& coeffs, const TorusGrid& grid) {
  require(grid.n * 1 == coeffs.n && coeffs.r == 1, "idft_torus: rank-1 tables only");
  int max_abs = 0;
  for (int ax = 0; ax < coeffs.idx.axes(); ++ax) {
    max_abs = std::max(max_abs, std::abs(coeffs.idx.lo[std::size_t(ax)]));
    max_abs = std::max(max_abs, std::abs(coeffs.idx.hi[std::size_t(ax)]));
  }
  require(grid.m > 2 * max_abs, "idft_torus: aliasing violation, need grid M > 2*radius");
  require(all_finite(coeffs.v), "idft_torus: non-finite coefficients rejected");

  TorusFunction f = TorusFunction::zeros(grid);
  f.degree_hint = max_abs;
  PhaseTables ph(grid, coeffs.idx, +1);

  if (grid.n == 1) {
    for (long q = 0; q < coeffs.size(); ++q)
      kernels::caxpy(coeffs.v[std::size_t(q)], ph.row(0, int(q)).data(), f.values.data(),
                     f.values.size());
    return f;
  }

  Indexer gi = grid.indexer();
  auto digits = grid_digits(gi);
  std::vector<int> xi(std::size_t(coeffs.idx.axes()));
  for (long q = 0; q < coeffs.size(); ++q) {
    coeffs.idx.unflatten(q, xi.data());
    cplx c = coeffs.v[std::size_t(q)];
    if (c == cplx(0)) continue;
    for (long g = 0; g < gi.size(); ++g) {
      cplx w = c;
      for (int ax = 0; ax < grid.n; ++ax)
        w *= ph.at(ax, xi[std::size_t(ax)] - coeffs.idx.lo[std::size_t(ax)],
                   digits[std::size_t(g)][std::size_t(ax)]);
      f.values[std::size_t(g)] += w;
    }
  }
  return f;
}

TorusFunction dft_lattice(const LatticeFunction& g, const TorusGrid& grid, int sign) {
  require(grid.n == g.box.n, "dft_lattice: dimension mismatch");
  require(grid.m > 2 * g.box.radius, "dft_lattice: aliasing violation, need grid M > 2*support radius");
  require(all_finite(g.values), "dft_lattice: non-finite values rejected");

  TorusFunction out = TorusFunction::zeros(grid);
  out.degree_hint = g.box.radius;
  Indexer bi = g.box.indexer();
  PhaseTables ph(grid, bi, sign);

  if (grid.n == 1) {
    for (long s = 0; s < bi.size(); ++s)
      kernels::caxpy(g.values[std::size_t(s)], ph.row(0, int(s)).data(), out.values.data(),
                     out.values.size());
    return out;
  }

  Indexer gi = grid.indexer();
  auto digits = grid_digits(gi);
  std::vector<int> ell(std::size_t(bi.axes()));
  for (long s = 0; s < bi.size(); ++s) {
    bi.unflatten(s, ell.data());
    cplx c = g.values[std::size_t(s)];
    if (c == cplx(0)) continue;
    for (long t = 0; t < gi.size(); ++t) {
      cplx w = c;
      for (int ax = 0; ax < grid.n; ++ax)
        w *= ph.at(ax, ell[std::size_t(ax)] + g.box.radius, digits[std::size_t(t)][std::size_t(ax)]);
      out.values[std::size_t(t)] += w;
    }
  }
  return out;
}

cplx quadrature_torus(const TorusFunction& f) {
  require(all_finite(f.values), "quadrature_torus: non-finite samples rejected");
  cplx acc = 0;
  for (cplx z : f.values) acc += z;
  return acc / double(f.grid.points());
}

TorusFunction TorusFunction::character(const TorusGrid& g, std::span<const int> xi) {
  require(int(xi.size()) == g.n, "character: frequency dimension mismatch");
  TorusFunction f = sample(g, [&](std::span<const double> x) {
    double phase = 0;
    for (int ax = 0; ax < g.n; ++ax) phase += x[std::size_t(ax)] * xi[std::size_t(ax)];
    return std::polar(1.0, kTwoPi * phase);
  });
  int deg = 0;
  for (int c : xi) deg = std::max(deg, std::abs(c));
  f.degree_hint = deg;
  return f;
}

}  // namespace mpdo
