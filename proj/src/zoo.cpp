#include "mpdo/zoo.hpp"

namespace mpdo {

namespace {

double block_norm2(std::span<const int> xi, int n, int j) {
  double s = 0;
  for (int ax = 0; ax < n; ++ax) {
    double c = xi[std::size_t(j * n + ax)];
    s += c * c;
  }
  return s;
}

// Attaches the tensor factorization tables for symbols of the form
// prod_j w(|xi_j|^2).
void attach_factors(PeriodicSymbol& s, const std::function<double(double)>& w) {
  const FreqBox sub = s.box.factor_box();
  Indexer fi = sub.indexer();
  std::vector<cplx> table(std::size_t(fi.size()));
  std::vector<int> xi(std::size_t(sub.n));
  for (long q = 0; q < fi.size(); ++q) {
    fi.unflatten(q, xi.data());
    table[std::size_t(q)] = w(block_norm2(xi, sub.n, 0));
  }
  s.factors.assign(std::size_t(s.box.r), table);
}

}  // namespace

PeriodicSymbol laplacian_symbol(const FreqBox& box) {
  PeriodicSymbol s = PeriodicSymbol::multiplier(box, [&box](std::span<const int> xi) {
    double prod = 1;
    for (int j = 0; j < box.r; ++j) prod *= block_norm2(xi, box.n, j);
    return cplx(prod, 0);
  });
  if (box.r > 1) {
    // per-factor tables differ only in which block they read; all equal |xi|^2
    attach_factors(s, [](double n2) { return n2; });
  }
  return s;
}

PeriodicSymbol fractional_symbol(double s, FractionalVariant variant, const FreqBox& box) {
  require(box.r == 1, "fractional_symbol: rank-1 boxes only");
  require(std::isfinite(s), "fractional_symbol: order must be finite");
  if (variant == FractionalVariant::homogeneous && s < 0)
    require(false, "fractional_symbol: homogeneous variant with s < 0 has a pole at xi = 0");
  return PeriodicSymbol::multiplier(box, [s, variant, &box](std::span<const int> xi) {
    double n2 = block_norm2(xi, box.n, 0);
    if (variant == FractionalVariant::bessel) return cplx(std::pow(1.0 + n2, s / 2), 0);
    if (n2 == 0) return cplx(s == 0 ? 1.0 : 0.0, 0);  // J^s kills the 0 mode for s > 0
    return cplx(std::pow(n2, s / 2), 0);
  });
}

PeriodicSymbol bessel_multilinear_symbol(const BesselOrder& order, const FreqBox& box) {
  require(int(order.alpha.size()) == box.r, "bessel_multilinear_symbol: one order per factor");
  for (double a : order.alpha) require(a >= 0, "bessel_multilinear_symbol: orders must be >= 0");
  PeriodicSymbol s = PeriodicSymbol::multiplier(box, [&](std::span<const int> xi) {
    double prod = 1;
    for (int j = 0; j < box.r; ++j)
      prod *= std::pow(1.0 + block_norm2(xi, box.n, j), -order.alpha[std::size_t(j)] / 2);
    return cplx(prod, 0);
  });
  const FreqBox sub = box.factor_box();
  Indexer fi = sub.indexer();
  s.factors.clear();
  for (int j = 0; j < box.r; ++j) {
    std::vector<cplx> table(std::size_t(fi.size()));
    std::vector<int> xi(std::size_t(sub.n));
    for (long q = 0; q < fi.size(); ++q) {
      fi.unflatten(q, xi.data());
      table[std::size_t(q)] =
          std::pow(1.0 + block_norm2(xi, sub.n, 0), -order.alpha[std::size_t(j)] / 2);
    }
    s.factors.push_back(std::move(table));
  }
  return s;
}

double cutoff_phi(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  auto psi = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
  double a = psi(2.0 - t), b = psi(t - 1.0);
  return a / (a + b);
}

KatoPonceSplit kato_ponce_split(double s, const FreqBox& pair_box) {
  require(s > 0, "kato_ponce_split: s must be > 0");
  require(pair_box.r == 2, "kato_ponce_split: box must pair (xi, eta), rank 2");
  const int n = pair_box.n;

  auto tau_fn = [s, n](std::span<const int> p) -> cplx {
    double xin = std::sqrt(block_norm2(p, n, 0));
    double etan = std::sqrt(block_norm2(p, n, 1));
    if (xin == 0) return 0.0;  // (1-phi)(0) = 0; removes the 0/0
    double one_minus_phi = etan == 0 ? 1.0 : 1.0 - cutoff_phi(xin / etan);
    if (one_minus_phi == 0) return 0.0;
    double sum = 0;
    for (int ax = 0; ax < n; ++ax) {
      double c = double(p[std::size_t(ax)]) + double(p[std::size_t(n + ax)]);
      sum += c * c;
    }
    return std::pow(std::sqrt(sum) / xin, s) * one_minus_phi;
  };
  auto alpha_fn = [s, n](std::span<const int> p) -> cplx {
    double xin = std::sqrt(block_norm2(p, n, 0));
    double etan = std::sqrt(block_norm2(p, n, 1));
    if (etan == 0) return 0.0;  // convention: the alpha term vanishes at eta = 0
    double phi = cutoff_phi(xin / etan);
    if (phi == 0) return 0.0;
    double sum = 0;
    for (int ax = 0; ax < n; ++ax) {
      double c = double(p[std::size_t(ax)]) + double(p[std::size_t(n + ax)]);
      sum += c * c;
    }
    return std::pow(std::sqrt(sum) / etan, s) * phi;
  };

  KatoPonceSplit split;
  split.s = s;
  split.tau = PeriodicSymbol::multiplier(pair_box, tau_fn);
  split.alpha = PeriodicSymbol::multiplier(pair_box, alpha_fn);
  return split;
}

PeriodicSymbol singular_symbol(double rho, const FreqTable& kappa, const TorusGrid& grid) {
  require(rho >= 0, "singular_symbol: rho must be >= 0");
  require(grid.midpoint, "singular_symbol: midpoint grid required so x = 0 is never sampled");
  require(kappa.n == grid.n, "singular_symbol: kappa/grid dimension mismatch");
  FreqBox box(kappa.n, kappa.r, kappa.idx.hi[0]);
  require(box.indexer() == kappa.idx, "singular_symbol: kappa must cover a full symmetric box");
  if (rho == 0) {
    PeriodicSymbol s = PeriodicSymbol::from_table(TorusGrid(grid.n, 1, true), box, kappa.v, true);
    return s;
  }
  return PeriodicSymbol::from_callback(
      grid, box, [rho, &kappa](std::span<const double> x, std::span<const int> xi) {
        double n2 = 0;
        for (double c : x) {
          double rep = c >= 0.5 ? c - 1.0 : c;  // fundamental-cell representative in [-1/2,1/2)
          n2 += rep * rep;
        }
        return std::pow(std::sqrt(n2), -rho) * kappa.at(xi);
      });
}

TorusFunction apply_multiplier(const PeriodicSymbol& m, const TorusFunction& f,
                               const TorusGrid& out_grid) {
  require(m.box.r == 1, "apply_multiplier: rank-1 symbols only");
  const TorusFunction fs[] = {f};
  return apply_periodic_multilinear(m, fs, out_grid);
}

}  // namespace mpdo
