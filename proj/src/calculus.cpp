#include "mpdo/calculus.hpp"

#include <algorithm>

#include "mpdo/transforms.hpp"

namespace mpdo {

namespace {

// Single forward difference along one axis; shrinks that axis's hi by one.
FreqTable single_difference(const FreqTable& t, int axis) {
  require(t.idx.hi[std::size_t(axis)] - 1 >= t.idx.lo[std::size_t(axis)],
          "difference_op: order exceeds box margin along axis " + std::to_string(axis));
  Indexer out_idx(t.idx.lo, [&] {
    std::vector<int> hi = t.idx.hi;
    hi[std::size_t(axis)] -= 1;
    return hi;
  }());
  FreqTable out(t.n, t.r, out_idx);
  std::vector<int> p(std::size_t(t.idx.axes()));
  std::vector<int> q(std::size_t(t.idx.axes()));
  for (long f = 0; f < out_idx.size(); ++f) {
    out_idx.unflatten(f, p.data());
    q = p;
    q[std::size_t(axis)] += 1;
    out.v[std::size_t(f)] = t.at(q) - t.at(p);
  }
  return out;
}

}  // namespace

FreqTable difference_op(const FreqTable& t, const MultiIndex& alpha) {
  require(alpha.n == t.n && alpha.r == t.r, "difference_op: multi-index shape mismatch");
  FreqTable cur = t;
  for (int ax = 0; ax < t.idx.axes(); ++ax)
    for (int rep = 0; rep < alpha.comps[std::size_t(ax)]; ++rep) cur = single_difference(cur, ax);
  return cur;
}

double japanese_bracket(std::span<const int> xi, int n, int r) {
  require(int(xi.size()) == n * r, "japanese_bracket: point dimension mismatch");
  double sum = 0;
  for (int j = 0; j < r; ++j) {
    double block = 0;
    for (int ax = 0; ax < n; ++ax) {
      double c = xi[std::size_t(j * n + ax)];
      block += c * c;
    }
    sum += std::sqrt(block);
  }
  return std::max(1.0, sum);
}

std::vector<std::vector<int>> multi_indices_up_to(int axes, int max_order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(std::size_t(axes), 0);
  auto rec = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == axes) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      cur[std::size_t(axis)] = c;
      self(self, axis + 1, remaining - c);
    }
    cur[std::size_t(axis)] = 0;
  };
  rec(rec, 0, max_order);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int oa = 0, ob = 0;
    for (int c : a) oa += c;
    for (int c : b) ob += c;
    return oa < ob;
  });
  return out;
}

ClassReport kohn_nirenberg_constants(const PeriodicSymbol& m, int max_order) {
  m.validate();
  require(max_order >= 0, "kohn_nirenberg_constants: max_order >= 0");
  require(m.box.radius >= max_order,
          "kohn_nirenberg_constants: margin violation, box radius must be >= max_order");

  ClassReport rep;
  rep.n = m.box.n;
  rep.r = m.box.r;
  rep.max_order = max_order;
  rep.radius = m.box.radius;
  const int half = m.box.radius / 2;

  for (const auto& alpha : multi_indices_up_to(m.box.axes(), max_order)) {
    MultiIndex mi(m.box.n, m.box.r, alpha);
    const int ord = mi.order();
    double c_full = 0, c_half = 0;
    for (long g = 0; g < m.x_count(); ++g) {
      FreqTable slice(m.box.n, m.box.r, m.box.indexer());
      std::copy(m.row(g), m.row(g) + m.box.size(), slice.v.begin());
      FreqTable d = difference_op(slice, mi);
      std::vector<int> p(std::size_t(d.idx.axes()));
      for (long f = 0; f < d.idx.size(); ++f) {
        d.idx.unflatten(f, p.data());
        double val = std::pow(japanese_bracket(p, m.box.n, m.box.r), ord) *
                     std::abs(d.v[std::size_t(f)]);
        c_full = std::max(c_full, val);
        bool in_half = true;
        for (int c : p)
          if (std::abs(c) > half) in_half = false;
        if (in_half) c_half = std::max(c_half, val);
      }
    }
    bool growth = c_full > 1.25 * c_half + 1e-300;
    rep.rows.push_back({alpha, c_full, c_half, growth});
  }
  return rep;
}

DiscreteSymbol spectral_derivative(const DiscreteSymbol& a, const MultiIndex& beta) {
  a.validate();
  require(beta.n == a.box.n && beta.r == a.rank, "spectral_derivative: multi-index shape mismatch");
  require(a.grid.m >= 3, "spectral_derivative: grid too coarse for a band-limited slice");

  Indexer ti = a.xi_indexer();
  const int axes = ti.axes();
  const int m = a.grid.m;
  const int klo = -((m - 1) / 2), khi = m / 2;

  // Forward: c_k = (1/M^axes) sum_t s(t) e^{-2 pi i k.eta(t)}, k per axis in
  // [klo, khi]; backward with the (2 pi i k)^beta weights.
  Indexer ki(std::vector<int>(std::size_t(axes), klo), std::vector<int>(std::size_t(axes), khi));
  // phase rows per (axis, k) over the grid points t
  std::vector<std::vector<std::vector<cplx>>> rows_f, rows_b;
  rows_f.resize(std::size_t(axes));
  rows_b.resize(std::size_t(axes));
  for (int ax = 0; ax < axes; ++ax)
    for (int k = klo; k <= khi; ++k) {
      rows_f[std::size_t(ax)].push_back(phase_row(m, a.grid.offset(), k, -1));
      rows_b[std::size_t(ax)].push_back(phase_row(m, a.grid.offset(), k, +1));
    }

  DiscreteSymbol out = a;
  std::vector<int> t(std::size_t(axes), 0);
  std::vector<int> k(std::size_t(axes), 0);
  std::vector<cplx> coeff(std::size_t(ki.size()));
  const double scale = 1.0 / double(ti.size());
  for (long e = 0; e < a.ell_count(); ++e) {
    const cplx* slice = a.row(e);
    // analyse
    for (long q = 0; q < ki.size(); ++q) {
      ki.unflatten(q, k.data());
      cplx acc = 0;
      for (long tf = 0; tf < ti.size(); ++tf) {
        ti.unflatten(tf, t.data());
        cplx p = slice[tf];
        for (int ax = 0; ax < axes; ++ax)
          p *= rows_f[std::size_t(ax)][std::size_t(k[std::size_t(ax)] - klo)]
                     [std::size_t(t[std::size_t(ax)])];
        acc += p;
      }
      // (2 pi i k)^beta
      cplx w = scale * acc;
      for (int ax = 0; ax < axes; ++ax)
        for (int rep = 0; rep < beta.comps[std::size_t(ax)]; ++rep)
          w *= cplx(0, kTwoPi * k[std::size_t(ax)]);
      coeff[std::size_t(q)] = w;
    }
    // synthesize
    cplx* dst = out.entries.data() + e * ti.size();
    for (long tf = 0; tf < ti.size(); ++tf) {
      ti.unflatten(tf, t.data());
      cplx acc = 0;
      for (long q = 0; q < ki.size(); ++q) {
        ki.unflatten(q, k.data());
        cplx p = coeff[std::size_t(q)];
        if (p == cplx(0)) continue;
        for (int ax = 0; ax < axes; ++ax)
          p *= rows_b[std::size_t(ax)][std::size_t(k[std::size_t(ax)] - klo)]
                     [std::size_t(t[std::size_t(ax)])];
        acc += p;
      }
      dst[tf] = acc;
    }
  }
  return out;
}

DiscreteClassReport class_check_discrete(const DiscreteSymbol& a, int kappa) {
  require(kappa >= 1, "class_check_discrete: kappa >= 1");
  DiscreteClassReport rep;
  rep.kappa = kappa;
  for (const auto& beta : multi_indices_up_to(a.box.n * a.rank, 2 * kappa)) {
    MultiIndex mi(a.box.n, a.rank, beta);
    DiscreteSymbol d = spectral_derivative(a, mi);
    double sup = 0;
    for (const cplx& z : d.entries) sup = std::max(sup, std::abs(z));
    rep.rows.push_back({beta, sup, mi.order() == 2 * kappa});
  }
  return rep;
}

}  // namespace mpdo
