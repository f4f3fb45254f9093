#pragma once

#include <cmath>
#include <optional>

#include "mpdo/types.hpp"

namespace mpdo {

// Truncation window of Z^{nr}: all points xi = (xi_1, ..., xi_r) with
// |xi_{j,k}| <= radius per scalar component. Enumeration is lexicographic,
// factor-major, first axis slowest; cardinality (2*radius+1)^(n*r).
struct FreqBox {
  int n = 1;
  int r = 1;
  int radius = 0;

  FreqBox() = default;
  FreqBox(int n_, int r_, int radius_) : n(n_), r(r_), radius(radius_) {
    require(n >= 1 && r >= 1 && radius >= 0, "FreqBox: need n,r >= 1 and radius >= 0");
  }

  int axes() const { return n * r; }
  long size() const { return Indexer::cube(axes(), radius).size(); }
  Indexer indexer() const { return Indexer::cube(axes(), radius); }
  FreqBox factor_box() const { return FreqBox(n, 1, radius); }
};

// Truncation window of Z^n, cube of the given radius around 0.
struct LatticeBox {
  int n = 1;
  int radius = 0;

  LatticeBox() = default;
  LatticeBox(int n_, int radius_) : n(n_), radius(radius_) {
    require(n >= 1 && radius >= 0, "LatticeBox: need n >= 1 and radius >= 0");
  }

  long size() const { return Indexer::cube(n, radius).size(); }
  Indexer indexer() const { return Indexer::cube(n, radius); }
};

// Uniform grid on T^n = [0,1)^n: x = (k + offset)/m componentwise,
// k in {0,...,m-1}^n, offset 0 or 1/2. The midpoint variant exists so that
// point-singular symbols never sample x = 0.
struct TorusGrid {
  int n = 1;
  int m = 1;
  bool midpoint = false;

  TorusGrid() = default;
  TorusGrid(int n_, int m_, bool midpoint_ = false) : n(n_), m(m_), midpoint(midpoint_) {
    require(n >= 1 && m >= 1, "TorusGrid: need n >= 1 and m >= 1");
  }

  double offset() const { return midpoint ? 0.5 : 0.0; }
  long points() const { return Indexer::grid(n, m).size(); }
  Indexer indexer() const { return Indexer::grid(n, m); }
  double coord(int k) const { return (k + offset()) / m; }

  bool operator==(const TorusGrid& o) const {
    return n == o.n && m == o.m && midpoint == o.midpoint;
  }
};

// Table xi -> complex over an integer window of Z^{nr}. The window starts as
// the symmetric FreqBox cube; difference operators shrink the upper end of
// individual axes, so lo/hi are kept per axis.
struct FreqTable {
  int n = 1;
  int r = 1;
  Indexer idx;
  std::vector<cplx> v;

  FreqTable() = default;
  FreqTable(int n_, int r_, Indexer idx_)
      : n(n_), r(r_), idx(std::move(idx_)), v(std::size_t(idx.size()), cplx(0)) {
    require(idx.axes() == n * r, "FreqTable: indexer axes != n*r");
  }

  static FreqTable zeros(const FreqBox& box) { return FreqTable(box.n, box.r, box.indexer()); }

  template <class Fn>
  static FreqTable tabulate(const FreqBox& box, Fn&& fn) {
    FreqTable t = zeros(box);
    std::vector<int> p(box.axes());
    for (long f = 0; f < t.idx.size(); ++f) {
      t.idx.unflatten(f, p.data());
      t.v[std::size_t(f)] = fn(std::span<const int>(p));
    }
    return t;
  }

  long size() const { return idx.size(); }
  cplx at(std::span<const int> p) const { return v[std::size_t(idx.flatten(p))]; }
  cplx& at(std::span<const int> p) { return v[std::size_t(idx.flatten(p))]; }
};

// Complex samples of a function on a TorusGrid. degree_hint, when set, asserts
// that all Fourier coefficients beyond that sup-norm degree vanish.
struct TorusFunction {
  TorusGrid grid;
  std::vector<cplx> values;
  std::optional<int> degree_hint;

  TorusFunction() = default;
  TorusFunction(TorusGrid g, std::vector<cplx> vals, std::optional<int> hint = std::nullopt)
      : grid(g), values(std::move(vals)), degree_hint(hint) {
    require(long(values.size()) == grid.points(), "TorusFunction: value count != grid points");
  }

  static TorusFunction zeros(const TorusGrid& g) {
    return TorusFunction(g, std::vector<cplx>(std::size_t(g.points()), cplx(0)), 0);
  }

  // Samples x -> fn(x) with x the real coordinate vector in [0,1)^n.
  template <class Fn>
  static TorusFunction sample(const TorusGrid& g, Fn&& fn) {
    std::vector<cplx> vals(std::size_t(g.points()));
    Indexer gi = g.indexer();
    std::vector<int> k(g.n);
    std::vector<double> x(g.n);
    for (long f = 0; f < gi.size(); ++f) {
      gi.unflatten(f, k.data());
      for (int ax = 0; ax < g.n; ++ax) x[ax] = g.coord(k[ax]);
      vals[std::size_t(f)] = fn(std::span<const double>(x));
    }
    return TorusFunction(g, std::move(vals));
  }

  // e^{2*pi*i xi.x} sampled on the grid.
  static TorusFunction character(const TorusGrid& g, std::span<const int> xi);
};

// Finitely supported complex function on Z^n, tabulated over its support box.
struct LatticeFunction {
  LatticeBox box;
  std::vector<cplx> values;

  LatticeFunction() = default;
  LatticeFunction(LatticeBox b, std::vector<cplx> vals) : box(b), values(std::move(vals)) {
    require(long(values.size()) == box.size(), "LatticeFunction: value count != box size");
  }

  static LatticeFunction zeros(const LatticeBox& b) {
    return LatticeFunction(b, std::vector<cplx>(std::size_t(b.size()), cplx(0)));
  }

  static LatticeFunction delta(const LatticeBox& b, std::span<const int> at) {
    LatticeFunction g = zeros(b);
    require(b.indexer().contains(at), "LatticeFunction::delta: point outside box");
    g.values[std::size_t(b.indexer().flatten(at))] = 1.0;
    return g;
  }

  cplx at(std::span<const int> ell) const {
    Indexer bi = box.indexer();
    if (!bi.contains(ell)) return 0.0;  // zero outside support by construction
    return values[std::size_t(bi.flatten(ell))];
  }
};

}  // namespace mpdo
