#include "mpdo/symbols.hpp"

namespace mpdo {

void PeriodicSymbol::validate() const {
  require(box.n == grid.n || x_independent, "PeriodicSymbol: grid/box dimension mismatch");
  require(long(entries.size()) == x_count() * xi_count(), "PeriodicSymbol: entry count mismatch");
  require(all_finite(entries), "PeriodicSymbol: non-finite entries");
  if (!factors.empty()) {
    require(x_independent, "PeriodicSymbol: factored symbols must be x-independent");
    require(int(factors.size()) == box.r, "PeriodicSymbol: need one factor per rank");
    const long k = box.factor_box().size();
    for (const auto& f : factors) require(long(f.size()) == k, "PeriodicSymbol: factor size mismatch");
  }
}

PeriodicSymbol PeriodicSymbol::from_callback(const TorusGrid& grid, const FreqBox& box,
                                             const Callback& fn) {
  require(grid.n == box.n, "PeriodicSymbol: grid/box dimension mismatch");
  PeriodicSymbol s;
  s.grid = grid;
  s.box = box;
  s.x_independent = false;
  Indexer gi = grid.indexer();
  Indexer bi = box.indexer();
  s.entries.resize(std::size_t(gi.size() * bi.size()));
  std::vector<int> k(std::size_t(grid.n));
  std::vector<double> x(std::size_t(grid.n));
  std::vector<int> xi(std::size_t(box.axes()));
  for (long g = 0; g < gi.size(); ++g) {
    gi.unflatten(g, k.data());
    for (int ax = 0; ax < grid.n; ++ax) x[std::size_t(ax)] = grid.coord(k[std::size_t(ax)]);
    for (long q = 0; q < bi.size(); ++q) {
      bi.unflatten(q, xi.data());
      s.entries[std::size_t(g * bi.size() + q)] = fn(x, xi);
    }
  }
  s.validate();
  return s;
}

PeriodicSymbol PeriodicSymbol::from_table(const TorusGrid& grid, const FreqBox& box,
                                          std::vector<cplx> entries, bool x_independent) {
  PeriodicSymbol s;
  s.grid = grid;
  s.box = box;
  const long k = box.size();
  if (x_independent && long(entries.size()) == grid.points() * k && grid.points() > 1) {
    // Declared x-independent with the full table supplied: check constancy
    // along x, then keep a single row.
    for (long g = 1; g < grid.points(); ++g)
      for (long q = 0; q < k; ++q)
        require(entries[std::size_t(g * k + q)] == entries[std::size_t(q)],
                "PeriodicSymbol: declared x-independent but entries vary along x");
    entries.resize(std::size_t(k));
  }
  s.x_independent = x_independent;
  s.entries = std::move(entries);
  s.validate();
  return s;
}

PeriodicSymbol PeriodicSymbol::multiplier(const FreqBox& box,
                                          const std::function<cplx(std::span<const int>)>& fn) {
  PeriodicSymbol s;
  s.grid = TorusGrid(box.n, 1);
  s.box = box;
  s.x_independent = true;
  Indexer bi = box.indexer();
  s.entries.resize(std::size_t(bi.size()));
  std::vector<int> xi(std::size_t(box.axes()));
  for (long q = 0; q < bi.size(); ++q) {
    bi.unflatten(q, xi.data());
    s.entries[std::size_t(q)] = fn(xi);
  }
  s.validate();
  return s;
}

PeriodicSymbol PeriodicSymbol::constant(const FreqBox& box, cplx value) {
  return multiplier(box, [value](std::span<const int>) { return value; });
}

void Phase::validate() const {
  require(grid.n == box.n, "Phase: grid/box dimension mismatch");
  require(long(entries.size()) == grid.points() * box.size(), "Phase: entry count mismatch");
  require(all_finite(entries), "Phase: non-real or non-finite phase rejected");
}

Phase Phase::from_callback(const TorusGrid& grid, const FreqBox& box, const Callback& fn) {
  Phase p;
  p.grid = grid;
  p.box = box;
  Indexer gi = grid.indexer();
  Indexer bi = box.indexer();
  p.entries.resize(std::size_t(gi.size() * bi.size()));
  std::vector<int> k(std::size_t(grid.n));
  std::vector<double> x(std::size_t(grid.n));
  std::vector<int> xi(std::size_t(box.axes()));
  for (long g = 0; g < gi.size(); ++g) {
    gi.unflatten(g, k.data());
    for (int ax = 0; ax < grid.n; ++ax) x[std::size_t(ax)] = grid.coord(k[std::size_t(ax)]);
    for (long q = 0; q < bi.size(); ++q) {
      bi.unflatten(q, xi.data());
      p.entries[std::size_t(g * bi.size() + q)] = fn(x, xi);
    }
  }
  p.validate();
  return p;
}

Phase Phase::linear(const TorusGrid& grid, const FreqBox& box) {
  return from_callback(grid, box, [&box](std::span<const double> x, std::span<const int> xi) {
    double acc = 0;
    for (int j = 0; j < box.r; ++j)
      for (int ax = 0; ax < box.n; ++ax)
        acc += x[std::size_t(ax)] * xi[std::size_t(j * box.n + ax)];
    return kTwoPi * acc;
  });
}

void DiscreteSymbol::validate() const {
  require(grid.n == box.n, "DiscreteSymbol: grid/box dimension mismatch");
  require(rank >= 1, "DiscreteSymbol: rank >= 1");
  require(long(entries.size()) == ell_count() * xi_count(), "DiscreteSymbol: entry count mismatch");
  require(all_finite(entries), "DiscreteSymbol: non-finite entries");
}

DiscreteSymbol DiscreteSymbol::from_callback(const LatticeBox& box, const TorusGrid& grid,
                                             int rank, const Callback& fn) {
  DiscreteSymbol s;
  s.box = box;
  s.grid = grid;
  s.rank = rank;
  Indexer bi = box.indexer();
  Indexer ti = s.xi_indexer();
  s.entries.resize(std::size_t(bi.size() * ti.size()));
  std::vector<int> ell(std::size_t(box.n));
  std::vector<int> t(std::size_t(ti.axes()));
  std::vector<double> xi(std::size_t(ti.axes()));
  for (long e = 0; e < bi.size(); ++e) {
    bi.unflatten(e, ell.data());
    for (long q = 0; q < ti.size(); ++q) {
      ti.unflatten(q, t.data());
      for (int ax = 0; ax < ti.axes(); ++ax) xi[std::size_t(ax)] = grid.coord(t[std::size_t(ax)]);
      s.entries[std::size_t(e * ti.size() + q)] = fn(ell, xi);
    }
  }
  s.validate();
  return s;
}

DiscreteSymbol DiscreteSymbol::from_table(const LatticeBox& box, const TorusGrid& grid, int rank,
                                          std::vector<cplx> entries) {
  DiscreteSymbol s;
  s.box = box;
  s.grid = grid;
  s.rank = rank;
  s.entries = std::move(entries);
  s.validate();
  return s;
}

DiscreteSymbol DiscreteSymbol::multiplier(const LatticeBox& box, const TorusGrid& grid, int rank,
                                          const std::function<cplx(std::span<const double>)>& fn) {
  DiscreteSymbol s;
  s.box = box;
  s.grid = grid;
  s.rank = rank;
  s.ell_independent = true;
  Indexer ti = s.xi_indexer();
  s.entries.resize(std::size_t(ti.size()));
  std::vector<int> t(std::size_t(ti.axes()));
  std::vector<double> xi(std::size_t(ti.axes()));
  for (long q = 0; q < ti.size(); ++q) {
    ti.unflatten(q, t.data());
    for (int ax = 0; ax < ti.axes(); ++ax) xi[std::size_t(ax)] = grid.coord(t[std::size_t(ax)]);
    s.entries[std::size_t(q)] = fn(xi);
  }
  s.validate();
  return s;
}

DiscreteSymbol DiscreteSymbol::constant(const LatticeBox& box, const TorusGrid& grid, int rank,
                                        cplx value) {
  return multiplier(box, grid, rank, [value](std::span<const double>) { return value; });
}

}  // namespace mpdo
