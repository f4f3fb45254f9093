#pragma once

#include <functional>

#include "mpdo/lattice.hpp"

namespace mpdo {

// Symbol m(x,xi) on grid x box, tabulated row-major [x][xi] with xi fastest.
// x-independent symbols store a single xi-row and may carry a placeholder
// M=1 grid; callback symbols are sampled once into the table at construction
// so every code path consumes identical data.
struct PeriodicSymbol {
  TorusGrid grid;  // x grid
  FreqBox box;     // xi box
  bool x_independent = false;
  std::vector<cplx> entries;               // [(x_independent ? 1 : M^n)] x [box.size()]
  std::vector<std::vector<cplx>> factors;  // optional tensor factorization, r tables
                                           // over the rank-1 factor box each

  long xi_count() const { return box.size(); }
  long x_count() const { return x_independent ? 1 : grid.points(); }

  const cplx* row(long x_flat) const {
    return entries.data() + (x_independent ? 0 : x_flat * xi_count());
  }
  cplx value(long x_flat, long xi_flat) const { return row(x_flat)[xi_flat]; }

  void validate() const;

  // x in [0,1)^n as reals, xi as integer span of length n*r.
  using Callback = std::function<cplx(std::span<const double>, std::span<const int>)>;
  static PeriodicSymbol from_callback(const TorusGrid& grid, const FreqBox& box,
                                      const Callback& fn);
  static PeriodicSymbol from_table(const TorusGrid& grid, const FreqBox& box,
                                   std::vector<cplx> entries, bool x_independent);
  // x-independent multiplier xi -> value.
  static PeriodicSymbol multiplier(const FreqBox& box,
                                   const std::function<cplx(std::span<const int>)>& fn);
  static PeriodicSymbol constant(const FreqBox& box, cplx value);
};

// Real-valued phase phi(x,xi) with the same indexing as PeriodicSymbol.
// phi is taken literally in e^{i phi}; any 2*pi factor is already inside it.
struct Phase {
  TorusGrid grid;
  FreqBox box;
  std::vector<double> entries;  // [M^n][box.size()]

  void validate() const;

  using Callback = std::function<double(std::span<const double>, std::span<const int>)>;
  static Phase from_callback(const TorusGrid& grid, const FreqBox& box, const Callback& fn);
  // phi(x,xi) = 2 pi x.(xi_1 + ... + xi_r), the linear phase of the plain quantization.
  static Phase linear(const TorusGrid& grid, const FreqBox& box);
};

// Symbol a(ell,xi) on LatticeBox x (torus grid per factor), tabulated
// row-major [ell][t] with t running over the tensor grid of M^{n*r} points.
struct DiscreteSymbol {
  LatticeBox box;  // ell
  TorusGrid grid;  // xi grid per factor; grid.n == box.n
  int rank = 1;
  bool ell_independent = false;
  std::vector<cplx> entries;  // [(ell_independent ? 1 : box.size())] x [M^(n*rank)]

  long xi_count() const {
    long c = 1;
    for (int j = 0; j < rank * grid.n; ++j) c *= grid.m;
    return c;
  }
  long ell_count() const { return ell_independent ? 1 : box.size(); }
  Indexer xi_indexer() const { return Indexer::grid(grid.n * rank, grid.m); }

  const cplx* row(long ell_flat) const {
    return entries.data() + (ell_independent ? 0 : ell_flat * xi_count());
  }

  void validate() const;

  // ell integer span (length n), xi real span in [0,1)^{n*r}.
  using Callback = std::function<cplx(std::span<const int>, std::span<const double>)>;
  static DiscreteSymbol from_callback(const LatticeBox& box, const TorusGrid& grid, int rank,
                                      const Callback& fn);
  static DiscreteSymbol from_table(const LatticeBox& box, const TorusGrid& grid, int rank,
                                   std::vector<cplx> entries);
  // ell-independent multiplier xi -> value.
  static DiscreteSymbol multiplier(const LatticeBox& box, const TorusGrid& grid, int rank,
                                   const std::function<cplx(std::span<const double>)>& fn);
  static DiscreteSymbol constant(const LatticeBox& box, const TorusGrid& grid, int rank,
                                 cplx value);
};

}  // namespace mpdo
