#include "mpdo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mpdo::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Header {
  int n = 1, r = 1, radius = 0, grid = 0;
  double offset = 0;
};

void write_header(std::ostream& os, const Header& h) {
  os << "dim " << h.n << ", rank " << h.r << ", radius " << h.radius << ", grid " << h.grid
     << ", offset " << (h.offset == 0.5 ? "0.5" : "0") << "\n";
}

Header read_header(std::istream& is) {
  std::string line;
  require(bool(std::getline(is, line)), "columnar reader: missing header line");
  Header h;
  char offbuf[8] = {0};
  int got = std::sscanf(line.c_str(), "dim %d, rank %d, radius %d, grid %d, offset %7s", &h.n,
                        &h.r, &h.radius, &h.grid, offbuf);
  require(got == 5, "columnar reader: malformed header '" + line + "'");
  std::string off(offbuf);
  require(off == "0" || off == "0.5", "columnar reader: offset must be 0 or 0.5");
  h.offset = off == "0.5" ? 0.5 : 0.0;
  return h;
}

void write_rows(std::ostream& os, const Indexer& idx, std::span<const cplx> v) {
  std::vector<int> p(std::size_t(idx.axes()));
  for (long f = 0; f < idx.size(); ++f) {
    idx.unflatten(f, p.data());
    for (int c : p) os << c << ' ';
    os << fmt(v[std::size_t(f)].real()) << ' ' << fmt(v[std::size_t(f)].imag()) << "\n";
  }
}

std::vector<cplx> read_rows(std::istream& is, const Indexer& idx) {
  std::vector<cplx> v(std::size_t(idx.size()));
  std::vector<int> p(std::size_t(idx.axes()));
  std::string line;
  for (long f = 0; f < idx.size(); ++f) {
    require(bool(std::getline(is, line)), "columnar reader: unexpected end of file at row " +
                                              std::to_string(f));
    std::istringstream ss(line);
    idx.unflatten(f, p.data());
    for (int ax = 0; ax < idx.axes(); ++ax) {
      int c;
      require(bool(ss >> c), "columnar reader: short row " + std::to_string(f));
      require(c == p[std::size_t(ax)],
              "columnar reader: coordinate mismatch at row " + std::to_string(f) +
                  " (enumeration order violated)");
    }
    double re, im;
    require(bool(ss >> re >> im), "columnar reader: missing re/im at row " + std::to_string(f));
    require(std::isfinite(re) && std::isfinite(im), "columnar reader: non-finite value at row " +
                                                        std::to_string(f));
    v[std::size_t(f)] = {re, im};
  }
  std::string rest;
  while (std::getline(is, rest))
    require(rest.empty(), "columnar reader: trailing content after the last row");
  return v;
}

}  // namespace

void write_torus_function(std::ostream& os, const TorusFunction& f) {
  write_header(os, {f.grid.n, 1, f.degree_hint.value_or(-1), f.grid.m, f.grid.offset()});
  write_rows(os, f.grid.indexer(), f.values);
}

TorusFunction read_torus_function(std::istream& is) {
  Header h = read_header(is);
  require(h.grid >= 1, "torus function: grid M >= 1 required");
  TorusGrid grid(h.n, h.grid, h.offset == 0.5);
  std::vector<cplx> v = read_rows(is, grid.indexer());
  TorusFunction f(grid, std::move(v));
  if (h.radius >= 0) f.degree_hint = h.radius;
  return f;
}

void write_lattice_function(std::ostream& os, const LatticeFunction& g) {
  write_header(os, {g.box.n, 1, g.box.radius, 0, 0.0});
  write_rows(os, g.box.indexer(), g.values);
}

LatticeFunction read_lattice_function(std::istream& is) {
  Header h = read_header(is);
  require(h.grid == 0, "lattice function: grid field must be 0");
  LatticeBox box(h.n, h.radius);
  return LatticeFunction(box, read_rows(is, box.indexer()));
}

void write_periodic_symbol(std::ostream& os, const PeriodicSymbol& m) {
  m.validate();
  write_header(os, {m.box.n, m.box.r, m.box.radius, m.x_independent ? 1 : m.grid.m,
                    m.x_independent ? 0.0 : m.grid.offset()});
  // combined (x, xi) window: grid axes then box axes
  std::vector<int> lo(std::size_t(m.box.n), 0), hi(std::size_t(m.box.n),
                                                   m.x_independent ? 0 : m.grid.m - 1);
  for (int ax = 0; ax < m.box.axes(); ++ax) {
    lo.push_back(-m.box.radius);
    hi.push_back(m.box.radius);
  }
  write_rows(os, Indexer(lo, hi), m.entries);
}

PeriodicSymbol read_periodic_symbol(std::istream& is) {
  Header h = read_header(is);
  require(h.grid >= 1, "periodic symbol: grid M >= 1 required");
  bool x_indep = h.grid == 1;
  TorusGrid grid(h.n, h.grid, h.offset == 0.5);
  FreqBox box(h.n, h.r, h.radius);
  std::vector<int> lo(std::size_t(h.n), 0), hi(std::size_t(h.n), h.grid - 1);
  for (int ax = 0; ax < box.axes(); ++ax) {
    lo.push_back(-h.radius);
    hi.push_back(h.radius);
  }
  return PeriodicSymbol::from_table(grid, box, read_rows(is, Indexer(lo, hi)), x_indep);
}

void write_discrete_symbol(std::ostream& os, const DiscreteSymbol& a) {
  a.validate();
  require(!a.ell_independent,
          "discrete symbol writer: ell-independent symbols are tabulated per point; "
          "materialize first");
  write_header(os, {a.box.n, a.rank, a.box.radius, a.grid.m, a.grid.offset()});
  std::vector<int> lo(std::size_t(a.box.n), -a.box.radius), hi(std::size_t(a.box.n), a.box.radius);
  for (int ax = 0; ax < a.box.n * a.rank; ++ax) {
    lo.push_back(0);
    hi.push_back(a.grid.m - 1);
  }
  write_rows(os, Indexer(lo, hi), a.entries);
}

DiscreteSymbol read_discrete_symbol(std::istream& is) {
  Header h = read_header(is);
  require(h.grid >= 1, "discrete symbol: grid M >= 1 required");
  LatticeBox box(h.n, h.radius);
  TorusGrid grid(h.n, h.grid, h.offset == 0.5);
  std::vector<int> lo(std::size_t(h.n), -h.radius), hi(std::size_t(h.n), h.radius);
  for (int ax = 0; ax < h.n * h.r; ++ax) {
    lo.push_back(0);
    hi.push_back(h.grid - 1);
  }
  return DiscreteSymbol::from_table(box, grid, h.r, read_rows(is, Indexer(lo, hi)));
}

namespace {

template <class T, class WriteFn>
void save_impl(const std::filesystem::path& path, const T& obj, WriteFn write) {
  std::ofstream os(path);
  require(bool(os), "cannot open for writing: " + path.string());
  write(os, obj);
  require(bool(os), "write failed: " + path.string());
}

template <class ReadFn>
auto load_impl(const std::filesystem::path& path, ReadFn read) {
  std::ifstream is(path);
  require(bool(is), "cannot open for reading: " + path.string());
  return read(is);
}

}  // namespace

void save(const std::filesystem::path& path, const TorusFunction& f) {
  save_impl(path, f, [](std::ostream& os, const TorusFunction& x) { write_torus_function(os, x); });
}
void save(const std::filesystem::path& path, const LatticeFunction& g) {
  save_impl(path, g,
            [](std::ostream& os, const LatticeFunction& x) { write_lattice_function(os, x); });
}
void save(const std::filesystem::path& path, const PeriodicSymbol& m) {
  save_impl(path, m, [](std::ostream& os, const PeriodicSymbol& x) { write_periodic_symbol(os, x); });
}
void save(const std::filesystem::path& path, const DiscreteSymbol& a) {
  save_impl(path, a, [](std::ostream& os, const DiscreteSymbol& x) { write_discrete_symbol(os, x); });
}

TorusFunction load_torus_function(const std::filesystem::path& path) {
  return load_impl(path, [](std::istream& is) { return read_torus_function(is); });
}
LatticeFunction load_lattice_function(const std::filesystem::path& path) {
  return load_impl(path, [](std::istream& is) { return read_lattice_function(is); });
}
PeriodicSymbol load_periodic_symbol(const std::filesystem::path& path) {
  return load_impl(path, [](std::istream& is) { return read_periodic_symbol(is); });
}
DiscreteSymbol load_discrete_symbol(const std::filesystem::path& path) {
  return load_impl(path, [](std::istream& is) { return read_discrete_symbol(is); });
}

std::string csv_to_string(const Csv& csv) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(csv.header);
  for (const auto& row : csv.rows) append_row(row);
  return out;
}

void write_csv(const std::filesystem::path& path, const Csv& csv) {
  std::ofstream os(path, std::ios::binary);
  require(bool(os), "cannot open for writing: " + path.string());
  os << csv_to_string(csv);
  require(bool(os), "write failed: " + path.string());
}

}  // namespace mpdo::io
