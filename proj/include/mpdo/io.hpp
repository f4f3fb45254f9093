#pragma once

#include <filesystem>
#include <iosfwd>

#include "mpdo/symbols.hpp"

namespace mpdo::io {

// Columnar text format shared by all tabulated objects:
//   dim <n>, rank <r>, radius <R>, grid <M>, offset <0|0.5>
// then one row per index in enumeration order, integer coordinates first,
// re/im last, numbers printed round-trippably (%.17g). Readers validate the
// header, the coordinate enumeration and the row count exactly.
//
// Per object: TorusFunction rows carry n grid indices (radius = degree hint,
// -1 when unknown); LatticeFunction rows carry n lattice coordinates
// (grid = 0); PeriodicSymbol rows carry n grid indices then n*r frequencies
// (grid M = 1 marks an x-independent symbol); DiscreteSymbol rows carry n
// lattice coordinates then n*r grid indices.

std::string fmt(double v);  // shortest round-trippable decimal

void write_torus_function(std::ostream& os, const TorusFunction& f);
TorusFunction read_torus_function(std::istream& is);

void write_lattice_function(std::ostream& os, const LatticeFunction& g);
LatticeFunction read_lattice_function(std::istream& is);

void write_periodic_symbol(std::ostream& os, const PeriodicSymbol& m);
PeriodicSymbol read_periodic_symbol(std::istream& is);

void write_discrete_symbol(std::ostream& os, const DiscreteSymbol& a);
DiscreteSymbol read_discrete_symbol(std::istream& is);

// File conveniences; throw ValidationError on unreadable/unwritable paths.
void save(const std::filesystem::path& path, const TorusFunction& f);
void save(const std::filesystem::path& path, const LatticeFunction& g);
void save(const std::filesystem::path& path, const PeriodicSymbol& m);
void save(const std::filesystem::path& path, const DiscreteSymbol& a);
TorusFunction load_torus_function(const std::filesystem::path& path);
LatticeFunction load_lattice_function(const std::filesystem::path& path);
PeriodicSymbol load_periodic_symbol(const std::filesystem::path& path);
DiscreteSymbol load_discrete_symbol(const std::filesystem::path& path);

// Minimal CSV: header row then string cells, LF line endings, no quoting
// (cells never contain commas).
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(const std::filesystem::path& path, const Csv& csv);
std::string csv_to_string(const Csv& csv);

}  // namespace mpdo::io
