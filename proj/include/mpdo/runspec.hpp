#pragma once

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <iosfwd>

#include "mpdo/symbols.hpp"

namespace mpdo::cli {

using Json = nlohmann::ordered_json;

// Batch front end: every command is a thin composition of library operations;
// no numeric logic lives here. The merged spec carries "command" plus
// per-command parameters; "seed", "out" and "format" ride along. Exit codes:
// 0 success, 2 validation failure (machine-readable error report), 3 numeric
// failure.
//
// Commands: apply, class-check, kernel, nuclear-roundtrip, summability,
// necessary, bessel-schatten, kato-ponce, bound-sweep, transfer-limit.
int run(const Json& spec, std::ostream& diagnostics);

// Zoo symbols constructible by name with numeric parameters, or {"file": ...}.
PeriodicSymbol build_periodic_symbol(const Json& spec);
DiscreteSymbol build_discrete_symbol(const Json& spec);

// "p1,p2,...:p" with "inf" allowed; also accepts {"p": [...], "p_out": ...}.
struct ParsedExponents {
  std::vector<double> p;
  double p_out;
};
ParsedExponents parse_exponents(const Json& value);

// Periodized Bernoulli polynomial B_m on [0,1); its Fourier coefficients are
// -m!/(2 pi i k)^m for k != 0, the canonical C^{m-2,1} decay test function.
double bernoulli_periodic(int m, double x);

}  // namespace mpdo::cli
