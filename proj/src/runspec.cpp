#include "mpdo/runspec.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "mpdo/calculus.hpp"
#include "mpdo/harness.hpp"
#include "mpdo/io.hpp"
#include "mpdo/kernels.hpp"
#include "mpdo/nuclearity.hpp"
#include "mpdo/quantize.hpp"
#include "mpdo/transforms.hpp"
#include "mpdo/zoo.hpp"

namespace mpdo::cli {

namespace {

using io::Csv;
using io::fmt;

double get_num(const Json& j, const std::string& key, std::optional<double> def = std::nullopt) {
  if (!j.contains(key)) {
    require(def.has_value(), "missing required parameter '" + key + "'");
    return *def;
  }
  require(j.at(key).is_number(), "parameter '" + key + "' must be numeric");
  return j.at(key).get<double>();
}

int get_int(const Json& j, const std::string& key, std::optional<int> def = std::nullopt) {
  if (!j.contains(key)) {
    require(def.has_value(), "missing required parameter '" + key + "'");
    return *def;
  }
  require(j.at(key).is_number_integer(), "parameter '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::string get_str(const Json& j, const std::string& key,
                    std::optional<std::string> def = std::nullopt) {
  if (!j.contains(key)) {
    require(def.has_value(), "missing required parameter '" + key + "'");
    return *def;
  }
  require(j.at(key).is_string(), "parameter '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

std::vector<long> get_radii(const Json& j, const std::string& key, std::vector<long> def) {
  if (!j.contains(key)) return def;
  std::vector<long> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<long>());
  return out;
}

double japanese_bracket_int(std::span<const int> xi, int n, int r) {
  return japanese_bracket(xi, n, r);
}

}  // namespace

double bernoulli_periodic(int m, double x) {
  x -= std::floor(x);
  switch (m) {
    case 2: return x * x - x + 1.0 / 6.0;
    case 4: return x * x * x * x - 2 * x * x * x + x * x - 1.0 / 30.0;
    case 6:
      return std::pow(x, 6) - 3 * std::pow(x, 5) + 2.5 * std::pow(x, 4) - 0.5 * x * x + 1.0 / 42.0;
    default:
      require(false, "bernoulli_periodic: only B_2, B_4, B_6 are provided");
      return 0;
  }
}

PeriodicSymbol build_periodic_symbol(const Json& spec) {
  require(spec.is_object(), "symbol spec must be an object");
  if (spec.contains("file")) {
    std::filesystem::path p = get_str(spec, "file");
    require(std::filesystem::exists(p), "symbol file does not exist: " + p.string());
    return io::load_periodic_symbol(p);
  }
  std::string name = get_str(spec, "name");
  int n = get_int(spec, "n", 1);
  int r = get_int(spec, "r", 1);
  int radius = get_int(spec, "radius");
  FreqBox box(n, r, radius);
  if (name == "constant") {
    return PeriodicSymbol::constant(box,
                                    cplx(get_num(spec, "value_re", 1.0), get_num(spec, "value_im", 0.0)));
  }
  if (name == "laplacian") return laplacian_symbol(box);
  if (name == "fractional") {
    std::string variant = get_str(spec, "variant", "bessel");
    require(variant == "bessel" || variant == "homogeneous",
            "fractional variant must be 'bessel' or 'homogeneous'");
    return fractional_symbol(get_num(spec, "s"),
                             variant == "bessel" ? FractionalVariant::bessel
                                                 : FractionalVariant::homogeneous,
                             box);
  }
  if (name == "bessel") {
    BesselOrder order;
    if (spec.contains("alpha") && spec.at("alpha").is_array())
      for (const auto& a : spec.at("alpha")) order.alpha.push_back(a.get<double>());
    else
      order.alpha.assign(std::size_t(r), get_num(spec, "alpha"));
    return bessel_multilinear_symbol(order, box);
  }
  if (name == "bracket_power") {
    double power = get_num(spec, "power");
    return PeriodicSymbol::multiplier(box, [n, r, power](std::span<const int> xi) {
      return cplx(std::pow(japanese_bracket_int(xi, n, r), -power), 0);
    });
  }
  if (name == "singular") {
    double rho = get_num(spec, "rho");
    double kappa_power = get_num(spec, "kappa_power", 0.0);
    TorusGrid grid(n, get_int(spec, "grid_m", 16), true);
    FreqTable kappa = FreqTable::tabulate(box, [n, r, kappa_power](std::span<const int> xi) {
      return cplx(std::pow(japanese_bracket_int(xi, n, r), -kappa_power), 0);
    });
    return singular_symbol(rho, kappa, grid);
  }
  require(false, "unknown periodic symbol name '" + name + "'");
  return {};
}

DiscreteSymbol build_discrete_symbol(const Json& spec) {
  require(spec.is_object(), "symbol spec must be an object");
  if (spec.contains("file")) {
    std::filesystem::path p = get_str(spec, "file");
    require(std::filesystem::exists(p), "symbol file does not exist: " + p.string());
    return io::load_discrete_symbol(p);
  }
  std::string name = get_str(spec, "name");
  int n = get_int(spec, "n", 1);
  int r = get_int(spec, "r", 1);
  int radius = get_int(spec, "radius");
  int grid_m = get_int(spec, "grid_m");
  LatticeBox box(n, radius);
  TorusGrid grid(n, grid_m);
  if (name == "constant") {
    return DiscreteSymbol::constant(box, grid, r,
                                    cplx(get_num(spec, "value_re", 1.0), get_num(spec, "value_im", 0.0)));
  }
  if (name == "modulation") {
    require(r == 1, "modulation symbol: rank 1 only");
    std::vector<int> shift;
    for (const auto& v : spec.at("shift")) shift.push_back(v.get<int>());
    require(int(shift.size()) == n, "modulation shift must have n components");
    return DiscreteSymbol::multiplier(box, grid, 1, [shift](std::span<const double> xi) {
      double phase = 0;
      for (std::size_t ax = 0; ax < shift.size(); ++ax) phase += shift[ax] * xi[ax];
      return std::polar(1.0, -kTwoPi * phase);
    });
  }
  if (name == "bernoulli") {
    int kappa = get_int(spec, "kappa", 2);
    require(n == 1 && r == 1, "bernoulli symbol: n = r = 1 only");
    return DiscreteSymbol::multiplier(box, grid, 1, [kappa](std::span<const double> xi) {
      return cplx(bernoulli_periodic(2 * kappa, xi[0]), 0);
    });
  }
  require(false, "unknown discrete symbol name '" + name + "'");
  return {};
}

ParsedExponents parse_exponents(const Json& value) {
  auto parse_one = [](const std::string& tok) -> double {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return kInf;
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      require(pos == tok.size(), "trailing characters in exponent '" + tok + "'");
      return v;
    } catch (const ValidationError&) {
      throw;
    } catch (...) {
      throw ValidationError("cannot parse exponent '" + tok + "'");
    }
  };
  ParsedExponents out;
  if (value.is_object()) {
    for (const auto& v : value.at("p")) out.p.push_back(v.get<double>());
    out.p_out = value.at("p_out").get<double>();
    return out;
  }
  require(value.is_string(), "exponents must be a 'p1,p2,...:p' string or an object");
  std::string s = value.get<std::string>();
  auto colon = s.find(':');
  require(colon != std::string::npos, "exponents must contain ':' separating the output exponent");
  std::string left = s.substr(0, colon);
  out.p_out = parse_one(s.substr(colon + 1));
  std::size_t start = 0;
  while (start <= left.size()) {
    auto comma = left.find(',', start);
    std::string tok = left.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    require(!tok.empty(), "empty exponent token");
    out.p.push_back(parse_one(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

struct Outputs {
  std::filesystem::path dir;
  std::string format;  // "csv" or "json"
  Json json_report;    // populated alongside CSVs

  void emit_csv(const std::string& name, const Csv& csv) {
    io::write_csv(dir / (name + ".csv"), csv);
    Json rows = Json::array();
    for (const auto& row : csv.rows) {
      Json r = Json::object();
      for (std::size_t i = 0; i < csv.header.size() && i < row.size(); ++i)
        r[csv.header[i]] = row[i];
      rows.push_back(r);
    }
    json_report[name] = rows;
  }

  void finish(const Json& spec) {
    if (format == "json") {
      std::ofstream os(dir / "report.json");
      require(bool(os), "cannot write report.json");
      os << json_report.dump(2) << "\n";
    }
    Json meta;
    meta["command"] = spec.at("command");
    meta["spec"] = spec;
    meta["kernels"] = kernels::isa_name(kernels::active());
    meta["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::ofstream os(dir / "meta.json");
    require(bool(os), "cannot write meta.json");
    os << meta.dump(2) << "\n";
  }
};

Csv partial_sum_csv(const PartialSumReport& rep) {
  Csv csv;
  csv.header = {"radius", "partial_sum", "increment_ratio", "flag"};
  for (const auto& row : rep.rows)
    csv.add_row({std::to_string(row.radius), fmt(row.partial_sum), fmt(row.increment_ratio),
                 rep.flag()});
  return csv;
}

std::vector<std::string> coord_cells(std::span<const int> p) {
  std::vector<std::string> cells;
  for (int c : p) cells.push_back(std::to_string(c));
  return cells;
}

void cmd_apply(const Json& spec, Outputs& out) {
  std::string kind = get_str(spec, "kind", "periodic");
  if (kind == "periodic") {
    PeriodicSymbol m = build_periodic_symbol(spec.at("symbol"));
    int out_m = get_int(spec, "out_m", 2 * m.box.r * m.box.radius + 2);
    TorusGrid grid(m.box.n, out_m, get_int(spec, "midpoint", 0) != 0);
    std::vector<TorusFunction> inputs;
    if (spec.contains("inputs")) {
      for (const auto& f : spec.at("inputs"))
        inputs.push_back(io::load_torus_function(f.get<std::string>()));
    } else if (spec.contains("characters")) {
      for (const auto& c : spec.at("characters")) {
        std::vector<int> xi;
        for (const auto& v : c) xi.push_back(v.get<int>());
        inputs.push_back(TorusFunction::character(grid, xi));
      }
    }
    require(int(inputs.size()) == m.box.r, "apply: need exactly r inputs");
    TorusFunction result = apply_periodic_multilinear(m, inputs, grid);
    io::save(out.dir / "output_function.txt", result);
    Csv csv;
    csv.header = {"grid_m", "l2_norm", "linf_norm"};
    csv.add_row({std::to_string(grid.m), fmt(lp_norm(result, 2)), fmt(lp_norm(result, kInf))});
    out.emit_csv("apply", csv);
    return;
  }
  require(kind == "discrete", "apply: kind must be 'periodic' or 'discrete'");
  DiscreteSymbol a = build_discrete_symbol(spec.at("symbol"));
  LatticeBox out_box(a.box.n, get_int(spec, "out_radius", a.box.radius));
  std::vector<LatticeFunction> inputs;
  if (spec.contains("inputs")) {
    for (const auto& f : spec.at("inputs"))
      inputs.push_back(io::load_lattice_function(f.get<std::string>()));
  } else if (spec.contains("deltas")) {
    for (const auto& c : spec.at("deltas")) {
      std::vector<int> at;
      for (const auto& v : c) at.push_back(v.get<int>());
      inputs.push_back(LatticeFunction::delta(LatticeBox(a.box.n, get_int(spec, "support", 2)), at));
    }
  }
  require(int(inputs.size()) == a.rank, "apply: need exactly r inputs");
  LatticeFunction result = apply_discrete_multilinear(a, inputs, out_box);
  io::save(out.dir / "output_function.txt", result);
  Csv csv;
  csv.header = {"out_radius", "l2_norm", "linf_norm"};
  csv.add_row({std::to_string(out_box.radius), fmt(lp_norm(result, 2)), fmt(lp_norm(result, kInf))});
  out.emit_csv("apply", csv);
}

void cmd_class_check(const Json& spec, Outputs& out) {
  PeriodicSymbol m = build_periodic_symbol(spec.at("symbol"));
  ClassReport rep = kohn_nirenberg_constants(m, get_int(spec, "max_order", 2));
  Csv csv;
  for (int ax = 0; ax < rep.n * rep.r; ++ax) csv.header.push_back("alpha" + std::to_string(ax + 1));
  csv.header.insert(csv.header.end(), {"constant_at_N", "constant_at_halfN", "growth_flag"});
  for (const auto& row : rep.rows) {
    auto cells = coord_cells(row.alpha);
    cells.push_back(fmt(row.constant_at_n));
    cells.push_back(fmt(row.constant_at_half_n));
    cells.push_back(row.growth_flag ? "1" : "0");
    csv.add_row(std::move(cells));
  }
  out.emit_csv("class_check", csv);
}

void cmd_kernel(const Json& spec, Outputs& out) {
  DiscreteSymbol a = build_discrete_symbol(spec.at("symbol"));
  std::vector<int> ell(std::size_t(a.box.n), 0);
  if (spec.contains("ell")) {
    ell.clear();
    for (const auto& v : spec.at("ell")) ell.push_back(v.get<int>());
  }
  int range = get_int(spec, "range", a.box.radius);
  Indexer probe = Indexer::cube(a.box.n * a.rank, range);
  Csv csv;
  for (int ax = 0; ax < probe.axes(); ++ax) csv.header.push_back("ellp" + std::to_string(ax + 1));
  csv.header.insert(csv.header.end(), {"re", "im", "bracket"});
  std::vector<int> lp(std::size_t(probe.axes()));
  std::vector<double> logs_x, logs_y;
  for (long q = 0; q < probe.size(); ++q) {
    probe.unflatten(q, lp.data());
    cplx k = discrete_kernel(a, ell, lp);
    std::vector<int> diff(lp.size());
    for (std::size_t ax = 0; ax < lp.size(); ++ax)
      diff[ax] = ell[ax % std::size_t(a.box.n)] - lp[ax];
    double bracket = japanese_bracket(diff, a.box.n, a.rank);
    auto cells = coord_cells(lp);
    cells.push_back(fmt(k.real()));
    cells.push_back(fmt(k.imag()));
    cells.push_back(fmt(bracket));
    csv.add_row(std::move(cells));
    if (bracket > 1.0 && std::abs(k) > 1e-300) {
      logs_x.push_back(std::log(bracket));
      logs_y.push_back(std::log(std::abs(k)));
    }
  }
  out.emit_csv("kernel", csv);

  Csv fit;
  fit.header = {"decay_slope", "points_used"};
  double slope = 0;
  if (logs_x.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logs_x.size(); ++i) {
      sx += logs_x[i];
      sy += logs_y[i];
      sxx += logs_x[i] * logs_x[i];
      sxy += logs_x[i] * logs_y[i];
    }
    double den = double(logs_x.size()) * sxx - sx * sx;
    slope = den > 0 ? (double(logs_x.size()) * sxy - sx * sy) / den : 0;
  }
  fit.add_row({fmt(slope), std::to_string(logs_x.size())});
  out.emit_csv("kernel_fit", fit);
}

void cmd_nuclear_roundtrip(const Json& spec, Outputs& out, std::uint64_t seed) {
  std::string kind = get_str(spec, "kind", "discrete");
  int n = get_int(spec, "n", 1);
  int r = get_int(spec, "r", 2);
  int terms = get_int(spec, "terms", 5);
  int inputs = get_int(spec, "inputs", 10);
  Rng rng(seed ^ 0x6e75636cull);

  Csv csv;
  csv.header = {"input", "max_abs_deviation"};
  double overall = 0;

  if (kind == "discrete") {
    int support = get_int(spec, "support", 2);
    int x_radius = get_int(spec, "x_radius", 2);
    int grid_m = get_int(spec, "grid_m", 4 * (support + x_radius) + 2);
    DiscreteDecomposition d;
    d.s = get_num(spec, "s", 1.0);
    d.exps.p.assign(std::size_t(r), 2.0);
    d.exps.p_out = 2.0;
    for (int k = 0; k < terms; ++k) {
      DiscreteDecomposition::Term term;
      for (int j = 0; j < r; ++j) term.g.push_back(random_lattice_function(rng, n, support));
      term.h = random_lattice_function(rng, n, x_radius);
      d.terms.push_back(std::move(term));
    }
    DiscreteSymbol a =
        symbol_from_decomposition_discrete(d, LatticeBox(n, x_radius), TorusGrid(n, grid_m));
    for (int i = 0; i < inputs; ++i) {
      Rng trial = Rng::for_trial(seed, std::uint64_t(i));
      std::vector<LatticeFunction> f;
      for (int j = 0; j < r; ++j) f.push_back(random_lattice_function(trial, n, support));
      LatticeFunction via_symbol = apply_discrete_multilinear(a, f, LatticeBox(n, x_radius));
      LatticeFunction direct = apply_decomposition(d, f);
      double dev = 0;
      for (std::size_t q = 0; q < via_symbol.values.size(); ++q)
        dev = std::max(dev, std::abs(via_symbol.values[q] - direct.values[q]));
      overall = std::max(overall, dev);
      csv.add_row({std::to_string(i), fmt(dev)});
    }
  } else {
    require(kind == "periodic", "nuclear-roundtrip: kind must be 'discrete' or 'periodic'");
    int degree = get_int(spec, "degree", 2);
    int grid_m = get_int(spec, "grid_m", 4 * degree + 2);
    TorusGrid grid(n, grid_m);
    PeriodicDecomposition d;
    d.s = get_num(spec, "s", 1.0);
    d.exps.p.assign(std::size_t(r), 2.0);
    d.exps.p_out = 2.0;
    for (int k = 0; k < terms; ++k) {
      PeriodicDecomposition::Term term;
      for (int j = 0; j < r; ++j) term.g.push_back(random_trig_poly(rng, grid, degree));
      term.h = random_trig_poly(rng, grid, degree);
      d.terms.push_back(std::move(term));
    }
    PeriodicSymbol m = symbol_from_decomposition_periodic(d, grid, FreqBox(n, r, degree));
    for (int i = 0; i < inputs; ++i) {
      Rng trial = Rng::for_trial(seed, std::uint64_t(i));
      std::vector<TorusFunction> f;
      for (int j = 0; j < r; ++j) f.push_back(random_trig_poly(trial, grid, degree));
      TorusFunction via_symbol = apply_periodic_multilinear(m, f, grid);
      TorusFunction direct = apply_decomposition(d, f);
      double dev = 0;
      for (std::size_t q = 0; q < via_symbol.values.size(); ++q)
        dev = std::max(dev, std::abs(via_symbol.values[q] - direct.values[q]));
      overall = std::max(overall, dev);
      csv.add_row({std::to_string(i), fmt(dev)});
    }
  }
  out.emit_csv("roundtrip", csv);
  Csv summary;
  summary.header = {"max_abs_deviation"};
  summary.add_row({fmt(overall)});
  out.emit_csv("roundtrip_summary", summary);
}

void cmd_summability(const Json& spec, Outputs& out) {
  PeriodicSymbol m = build_periodic_symbol(spec.at("symbol"));
  double p = get_num(spec, "p", 2.0);
  double s = get_num(spec, "s", 1.0);
  std::vector<long> radii = get_radii(spec, "radii", {4, 8, 16, 32, 64});
  PartialSumReport rep = summability_criterion(m, p, s, radii);
  out.emit_csv("summability", partial_sum_csv(rep));
  Csv summary;
  summary.header = {"fitted_ratio", "flag", "extrapolated", "log_slope"};
  summary.add_row({fmt(rep.fitted_ratio), rep.flag(),
                   rep.extrapolated ? fmt(*rep.extrapolated) : "",
                   rep.log_slope ? fmt(*rep.log_slope) : ""});
  out.emit_csv("summability_summary", summary);
}

void cmd_necessary(const Json& spec, Outputs& out) {
  DiscreteSymbol a = build_discrete_symbol(spec.at("symbol"));
  ParsedExponents pe = parse_exponents(spec.at("exponents"));
  ExponentTuple e{pe.p, pe.p_out};
  NecessaryConditionReport rep =
      necessary_condition_discrete(a, e, get_int(spec, "probe_radius", a.box.radius));

  Csv ftab;
  for (int ax = 0; ax < rep.probe.axes(); ++ax) ftab.header.push_back("ellp" + std::to_string(ax + 1));
  ftab.header.push_back("F");
  std::vector<int> p(std::size_t(rep.probe.axes()));
  for (long q = 0; q < rep.probe.size(); ++q) {
    rep.probe.unflatten(q, p.data());
    auto cells = coord_cells(p);
    cells.push_back(fmt(rep.f[std::size_t(q)]));
    ftab.add_row(std::move(cells));
  }
  out.emit_csv("necessary_f", ftab);
  out.emit_csv("necessary", partial_sum_csv(rep.mixed));
  out.emit_csv("necessary_dual", partial_sum_csv(rep.dual));
}

void cmd_bessel_schatten(const Json& spec, Outputs& out) {
  double alpha = get_num(spec, "alpha", 2.0);
  double s = get_num(spec, "s", 1.0);
  int n = get_int(spec, "n", 1);
  std::vector<long> radii = get_radii(spec, "radii", {8, 16, 32, 64});
  SchattenReport rep = schatten_check_bessel(alpha, s, radii, n);

  out.emit_csv("bessel_schatten", partial_sum_csv(rep.sums));
  Csv summary;
  summary.header = {"final_partial_sum_extrapolated", "max_multiset_deviation", "log_slope",
                    "flag"};
  summary.add_row({rep.sums.extrapolated ? fmt(*rep.sums.extrapolated)
                                         : fmt(rep.sums.rows.back().partial_sum),
                   fmt(rep.max_multiset_deviation),
                   rep.sums.log_slope ? fmt(*rep.sums.log_slope) : "", rep.sums.flag()});
  out.emit_csv("bessel_schatten_summary", summary);

  Csv sv;
  sv.header = {"index", "singular_value"};
  for (std::size_t i = 0; i < rep.singular_values.size(); ++i)
    sv.add_row({std::to_string(i), fmt(rep.singular_values[i])});
  out.emit_csv("singular_values", sv);
}

void cmd_kato_ponce(const Json& spec, Outputs& out, std::uint64_t seed) {
  double s = get_num(spec, "s", 2.0);
  std::string variant_name = get_str(spec, "variant", "homogeneous");
  require(variant_name == "homogeneous" || variant_name == "bessel",
          "kato-ponce: variant must be 'homogeneous' or 'bessel'");
  FractionalVariant variant = variant_name == "bessel" ? FractionalVariant::bessel
                                                       : FractionalVariant::homogeneous;
  int box_radius = get_int(spec, "box_radius", 8);
  int n = get_int(spec, "n", 1);

  KatoPonceExponents e;
  if (spec.contains("exponents_kp")) {
    const Json& j = spec.at("exponents_kp");
    e.p1 = get_num(j, "p1");
    e.q1 = get_num(j, "q1");
    e.p2 = get_num(j, "p2");
    e.q2 = get_num(j, "q2");
    e.r = get_num(j, "r");
  }
  e.validate();  // before any computation starts

  KatoPonceSplit split = kato_ponce_split(s, FreqBox(n, 2, box_radius));
  double residual = 0;
  Indexer bi = split.tau.box.indexer();
  std::vector<int> pt(std::size_t(bi.axes()));
  for (long q = 0; q < bi.size(); ++q) {
    bi.unflatten(q, pt.data());
    double xin2 = 0, etan2 = 0, sumn2 = 0;
    for (int ax = 0; ax < n; ++ax) {
      xin2 += double(pt[std::size_t(ax)]) * pt[std::size_t(ax)];
      etan2 += double(pt[std::size_t(n + ax)]) * pt[std::size_t(n + ax)];
      double c = double(pt[std::size_t(ax)]) + pt[std::size_t(n + ax)];
      sumn2 += c * c;
    }
    cplx lhs = split.tau.entries[std::size_t(q)] * std::pow(xin2, s / 2) +
               split.alpha.entries[std::size_t(q)] * std::pow(etan2, s / 2);
    residual = std::max(residual, std::abs(lhs - cplx(std::pow(sumn2, s / 2), 0)));
  }

  ProbeConfig cfg;
  cfg.trials = get_int(spec, "trials", 50);
  cfg.seed = seed;
  cfg.degree_cap = get_int(spec, "degree_cap", 4);
  KatoPonceProbeReport rep = kato_ponce_probe(s, variant, e, cfg, n);

  Csv csv;
  csv.header = {"trial", "ratio"};
  for (std::size_t i = 0; i < rep.ratios.size(); ++i)
    csv.add_row({std::to_string(i), fmt(rep.ratios[i])});
  out.emit_csv("kato_ponce", csv);
  Csv summary;
  summary.header = {"identity_residual", "max_ratio", "max_ratio_refined", "stability"};
  summary.add_row({fmt(residual), fmt(rep.max_ratio), fmt(rep.max_ratio_refined),
                   fmt(rep.stability)});
  out.emit_csv("kato_ponce_summary", summary);
}

void cmd_bound_sweep(const Json& spec, Outputs& out, std::uint64_t seed) {
  PeriodicSymbol m = build_periodic_symbol(spec.at("symbol"));
  ParsedExponents pe = parse_exponents(spec.at("exponents"));
  ProbeConfig cfg;
  cfg.exps = ExponentTuple{pe.p, pe.p_out};
  cfg.exps.require_holder();  // the boundedness theorems assume it
  cfg.trials = get_int(spec, "trials", 100);
  cfg.seed = seed;
  cfg.degree_cap = get_int(spec, "degree_cap", std::min(3, m.box.radius));
  cfg.include_characters = get_int(spec, "include_characters", 0) != 0;
  int out_m = get_int(spec, "out_m", 2 * m.box.r * m.box.radius + 2);
  PeriodicApply op = PeriodicApply::from_symbol(m, TorusGrid(m.box.n, out_m), cfg.degree_cap);
  RatioReport rep = empirical_bound_ratio(op, cfg);

  Csv csv;
  csv.header = {"trial", "ratio", "input_digest"};
  for (const auto& t : rep.trials)
    csv.add_row({std::to_string(t.index), fmt(t.ratio), t.digest});
  csv.add_row({"summary", fmt(rep.sup_ratio),
               "argmax=" + std::to_string(rep.argmax_index) + " " + rep.argmax_descriptor +
                   " skipped=" + std::to_string(rep.skipped)});
  out.emit_csv("bound_sweep", csv);
}

void cmd_transfer_limit(const Json& spec, Outputs& out) {
  double beta = get_num(spec, "beta", 0.5);
  std::vector<double> alphas;
  if (spec.contains("alphas"))
    for (const auto& v : spec.at("alphas")) alphas.push_back(v.get<double>());
  std::vector<int> modes;
  if (spec.contains("modes"))
    for (const auto& v : spec.at("modes")) modes.push_back(v.get<int>());
  if (modes.empty()) modes = {1};
  if (alphas.empty()) alphas.assign(modes.size(), (1.0 - beta) / double(modes.size()));
  int k = get_int(spec, "k", [&] {
    int s = 0;
    for (int m : modes) s += m;
    return s;
  }());
  std::vector<double> eps = {3e-2, 1e-2, 3e-3, 1e-3};
  if (spec.contains("eps")) {
    eps.clear();
    for (const auto& v : spec.at("eps")) eps.push_back(v.get<double>());
  }
  TransferenceResult res = transference_limit_probe(
      [](std::span<const double>) { return cplx(1, 0); }, modes, k, eps, beta, alphas,
      get_int(spec, "nodes", 64));

  Csv csv;
  csv.header = {"epsilon", "raw_re", "raw_im", "normalized_re", "normalized_im"};
  for (const auto& row : res.rows)
    csv.add_row({fmt(row.epsilon), fmt(row.raw.real()), fmt(row.raw.imag()),
                 fmt(row.normalized.real()), fmt(row.normalized.imag())});
  out.emit_csv("transfer_limit", csv);
  Csv summary;
  summary.header = {"extrapolated_re", "extrapolated_im", "limit_constant"};
  summary.add_row({fmt(res.extrapolated.real()), fmt(res.extrapolated.imag()),
                   fmt(res.limit_constant)});
  out.emit_csv("transfer_limit_summary", summary);
}

}  // namespace

int run(const Json& spec, std::ostream& diagnostics) {
  static const std::vector<std::string> known = {
      "apply",       "class-check", "kernel",          "nuclear-roundtrip", "summability",
      "necessary",   "bessel-schatten", "kato-ponce",  "bound-sweep",       "transfer-limit"};

  Outputs out;
  try {
    require(spec.is_object() && spec.contains("command"), "spec must carry a 'command'");
    std::string command = spec.at("command").get<std::string>();
    bool ok = false;
    for (const auto& k : known) ok = ok || k == command;
    require(ok, "unknown command '" + command + "'");

    out.dir = get_str(spec, "out", ".");
    std::error_code ec;
    std::filesystem::create_directories(out.dir, ec);
    require(std::filesystem::is_directory(out.dir), "output directory unusable: " + out.dir.string());
    out.format = get_str(spec, "format", "csv");
    require(out.format == "csv" || out.format == "json", "format must be 'csv' or 'json'");
    std::uint64_t seed = std::uint64_t(get_num(spec, "seed", 0.0));

    if (command == "apply") cmd_apply(spec, out);
    else if (command == "class-check") cmd_class_check(spec, out);
    else if (command == "kernel") cmd_kernel(spec, out);
    else if (command == "nuclear-roundtrip") cmd_nuclear_roundtrip(spec, out, seed);
    else if (command == "summability") cmd_summability(spec, out);
    else if (command == "necessary") cmd_necessary(spec, out);
    else if (command == "bessel-schatten") cmd_bessel_schatten(spec, out);
    else if (command == "kato-ponce") cmd_kato_ponce(spec, out, seed);
    else if (command == "bound-sweep") cmd_bound_sweep(spec, out, seed);
    else if (command == "transfer-limit") cmd_transfer_limit(spec, out);

    out.finish(spec);
    return 0;
  } catch (const ValidationError& e) {
    Json err;
    err["error"] = "validation";
    err["message"] = e.what();
    diagnostics << err.dump() << "\n";
    if (!out.dir.empty() && std::filesystem::is_directory(out.dir)) {
      std::ofstream os(out.dir / "error.json");
      if (os) os << err.dump(2) << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "numeric";
    err["message"] = e.what();
    diagnostics << err.dump() << "\n";
    if (!out.dir.empty() && std::filesystem::is_directory(out.dir)) {
      std::ofstream os(out.dir / "error.json");
      if (os) os << err.dump(2) << "\n";
    }
    return 3;
  }
}

}  // namespace mpdo::cli
