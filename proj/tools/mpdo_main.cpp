// Command-line front end: parses flags into a run spec (flags override JSON
// spec fields) and hands off to mpdo::cli::run. All numeric work lives in the
// library.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "mpdo/runspec.hpp"

namespace {

using mpdo::cli::Json;

struct FlagSet {
  std::string spec_file, out_dir, format, exponents, kind, variant, symbol_name, symbol_file;
  std::string radii, eps, modes, alphas, shift, characters;
  double alpha = 0, s = 0, p = 0, rho = 0, power = 0, kappa_power = 0, beta = 0;
  std::uint64_t seed = 0;
  int n = 0, r = 0, radius = 0, grid_m = 0, out_m = 0, max_order = 0, probe_radius = 0;
  int trials = 0, degree_cap = 0, terms = 0, support = 0, x_radius = 0, inputs = 0;
  int box_radius = 0, kappa = 0, k_mode = 0, range = 0, nodes = 0, out_radius = 0;
  bool include_characters = false;
  CLI::App* cmd = nullptr;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size() && !s.empty()) {
    auto comma = s.find(',', start);
    out.push_back(std::stod(s.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void add_common_flags(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--spec", f.spec_file, "JSON spec file; flags override its fields");
  cmd->add_option("--seed", f.seed, "64-bit seed");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--format", f.format, "csv|json");
  cmd->add_option("--n", f.n, "dimension");
  cmd->add_option("--r", f.r, "multilinearity rank");
  cmd->add_option("--radius", f.radius, "truncation radius");
  cmd->add_option("--alpha", f.alpha, "Bessel/schatten order");
  cmd->add_option("--s", f.s, "order parameter");
  cmd->add_option("--p", f.p, "Lebesgue exponent");
  cmd->add_option("--exponents", f.exponents, "p1,p2,...:p (inf allowed)");
  cmd->add_option("--symbol", f.symbol_name, "zoo symbol name");
  cmd->add_option("--symbol-file", f.symbol_file, "columnar symbol file");
  cmd->add_option("--variant", f.variant, "homogeneous|bessel");
  cmd->add_option("--kind", f.kind, "periodic|discrete");
  cmd->add_option("--grid-m", f.grid_m, "quadrature grid points per axis");
  cmd->add_option("--out-m", f.out_m, "output grid points per axis");
  cmd->add_option("--out-radius", f.out_radius, "output lattice radius");
  cmd->add_option("--max-order", f.max_order, "difference order limit");
  cmd->add_option("--probe-radius", f.probe_radius, "lattice probe radius");
  cmd->add_option("--trials", f.trials, "probe trials");
  cmd->add_option("--degree-cap", f.degree_cap, "random input degree cap");
  cmd->add_option("--terms", f.terms, "decomposition terms");
  cmd->add_option("--support", f.support, "lattice support radius");
  cmd->add_option("--x-radius", f.x_radius, "output-side lattice radius");
  cmd->add_option("--inputs", f.inputs, "random input count");
  cmd->add_option("--box-radius", f.box_radius, "pair box radius");
  cmd->add_option("--kappa", f.kappa, "smoothness order");
  cmd->add_option("--kappa-power", f.kappa_power, "bracket decay power of kappa");
  cmd->add_option("--power", f.power, "bracket decay power");
  cmd->add_option("--rho", f.rho, "singularity exponent");
  cmd->add_option("--beta", f.beta, "transference damping weight");
  cmd->add_option("--k", f.k_mode, "output mode");
  cmd->add_option("--range", f.range, "kernel probe range");
  cmd->add_option("--nodes", f.nodes, "Hermite nodes");
  cmd->add_option("--radii", f.radii, "comma-separated radius schedule");
  cmd->add_option("--eps", f.eps, "comma-separated epsilon schedule");
  cmd->add_option("--modes", f.modes, "comma-separated input modes");
  cmd->add_option("--alphas", f.alphas, "comma-separated transference weights");
  cmd->add_option("--shift", f.shift, "comma-separated lattice shift");
  cmd->add_option("--characters", f.characters,
                  "semicolon-separated character frequencies, e.g. 1;2");
  cmd->add_flag("--include-characters", f.include_characters,
                "prepend pure characters to the probe family");
}

Json build_spec(const std::string& command, const FlagSet& f) {
  Json spec = Json::object();
  if (!f.spec_file.empty()) {
    std::ifstream is(f.spec_file);
    if (!is) throw mpdo::ValidationError("cannot read spec file: " + f.spec_file);
    is >> spec;
  }
  spec["command"] = command;
  auto set_if = [&spec](const std::string& key, const CLI::Option* opt, auto value) {
    if (opt->count() > 0) spec[key] = value;
  };
  const CLI::App* c = f.cmd;
  set_if("seed", c->get_option("--seed"), f.seed);
  set_if("out", c->get_option("--out"), f.out_dir);
  set_if("format", c->get_option("--format"), f.format);
  set_if("kind", c->get_option("--kind"), f.kind);
  set_if("p", c->get_option("--p"), f.p);
  set_if("s", c->get_option("--s"), f.s);
  set_if("alpha", c->get_option("--alpha"), f.alpha);
  set_if("n", c->get_option("--n"), f.n);
  set_if("r", c->get_option("--r"), f.r);
  set_if("max_order", c->get_option("--max-order"), f.max_order);
  set_if("probe_radius", c->get_option("--probe-radius"), f.probe_radius);
  set_if("trials", c->get_option("--trials"), f.trials);
  set_if("degree_cap", c->get_option("--degree-cap"), f.degree_cap);
  set_if("terms", c->get_option("--terms"), f.terms);
  set_if("support", c->get_option("--support"), f.support);
  set_if("x_radius", c->get_option("--x-radius"), f.x_radius);
  set_if("inputs", c->get_option("--inputs"), f.inputs);
  set_if("box_radius", c->get_option("--box-radius"), f.box_radius);
  set_if("beta", c->get_option("--beta"), f.beta);
  set_if("k", c->get_option("--k"), f.k_mode);
  set_if("range", c->get_option("--range"), f.range);
  set_if("nodes", c->get_option("--nodes"), f.nodes);
  set_if("out_m", c->get_option("--out-m"), f.out_m);
  set_if("out_radius", c->get_option("--out-radius"), f.out_radius);
  set_if("variant", c->get_option("--variant"), f.variant);
  set_if("grid_m", c->get_option("--grid-m"), f.grid_m);
  if (c->get_option("--include-characters")->count() > 0) spec["include_characters"] = 1;
  if (c->get_option("--exponents")->count() > 0) spec["exponents"] = f.exponents;

  auto list_if = [&spec, c](const std::string& key, const char* flag, const std::string& value) {
    if (c->get_option(flag)->count() == 0) return;
    Json arr = Json::array();
    for (double v : parse_list(value)) arr.push_back(v);
    spec[key] = arr;
  };
  list_if("radii", "--radii", f.radii);
  list_if("eps", "--eps", f.eps);
  list_if("alphas", "--alphas", f.alphas);
  if (c->get_option("--modes")->count() > 0) {
    Json arr = Json::array();
    for (double v : parse_list(f.modes)) arr.push_back(int(v));
    spec["modes"] = arr;
  }

  // Symbol flags assemble/extend the nested symbol spec.
  bool symbol_flags = c->get_option("--symbol")->count() > 0 ||
                      c->get_option("--symbol-file")->count() > 0;
  if (symbol_flags) {
    Json sym = spec.contains("symbol") ? spec["symbol"] : Json::object();
    if (c->get_option("--symbol-file")->count() > 0) {
      sym = Json::object();
      sym["file"] = f.symbol_file;
    } else {
      sym["name"] = f.symbol_name;
      set_if("n", c->get_option("--n"), f.n);
      if (c->get_option("--n")->count() > 0) sym["n"] = f.n;
      if (c->get_option("--r")->count() > 0) sym["r"] = f.r;
      if (c->get_option("--radius")->count() > 0) sym["radius"] = f.radius;
      if (c->get_option("--alpha")->count() > 0) sym["alpha"] = f.alpha;
      if (c->get_option("--s")->count() > 0) sym["s"] = f.s;
      if (c->get_option("--variant")->count() > 0) sym["variant"] = f.variant;
      if (c->get_option("--rho")->count() > 0) sym["rho"] = f.rho;
      if (c->get_option("--power")->count() > 0) sym["power"] = f.power;
      if (c->get_option("--kappa-power")->count() > 0) sym["kappa_power"] = f.kappa_power;
      if (c->get_option("--kappa")->count() > 0) sym["kappa"] = f.kappa;
      if (c->get_option("--grid-m")->count() > 0) sym["grid_m"] = f.grid_m;
      if (c->get_option("--shift")->count() > 0) {
        Json arr = Json::array();
        for (double v : parse_list(f.shift)) arr.push_back(int(v));
        sym["shift"] = arr;
      }
    }
    spec["symbol"] = sym;
  } else if (c->get_option("--radius")->count() > 0) {
    spec["radius"] = f.radius;  // commands without a symbol (e.g. schatten radii cap)
  }

  if (c->get_option("--characters")->count() > 0) {
    Json arr = Json::array();
    std::size_t start = 0;
    const std::string& s = f.characters;
    while (start <= s.size() && !s.empty()) {
      auto semi = s.find(';', start);
      Json xi = Json::array();
      for (double v :
           parse_list(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start)))
        xi.push_back(int(v));
      arr.push_back(xi);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    spec["characters"] = arr;
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic/discrete multilinear pseudo-differential operator toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {
      "apply",     "class-check",     "kernel",     "nuclear-roundtrip", "summability",
      "necessary", "bessel-schatten", "kato-ponce", "bound-sweep",       "transfer-limit"};
  std::vector<std::unique_ptr<FlagSet>> flags;
  for (const auto& name : commands) {
    auto f = std::make_unique<FlagSet>();
    f->cmd = app.add_subcommand(name, name);
    add_common_flags(f->cmd, *f);
    flags.push_back(std::move(f));
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (flags[i]->cmd->parsed()) {
      try {
        Json spec = build_spec(commands[i], *flags[i]);
        return mpdo::cli::run(spec, std::cerr);
      } catch (const mpdo::ValidationError& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
        return 2;
      } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"numeric\",\"message\":\"" << e.what() << "\"}\n";
        return 3;
      }
    }
  }
  return 2;
}
