#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ipl/comparison.hpp"
#include "ipl/errors.hpp"
#include "ipl/kernel.hpp"
#include "ipl/scattering.hpp"
#include "ipl/simulation_io.hpp"
#include "ipl/singular_layer.hpp"
#include "ipl_cli/cli.hpp"

namespace ipl::cli {

namespace {

using nlohmann::json;

enum class Format { csv, json };

// Rows hold numbers or labels; CSV writes numbers in shortest round-trip form.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  return out;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << (row[c].is_string() ? row[c].get<std::string>() : format_number(row[c].get<double>()));
    }
    out << '\n';
  }
}

json table_json(const Table& table) {
  json doc;
  doc["columns"] = table.columns;
  doc["rows"] = json::array();
  for (const auto& row : table.rows) doc["rows"].push_back(row);
  return doc;
}

void write_table(const std::string& path, Format format, const Table& table) {
  std::ofstream out = open_output(path);
  if (format == Format::csv) {
    write_csv(out, table);
  } else {
    out << table_json(table).dump(2) << '\n';
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out = open_output(path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

// Sidecar next to every data file. No timestamps, so reruns are byte-identical.
void write_meta(const std::string& out, const std::string& command, json parameters,
                std::optional<std::uint64_t> seed, json extra = json::object()) {
  json meta{{"tool", "ipl"}, {"version", IPL_VERSION}, {"command", command}, {"parameters", std::move(parameters)}};
  meta["seed"] = seed ? json(*seed) : json(nullptr);
  for (auto& [key, value] : extra.items()) meta[key] = value;
  write_json(out + ".meta.json", meta);
}

json label(const InteractionParams& p) {
  return p.is_hard_sphere() ? json("hard_sphere") : json(p.exponent());
}

std::vector<std::string> labels(const std::vector<InteractionParams>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.label());
  return out;
}

GridSpec pick_grid(const std::string& lin, const std::string& log, const char* what) {
  if (lin.empty() == log.empty()) {
    throw DomainError(std::string("give exactly one of --") + what + "-lin and --" + what + "-log");
  }
  return lin.empty() ? parse_grid(log, true) : parse_grid(lin, false);
}

json grid_json(const GridSpec& g) {
  return json{{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}, {"spacing", g.log ? "log" : "linear"}};
}

struct Options {
  std::string out;
  Format format = Format::csv;
  std::vector<std::string> s_items;
  std::string lin;
  std::string log;
  std::string config;
  int seeds = 16;
  int bootstrap = 1000;
  int threads = 0;
  bool independent = false;
};

int cmd_kernel_table(const Options& o) {
  const std::vector<InteractionParams> exponents = parse_exponents(o.s_items);
  const GridSpec grid = pick_grid(o.lin, o.log, "theta");
  const std::vector<double> thetas = expand(grid);
  if (!(thetas.front() > 0.0) || thetas.back() > std::numbers::pi) {
    throw DomainError("theta range must lie in (0, pi]");
  }
  Table table{{"s", "theta", "b", "weighted_b", "C_s"}, {}};
  for (const InteractionParams& p : exponents) {
    const double cs = p.is_hard_sphere() ? 0.0 : singular_constant_Cs(p.exponent());
    for (double theta : thetas) {
      table.rows.push_back({label(p), theta, angular_kernel_b(p, theta), weighted_kernel(p, theta), cs});
    }
  }
  write_table(o.out, o.format, table);
  write_meta(o.out, "kernel-table", {{"s", labels(exponents)}, {"theta_grid", grid_json(grid)}}, std::nullopt);
  return kOk;
}

int cmd_layer_table(const Options& o) {
  const GridSpec grid = pick_grid(o.lin, o.log, "psi");
  const std::vector<double> psi = expand(grid);
  if (!(psi.front() > 0.0)) throw DomainError("psi range must lie in (0, inf)");
  const LayerProfile profile = tabulate_layer(psi);
  Table table{{"psi", "Phi", "Phi0", "xi_inf", "xi_prime"}, {}};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    table.rows.push_back({profile.psi_grid[i], profile.Phi_values[i], profile.Phi0_values[i], profile.xi_grid[i],
                          profile.xi_prime[i]});
  }
  write_table(o.out, o.format, table);

  const LayerConstants c = layer_constants();
  const double pi = std::numbers::pi;
  const auto entry = [](double value, double target) { return json{{"value", value}, {"target", target}}; };
  const json constants{{"psi_prime_inf_0", entry(c.psi_prime_inf_0, std::sqrt(pi / 2))},
                       {"xi_prime_0", entry(c.xi_prime_0, std::sqrt(2 / pi))},
                       {"f0", entry(c.f0, 1.0)},
                       {"fprime0", entry(c.fprime0, (std::sqrt(2.0) - 1) / std::sqrt(2 * pi))},
                       {"fprime0_plus_half_xi_prime_0", entry(c.expansion_coefficient, 1 / std::sqrt(pi))},
                       {"Phi0_at_0", json{{"value", c.phi0_at_zero}}}};
  write_meta(o.out, "layer-table", {{"psi_grid", grid_json(grid)}}, std::nullopt, {{"constants", constants}});
  return kOk;
}

int cmd_scattering_curve(const Options& o) {
  const std::vector<InteractionParams> exponents = parse_exponents(o.s_items);
  if (exponents.size() != 1) throw DomainError("scattering-curve takes a single exponent");
  const InteractionParams p = exponents.front();
  if (p.is_hard_sphere()) throw DomainError("scattering-curve needs a finite exponent");
  const GridSpec grid = pick_grid(o.lin, o.log, "beta");
  if (!(grid.lo >= 0.0)) throw DomainError("impact parameters must be non-negative");
  const std::vector<double> betas = expand(grid);
  const ScatteringCurve curve = ScatteringCurve::from_betas(p, betas);
  Table table{{"beta", "x", "phi", "theta", "residual"}, {}};
  for (const ScatteringNode& n : curve.nodes()) table.rows.push_back({n.beta, n.x, n.phi, n.theta, n.residual});
  write_table(o.out, o.format, table);
  write_meta(o.out, "scattering-curve", {{"s", p.exponent()}, {"beta_grid", grid_json(grid)}}, std::nullopt);
  return kOk;
}

int cmd_simulate(const Options& o) {
  const SimulationConfig config = load_simulation_config(o.config);
  const MomentRecord record = run_simulation(config);
  if (o.format == Format::csv) {
    std::ofstream out = open_output(o.out);
    write_moment_csv(out, record);
    if (!out) throw Error("write to '" + o.out + "' failed");
  } else {
    Table table{{"time", "M0", "M2", "M4", "M6", "px", "py", "pz", "entropy"}, {}};
    for (std::size_t i = 0; i < record.size(); ++i) {
      table.rows.push_back({record.times[i], record.M0[i], record.M2[i], record.M4[i], record.M6[i],
                            record.momentum[i][0], record.momentum[i][1], record.momentum[i][2],
                            record.entropy_est[i]});
    }
    write_table(o.out, o.format, table);
  }
  write_meta(o.out, "simulate", to_json(config), config.seed);
  return kOk;
}

int cmd_compare(const Options& o) {
  ComparisonOptions opts;
  opts.base = load_simulation_config(o.config);
  for (const InteractionParams& p : parse_exponents(o.s_items)) {
    if (p.is_hard_sphere()) throw DomainError("the hard-sphere baseline is implicit; list finite exponents only");
    opts.s_list.push_back(p.exponent());
  }
  opts.n_seeds = o.seeds;
  opts.bootstrap_samples = o.bootstrap;
  opts.threads = o.threads;
  opts.common_random_numbers = !o.independent;
  opts.validate();
  const ComparisonResult r = compare_exponents(opts);

  Table table{{"s", "sup_m4_diff", "sup_m4_sigma", "ci_low", "ci_high", "histogram_l1", "histogram_sigma",
               "max_m6_growth", "neglected_momentum_transfer"},
              {}};
  for (const ExponentComparison& row : r.rows) {
    table.rows.push_back({row.params.exponent(), row.sup_m4_diff, row.sup_m4_sigma, row.sup_m4_ci_low,
                          row.sup_m4_ci_high, row.histogram_l1, row.histogram_sigma, row.max_m6_growth,
                          row.neglected_momentum_transfer});
  }
  json pairs = json::array();
  for (const PairVerdict& v : r.pairs) {
    pairs.push_back({{"s_lower", v.s_lower},
                     {"s_upper", v.s_upper},
                     {"difference", v.difference},
                     {"sigma", v.sigma},
                     {"separated", v.separated},
                     {"histogram_difference", v.histogram_difference},
                     {"histogram_sigma", v.histogram_sigma},
                     {"histogram_ordered", v.histogram_ordered}});
  }
  json verdict{{"baseline_max_m6_growth", r.baseline_max_m6_growth}, {"pairs", pairs}};
  if (r.monotone_decreasing) verdict["monotone_decreasing"] = *r.monotone_decreasing;
  if (r.histogram_monotone) verdict["histogram_monotone"] = *r.histogram_monotone;

  if (o.format == Format::csv) {
    write_table(o.out, o.format, table);
  } else {
    json doc = table_json(table);
    for (auto& [key, value] : verdict.items()) doc[key] = value;
    write_json(o.out, doc);
  }

  // Seed-averaged M4 trajectories for plotting.
  Table traj{{"time", "M4_hard_sphere"}, {}};
  for (const ExponentComparison& row : r.rows) traj.columns.push_back("M4_s" + row.params.label());
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<json> line{r.times[i], r.baseline_mean_m4[i]};
    for (const ExponentComparison& row : r.rows) line.push_back(row.mean_m4[i]);
    traj.rows.push_back(std::move(line));
  }
  write_table(o.out + ".trajectories.csv", Format::csv, traj);

  json params = to_json(opts.base);
  params.erase("exponent_s");
  params["s_list"] = opts.s_list;
  params["n_seeds"] = opts.n_seeds;
  params["bootstrap_samples"] = opts.bootstrap_samples;
  params["bootstrap_seed"] = opts.bootstrap_seed;
  params["common_random_numbers"] = opts.common_random_numbers;
  write_meta(o.out, "compare", params, opts.base.seed, verdict);
  return kOk;
}

int cmd_verify(const Options& o) {
  const std::vector<VerifyEntry> entries = run_verify_suite();
  json report = json::array();
  int failed = 0;
  for (const VerifyEntry& e : entries) {
    report.push_back({{"name", e.name},
                      {"measured", e.measured},
                      {"target", e.target},
                      {"tolerance", e.tolerance},
                      {"passed", e.passed()}});
    std::printf("%-40s %s  measured %.10g target %.10g tol %.3g\n", e.name.c_str(), e.passed() ? "PASS" : "FAIL",
                e.measured, e.target, e.tolerance);
    if (!e.passed()) ++failed;
  }
  const json doc{{"version", IPL_VERSION}, {"passed", failed == 0}, {"failures", failed}, {"entries", report}};
  if (!o.out.empty()) write_json(o.out, doc);
  std::printf("%d of %zu checks failed\n", failed, entries.size());
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Inverse-power-law collision kernels, grazing layer and homogeneous DSMC", "ipl"};
  app.set_version_flag("--version", IPL_VERSION);
  app.require_subcommand(1);
  Options o;
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};

  const auto add_output = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--out,-o", o.out, "Output path; metadata goes to <out>.meta.json");
    if (required) opt->required();
    sub->add_option("--format", o.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
  };

  CLI::App* kernel = app.add_subcommand("kernel-table", "Tabulate b_s, the weighted kernel and C_s");
  kernel->add_option("--s", o.s_items, "Exponents (list or repeated), or hard_sphere")->required();
  kernel->add_option("--theta-lin", o.lin, "Linear theta grid lo:hi:count");
  kernel->add_option("--theta-log", o.log, "Logarithmic theta grid lo:hi:count");
  add_output(kernel, true);

  CLI::App* layer = app.add_subcommand("layer-table", "Tabulate the grazing-layer profile Phi");
  layer->add_option("--psi-lin", o.lin, "Linear psi grid lo:hi:count");
  layer->add_option("--psi-log", o.log, "Logarithmic psi grid lo:hi:count");
  add_output(layer, true);

  CLI::App* curve = app.add_subcommand("scattering-curve", "Tabulate beta, x, phi, theta for one exponent");
  curve->add_option("--s", o.s_items, "Exponent s > 2")->required();
  curve->add_option("--beta-lin", o.lin, "Linear beta grid lo:hi:count");
  curve->add_option("--beta-log", o.log, "Logarithmic beta grid lo:hi:count");
  add_output(curve, true);

  CLI::App* simulate = app.add_subcommand("simulate", "Run one homogeneous simulation from a JSON config");
  simulate->add_option("--config", o.config, "Simulation config (JSON)")->required();
  add_output(simulate, true);

  CLI::App* compare = app.add_subcommand("compare", "Compare finite exponents against hard spheres");
  compare->add_option("--s", o.s_items, "Finite exponents s > 5")->required();
  compare->add_option("--config", o.config, "Base simulation config (JSON); its exponent is ignored")->required();
  compare->add_option("--seeds", o.seeds, "Seeds per exponent (>= 8)")->capture_default_str();
  compare->add_option("--bootstrap", o.bootstrap, "Bootstrap resamples")->capture_default_str();
  compare->add_option("--threads", o.threads, "Worker threads; 0 uses IPL_THREADS")->capture_default_str();
  compare->add_flag("--independent", o.independent, "Independent runs instead of common random numbers");
  add_output(compare, true);

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite and write a JSON report");
  add_output(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*kernel) return cmd_kernel_table(o);
    if (*layer) return cmd_layer_table(o);
    if (*curve) return cmd_scattering_curve(o);
    if (*simulate) return cmd_simulate(o);
    if (*compare) return cmd_compare(o);
    if (*verify) return cmd_verify(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace ipl::cli
