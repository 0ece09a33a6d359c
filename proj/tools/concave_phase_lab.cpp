#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cpl/errors.hpp"
#include "cpl/experiment.hpp"
#include "json.hpp"

namespace {

// Binds every RunConfig field to a dashed option name. The same table
// serves the command line and the key=value config file.
struct Binder {
  std::map<std::string, std::function<void(const std::string&)>> setters;

  template <typename T>
  void bind(CLI::App& app, const std::string& key, T& field, const std::string& help) {
    app.add_option("--" + key, field, help)->capture_default_str();
    setters[key] = [&field, key](const std::string& text) {
      std::istringstream in(text);
      T value{};
      in >> value;
      if (!in || !(in >> std::ws).eof()) {
        throw cpl::ConfigError("bad value for " + key + ": " + text);
      }
      field = value;
    };
  }

  void bind(CLI::App& app, const std::string& key, std::string& field, const std::string& help) {
    app.add_option("--" + key, field, help)->capture_default_str();
    setters[key] = [&field](const std::string& text) { field = text; };
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void load_config_file(const std::string& path, const Binder& binder) {
  std::ifstream in(path);
  if (!in) throw cpl::ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw cpl::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(body.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const auto it = binder.setters.find(key);
    if (it == binder.setters.end()) {
      throw cpl::ConfigError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
    }
    it->second(trim(body.substr(eq + 1)));
  }
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json record{{"error", kind}, {"message", message}};
  std::cerr << record.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on maximal estimates for fractional Schrodinger means"};
  app.require_subcommand(1);

  cpl::RunConfig config;
  // Command-line values win over the config file: the file is loaded after
  // parsing and the explicit options are replayed on top of it.
  std::string config_path;
  if (const char* env = std::getenv("CPL_OUT")) config.out = env;
  if (config.out.empty()) config.out = "results";

  std::vector<std::unique_ptr<Binder>> binders;
  for (const std::string& name : cpl::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    auto binder = std::make_unique<Binder>();
    Binder& b = *binder;
    sub->add_option("--config", config_path, "key=value file; command-line options win");
    b.bind(*sub, "m", config.m, "fractional order m in (0, 1)");
    b.bind(*sub, "s", config.s, "Sobolev exponent s");
    b.bind(*sub, "alpha", config.alpha, "measure dimension alpha in (0, 1]");
    b.bind(*sub, "q", config.q, "integrability exponent q >= 2");
    b.bind(*sub, "kappa", config.kappa, "curve exponent (number or inf)");
    b.bind(*sub, "theta", config.theta, "curve coefficient theta");
    b.bind(*sub, "r", config.r, "Cantor ratio r in (0, 1/2)");
    b.bind(*sub, "k", config.k, "Cantor level k");
    b.bind(*sub, "beta", config.beta, "dimension of the direction set");
    b.bind(*sub, "eps", config.eps, "slack epsilon");
    b.bind(*sub, "lambda-min", config.lambda_min, "first frequency of the ladder (0: default)");
    b.bind(*sub, "lambda-ratio", config.lambda_ratio, "ladder ratio (0: default)");
    b.bind(*sub, "lambda-count", config.lambda_count, "ladder length (0: default)");
    b.bind(*sub, "x-cells", config.x_cells, "spatial cells (0: default)");
    b.bind(*sub, "x-min", config.x_min, "smallest geometric x cell edge");
    b.bind(*sub, "x-ratio", config.x_ratio, "geometric x cell ratio");
    b.bind(*sub, "t-samples", config.t_samples, "time samples (0: automatic)");
    b.bind(*sub, "theta-samples", config.theta_samples, "direction samples (0: automatic)");
    b.bind(*sub, "refine-depth", config.refine_depth, "local refinement levels (>= 2)");
    b.bind(*sub, "grid", config.grid, "envelope grid size per axis");
    b.bind(*sub, "rel-tol", config.rel_tol, "quadrature relative tolerance");
    b.bind(*sub, "abs-tol", config.abs_tol, "quadrature absolute tolerance");
    b.bind(*sub, "max-subdivisions", config.max_subdivisions, "quadrature subdivision cap");
    b.bind(*sub, "variant", config.variant, "envelope variant: vertical or curve");
    b.bind(*sub, "datum", config.datum, "datum for propagate");
    b.bind(*sub, "calculator", config.calculator, "exponent calculator name");
    b.bind(*sub, "s-grid", config.s_grid, "s sweep lo:hi:step");
    b.bind(*sub, "x", config.x, "spatial point for propagate");
    b.bind(*sub, "t", config.t, "time for propagate");
    b.bind(*sub, "lambda", config.lambda, "frequency for propagate");
    b.bind(*sub, "out", config.out, "output directory (default $CPL_OUT or results)");
    b.bind(*sub, "seed", config.seed, "random seed (unused by deterministic pipelines)");
    binders.push_back(std::move(binder));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::size_t index = 0;
    for (; index < cpl::experiment_names().size(); ++index) {
      if (app.got_subcommand(cpl::experiment_names()[index])) break;
    }
    CLI::App* sub = app.get_subcommand(cpl::experiment_names()[index]);
    config.experiment = cpl::experiment_names()[index];
    if (!config_path.empty()) {
      // Load the file, then re-apply the options given explicitly.
      load_config_file(config_path, *binders[index]);
      for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--config" || opt->get_name() == "--help") {
          continue;
        }
        const std::string key = opt->get_name().substr(2);
        const auto it = binders[index]->setters.find(key);
        if (it != binders[index]->setters.end()) it->second(opt->as<std::string>());
      }
    }
    const cpl::ExperimentReport report = cpl::run_experiment(config);
    cpl::write_report(report, config.out);
    std::cout << cpl::report_csv(report);
    for (const cpl::Check& c : report.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << cpl::format_double(c.value)
                << " target=" << cpl::format_double(c.target) << " " << c.comparison
                << " tol=" << cpl::format_double(c.tolerance) << "\n";
    }
    return report.pass() ? 0 : 1;
  } catch (const cpl::ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const cpl::Error& e) {
    print_error("module", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 4;
  }
}
