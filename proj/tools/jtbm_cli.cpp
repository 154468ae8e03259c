// tools/jtbm_cli.cpp

// Copyright 2026 The jtbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jtbm/jtbm.hpp"

namespace {

using namespace jtbm;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

const char* kUsage =
    "Density estimation with theta-function Boltzmann machines.\n"
    "\n"
    "  jtbm fit   --data x.csv [--columns a,b] --nh 4 --model pjtbm --out runs/a\n"
    "  jtbm fit   --prices AAA.csv,BBB.csv --nh 2 --model rtbm --cost nll\n"
    "  jtbm grid  --model-file runs/a/model.json --xrange -3,3 --yrange -3,3 --steps 100\n"
    "  jtbm gof   --model-file runs/a/model.json --data x.csv --repeats 10 --seed 1\n"
    "  jtbm bench --suite factorization\n"
    "\n"
    "Outputs go to --out, else $JTBM_OUTPUT_DIR, else the working directory.\n"
    "Exit status: 0 success, 1 data or numerical error, 2 usage error.";

/// Resolved flags of one invocation, echoed into every output.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::string output_dir;
  Json flags = Json::object();

  Json to_json() const {
    return Json{{"command", command}, {"seed", seed}, {"output_dir", output_dir}, {"flags", flags}};
  }
};

std::string resolve_output_dir(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("JTBM_OUTPUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::pair<double, double> parse_range(const std::string& s, const char* what) {
  const auto parts = split_list(s);
  if (parts.size() != 2) throw CLI::ValidationError(what, "expected lo,hi");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  if (!(lo < hi)) throw CLI::ValidationError(what, "lo must be below hi");
  return {lo, hi};
}

/// Opens a CSV whose first line carries the run configuration.
std::ofstream open_csv(const std::string& path, const RunConfig& rc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "# run_config: " << rc.to_json().dump() << '\n';
  return out;
}

Sample load_input(const std::string& data, const std::string& columns, const std::string& prices) {
  if (!prices.empty()) {
    std::vector<PriceSeries> series;
    for (const auto& p : split_list(prices)) series.push_back(load_prices(p, fs::path(p).stem().string()));
    return log_returns(series);
  }
  const std::vector<std::string> cols = columns.empty() ? leading_columns(data, 2) : split_list(columns);
  return load_csv(data, cols);
}

// ------------------------------------------------------------------ fit

struct FitArgs {
  std::string data, columns, prices, model = "pjtbm", cost, out;
  int nh = 0;
  int iters = 500;
  int pretrain_iters = 100;
  bool no_pretrain = false;
  std::uint64_t seed = 1;
};

int cmd_fit(const FitArgs& a) {
  RunConfig rc;
  rc.command = "fit";
  rc.seed = a.seed;
  rc.output_dir = resolve_output_dir(a.out);
  const bool diagonal = a.model == "pjtbm";
  const std::string cost_name = a.cost.empty() ? (diagonal ? "fisher" : "nll") : a.cost;
  rc.flags = Json{{"data", a.data},   {"columns", a.columns}, {"prices", a.prices},
                  {"nh", a.nh},       {"model", a.model},     {"cost", cost_name},
                  {"iters", a.iters}, {"pretrain_iters", a.pretrain_iters}, {"pretrain", !a.no_pretrain}};

  const Sample raw = load_input(a.data, a.columns, a.prices);
  const AffineMap pre = fit_zscore_pca(raw);
  const Sample s = apply(pre, raw);

  FitConfig cfg;
  cfg.cma.max_iterations = a.iters;
  cfg.cma.seed = a.seed;
  cfg.pretrain = !a.no_pretrain;
  cfg.pretrain_iterations = a.pretrain_iters;
  const FitSpec spec{a.nh, diagonal, parse_cost(cost_name)};
  const FitReport rep = fit(s, spec, cfg);

  ModelFile mf{rep.best_params, pre, Json::object()};
  mf.extra["source"] = raw.source;
  mf.extra["run_config"] = rc.to_json();
  const std::string model_path = (fs::path(rc.output_dir) / "model.json").string();
  write_json(to_json(mf), model_path);

  Json report = to_json(rep);
  report["n_samples"] = raw.size();
  report["n_params"] = count_params(raw.dim(), a.nh, diagonal);
  report["run_config"] = rc.to_json();
  write_json(report, (fs::path(rc.output_dir) / "report.json").string());

  std::printf("%s N_v=%ld N_h=%d cost=%s best=%.10g iterations=%d wall=%.3fs\n", a.model.c_str(),
              static_cast<long>(raw.dim()), a.nh, cost_name.c_str(), rep.best_cost, rep.iterations, rep.wall_seconds);
  std::printf("wrote %s\n", model_path.c_str());
  return kExitOk;
}

// ----------------------------------------------------------------- grid

struct GridArgs {
  std::string model_file, xrange, yrange, out;
  int steps = 100;
};

int cmd_grid(const GridArgs& a) {
  RunConfig rc;
  rc.command = "grid";
  rc.output_dir = resolve_output_dir(a.out);
  rc.flags = Json{{"model_file", a.model_file}, {"xrange", a.xrange}, {"yrange", a.yrange}, {"steps", a.steps}};
  const auto [x0, x1] = parse_range(a.xrange, "--xrange");
  const auto [y0, y1] = parse_range(a.yrange, "--yrange");

  const ModelFile mf = model_from_json(read_json(a.model_file));
  if (mf.params.n_v() != 2)
    throw InvalidArgument("grid: model has N_v = " + std::to_string(mf.params.n_v()) + ", need 2");
  // the stored map takes data to model space; the density lives in data space
  const TransformedDensity dens = affine_pushforward(mf.params, invert(mf.preprocessing));

  const std::string path = (fs::path(rc.output_dir) / "grid.csv").string();
  std::ofstream out = open_csv(path, rc);
  out << "x,y,density\n";
  char buf[96];
  Eigen::VectorXd y(2);
  for (int i = 0; i < a.steps; ++i)
    for (int j = 0; j < a.steps; ++j) {
      y(0) = a.steps == 1 ? x0 : x0 + (x1 - x0) * i / (a.steps - 1);
      y(1) = a.steps == 1 ? y0 : y0 + (y1 - y0) * j / (a.steps - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", y(0), y(1), std::exp(dens.log_density(y)));
      out << buf;
    }
  std::printf("wrote %s (%d rows)\n", path.c_str(), a.steps * a.steps);
  return kExitOk;
}

// ------------------------------------------------------------------ gof

struct GofArgs {
  std::string model_file, data, columns, prices, out;
  int repeats = 10;
  std::uint64_t seed = 1;
};

int cmd_gof(const GofArgs& a) {
  RunConfig rc;
  rc.command = "gof";
  rc.seed = a.seed;
  rc.output_dir = resolve_output_dir(a.out);
  rc.flags = Json{{"model_file", a.model_file}, {"data", a.data},   {"columns", a.columns},
                  {"prices", a.prices},         {"repeats", a.repeats}};
  const ModelFile mf = model_from_json(read_json(a.model_file));
  const Sample raw = load_input(a.data, a.columns, a.prices);
  if (raw.dim() != mf.params.n_v()) throw InvalidArgument("gof: data and model dimensions differ");
  const TransformedDensity dens(RtbmDensity(mf.params, unnormalized({})), invert(mf.preprocessing));
  const FfSummary s = ff_model_vs_data(dens, raw, a.repeats, a.seed);

  Json j = to_json(s);
  j["n"] = raw.size();
  j["run_config"] = rc.to_json();
  const std::string path = (fs::path(rc.output_dir) / "gof.json").string();
  write_json(j, path);
  std::printf("FF = %.4f +- %.4f over %d repeats (n=%ld)\n", s.mean, s.std, a.repeats, static_cast<long>(raw.size()));
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "factorization", dims, out;
  int repeats = 10;
  int points = 50;
  int full_max_dim = 8;
  double tau_min = 0.5;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
  RunConfig rc;
  rc.command = "bench";
  rc.seed = a.seed;
  rc.output_dir = resolve_output_dir(a.out);
  rc.flags = Json{{"suite", a.suite},   {"dims", a.dims},           {"repeats", a.repeats},
                  {"points", a.points}, {"full_max_dim", a.full_max_dim}, {"tau_min", a.tau_min}};
  BenchConfig cfg;
  cfg.seed = a.seed;
  cfg.repeats = a.repeats;
  cfg.full_max_dim = a.full_max_dim;
  cfg.tau_min = a.tau_min;
  if (!a.dims.empty()) {
    cfg.dims.clear();
    for (const auto& d : split_list(a.dims)) cfg.dims.push_back(std::stoi(d));
  }
  char buf[160];
  if (a.suite == "factorization") {
    const FactorizationBench b = bench_factorized_vs_full(cfg);
    const std::string path = (fs::path(rc.output_dir) / "bench_factorization.csv").string();
    std::ofstream out = open_csv(path, rc);
    out << "dim,path,mean_seconds,std_seconds\n";
    for (const BenchRow& r : b.rows) {
      std::snprintf(buf, sizeof buf, "%d,%s,%.6e,%.6e\n", r.dim, r.path.c_str(), r.mean_seconds, r.std_seconds);
      out << buf;
    }
    std::printf("factorized log-log slope %.3f (R^2 %.3f); wrote %s\n", b.factorized_fit.slope, b.factorized_fit.r2,
                path.c_str());
  } else {
    const auto rows = bench_derivatives(cfg, a.points);
    const std::string path = (fs::path(rc.output_dir) / "bench_derivatives.csv").string();
    std::ofstream out = open_csv(path, rc);
    out << "z,omega,t_full,t_recursive,speedup\n";
    int faster = 0;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.6e,%.6e,%.4f\n", r.z, r.omega, r.t_full, r.t_recursive, r.speedup);
      out << buf;
      faster += r.speedup > 1.0;
    }
    std::printf("recursive kernel faster on %d/%zu points; wrote %s\n", faster, rows.size(), path.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{kUsage, "jtbm"};
  app.require_subcommand(1);

  FitArgs fa;
  CLI::App* fit = app.add_subcommand("fit", "Preprocess data and fit a model");
  auto* data_opt = fit->add_option("--data", fa.data, "CSV file with a header row")->check(CLI::ExistingFile);
  fit->add_option("--columns", fa.columns, "Comma-separated column names (default: first two)")->needs(data_opt);
  auto* prices_opt = fit->add_option("--prices", fa.prices, "Comma-separated (date, close) CSVs; fits log returns");
  data_opt->excludes(prices_opt);
  fit->add_option("--nh", fa.nh, "Number of hidden units")->required()->check(CLI::PositiveNumber);
  fit->add_option("--model", fa.model, "pjtbm (diagonal Q) or rtbm (full Q)")->check(CLI::IsMember({"pjtbm", "rtbm"}));
  fit->add_option("--cost", fa.cost, "fisher or nll (default: fisher for pjtbm, nll for rtbm)")
      ->check(CLI::IsMember({"fisher", "nll"}));
  fit->add_option("--iters", fa.iters, "CMA-ES iterations")->check(CLI::PositiveNumber);
  fit->add_option("--pretrain-iters", fa.pretrain_iters, "Iterations per marginal pre-training fit")
      ->check(CLI::PositiveNumber);
  fit->add_flag("--no-pretrain", fa.no_pretrain, "Start from the default initialization");
  fit->add_option("--seed", fa.seed, "Random seed");
  fit->add_option("--out", fa.out, "Output directory");

  GridArgs ga;
  CLI::App* grid = app.add_subcommand("grid", "Density on a regular 2-D grid in data coordinates");
  grid->add_option("--model-file", ga.model_file)->required()->check(CLI::ExistingFile);
  grid->add_option("--xrange", ga.xrange, "lo,hi")->required();
  grid->add_option("--yrange", ga.yrange, "lo,hi")->required();
  grid->add_option("--steps", ga.steps, "Points per axis")->check(CLI::PositiveNumber);
  grid->add_option("--out", ga.out, "Output directory");

  GofArgs oa;
  CLI::App* gof = app.add_subcommand("gof", "Two-sample goodness of fit of model draws against data");
  gof->add_option("--model-file", oa.model_file)->required()->check(CLI::ExistingFile);
  auto* gdata = gof->add_option("--data", oa.data)->check(CLI::ExistingFile);
  gof->add_option("--columns", oa.columns)->needs(gdata);
  gof->add_option("--prices", oa.prices)->excludes(gdata);
  gof->add_option("--repeats", oa.repeats)->check(CLI::PositiveNumber);
  gof->add_option("--seed", oa.seed);
  gof->add_option("--out", oa.out, "Output directory");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Timing tables for the theta kernels");
  bench->add_option("--suite", ba.suite)->check(CLI::IsMember({"factorization", "derivatives"}));
  bench->add_option("--dims", ba.dims, "Comma-separated dimensions (factorization)");
  bench->add_option("--repeats", ba.repeats)->check(CLI::PositiveNumber);
  bench->add_option("--points", ba.points, "Sampled parameters (derivatives)")->check(CLI::PositiveNumber);
  bench->add_option("--full-max-dim", ba.full_max_dim, "Largest dimension timed on the full path");
  bench->add_option("--tau-min", ba.tau_min, "Lower end of the sampled u range, Omega = 2 pi u")
      ->check(CLI::Range(0.01, 1.0));
  bench->add_option("--seed", ba.seed);
  bench->add_option("--out", ba.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit) {
      if (fa.data.empty() && fa.prices.empty()) throw CLI::RequiredError("--data or --prices");
      return cmd_fit(fa);
    }
    if (*grid) return cmd_grid(ga);
    if (*gof) {
      if (oa.data.empty() && oa.prices.empty()) throw CLI::RequiredError("--data or --prices");
      return cmd_gof(oa);
    }
    return cmd_bench(ba);
  } catch (const CLI::Error& e) {
    std::cerr << "jtbm: " << e.what() << '\n';
    return kExitUsage;
  } catch (const jtbm::Error& e) {
    std::cerr << "jtbm: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "jtbm: " << e.what() << '\n';
    return kExitDomain;
  }
}
