// Copyright 2026 The byzrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "byzrank/errors.hpp"
#include "byzrank/experiment.hpp"

namespace {

const char* category_name(byzrank::ErrorCategory c) {
  switch (c) {
    case byzrank::ErrorCategory::parameter: return "parameter";
    case byzrank::ErrorCategory::feasibility: return "feasibility";
    case byzrank::ErrorCategory::degenerate: return "degenerate-filter";
    case byzrank::ErrorCategory::convergence: return "convergence";
    case byzrank::ErrorCategory::parse: return "parse";
    case byzrank::ErrorCategory::io: return "io";
  }
  return "unknown";
}

struct RunOptions {
  byzrank::ExperimentConfig cfg;
  std::string filter_mode = "empirical";
  std::string config_path;
  std::string out;
  std::string plot_data;
  std::string svg;
  std::string title;
};

std::ofstream open_for_write(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw byzrank::IoError("cannot open '" + path + "' for writing");
  return f;
}

void emit_table(const byzrank::ResultTable& table, const RunOptions& o,
                const std::string& x_field) {
  if (o.out.empty()) {
    table.write_csv(std::cout);
  } else {
    auto f = open_for_write(o.out);
    table.write_csv(f);
  }
  if (!o.plot_data.empty()) {
    auto f = open_for_write(o.plot_data);
    byzrank::write_plot_data(table, f, x_field);
  }
  if (!o.svg.empty()) {
    auto f = open_for_write(o.svg);
    byzrank::write_svg_plot(table, f, x_field, o.title);
  }
}

void finish_config(RunOptions& o) {
  o.cfg.filter.mode = o.filter_mode == "theoretical" ? byzrank::FilterMode::theoretical
                                                     : byzrank::FilterMode::empirical;
}

// Every subcommand reads the same key-value config; keys match the
// ExperimentConfig field names (filter.* and spectral.* for the nested ones).
void add_config(CLI::App* sub, std::string& path) {
  sub->add_option("--config", path, "key-value config file; flags override its values");
}

// Applies config file values to every option the command line left unset.
// CLI11 only consults config files on the root app, so the subcommands do
// this themselves at the start of their callbacks.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream input(path);
  if (!input) throw byzrank::IoError("cannot open config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = sub->get_config_formatter()->from_config(input);
  } catch (const CLI::Error& e) {
    throw byzrank::ParseError("config file '" + path + "': " + e.what());
  }
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    const std::string key = item.fullname();
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw byzrank::ParameterError("unknown key '" + key + "' in config file '" + path + "'");
    }
    if (!opt->empty()) continue;  // the command line wins
    if (opt->get_expected_min() == 0) {
      // Flag: a bare key reads as true; explicit values pass through.
      opt->add_result(opt->get_flag_value(item.name, item.inputs.empty() ? "" : item.inputs[0]));
    } else {
      if (item.inputs.empty()) {
        throw byzrank::ParameterError("config key '" + key + "' has no value");
      }
      for (const std::string& value : item.inputs) opt->add_result(value);
    }
    opt->run_callback();
  }
}

void add_output_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--out", o.out, "write the result CSV here instead of stdout");
  sub->add_option("--plot-data", o.plot_data, "also write a plot-ready wide table");
  sub->add_option("--svg", o.svg, "also write an SVG plot of mean rel_l2");
}

void add_core_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--n", o.cfg.n, "number of objects")->capture_default_str();
  sub->add_option("--k", o.cfg.k, "voters sampled per query unit")->capture_default_str();
  sub->add_option("--total_voters,--K", o.cfg.total_voters, "voter population size")
      ->capture_default_str();
  sub->add_option("--bf_grid,--bf", o.cfg.bf_grid, "byzantine fraction grid")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--trials", o.cfg.trials, "trials per cell")->capture_default_str();
  sub->add_option("--seed", o.cfg.seed, "master seed")->capture_default_str();
  sub->add_option("--orf_swaps,--orf-swaps", o.cfg.orf_swaps,
                  "transpositions applied by opposite_random_flips")
      ->capture_default_str();
  sub->add_option("--threads", o.cfg.threads, "worker threads; 0 = hardware count")
      ->capture_default_str();
  sub->add_option("--filter.mode,--filter-mode", o.filter_mode,
                  "threshold mode: empirical or theoretical")
      ->check(CLI::IsMember({"empirical", "theoretical"}))
      ->capture_default_str();
  sub->add_option("--filter.q,--Q", o.cfg.filter.q, "vote-noise exponent Q (theoretical mode)")
      ->capture_default_str();
  sub->add_option("--filter.c,--C", o.cfg.filter.c, "bucket-count constant C (fbsr alpha)")
      ->capture_default_str();
  sub->add_option("--filter.max_bucket_size,--max-size", o.cfg.filter.max_bucket_size,
                  "bucket size cap; 0 = ceil(log2 n)")
      ->capture_default_str();
  sub->add_option("--filter.empirical_max_out,--empirical-max-out",
                  o.cfg.filter.empirical_max_out,
                  "use k/20 as the removal trigger in empirical mode")
      ->capture_default_str();
  sub->add_option("--filter.enumeration_cap,--enum-cap", o.cfg.filter.enumeration_cap,
                  "largest unit dimension the full sign scan accepts")
      ->capture_default_str();
  sub->add_option("--spectral.tol,--tol", o.cfg.spectral.tol, "power iteration L1 tolerance")
      ->capture_default_str();
  sub->add_option("--spectral.max_iters,--max-iters", o.cfg.spectral.max_iters,
                  "power iteration budget; 0 = 100n")
      ->capture_default_str();
}

void add_model_options(CLI::App* sub, RunOptions& o, bool with_strategies) {
  sub->add_option("--p", o.cfg.p, "edge probability; negative = p_log_coeff*ln(n)/n")
      ->capture_default_str();
  sub->add_option("--p_log_coeff,--p-coeff", o.cfg.p_log_coeff,
                  "coefficient for the default edge probability")
      ->capture_default_str();
  sub->add_option("--graph_attempts,--graph-attempts", o.cfg.graph_attempts,
                  "connectivity resample budget per trial")
      ->capture_default_str();
  sub->add_option("--weight_lo,--weight-lo", o.cfg.weight_lo, "uniform weight lower bound")
      ->capture_default_str();
  sub->add_option("--weight_hi,--weight-hi", o.cfg.weight_hi, "uniform weight upper bound")
      ->capture_default_str();
  sub->add_option("--skew_b,--b", o.cfg.skew_b, "skewed-weight ratio b")->capture_default_str();
  if (with_strategies) {
    sub->add_option("--weights", o.cfg.weights, "weight generator: uniform or skewed")
        ->check(CLI::IsMember({"uniform", "skewed"}))
        ->capture_default_str();
    sub->add_option("--strategies,--strategy", o.cfg.strategies, "adversary strategies")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--algorithms,--algo", o.cfg.algorithms, "algorithms: rc, bsr, fbsr")
        ->delimiter(',')
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"byzrank: spectral ranking from pairwise votes with Byzantine voter filtering"};
  app.require_subcommand(1);

  RunOptions synth;
  CLI::App* synthetic = app.add_subcommand(
      "synthetic", "strategy x byzantine-fraction sweep on sampled comparison graphs");
  add_config(synthetic, synth.config_path);
  add_core_options(synthetic, synth);
  add_model_options(synthetic, synth, true);
  add_output_options(synthetic, synth);
  synthetic->callback([&, synthetic] {
    apply_config(synthetic, synth.config_path);
    finish_config(synth);
    emit_table(byzrank::run_synthetic_sweep(synth.cfg), synth, "bf");
  });

  RunOptions scal;
  scal.cfg.bf_grid = {0.1, 0.2};
  scal.cfg.strategies = {"fixed_order"};
  CLI::App* scaling =
      app.add_subcommand("scaling", "error versus problem size with k = n per cell");
  add_config(scaling, scal.config_path);
  add_core_options(scaling, scal);
  add_model_options(scaling, scal, true);
  scaling->add_option("--n_grid,--n-grid", scal.cfg.n_grid, "object counts to sweep")
      ->delimiter(',')
      ->capture_default_str();
  add_output_options(scaling, scal);
  scaling->callback([&, scaling] {
    apply_config(scaling, scal.config_path);
    finish_config(scal);
    emit_table(byzrank::run_scaling_sweep(scal.cfg), scal, "n");
  });

  RunOptions ds;
  ds.cfg.bf_grid = {0.0, 0.1, 0.2, 0.3};
  ds.cfg.strategies = {"fixed_order", "opposite", "opposite_random_flips"};
  ds.cfg.algorithms = {"rc", "bsr"};
  ds.cfg.filter.empirical_max_out = false;
  std::string dataset_path;
  bool order_format = false;
  CLI::App* dataset = app.add_subcommand(
      "dataset", "corrupt a full-ranking corpus and rank it; truth is the clean spectral result");
  add_config(dataset, ds.config_path);
  dataset->add_option("path", dataset_path, "ranking corpus file")->required();
  dataset->add_flag("--order-format", order_format,
                    "corpus rows carry two leading count tokens and a header line");
  add_core_options(dataset, ds);
  add_output_options(dataset, ds);
  dataset->callback([&, dataset] {
    apply_config(dataset, ds.config_path);
    finish_config(ds);
    const byzrank::RankingDataset data = byzrank::load_rankings(dataset_path, order_format);
    emit_table(byzrank::run_ranking_dataset(data, ds.cfg), ds, "bf");
  });

  RunOptions fd;
  CLI::App* failure = app.add_subcommand(
      "failure-demo", "unfiltered spectral ranking under opposite votes on skewed weights");
  add_config(failure, fd.config_path);
  add_core_options(failure, fd);
  add_model_options(failure, fd, false);
  add_output_options(failure, fd);
  failure->callback([&, failure] {
    apply_config(failure, fd.config_path);
    finish_config(fd);
    const byzrank::ResultTable table = byzrank::run_failure_demo(fd.cfg);
    emit_table(table, fd, "bf");
    const double r = byzrank::failure_growth_correlation(table);
    std::ostream& os = fd.out.empty() ? std::cerr : std::cout;
    char line[96];
    std::snprintf(line, sizeof(line), "error-vs-fraction pearson r = %.6f\n", r);
    os << line;
  });

  int imp_n = 10;
  double imp_b = 10.0;
  int imp_total = 1000;
  int imp_k = 100;
  std::uint64_t imp_seed = 1;
  std::string imp_out;
  std::string imp_config;
  CLI::App* impossibility = app.add_subcommand(
      "impossibility-demo",
      "two adversarial instances with swapped roles that produce identical vote ledgers");
  add_config(impossibility, imp_config);
  impossibility->add_option("--n", imp_n, "number of objects")->capture_default_str();
  impossibility->add_option("--b", imp_b, "skewed-weight ratio b")->capture_default_str();
  impossibility->add_option("--total_voters,--K", imp_total, "voter population size (even)")
      ->capture_default_str();
  impossibility->add_option("--k", imp_k, "voters sampled per query unit")->capture_default_str();
  impossibility->add_option("--seed", imp_seed, "master seed")->capture_default_str();
  impossibility->add_option("--out", imp_out, "write the report here instead of stdout");
  impossibility->callback([&, impossibility] {
    apply_config(impossibility, imp_config);
    const byzrank::IndistinguishabilityReport report =
        byzrank::run_indistinguishability_demo(imp_n, imp_b, imp_total, imp_k, imp_seed);
    if (imp_out.empty()) {
      byzrank::write_report(report, std::cout);
    } else {
      auto f = open_for_write(imp_out);
      byzrank::write_report(report, f);
    }
  });

  synth.title = "synthetic sweep";
  scal.title = "scaling sweep";
  ds.title = "ranking corpus";
  fd.title = "baseline failure";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(byzrank::ErrorCategory::parameter);
  } catch (const byzrank::Error& e) {
    std::cerr << "error (" << category_name(e.category()) << "): " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
