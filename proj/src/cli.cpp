#include "lbs/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lbs/error.hpp"
#include "lbs/io.hpp"
#include "lbs/popsize.hpp"
#include "lbs/simulate.hpp"
#include "lbs/summary.hpp"

namespace lbs::cli {

using nlohmann::ordered_json;

void RunConfig::validate() const {
  if (data_path && embedded) throw ConfigError("--data and --embedded are mutually exclusive");
  if (embedded && *embedded != "rep1" && *embedded != "rep2") {
    throw ConfigError("--embedded must be rep1 or rep2");
  }
  if (!(baseline_w > 0.0) || !std::isfinite(baseline_w)) throw ConfigError("--baseline-w must be positive");
  if (mu0 && !(*mu0 > 0.0 && *mu0 < 1.0)) throw ConfigError("--mu0 must lie in (0, 1)");
  if (mu0 && calibrate_from) throw ConfigError("--mu0 and --calibrate-from are mutually exclusive");
  if (draws < 1) throw ConfigError("--draws must be >= 1");
  if (grid < 50) throw ConfigError("--grid must be >= 50");
  if (thin < 1) throw ConfigError("--thin must be >= 1");
  if (!(resample_fraction > 0.0 && resample_fraction <= 1.0)) {
    throw ConfigError("--resample-fraction must lie in (0, 1]");
  }
  if (bins < 1) throw ConfigError("--bins must be >= 1");
}

SamplerConfig RunConfig::sampler_config() const {
  SamplerConfig s;
  s.draws = draws;
  s.grid_points = grid;
  s.prior = prior;
  s.seed = seed;
  s.burn_in = burn_in;
  s.thin = thin;
  return s;
}

TransectData load_dataset_source(const std::string& source, double baseline_w) {
  auto embedded = [&](Replication r) {
    TransectData d = embedded_replication(r);
    if (baseline_w == d.baseline_length()) return d;
    return TransectData(d.strata(), baseline_w, d.replication());
  };
  if (source == "embedded:rep1") return embedded(Replication::One);
  if (source == "embedded:rep2") return embedded(Replication::Two);
  if (!std::filesystem::exists(source)) throw ConfigError("data file '" + source + "' does not exist");
  return load_transects_file(source, baseline_w);
}

TransectData load_data(const RunConfig& config) {
  if (config.data_path) return load_dataset_source(*config.data_path, config.baseline_w);
  return load_dataset_source("embedded:" + config.embedded.value_or("rep1"), config.baseline_w);
}

Mu0Resolution resolve_mu0(const RunConfig& config, const TransectData& inference) {
  if (config.mu0) return {*config.mu0, false, 0.0, {}};
  if (!config.calibrate_from) return {kDefaultMu0, false, 0.0, {}};
  const TransectData calibration = load_dataset_source(*config.calibrate_from, config.baseline_w);
  const auto widths = calibration.all_widths();
  Mu0Resolution r;
  r.calibrated = true;
  r.n_hat = ht_population_estimate(widths, config.baseline_w);
  const auto sizes = inference.stratum_sizes();
  r.allocated = proportional_allocation(r.n_hat, sizes);
  r.mu0 = estimate_mu0(sizes, r.allocated);
  return r;
}

namespace {

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.out_dir + "'");
  return dir;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

ordered_json summary_row(const std::string& name, std::span<const double> values) {
  const auto s = summarize(values);
  return {{"name", name}, {"min", s.min},   {"q1", s.q1},  {"median", s.median},
          {"mean", s.mean}, {"q3", s.q3}, {"max", s.max}};
}

struct ParameterColumns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
};

ParameterColumns parameter_columns(const std::vector<PosteriorDraw>& draws) {
  ParameterColumns c;
  const std::size_t strata = draws.front().betas.size();
  c.names.push_back("alpha");
  for (std::size_t i = 0; i < strata; ++i) c.names.push_back("beta" + std::to_string(i + 1));
  c.names.push_back("gamma");
  c.values.resize(c.names.size());
  for (const auto& d : draws) {
    c.values[0].push_back(d.alpha);
    for (std::size_t i = 0; i < strata; ++i) c.values[1 + i].push_back(d.betas[i]);
    c.values.back().push_back(d.gamma_shape);
  }
  return c;
}

std::string prior_name(const PriorMode& p) {
  return p.kind == PriorMode::Kind::F22 ? "f22" : "bounded-gamma";
}

ordered_json run_header(const RunConfig& config, const TransectData& data) {
  ordered_json j;
  j["replication"] = data.replication();
  j["strata"] = data.stratum_sizes();
  j["baseline_w"] = data.baseline_length();
  j["variant"] = std::string(to_string(config.variant));
  j["sampler"] = config.sampler == SamplerKind::Gibbs ? "gibbs" : "random";
  j["prior"] = prior_name(config.prior);
  if (config.prior.kind == PriorMode::Kind::BoundedGamma) j["a0"] = config.prior.a0;
  j["draws"] = config.draws;
  j["grid"] = config.grid;
  j["seed"] = config.seed;
  return j;
}

FitArtifacts fit_only(const RunConfig& config, const TransectData& data) {
  FitArtifacts fit;
  const auto sampler = config.sampler_config();
  if (config.sampler == SamplerKind::Gibbs) {
    auto res = gibbs_draw_posterior(data, config.variant, sampler);
    fit.draws = std::move(res.draws);
    fit.gibbs = res.diagnostics;
  } else {
    fit.draws = draw_posterior(data, config.variant, sampler);
  }
  fit.summary = run_header(config, data);
  const auto cols = parameter_columns(fit.draws);
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < cols.names.size(); ++k) rows.push_back(summary_row(cols.names[k], cols.values[k]));
  fit.summary["parameters"] = rows;
  if (fit.gibbs) {
    ordered_json ac;
    ac["alpha"] = fit.gibbs->alpha_lag1;
    for (std::size_t i = 0; i < fit.gibbs->beta_lag1.size(); ++i) {
      ac["beta" + std::to_string(i + 1)] = fit.gibbs->beta_lag1[i];
    }
    ac["gamma"] = fit.gibbs->gamma_lag1;
    fit.summary["lag1_autocorrelation"] = ac;
  }
  return fit;
}

}  // namespace

FitArtifacts run_fit(const RunConfig& config) {
  config.validate();
  const TransectData data = load_data(config);
  FitArtifacts fit = fit_only(config, data);
  fit.summary["parameters"].push_back(
      {{"name", "population_mean"}, {"note", "requires predict"}});
  const auto dir = prepare_out_dir(config);
  write_file(dir / "draws.csv", [&](std::ostream& out) { write_draws_csv(out, fit.draws); });
  write_json(dir / "fit_summary.json", fit.summary);
  return fit;
}

PipelineArtifacts run_pipeline(const RunConfig& config) {
  config.validate();
  const TransectData data = load_data(config);
  PipelineArtifacts art;
  if (config.draws_file) {
    std::ifstream in(*config.draws_file);
    if (!in) throw ConfigError("cannot open draws file '" + *config.draws_file + "'");
    art.fit.draws = read_draws_csv(in);
    if (art.fit.draws.front().betas.size() != data.stratum_count()) {
      throw ConfigError("draws file stratum count does not match the data");
    }
    art.fit.summary = run_header(config, data);
    art.fit.summary["draws_file"] = *config.draws_file;
    art.fit.summary["draws"] = art.fit.draws.size();
  } else {
    art.fit = fit_only(config, data);
  }
  art.mu0 = resolve_mu0(config, data);

  PredictOptions options;
  options.resample_fraction = config.resample_fraction;
  options.with_replacement = config.with_replacement;
  options.seed = config.seed;
  art.prediction = population_mean_draws(art.fit.draws, data, SizePrior(data.stratum_sizes(), art.mu0.mu0), options);

  std::vector<double> means;
  for (const auto& m : art.prediction.resampled) means.push_back(m.mean);

  art.summary = run_header(config, data);
  if (config.draws_file) art.summary["draws_file"] = *config.draws_file;
  art.summary["draws"] = art.fit.draws.size();
  ordered_json mu0j;
  mu0j["mu0"] = art.mu0.mu0;
  mu0j["mu0_rounded"] = std::round(art.mu0.mu0 * 1e4) / 1e4;
  mu0j["calibrated"] = art.mu0.calibrated;
  if (art.mu0.calibrated) {
    mu0j["calibrate_from"] = *config.calibrate_from;
    mu0j["n_hat"] = art.mu0.n_hat;
    mu0j["n_hat_rounded"] = round_half_up(art.mu0.n_hat);
    std::vector<std::int64_t> rounded;
    for (double a : art.mu0.allocated) rounded.push_back(round_half_up(a));
    mu0j["allocated"] = art.mu0.allocated;
    mu0j["allocated_rounded"] = rounded;
  }
  art.summary["size_prior"] = mu0j;
  art.summary["resample_fraction"] = config.resample_fraction;
  art.summary["with_replacement"] = config.with_replacement;
  art.summary["resampled"] = art.prediction.resampled.size();

  const auto cols = parameter_columns(art.fit.draws);
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < cols.names.size(); ++k) rows.push_back(summary_row(cols.names[k], cols.values[k]));
  rows.push_back(summary_row("population_mean", means));
  art.summary["parameters"] = rows;
  if (art.fit.summary.contains("lag1_autocorrelation")) {
    art.summary["lag1_autocorrelation"] = art.fit.summary["lag1_autocorrelation"];
  }

  const auto dir = prepare_out_dir(config);
  write_file(dir / "means.csv", [&](std::ostream& out) { write_means_csv(out, art.prediction.resampled); });
  write_file(dir / "candidates.csv", [&](std::ostream& out) { write_means_csv(out, art.prediction.candidates); });
  write_json(dir / "summary.json", art.summary);
  write_file(dir / "hist_population_mean.csv",
             [&](std::ostream& out) { write_histogram_csv(out, histogram(means, config.bins)); });
  for (std::size_t k = 0; k < cols.names.size(); ++k) {
    write_file(dir / ("hist_" + cols.names[k] + ".csv"),
               [&](std::ostream& out) { write_histogram_csv(out, histogram(cols.values[k], config.bins)); });
  }
  return art;
}

CheckArtifacts run_check(const RunConfig& config) {
  config.validate();
  const TransectData data = load_data(config);
  const auto sampler = config.sampler_config();

  auto fit = [&](ModelVariant v) {
    if (config.sampler == SamplerKind::Gibbs) return gibbs_draw_posterior(data, v, sampler).draws;
    return draw_posterior(data, v, sampler);
  };
  const auto biased_draws = fit(ModelVariant::LengthBiased);
  CheckArtifacts art{cpo(data, biased_draws, ModelVariant::LengthBiased), {}, {}, {}};
  if (config.pairing == Pairing::Shared) {
    art.unbiased = cpo(data, biased_draws, ModelVariant::Unweighted);
  } else {
    art.unbiased = cpo(data, fit(ModelVariant::Unweighted), ModelVariant::Unweighted);
  }
  art.comparison = compare_models(art.biased, art.unbiased);

  auto& j = art.summary;
  j = run_header(config, data);
  j.erase("variant");
  j["pairing"] = config.pairing == Pairing::Shared ? "shared" : "refit";
  j["pairing_note"] = config.pairing == Pairing::Shared
                          ? "both likelihoods scored on the length-biased posterior draws"
                          : "each likelihood scored on the posterior fitted under it";
  j["lpml"] = {{"biased", art.biased.lpml}, {"unbiased", art.unbiased.lpml}};
  const char* winner = art.comparison.winner == ModelComparison::Winner::First    ? "biased"
                       : art.comparison.winner == ModelComparison::Winner::Second ? "unbiased"
                                                                                   : "indistinguishable";
  j["winner"] = winner;
  j["lpml_difference"] = art.comparison.lpml_difference;
  j["outliers"] = {{"biased", art.biased.outliers}, {"unbiased", art.unbiased.outliers}};

  const auto dir = prepare_out_dir(config);
  write_json(dir / "check.json", j);
  write_file(dir / "cpo.csv", [&](std::ostream& out) {
    out << "stratum,width,cpo_biased,log_cpo_biased,cpo_unbiased,log_cpo_unbiased\n";
    std::size_t k = 0;
    for (const auto& s : data.strata()) {
      for (double x : s.widths) {
        out << s.label << ',' << format_double(x) << ',' << format_double(art.biased.cpo[k]) << ','
            << format_double(art.biased.log_cpo[k]) << ',' << format_double(art.unbiased.cpo[k]) << ','
            << format_double(art.unbiased.log_cpo[k]) << '\n';
        ++k;
      }
    }
  });
  return art;
}

namespace {

struct DiagnoseOptions {
  std::vector<std::size_t> ns{2, 6, 18, 22};
  double theta_min = 1e-3;
  double theta_max = 1e4;
  std::size_t points = 141;
};

ordered_json run_diagnose(const DiagnoseOptions& opt, const std::string& out_dir) {
  if (!(opt.theta_min > 0.0) || !(opt.theta_max > opt.theta_min) || opt.points < 2) {
    throw ConfigError("diagnose: need 0 < theta-min < theta-max and >= 2 points");
  }
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  ordered_json report = ordered_json::array();
  std::ostringstream csv;
  csv << "n,theta,delta,delta_prime,delta_double_prime\n";
  const double log_lo = std::log(opt.theta_min);
  const double log_hi = std::log(opt.theta_max);
  for (auto n : opt.ns) {
    if (n < 1) throw ConfigError("diagnose: n must be >= 1");
    double min_d1 = INFINITY;
    double max_d2 = -INFINITY;
    double first = 0.0;
    double last = 0.0;
    for (std::size_t k = 0; k < opt.points; ++k) {
      const double theta =
          std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(k) / static_cast<double>(opt.points - 1));
      const double d0 = delta(theta, n);
      const double d1 = delta_prime(theta, n);
      const double d2 = delta_double_prime(theta, n);
      min_d1 = std::min(min_d1, d1);
      max_d2 = std::max(max_d2, d2);
      if (k == 0) first = d0;
      last = d0;
      csv << n << ',' << format_double(theta) << ',' << format_double(d0) << ',' << format_double(d1)
          << ',' << format_double(d2) << '\n';
    }
    // Stirling: Δ(θ) ≈ ((n-1)/2) ln θ + const for large θ.
    const double tail_slope = 0.5 * (static_cast<double>(n) - 1.0);
    const double decade_rise = delta(opt.theta_max, n) - delta(opt.theta_max / 10.0, n);
    report.push_back({{"n", n},
                      {"min_delta_prime", min_d1},
                      {"max_delta_double_prime", max_d2},
                      {"monotone_increasing", min_d1 >= 0.0},
                      {"concave", max_d2 <= 0.0},
                      {"delta_at_theta_min", first},
                      {"delta_at_theta_max", last},
                      {"rise_over_last_decade", decade_rise},
                      {"stirling_rise_per_decade", tail_slope * std::log(10.0)},
                      {"bounded_on_grid", n == 1 || decade_rise < 1e-6}});
  }
  write_file(dir / "delta.csv", [&](std::ostream& out) { out << csv.str(); });
  ordered_json j{{"theta_min", opt.theta_min}, {"theta_max", opt.theta_max}, {"points", opt.points},
                 {"series", report}};
  write_json(dir / "diagnose.json", j);
  return j;
}

struct SimulateOptions {
  std::vector<double> alphas{1.17};
  std::vector<double> betas{0.71, 1.41, 1.24};
  std::vector<double> gammas{1.7};
  std::vector<std::size_t> sizes{500, 500, 500};
  double baseline_w = 20.0;
  std::size_t replications = 50;
  std::uint64_t seed = 1;
  std::size_t draws = 1000;
  std::size_t grid = 400;
  double resample_fraction = 0.1;
  double level = 0.9;
  std::optional<double> constant_selection;
};

SimulationConfig to_simulation_config(const SimulateOptions& o) {
  const std::size_t strata = o.sizes.size();
  auto pick = [&](const std::vector<double>& v, std::size_t i, const char* name) {
    if (v.size() == 1) return v[0];
    if (v.size() != strata) {
      throw ConfigError(std::string("simulate: --") + name + " needs 1 or " + std::to_string(strata) + " values");
    }
    return v[i];
  };
  SimulationConfig c;
  for (std::size_t i = 0; i < strata; ++i) {
    c.true_params.emplace_back(pick(o.alphas, i, "sim-alpha"), pick(o.betas, i, "sim-beta"),
                               pick(o.gammas, i, "sim-gamma"));
  }
  c.population_sizes = o.sizes;
  c.baseline_length = o.baseline_w;
  c.replications = o.replications;
  c.seed = o.seed;
  c.sampler.draws = o.draws;
  c.sampler.grid_points = o.grid;
  c.resample_fraction = o.resample_fraction;
  c.interval_level = o.level;
  c.constant_selection_probability = o.constant_selection;
  return c;
}

ordered_json run_simulate(const SimulateOptions& opt, const std::string& out_dir) {
  const auto config = to_simulation_config(opt);
  config.validate();
  const auto report = recovery_study(config);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  ordered_json j{{"replications", config.replications},
                 {"seed", config.seed},
                 {"baseline_w", config.baseline_length},
                 {"population_sizes", config.population_sizes},
                 {"interval_level", config.interval_level},
                 {"coverage", report.coverage},
                 {"mean_interval_width", report.mean_interval_width},
                 {"failures", report.failures}};
  write_json(dir / "coverage.json", j);
  write_file(dir / "replications.csv", [&](std::ostream& out) {
    out << "replication,truth,lower,median,upper,covered,sample_size,mu0,error\n";
    for (const auto& r : report.replications) {
      out << r.index << ',' << format_double(r.truth) << ',' << format_double(r.lower) << ','
          << format_double(r.median) << ',' << format_double(r.upper) << ',' << (r.covered ? 1 : 0) << ','
          << r.sample_size << ',' << format_double(r.mu0) << ",\"" << r.error << "\"\n";
    }
  });
  return j;
}

// Flat `key = value` file; each entry becomes `--key value` ahead of the
// command-line flags so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file");
      const std::string path = args[++i];
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open config file '" + path + "'");
      std::string line;
      while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
          const auto b = s.find_first_not_of(" \t\r");
          const auto e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "with-replacement") {
          if (value == "true" || value == "1" || value == "yes") from_file.push_back("--" + key);
          continue;
        }
        from_file.push_back("--" + key);
        from_file.push_back(value);
      }
    } else {
      out.push_back(args[i]);
    }
  }
  if (!from_file.empty()) {
    // Insert right after the subcommand name.
    const auto pos = out.empty() ? out.begin() : out.begin() + 1;
    out.insert(pos, from_file.begin(), from_file.end());
  }
  return out;
}

void add_common(CLI::App* app, RunConfig& c, std::string& variant, std::string& prior,
                std::optional<double>& a0) {
  app->add_option("--data", c.data_path, "CSV with header replication,transect,width");
  app->add_option("--embedded", c.embedded, "embedded dataset: rep1 or rep2");
  app->add_option("--baseline-w", c.baseline_w, "baseline length W in meters");
  app->add_option("--mu0", c.mu0, "inclusion rate of the size prior");
  app->add_option("--calibrate-from", c.calibrate_from, "dataset (path or embedded:repN) to calibrate mu0");
  app->add_option("--draws", c.draws, "posterior draw count M");
  app->add_option("--grid", c.grid, "grid cells per unit interval");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--variant", variant, "biased or unbiased")->check(CLI::IsMember({"biased", "unbiased"}));
  app->add_option("--prior", prior, "f22 or bounded-gamma")->check(CLI::IsMember({"f22", "bounded-gamma"}));
  app->add_option("--a0", a0, "bound for the bounded-gamma prior");
  app->add_option("--sampler", [&c](const std::vector<std::string>& v) {
       if (v.back() == "random") c.sampler = SamplerKind::Random;
       else if (v.back() == "gibbs") c.sampler = SamplerKind::Gibbs;
       else return false;
       return true;
     }, "random or gibbs")->type_name("TEXT:{random,gibbs}");
  app->add_option("--burn-in", c.burn_in, "Gibbs burn-in iterations");
  app->add_option("--thin", c.thin, "Gibbs thinning interval");
  app->add_option("--resample-fraction", c.resample_fraction, "fraction of M kept by SIR");
  app->add_flag("--with-replacement", c.with_replacement, "SIR with replacement");
  app->add_option("--bins", c.bins, "histogram bin count");
  app->add_option("--out", c.out_dir, "output directory");
}

void finish_common(RunConfig& c, const std::string& variant, const std::string& prior,
                   const std::optional<double>& a0) {
  c.variant = parse_variant(variant);
  if (prior == "bounded-gamma") {
    c.prior = PriorMode::bounded_gamma(a0.value_or(10.0));
  } else if (a0) {
    throw ConfigError("--a0 only applies to --prior bounded-gamma");
  }
}

}  // namespace

int main_entry(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  try {
    const auto args = expand_config(raw_args);

    CLI::App app{"Bayesian finite-population mean under length-biased sampling", "lbs"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    RunConfig config;
    std::string variant = "biased";
    std::string prior = "f22";
    std::optional<double> a0;

    auto* fit = app.add_subcommand("fit", "draw the posterior of (alpha, beta_i, gamma)");
    auto* predict = app.add_subcommand("predict", "fit (or load draws) and predict the population mean");
    auto* check = app.add_subcommand("check", "CPO / LPML comparison of both likelihoods");
    auto* diagnose = app.add_subcommand("diagnose", "tabulate Delta, Delta', Delta'' for plotting");
    auto* simulate = app.add_subcommand("simulate", "coverage study on simulated length-biased samples");
    for (auto* sub : {fit, predict, check}) {
      sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      add_common(sub, config, variant, prior, a0);
    }
    predict->add_option("--draws-file", config.draws_file, "draws.csv written by fit");
    std::string pairing = "refit";
    check->add_option("--pairing", pairing,
                      "refit (posterior per likelihood) or shared (both scored on the length-biased posterior)")
        ->check(CLI::IsMember({"shared", "refit"}));

    DiagnoseOptions dopt;
    std::string diag_out = ".";
    diagnose->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    diagnose->add_option("--n", dopt.ns, "sample sizes")->delimiter(',');
    diagnose->add_option("--theta-min", dopt.theta_min);
    diagnose->add_option("--theta-max", dopt.theta_max);
    diagnose->add_option("--points", dopt.points);
    diagnose->add_option("--out", diag_out);

    SimulateOptions sopt;
    std::string sim_out = ".";
    simulate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    simulate->add_option("--sim-alpha", sopt.alphas, "true alpha (1 or one per stratum)")->delimiter(',');
    simulate->add_option("--sim-beta", sopt.betas, "true beta per stratum")->delimiter(',');
    simulate->add_option("--sim-gamma", sopt.gammas, "true gamma (1 or one per stratum)")->delimiter(',');
    simulate->add_option("--sim-sizes", sopt.sizes, "population size per stratum")->delimiter(',');
    simulate->add_option("--baseline-w", sopt.baseline_w, "transect baseline length W");
    simulate->add_option("--replications", sopt.replications, "number of simulated surveys");
    simulate->add_option("--seed", sopt.seed, "random seed");
    simulate->add_option("--draws", sopt.draws, "posterior draw count M per survey");
    simulate->add_option("--grid", sopt.grid, "grid cells per unit interval");
    simulate->add_option("--resample-fraction", sopt.resample_fraction, "fraction of M kept by SIR");
    simulate->add_option("--level", sopt.level, "central interval level");
    simulate->add_option("--constant-selection", sopt.constant_selection,
                         "select every unit with this probability (no-bias control)");
    simulate->add_option("--out", sim_out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "lbs: " << e.what() << '\n';
      if (e.get_exit_code() == 0) return 0;
      return 2;
    }

    if (fit->parsed() || predict->parsed() || check->parsed()) {
      finish_common(config, variant, prior, a0);
      config.pairing = pairing == "shared" ? Pairing::Shared : Pairing::Refit;
    }

    if (fit->parsed()) {
      const auto art = run_fit(config);
      out << "wrote " << art.draws.size() << " draws to "
          << (std::filesystem::path(config.out_dir) / "draws.csv").string() << '\n';
    } else if (predict->parsed()) {
      const auto art = run_pipeline(config);
      const auto& row = art.summary["parameters"].back();
      out << "mu0 = " << format_double(art.mu0.mu0);
      if (art.mu0.calibrated) {
        out << " (calibrated; rounded " << format_double(std::round(art.mu0.mu0 * 1e4) / 1e4)
            << ", N_hat " << round_half_up(art.mu0.n_hat) << ")";
      }
      out << "\npopulation mean: median " << format_double(row["median"].get<double>()) << ", IQR ("
          << format_double(row["q1"].get<double>()) << ", " << format_double(row["q3"].get<double>())
          << ")\n";
    } else if (check->parsed()) {
      const auto art = run_check(config);
      out << "model       LPML\n"
          << "biased      " << format_double(art.biased.lpml) << '\n'
          << "unbiased    " << format_double(art.unbiased.lpml) << '\n'
          << "winner: " << art.summary["winner"].get<std::string>() << " (pairing "
          << art.summary["pairing"].get<std::string>() << ")\n";
      if (config.pairing == Pairing::Shared) {
        err << "lbs: note: unbiased likelihood scored on length-biased posterior draws (cross-pairing)\n";
      }
    } else if (diagnose->parsed()) {
      const auto j = run_diagnose(dopt, diag_out);
      for (const auto& s : j["series"]) {
        out << "n=" << s["n"].get<std::size_t>() << " monotone=" << s["monotone_increasing"].get<bool>()
            << " concave=" << s["concave"].get<bool>() << " bounded_on_grid=" << s["bounded_on_grid"].get<bool>()
            << '\n';
      }
    } else if (simulate->parsed()) {
      const auto j = run_simulate(sopt, sim_out);
      out << "coverage " << format_double(j["coverage"].get<double>()) << " over "
          << j["replications"].get<std::size_t>() << " replications ("
          << j["failures"].get<std::size_t>() << " failed)\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "lbs: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "lbs: input error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "lbs: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "lbs: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    err << "lbs: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "lbs: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace lbs::cli
