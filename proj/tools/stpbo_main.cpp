// Command-line front end: run, sample, summarize.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "stpbo/commands.hpp"
#include "stpbo/errors.hpp"

namespace {

stpbo::Interval parse_grid_axis(const std::string& spec, std::size_t& points) {
  // lo:hi:n
  std::stringstream ss(spec);
  std::string lo, hi, n;
  if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n)) {
    throw CLI::ValidationError("--grid", "expected LOW:HIGH:POINTS, got " + spec);
  }
  const std::size_t count = std::stoul(n);
  if (points != 0 && count != points) {
    throw CLI::ValidationError("--grid", "every axis must use the same point count");
  }
  points = count;
  return {std::stod(lo), std::stod(hi)};
}

extern "C" void on_sigint(int) { stpbo::request_interrupt(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization with Student-T and Gaussian process surrogates"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repeats;
  std::size_t jobs = 1;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--seed", seed, "Master seed (overrides seed)");
  run->add_option("--repeats", repeats, "Repeats per process (overrides repeats)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "Draw prior or posterior sample paths");
  std::string family = "gaussian";
  double nu = 5.0;
  double bandwidth = 0.1;
  std::vector<std::string> grid_specs{"0:1:200"};
  std::size_t draws = 300;
  std::uint64_t sample_seed = 0;
  std::string data_path;
  std::string sample_out;
  sample->add_option("--family", family, "gaussian or student_t")
      ->check(CLI::IsMember({"gaussian", "student_t"}));
  sample->add_option("--nu", nu, "Degrees of freedom (student_t)");
  sample->add_option("--bandwidth", bandwidth, "Kernel bandwidth")->check(CLI::PositiveNumber);
  sample->add_option("--grid", grid_specs, "LOW:HIGH:POINTS, once per dimension");
  sample->add_option("--draws", draws, "Number of sample paths");
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("--data", data_path, "Observations CSV (x_1..x_d,y) for posterior draws");
  sample->add_option("--out", sample_out, "Output CSV (default stdout)");

  auto* summarize = app.add_subcommand("summarize", "Quartile summary of a trace directory");
  std::string trace_dir;
  std::optional<double> optimum;
  double floor = 1e-4;
  std::string summary_out;
  summarize->add_option("--traces", trace_dir, "Directory of trace CSVs")->required();
  summarize->add_option("--optimum", optimum, "Known optimum; regret is reported when given");
  summarize->add_option("--floor", floor, "Lower cap before log10");
  summarize->add_option("--out", summary_out, "Output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_default_logger(spdlog::stderr_color_mt("stpbo"));

  try {
    if (*run) {
      stpbo::ExperimentConfig config = stpbo::load_experiment_config(config_path);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (seed) config.seed = *seed;
      if (repeats) {
        if (*repeats == 0) throw stpbo::ConfigError("--repeats must be at least 1");
        config.repeats = *repeats;
      }
      std::signal(SIGINT, on_sigint);
      const auto result = stpbo::cmd_run(config, {jobs});
      std::cerr << "wrote " << result.trace_files.size() << " traces and " << result.summary_file.string()
                << '\n';
      return result.interrupted ? 130 : 0;
    }
    if (*sample) {
      stpbo::SampleRequest request;
      const stpbo::KernelSpec kernel{stpbo::KernelFamily::SquaredExponentialIsotropic, bandwidth};
      request.model = family == "gaussian" ? stpbo::ProcessModel::gaussian(kernel)
                                           : stpbo::ProcessModel::student_t(nu, kernel);
      std::size_t points = 0;
      for (const auto& spec : grid_specs) request.grid_bounds.push_back(parse_grid_axis(spec, points));
      request.grid_points = points;
      request.n_draws = draws;
      request.seed = sample_seed;
      if (!data_path.empty()) request.data = stpbo::read_dataset_csv(data_path);
      if (sample_out.empty()) {
        stpbo::cmd_sample(request, std::cout);
      } else {
        std::ofstream out(sample_out, std::ios::binary);
        stpbo::cmd_sample(request, out);
      }
      return 0;
    }
    if (*summarize) {
      stpbo::SummaryOptions options{optimum, floor};
      if (summary_out.empty()) {
        stpbo::cmd_summarize(trace_dir, options, std::cout);
      } else {
        std::ofstream out(summary_out, std::ios::binary);
        stpbo::cmd_summarize(trace_dir, options, out);
      }
      return 0;
    }
  } catch (const stpbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
