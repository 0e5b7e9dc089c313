#include "stpbo/commands.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "stpbo/design.hpp"
#include "stpbo/errors.hpp"

namespace stpbo {

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

std::string run_file_name(std::size_t repeat) {
  std::ostringstream name;
  name << "run_" << std::setw(3) << std::setfill('0') << repeat << ".csv";
  return name.str();
}

}  // namespace

void request_interrupt() { g_interrupted = 1; }
void clear_interrupt() { g_interrupted = 0; }

RunResult cmd_run(const ExperimentConfig& config, const RunOptions& options) {
  namespace fs = std::filesystem;
  if (config.processes.empty()) throw ConfigError("config field 'processes' must be a nonempty list");
  if (config.repeats == 0) throw ConfigError("config field 'repeats' must be at least 1");
  for (const auto& v : config.processes) {
    if (v.model.family == Family::StudentT) check_process_nu(v.model.nu);
  }

  struct Job {
    std::size_t variant;
    std::size_t repeat;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    for (std::size_t v = 0; v < config.processes.size(); ++v) jobs.push_back({v, r});
  }

  const fs::path trace_root = config.output_dir / "traces";
  fs::create_directories(trace_root);
  // runs[v][r] is filled by whichever worker ran that job.
  std::vector<std::vector<std::optional<TraceSeries>>> runs(
      config.processes.size(), std::vector<std::optional<TraceSeries>>(config.repeats));
  std::vector<std::optional<fs::path>> files(jobs.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      if (g_interrupted || failed) return;
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job job = jobs[k];
      const ProcessVariant& variant = config.processes[job.variant];
      try {
        const ObjectiveHandle objective = make_objective(config.objective);
        const CampaignConfig campaign = config.campaign_for(variant, job.repeat, objective);
        const CampaignTrace trace = run_campaign(objective, campaign);
        const fs::path path = trace_root / variant.name / run_file_name(job.repeat);
        write_trace_file(path, job.repeat, trace, objective.dimension());
        runs[job.variant][job.repeat] = trace_series(trace);
        files[k] = path;
        spdlog::info("{} run {}: {} evaluations, {}", variant.name, job.repeat, trace.records.size(),
                     to_string(trace.status));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i + 1 < n_workers; ++i) pool.emplace_back(worker);
    worker();
  }

  RunResult result;
  result.interrupted = g_interrupted != 0;
  for (const auto& f : files) {
    if (f) result.trace_files.push_back(*f);
  }

  std::vector<ProcessRuns> completed;
  for (std::size_t v = 0; v < config.processes.size(); ++v) {
    ProcessRuns p{config.processes[v].name, {}};
    for (auto& run : runs[v]) {
      if (run) p.runs.push_back(std::move(*run));
    }
    completed.push_back(std::move(p));
  }
  result.summary_file = config.output_dir / "summary.csv";
  bool have_runs = false;
  for (const auto& p : completed) have_runs = have_runs || !p.runs.empty();
  if (have_runs) {
    SummaryOptions summary;
    summary.optimum = config.objective.known_optimum;
    summary.floor = config.campaign.stop_tolerance > 0.0 ? config.campaign.stop_tolerance : 1e-4;
    std::ofstream out(result.summary_file, std::ios::binary);
    write_summary_csv(out, summarize(completed, summary));
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read data file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw EmptyInput("data file " + path.string() + " is empty");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',') + 1);
  if (columns < 2) throw Error("data file needs columns x_1..x_d,y");
  Dataset data;
  std::vector<double> ys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    try {
      while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": unparseable number");
    }
    if (values.size() != columns) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": wrong number of columns");
    }
    InputPoint x(static_cast<Eigen::Index>(columns - 1));
    for (std::size_t d = 0; d + 1 < columns; ++d) x(static_cast<Eigen::Index>(d)) = values[d];
    data.inputs.push_back(std::move(x));
    ys.push_back(values.back());
  }
  data.outputs = Eigen::Map<const Vector>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  if (data.empty()) throw EmptyInput("data file " + path.string() + " has no rows");
  return data;
}

void cmd_sample(const SampleRequest& request, std::ostream& out) {
  request.model.validate();
  const std::vector<InputPoint> grid = tensor_grid(request.grid_bounds, request.grid_points);
  RandomStream rng(request.seed);

  Vector mean;
  Vector sd;
  Matrix draws;
  if (request.data) {
    const ConditionedProcess conditioned(request.model, *request.data);
    const auto marginals = conditioned.marginals(grid);
    mean.resize(static_cast<Eigen::Index>(grid.size()));
    sd.resize(mean.size());
    for (std::size_t i = 0; i < marginals.size(); ++i) {
      mean(static_cast<Eigen::Index>(i)) = marginals[i].mu;
      sd(static_cast<Eigen::Index>(i)) = marginals[i].standard_deviation();
    }
    draws = sample_posterior_paths(request.model, *request.data, grid, request.n_draws, rng);
  } else {
    // Prior covariance is K for both families, so the marginal std is sqrt(k(x, x)).
    mean = Vector::Zero(static_cast<Eigen::Index>(grid.size()));
    sd.resize(mean.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sd(static_cast<Eigen::Index>(i)) = std::sqrt(kernel_eval(request.model.kernel, grid[i], grid[i]));
    }
    draws = sample_prior_paths(request.model, grid, request.n_draws, rng);
  }

  auto row = [&](const std::string& label, auto&& value_at) {
    out << label;
    for (std::size_t i = 0; i < grid.size(); ++i) out << ',' << format_number(value_at(i));
    out << '\n';
  };
  out << "series";
  for (std::size_t i = 0; i < grid.size(); ++i) out << ",p" << i;
  out << '\n';
  for (std::size_t d = 0; d < request.grid_bounds.size(); ++d) {
    row("x_" + std::to_string(d + 1),
        [&](std::size_t i) { return grid[i](static_cast<Eigen::Index>(d)); });
  }
  row("mean", [&](std::size_t i) { return mean(static_cast<Eigen::Index>(i)); });
  row("mean_plus_2sd", [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    return mean(k) + 2.0 * sd(k);
  });
  row("mean_minus_2sd", [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    return mean(k) - 2.0 * sd(k);
  });
  for (Eigen::Index r = 0; r < draws.rows(); ++r) {
    row("draw_" + std::to_string(r), [&](std::size_t i) { return draws(r, static_cast<Eigen::Index>(i)); });
  }
}

SummaryTable cmd_summarize(const std::filesystem::path& trace_dir, const SummaryOptions& options,
                           std::ostream& out) {
  SummaryTable table = summarize(load_trace_directory(trace_dir), options);
  write_summary_csv(out, table);
  return table;
}

}  // namespace stpbo
