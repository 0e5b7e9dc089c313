#include "stpbo/summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "stpbo/errors.hpp"

namespace stpbo {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw EmptyInput("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

// Best-so-far after each step 0..last_step, carrying the final value forward.
std::vector<double> best_by_step(const TraceSeries& run, std::size_t last_step) {
  if (run.steps.empty()) throw EmptyInput("trace has no records");
  std::vector<double> out(last_step + 1, run.y_best.front());
  std::size_t k = 0;
  double current = run.y_best.front();
  for (std::size_t step = 0; step <= last_step; ++step) {
    while (k < run.steps.size() && run.steps[k] <= step) current = run.y_best[k++];
    out[step] = current;
  }
  return out;
}

}  // namespace

SummaryTable summarize(const std::vector<ProcessRuns>& processes, const SummaryOptions& options) {
  std::size_t last_step = 0;
  bool any = false;
  for (const auto& p : processes) {
    for (const auto& run : p.runs) {
      if (run.steps.empty()) continue;
      any = true;
      last_step = std::max(last_step, *std::max_element(run.steps.begin(), run.steps.end()));
    }
  }
  if (!any) throw EmptyInput("no trace records to summarize");

  auto statistic = [&](double y_best) {
    const double gap = options.optimum ? y_best - *options.optimum : y_best;
    return std::log10(std::max(gap, options.floor));
  };

  SummaryTable table;
  for (const auto& p : processes) {
    if (p.runs.empty()) continue;
    std::vector<std::vector<double>> columns;
    for (const auto& run : p.runs) columns.push_back(best_by_step(run, last_step));
    for (std::size_t step = 0; step <= last_step; ++step) {
      std::vector<double> values;
      values.reserve(columns.size());
      for (const auto& c : columns) values.push_back(statistic(c[step]));
      table.push_back({p.process, step, quantile(values, 0.25), quantile(values, 0.5),
                       quantile(values, 0.75)});
    }
  }
  return table;
}

std::vector<ProcessRuns> load_trace_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw EmptyInput("trace directory " + dir.string() + " does not exist");
  std::map<std::string, std::vector<fs::path>> files;
  auto collect = [&](const fs::path& d, const std::string& name) {
    for (const auto& entry : fs::directory_iterator(d)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files[name].push_back(entry.path());
    }
  };
  collect(dir, fs::weakly_canonical(dir).filename().string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) collect(entry.path(), entry.path().filename().string());
  }
  std::vector<ProcessRuns> out;
  for (auto& [name, paths] : files) {
    if (paths.empty()) continue;
    std::sort(paths.begin(), paths.end());
    ProcessRuns runs{name, {}};
    for (const auto& path : paths) runs.runs.push_back(read_trace_series(path));
    out.push_back(std::move(runs));
  }
  if (out.empty()) throw EmptyInput("no trace files found under " + dir.string());
  return out;
}

void write_summary_csv(std::ostream& out, const SummaryTable& table) {
  out << "process,step,q25,q50,q75\n";
  for (const auto& row : table) {
    out << row.process << ',' << row.step << ',' << format_number(row.q25) << ','
        << format_number(row.q50) << ',' << format_number(row.q75) << '\n';
  }
}

}  // namespace stpbo
