#include "stpbo/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "stpbo/errors.hpp"

namespace stpbo {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_trace_csv(std::ostream& out, std::size_t run_id, const CampaignTrace& trace,
                     std::size_t dimension) {
  out << "run_id,step";
  for (std::size_t d = 1; d <= dimension; ++d) out << ",x_" << d;
  out << ",y,y_best,bandwidth,scale_factor\n";
  for (const auto& r : trace.records) {
    out << run_id << ',' << r.step;
    for (Eigen::Index d = 0; d < r.x.size(); ++d) out << ',' << format_number(r.x(d));
    out << ',' << format_number(r.y) << ',' << format_number(r.y_best) << ','
        << optional_number(r.bandwidth) << ',' << optional_number(r.scale_factor) << '\n';
  }
}

void write_trace_file(const std::filesystem::path& path, std::size_t run_id,
                      const CampaignTrace& trace, std::size_t dimension) {
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write trace file " + tmp.string());
    write_trace_csv(out, run_id, trace, dimension);
    if (!out) throw Error("failed writing trace file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TraceSeries read_trace_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read trace file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error("trace file " + path.string() + " is empty");
  const auto header = split_csv_line(line);
  std::size_t step_col = header.size();
  std::size_t best_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "step") step_col = i;
    if (header[i] == "y_best") best_col = i;
  }
  if (step_col == header.size() || best_col == header.size()) {
    throw Error("trace file " + path.string() + " lacks step/y_best columns");
  }
  TraceSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": wrong number of columns");
    }
    try {
      series.steps.push_back(static_cast<std::size_t>(std::stoull(cells[step_col])));
      series.y_best.push_back(std::stod(cells[best_col]));
    } catch (const std::exception&) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": unparseable step or y_best");
    }
  }
  return series;
}

TraceSeries trace_series(const CampaignTrace& trace) {
  TraceSeries series;
  for (const auto& r : trace.records) {
    series.steps.push_back(r.step);
    series.y_best.push_back(r.y_best);
  }
  return series;
}

}  // namespace stpbo
