#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stpbo/campaign.hpp"

namespace stpbo {

/// Shortest round-trip decimal form; identical bits give identical text.
std::string format_number(double value);

/// Columns: run_id,step,x_1..x_d,y,y_best,bandwidth,scale_factor. Initial
/// design rows leave bandwidth and scale_factor empty.
void write_trace_csv(std::ostream& out, std::size_t run_id, const CampaignTrace& trace,
                     std::size_t dimension);
void write_trace_file(const std::filesystem::path& path, std::size_t run_id,
                      const CampaignTrace& trace, std::size_t dimension);

/// Best-so-far per record, with its step index.
struct TraceSeries {
  std::vector<std::size_t> steps;
  std::vector<double> y_best;
};

TraceSeries read_trace_series(const std::filesystem::path& path);
TraceSeries trace_series(const CampaignTrace& trace);

}  // namespace stpbo
