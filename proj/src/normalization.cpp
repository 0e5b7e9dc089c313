#include "stpbo/normalization.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "stpbo/errors.hpp"

namespace stpbo {

namespace {

double population_std(const Vector& v, double mean) {
  return std::sqrt((v.array() - mean).square().mean());
}

}  // namespace

NormalizationTransform fit_normalization(const Dataset& data) {
  data.validate();
  if (data.size() < 2) throw EmptyDataset("normalization needs at least two observations");
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto dim = data.inputs.front().size();

  NormalizationTransform t;
  t.input_means = Vector::Zero(dim);
  t.input_stds = Vector::Ones(dim);
  t.degenerate_inputs.assign(static_cast<std::size_t>(dim), false);
  for (Eigen::Index d = 0; d < dim; ++d) {
    Vector column(n);
    for (Eigen::Index i = 0; i < n; ++i) column(i) = data.inputs[static_cast<std::size_t>(i)](d);
    t.input_means(d) = column.mean();
    const double s = population_std(column, t.input_means(d));
    if (s < kVarianceFloor) {
      t.degenerate_inputs[static_cast<std::size_t>(d)] = true;
    } else {
      t.input_stds(d) = s;
    }
  }

  t.output_mean = data.outputs.mean();
  const double s = population_std(data.outputs, t.output_mean);
  if (s < kVarianceFloor) {
    t.degenerate_output = true;
    spdlog::warn("all {} outputs are identical; output scaling disabled", data.size());
  } else {
    t.output_std = s;
  }
  return t;
}

InputPoint NormalizationTransform::apply_input(const InputPoint& x) const {
  return (x - input_means).cwiseQuotient(input_stds);
}

InputPoint NormalizationTransform::invert_input(const InputPoint& z) const {
  return z.cwiseProduct(input_stds) + input_means;
}

double NormalizationTransform::apply_output(double y) const { return (y - output_mean) / output_std; }

double NormalizationTransform::invert_output(double z) const { return z * output_std + output_mean; }

Dataset NormalizationTransform::apply(const Dataset& data) const {
  Dataset out;
  out.inputs.reserve(data.size());
  for (const auto& x : data.inputs) out.inputs.push_back(apply_input(x));
  out.outputs = (data.outputs.array() - output_mean) / output_std;
  return out;
}

Dataset NormalizationTransform::invert(const Dataset& data) const {
  Dataset out;
  out.inputs.reserve(data.size());
  for (const auto& z : data.inputs) out.inputs.push_back(invert_input(z));
  out.outputs = data.outputs.array() * output_std + output_mean;
  return out;
}

}  // namespace stpbo
