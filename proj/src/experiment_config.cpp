#include "stpbo/experiment_config.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stpbo/errors.hpp"

namespace stpbo {

using json = nlohmann::json;

namespace {

// Typed access to one JSON object, reporting errors by dotted field path and
// rejecting keys it was never asked about.
class Fields {
 public:
  Fields(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "must be an object");
  }

  ~Fields() = default;

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "' " + what);
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }

  const json& require(const std::string& key) {
    if (!has(key)) fail(field(key), "is required");
    return node_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) fail(field(key), "must be a number");
    return v.get<double>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(field(key), "must be a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) fail(field(key), "must be a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_boolean()) fail(field(key), "must be true or false");
    return v.get<bool>();
  }

  void reject_unknown() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) fail(field(key), "is not a recognized setting");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

Bounds parse_bounds(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) Fields::fail(field, "must be a nonempty list of [low, high] pairs");
  Bounds bounds;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const json& pair = node[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      Fields::fail(field + "[" + std::to_string(i) + "]", "must be a [low, high] pair of numbers");
    }
    bounds.push_back({pair[0].get<double>(), pair[1].get<double>()});
    if (!(bounds.back().low < bounds.back().high)) {
      Fields::fail(field + "[" + std::to_string(i) + "]", "needs low < high");
    }
  }
  return bounds;
}

PenaltySpec parse_penalty(const json& node, const std::string& path) {
  Fields f(node, path);
  PenaltySpec p;
  p.violation_base = f.number("violation_base", p.violation_base);
  p.nonphysical_value = f.number("nonphysical_value", p.nonphysical_value);
  p.crash_value = f.number("crash_value", p.crash_value);
  f.reject_unknown();
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    Fields::fail(path, e.what());
  }
  return p;
}

ObjectiveConfig parse_objective(const json& node) {
  Fields f(node, "objective");
  ObjectiveConfig out;
  const std::string kind = f.string("kind", "");
  if (kind.empty()) Fields::fail("objective.kind", "is required");
  if (kind == "rosenbrock") {
    out.kind = ObjectiveKind::Rosenbrock;
    out.bounds = rosenbrock_bounds();
    out.known_optimum = 0.0;
  } else if (kind == "six_hump_camel") {
    out.kind = ObjectiveKind::SixHumpCamel;
    out.bounds = six_hump_camel_bounds();
    out.known_optimum = kSixHumpCamelMinimum;
  } else if (kind == "external") {
    out.kind = ObjectiveKind::External;
  } else {
    Fields::fail("objective.kind", "must be one of rosenbrock, six_hump_camel, external");
  }

  if (out.kind == ObjectiveKind::External) {
    out.bounds = parse_bounds(f.require("bounds"), "objective.bounds");
    const json& command = f.require("command");
    if (!command.is_array() || command.empty()) {
      Fields::fail("objective.command", "must be a nonempty list of strings");
    }
    for (const auto& arg : command) {
      if (!arg.is_string()) Fields::fail("objective.command", "must be a nonempty list of strings");
      out.external.command.push_back(arg.get<std::string>());
    }
    const double timeout = f.number("timeout_seconds", 600.0);
    if (!(timeout > 0.0)) Fields::fail("objective.timeout_seconds", "must be positive");
    out.external.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000.0));
  } else if (f.has("bounds")) {
    const Bounds domain = out.bounds;
    out.bounds = parse_bounds(node.at("bounds"), "objective.bounds");
    if (out.bounds.size() != domain.size()) Fields::fail("objective.bounds", "must have 2 dimensions");
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (out.bounds[i].low < domain[i].low || out.bounds[i].high > domain[i].high) {
        Fields::fail("objective.bounds", "must lie within the benchmark's domain");
      }
    }
  }
  if (f.has("known_optimum")) out.known_optimum = f.number("known_optimum", 0.0);
  if (f.has("penalty")) out.penalty = parse_penalty(node.at("penalty"), "objective.penalty");
  f.reject_unknown();
  return out;
}

std::vector<ProcessVariant> parse_processes(const json& node) {
  if (!node.is_array() || node.empty()) Fields::fail("processes", "must be a nonempty list");
  static const std::regex kName("[A-Za-z0-9_.-]+");
  std::vector<ProcessVariant> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string path = "processes[" + std::to_string(i) + "]";
    Fields f(node[i], path);
    ProcessVariant v;
    const std::string family = f.string("family", "");
    if (family == "gaussian") {
      v.model = ProcessModel::gaussian({});
    } else if (family == "student_t") {
      const double nu = f.number("nu", 0.0);
      if (!f.has("nu")) Fields::fail(path + ".nu", "is required for student_t");
      if (!(nu > 2.0)) Fields::fail(path + ".nu", "must be greater than 2");
      v.model = ProcessModel::student_t(nu, {});
    } else {
      Fields::fail(path + ".family", "must be gaussian or student_t");
    }
    const std::string convention = f.string("shape_convention", "posterior_nu");
    if (convention == "prior_nu") {
      v.model.shape_convention = ShapeConvention::PriorNu;
    } else if (convention != "posterior_nu") {
      Fields::fail(path + ".shape_convention", "must be posterior_nu or prior_nu");
    }
    v.name = f.string("name", family == "gaussian" ? "gp" : "stp");
    if (!std::regex_match(v.name, kName)) Fields::fail(path + ".name", "may only use [A-Za-z0-9_.-]");
    if (!names.insert(v.name).second) Fields::fail(path + ".name", "duplicates another process");
    f.reject_unknown();
    out.push_back(std::move(v));
  }
  return out;
}

CampaignConfig parse_campaign(const json& node) {
  Fields f(node, "campaign");
  CampaignConfig c;
  c.n_initial = f.count("n_initial", c.n_initial);
  c.max_acquisitions = f.count("max_acquisitions", c.max_acquisitions);
  if (f.has("max_evaluations")) c.max_evaluations = f.count("max_evaluations", 0);
  c.renormalize_every = f.count("renormalize_every", c.renormalize_every);
  c.stop_tolerance = f.number("stop_tolerance", c.stop_tolerance);
  c.grid_points_per_dim = f.count("grid_points_per_dim", c.grid_points_per_dim);
  c.grid_max_dim = f.count("grid_max_dim", c.grid_max_dim);
  c.candidate_pool = f.count("candidate_pool", c.candidate_pool);
  if (f.has("bandwidth_grid")) {
    Fields g(node.at("bandwidth_grid"), "campaign.bandwidth_grid");
    c.bandwidth_grid.log10_min = g.number("log10_min", c.bandwidth_grid.log10_min);
    c.bandwidth_grid.log10_max = g.number("log10_max", c.bandwidth_grid.log10_max);
    c.bandwidth_grid.points = g.count("points", c.bandwidth_grid.points);
    c.bandwidth_grid.stages = g.count("stages", c.bandwidth_grid.stages);
    g.reject_unknown();
  }
  if (f.has("refine")) {
    Fields r(node.at("refine"), "campaign.refine");
    c.refine.max_iterations = r.count("max_iterations", c.refine.max_iterations);
    c.refine.initial_step_fraction = r.number("initial_step_fraction", c.refine.initial_step_fraction);
    r.reject_unknown();
  }
  if (f.has("nu_selection")) {
    Fields n(node.at("nu_selection"), "campaign.nu_selection");
    c.nu_selection.enabled = n.boolean("enabled", false);
    c.nu_selection.min_nu = n.number("min_nu", c.nu_selection.min_nu);
    if (n.has("candidates")) {
      const json& list = node.at("nu_selection").at("candidates");
      if (!list.is_array() || list.empty()) {
        Fields::fail("campaign.nu_selection.candidates", "must be a nonempty list of numbers");
      }
      c.nu_selection.candidates.clear();
      for (const auto& v : list) {
        if (!v.is_number() || !(v.get<double>() > c.nu_selection.min_nu)) {
          Fields::fail("campaign.nu_selection.candidates", "must all exceed min_nu");
        }
        c.nu_selection.candidates.push_back(v.get<double>());
      }
    }
    n.reject_unknown();
  }
  f.reject_unknown();
  try {
    c.validate();
  } catch (const InvalidParameter& e) {
    Fields::fail("campaign", e.what());
  }
  return c;
}

}  // namespace

std::uint64_t ExperimentConfig::repeat_seed(std::size_t repeat) const {
  return RandomStream(seed).split(repeat).seed();
}

CampaignConfig ExperimentConfig::campaign_for(const ProcessVariant& variant, std::size_t repeat,
                                              const ObjectiveHandle& objective) const {
  CampaignConfig c = campaign;
  c.process = variant.model;
  c.seed = repeat_seed(repeat);
  c.bounds = objective.bounds();
  c.optimum_value = objective.known_optimum();
  return c;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + e.what());
  }

  Fields f(root, "");
  ExperimentConfig config;
  config.objective = parse_objective(f.require("objective"));
  config.processes = parse_processes(f.require("processes"));
  config.repeats = f.count("repeats", config.repeats);
  if (config.repeats == 0) Fields::fail("repeats", "must be at least 1");
  config.seed = f.count("seed", 0);
  config.output_dir = f.string("output_dir", config.output_dir.string());
  if (f.has("campaign")) config.campaign = parse_campaign(root.at("campaign"));
  f.reject_unknown();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

ObjectiveHandle make_objective(const ObjectiveConfig& config) {
  switch (config.kind) {
    case ObjectiveKind::Rosenbrock:
      return ObjectiveHandle::rosenbrock(config.penalty)
          .restricted_to(config.bounds)
          .with_known_optimum(config.known_optimum);
    case ObjectiveKind::SixHumpCamel:
      return ObjectiveHandle::six_hump_camel(config.penalty)
          .restricted_to(config.bounds)
          .with_known_optimum(config.known_optimum);
    case ObjectiveKind::External:
    case ObjectiveKind::Custom:
      break;
  }
  return ObjectiveHandle::external(std::make_shared<ExternalAdapter>(config.external), config.bounds,
                                   config.known_optimum, config.penalty);
}

}  // namespace stpbo
