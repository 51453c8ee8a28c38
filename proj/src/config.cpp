#include "adiaprep/config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace adiaprep {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
  std::ostringstream msg;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) msg << "; ";
    msg << errors[i].field << ": " << errors[i].message;
  }
  return msg.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_atom(std::string_view atom, const std::string& field) {
  const std::string a = trim(atom);
  if (a == "pi") return std::numbers::pi;
  if (a == "-pi") return -std::numbers::pi;
  double value = 0.0;
  const auto* first = a.data();
  const auto* last = a.data() + a.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (a.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError(field, "cannot read '" + a + "' as a number");
  }
  return value;
}

std::uint64_t parse_count(const json& value, const std::string& field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    const auto v = value.get<std::int64_t>();
    if (v < 0) throw ConfigError(field, "must be >= 0");
    return static_cast<std::uint64_t>(v);
  }
  const double d = parse_real(value, field);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
    throw ConfigError(field, "must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(d);
}

bool parse_bool(const json& value, const std::string& field) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "true") return true;
    if (s == "false") return false;
  }
  throw ConfigError(field, "must be true or false");
}

std::string parse_string(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError(field, "must be a string");
  return value.get<std::string>();
}

template <typename Fn>
auto parse_enum(const json& value, const std::string& field, Fn&& parse) {
  const auto name = parse_string(value, field);
  try {
    return parse(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

ComplexMatrix parse_matrix(const json& doc, const std::string& field) {
  if (!doc.is_array() || doc.empty()) throw ConfigError(field, "matrix must be a non-empty array of rows");
  const std::size_t n = doc.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = doc[i];
    if (!row.is_array() || row.size() != n) {
      throw ConfigError(field, "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (const auto& entry : row) {
      if (entry.is_array()) {
        if (entry.size() != 2) throw ConfigError(field, "complex entries are written [re, im]");
        entries.emplace_back(parse_real(entry[0], field), parse_real(entry[1], field));
      } else {
        entries.emplace_back(parse_real(entry, field), 0.0);
      }
    }
  }
  return ComplexMatrix(n, std::move(entries));
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table{
      {"J", "coupling"}, {"T", "total_time"}, {"dt", "step_width"}};
  return table;
}

void apply_output(OutputOptions& out, const json& doc, std::vector<FieldError>& errors) {
  if (!doc.is_object()) {
    errors.push_back({"output", "must be an object"});
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    const std::string field = "output." + key;
    try {
      if (key == "directory") out.directory = parse_string(value, field);
      else if (key == "csv") out.csv = parse_bool(value, field);
      else if (key == "json") out.json = parse_bool(value, field);
      else if (key == "svg") out.svg = parse_bool(value, field);
      else if (key == "timing") out.timing = parse_bool(value, field);
      else errors.push_back({field, "unknown key"});
    } catch (const ConfigError& e) {
      errors.insert(errors.end(), e.errors().begin(), e.errors().end());
    }
  }
}

void apply_field(ExperimentConfig& c, const std::string& key, const json& value,
                 std::vector<FieldError>& errors) {
  if (key == "model") {
    if (value.is_object()) {
      c.model = "custom";
      c.custom_model = value;
    } else {
      c.model = parse_string(value, key);
      if (c.model != "custom") c.custom_model = json();
    }
  } else if (key == "coupling") {
    c.coupling = parse_real(value, key);
  } else if (key == "total_time") {
    c.total_time = parse_real(value, key);
  } else if (key == "step_width") {
    c.step_width = parse_real(value, key);
  } else if (key == "integrator") {
    c.integrator = parse_enum(value, key, parse_integrator);
  } else if (key == "split_order") {
    c.split_order = parse_enum(value, key, parse_split_order);
  } else if (key == "hold_duration") {
    if (value.is_null()) c.hold_duration.reset();
    else c.hold_duration = parse_real(value, key);
  } else if (key == "sample_dt") {
    if (value.is_null()) c.sample_dt.reset();
    else c.sample_dt = parse_real(value, key);
  } else if (key == "hold_method") {
    c.hold_method = parse_enum(value, key, parse_hold_method);
  } else if (key == "shots") {
    c.shots = parse_count(value, key);
  } else if (key == "seed") {
    c.seed = parse_count(value, key);
  } else if (key == "observables") {
    if (value.is_string()) {
      c.observables = {value.get<std::string>()};
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_string(); })) {
      c.observables = value.get<std::vector<std::string>>();
    } else {
      throw ConfigError(key, "must be a list of observable labels");
    }
  } else if (key == "mean_estimator") {
    c.mean_estimator = parse_enum(value, key, parse_mean_estimator);
  } else if (key == "output") {
    apply_output(c.output, value, errors);
  } else {
    errors.push_back({key, "unknown key"});
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

ConfigError::ConfigError(std::string field, std::string message)
    : ConfigError(std::vector<FieldError>{{std::move(field), std::move(message)}}) {}

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig2"}; }

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig c;
  c.preset = std::string(name);
  c.shots = 1'000'000;
  c.total_time = 36.0;
  if (name == "fig1a" || name == "fig1b") {
    c.model = "model1";
    c.coupling = 1.0;
    c.step_width = 1.0 / 8.0;
    c.observables = {name == "fig1a" ? "Z" : "-X"};
  } else if (name == "fig2") {
    c.model = "model2";
    c.coupling = std::numbers::pi / 4.0;
    c.step_width = 1.0 / 24.0;
    c.observables = {"Z"};
  } else {
    std::string available;
    for (const auto& p : preset_names()) available += (available.empty() ? "" : ", ") + p;
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "' (available: " + available + ")");
  }
  return c;
}

double parse_real(const json& value, const std::string& field) {
  if (value.is_number()) {
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
  }
  if (!value.is_string()) throw ConfigError(field, "must be a number or an expression such as \"1/24\"");
  const std::string expr = value.get<std::string>();
  // Left-to-right product/quotient of atoms.
  double result = 0.0;
  char op = '=';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= expr.size(); ++i) {
    if (i == expr.size() || expr[i] == '*' || expr[i] == '/') {
      const double atom = parse_atom(std::string_view(expr).substr(start, i - start), field);
      if (op == '=') result = atom;
      else if (op == '*') result *= atom;
      else result /= atom;
      if (i < expr.size()) op = expr[i];
      start = i + 1;
    }
  }
  if (!std::isfinite(result)) throw ConfigError(field, "expression '" + expr + "' is not finite");
  return result;
}

void apply_json(ExperimentConfig& config, const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  std::vector<FieldError> errors;
  if (doc.contains("preset")) {
    try {
      config = preset_config(parse_string(doc.at("preset"), "preset"));
    } catch (const ConfigError& e) {
      errors.insert(errors.end(), e.errors().begin(), e.errors().end());
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset") continue;
    try {
      apply_field(config, key, value, errors);
    } catch (const ConfigError& e) {
      errors.insert(errors.end(), e.errors().begin(), e.errors().end());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set", "expected key=value, got '" + std::string(assignment) + "'");
  }
  std::string key = trim(assignment.substr(0, eq));
  const std::string raw = trim(assignment.substr(eq + 1));
  if (auto it = aliases().find(key); it != aliases().end()) key = it->second;

  json value = json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = raw;

  json doc = json::object();
  if (const auto dot = key.find('.'); dot != std::string::npos) {
    doc[key.substr(0, dot)][key.substr(dot + 1)] = value;
  } else {
    doc[key] = value;
  }
  apply_json(config, doc);
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false, /*ignore_comments=*/true);
  if (doc.is_discarded()) throw ConfigError("config", "'" + path + "' is not valid JSON");
  if (!doc.is_object()) throw ConfigError("config", "'" + path + "' must contain a JSON object");
  return doc;
}

ModelSpec build_model(const ExperimentConfig& config) {
  try {
    if (config.model == "model1") return model_one(config.coupling);
    if (config.model == "model2") return model_two(config.coupling);
    if (config.model != "custom") {
      throw ConfigError("model", "unknown model '" + config.model + "' (expected model1, model2 or an inline object)");
    }
    const json& doc = config.custom_model;
    if (!doc.is_object() || !doc.contains("initial") || !doc.contains("target")) {
      throw ConfigError("model", "custom model needs \"initial\" and \"target\" matrices");
    }
    HermitianOperator initial(parse_matrix(doc.at("initial"), "model.initial"), "H0");
    HermitianOperator target(parse_matrix(doc.at("target"), "model.target"), "HT");
    std::vector<HermitianOperator> observables;
    if (doc.contains("observables")) {
      const json& obs = doc.at("observables");
      if (!obs.is_object()) throw ConfigError("model.observables", "must map labels to matrices");
      for (const auto& [label, m] : obs.items()) {
        observables.emplace_back(parse_matrix(m, "model.observables." + label), label);
      }
    }
    return custom_model(std::move(initial), std::move(target), std::move(observables), config.coupling);
  } catch (const ModelError& e) {
    throw ConfigError("model", e.what());
  } catch (const LinalgError& e) {
    throw ConfigError("model", e.what());
  }
}

ResolvedConfig resolve(const ExperimentConfig& config) {
  std::vector<FieldError> errors;
  auto positive = [&](const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) errors.push_back({field, "must be > 0"});
  };
  positive("coupling", config.coupling);
  positive("total_time", config.total_time);
  positive("step_width", config.step_width);
  if (config.hold_duration) positive("hold_duration", *config.hold_duration);
  if (config.sample_dt) positive("sample_dt", *config.sample_dt);
  if (config.total_time > 0.0 && config.step_width > 0.0 && config.total_time / config.step_width < 0.5) {
    errors.push_back({"step_width", "must not exceed total_time"});
  }
  if (config.output.directory.empty()) errors.push_back({"output.directory", "must not be empty"});
  if (!errors.empty()) throw ConfigError(std::move(errors));

  ResolvedConfig r;
  r.config = config;
  r.spec = build_model(config);

  r.observables = config.observables;
  if (r.observables.empty()) {
    for (const auto& o : r.spec.observables) r.observables.push_back(o.label());
  }
  const std::size_t qubits = static_cast<std::size_t>(std::countr_zero(r.spec.dim()));
  for (const auto& label : r.observables) {
    const bool known = std::any_of(r.spec.observables.begin(), r.spec.observables.end(),
                                   [&](const HermitianOperator& o) { return o.label() == label; });
    if (known) continue;
    try {
      r.spec.observables.push_back(observable_from_label(label, qubits));
    } catch (const ModelError& e) {
      errors.push_back({"observables", e.what()});
    }
  }
  for (std::size_t i = 0; i < r.observables.size(); ++i)
    for (std::size_t j = i + 1; j < r.observables.size(); ++j)
      if (r.observables[i] == r.observables[j]) errors.push_back({"observables", "duplicate label '" + r.observables[i] + "'"});

  const double omega = oscillation_frequency(r.spec);
  const double period = 2.0 * std::numbers::pi / omega;
  r.hold_duration = config.hold_duration.value_or(config.total_time);
  if (config.sample_dt) {
    r.sample_dt = *config.sample_dt;
  } else {
    const double per_period = std::max(kMinSamplesPerPeriod, std::round(period / config.step_width));
    r.sample_dt = period / per_period;
  }
  if (period / r.sample_dt < kMinSamplesPerPeriod - 1e-9) {
    std::ostringstream msg;
    msg << "gives " << period / r.sample_dt << " samples per oscillation period " << period
        << ", need at least " << kMinSamplesPerPeriod;
    errors.push_back({"sample_dt", msg.str()});
  }
  const double covered = (std::floor(r.hold_duration / r.sample_dt + 1e-9) + 1.0) * r.sample_dt;
  if (covered < period * (1.0 - 1e-9)) {
    std::ostringstream msg;
    msg << "must cover at least one oscillation period (" << period << ")";
    errors.push_back({"hold_duration", msg.str()});
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));

  r.config.hold_duration = r.hold_duration;
  r.config.sample_dt = r.sample_dt;
  r.config.observables = r.observables;
  return r;
}

json to_json(const ResolvedConfig& resolved, bool include_output) {
  const auto& c = resolved.config;
  json out = json::object();
  out["preset"] = c.preset.empty() ? json(nullptr) : json(c.preset);
  out["model"] = c.model == "custom" ? c.custom_model : json(c.model);
  out["coupling"] = c.coupling;
  out["total_time"] = c.total_time;
  out["step_width"] = c.step_width;
  out["integrator"] = to_string(c.integrator);
  out["split_order"] = to_string(c.split_order);
  out["hold_duration"] = resolved.hold_duration;
  out["sample_dt"] = resolved.sample_dt;
  out["hold_method"] = to_string(c.hold_method);
  out["shots"] = c.shots;
  out["seed"] = c.seed;
  out["observables"] = resolved.observables;
  out["mean_estimator"] = to_string(c.mean_estimator);
  if (!include_output) return out;
  out["output"] = {{"directory", c.output.directory},
                   {"csv", c.output.csv},
                   {"json", c.output.json},
                   {"svg", c.output.svg},
                   {"timing", c.output.timing}};
  return out;
}

}  // namespace adiaprep
