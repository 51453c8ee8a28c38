#include "adiaprep/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include "adiaprep/output.hpp"

namespace adiaprep {

namespace fs = std::filesystem;

namespace {

void report(const ConfigError& e, std::ostream& err) {
  err << "configuration error:\n";
  for (const auto& f : e.errors()) err << "  " << f.field << ": " << f.message << "\n";
}

void warn_schedule(const ResolvedConfig& r, std::ostream& err) {
  const AdiabaticSchedule schedule(r.config.total_time, r.config.step_width);
  if (schedule.has_mismatch()) {
    err << "warning: T/dt = " << r.config.total_time / r.config.step_width << " is not an integer; using "
        << schedule.num_steps() << " steps of width " << format_real(schedule.effective_step()) << "\n";
  }
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

const VacuumDiagnosis* primary_diagnosis(const RunResult& r) {
  const ObservableResult* p = r.primary();
  if (!p) return nullptr;
  const auto& ch = p->primary_channel();
  return ch.diagnosis ? &*ch.diagnosis : nullptr;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    report(e, err);
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace

std::optional<std::string> seed_from_environment() {
  if (const char* v = std::getenv(kSeedEnvVar); v && *v) return std::string(v);
  return std::nullopt;
}

ExperimentConfig load_config(const ConfigSource& source) {
  ExperimentConfig config;
  nlohmann::json doc = nlohmann::json::object();
  if (source.config_path) doc = read_config_file(*source.config_path);
  if (source.preset) {
    config = preset_config(*source.preset);
    doc.erase("preset");
  }
  apply_json(config, doc);
  for (const auto& assignment : source.overrides) apply_override(config, assignment);
  if (source.output_dir) config.output.directory = *source.output_dir;
  if (source.env_seed) {
    try {
      apply_override(config, std::string("seed=") + *source.env_seed);
    } catch (const ConfigError&) {
      throw ConfigError(kSeedEnvVar, "must be a non-negative integer, got '" + *source.env_seed + "'");
    }
  }
  return config;
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "T" || name == "total_time") return SweepParameter::total_time;
  if (name == "dt" || name == "step_width") return SweepParameter::step_width;
  if (name == "shots") return SweepParameter::shots;
  throw ConfigError("parameter", "unknown sweep parameter '" + name + "' (expected T, dt or shots)");
}

std::string to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::total_time: return "T";
    case SweepParameter::step_width: return "dt";
    case SweepParameter::shots: return "shots";
  }
  return "T";
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepParameter parameter,
                                const std::vector<std::string>& values) {
  if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
  std::vector<ResolvedConfig> configs;
  std::vector<FieldError> errors;
  for (const auto& value : values) {
    ExperimentConfig c = base;
    try {
      apply_override(c, to_string(parameter) + "=" + value);
      const bool positive = parameter == SweepParameter::shots ? c.shots > 0
                            : parameter == SweepParameter::total_time ? c.total_time > 0.0
                                                                      : c.step_width > 0.0;
      if (!positive) throw ConfigError("values", "sweep value '" + value + "' must be positive");
      configs.push_back(resolve(c));
    } catch (const ConfigError& e) {
      for (const auto& f : e.errors()) errors.push_back({f.field + " (value " + value + ")", f.message});
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));

  std::vector<std::future<SweepRow>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      SweepRow row{values[i], run_experiment(configs[i]), 0.0};
      row.trotter_deviation =
          trotter_deviation(row.result.resolved.spec, row.result.schedule, configs[i].config.split_order);
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows) {
  std::ostringstream csv;
  csv << "index," << to_string(parameter)
      << ",beta_sq,prepared_beta_sq,raw_average,corrected_value,reference_value,trotter_deviation,stderr\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].result;
    const auto& cfg = r.resolved.config;
    const double param = parameter == SweepParameter::total_time   ? cfg.total_time
                         : parameter == SweepParameter::step_width ? cfg.step_width
                                                                   : static_cast<double>(cfg.shots);
    const VacuumDiagnosis* d = primary_diagnosis(r);
    const ObservableResult* p = r.primary();
    if (!p && !r.observables.empty()) p = &r.observables.front();
    csv << i << ',' << format_real(param) << ',' << (d ? format_real(d->beta_sq) : "") << ','
        << format_real(r.decomposition.beta_sq) << ',' << (d ? format_real(d->raw_average) : "") << ','
        << (d ? format_real(d->corrected_value) : "") << ','
        << (p ? format_real(p->profile.ground_value) : "") << ',' << format_real(rows[i].trotter_deviation)
        << ',' << (p ? optional_cell(p->point_standard_error) : "") << '\n';
  }
  return csv.str();
}

int cmd_run(const ConfigSource& source, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig resolved = resolve(load_config(source));
    warn_schedule(resolved, err);
    const RunResult result = run_experiment(resolved);
    const fs::path dir = resolved.config.output.directory;
    write_run_artifacts(result, dir);

    out << "prepared state: beta_sq = " << format_real(result.decomposition.beta_sq)
        << ", fidelity = " << format_real(result.fidelity) << "\n";
    for (const auto& o : result.observables) {
      const auto& ch = o.primary_channel();
      out << "<" << o.label << "> (" << to_string(o.role) << ", " << (o.sampled ? "sampled" : "exact")
          << "): mean = " << format_real(ch.stats.mean(resolved.config.mean_estimator));
      if (ch.diagnosis) {
        out << ", beta_sq = " << format_real(ch.diagnosis->beta_sq)
            << ", corrected = " << format_real(ch.diagnosis->corrected_value);
      } else if (!ch.diagnosis_error.empty()) {
        out << ", diagnosis rejected: " << ch.diagnosis_error;
      }
      out << "\n";
    }
    out << "artifacts written to " << dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_validate(const ConfigSource& source, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ResolvedConfig resolved = resolve(load_config(source));
    warn_schedule(resolved, err);
    out << json_text(to_json(resolved));
    return kExitOk;
  });
}

int cmd_sweep(const ConfigSource& source, const std::string& parameter,
              const std::vector<std::string>& values, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepParameter param = parse_sweep_parameter(parameter);
    const ExperimentConfig base = load_config(source);
    const auto rows = run_sweep(base, param, values);
    const fs::path dir = base.output.directory;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      write_run_artifacts(rows[i].result, dir / ("row_" + std::to_string(i)));
    }
    const std::string table = sweep_csv(param, rows);
    write_text(dir / ("sweep_" + to_string(param) + ".csv"), table);
    out << table;
    return kExitOk;
  });
}

}  // namespace adiaprep
