// Artifact writers: CSV time series, JSON documents and SVG plots.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "adiaprep/experiment.hpp"
#include "adiaprep/measure.hpp"

namespace adiaprep {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, "%.17g".
std::string format_real(double value);

/// Label made safe for file names; characters outside [A-Za-z0-9_+-] become '_'.
std::string file_stem(std::string_view label);

/// Comment line with the hold start, then "t,exact,sampled,stderr" where t is
/// measured from the hold start. sampled and stderr are empty without shots.
std::string series_csv(const TimeSeries& series);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string json_text(const nlohmann::json& doc);

void write_text(const std::filesystem::path& path, std::string_view text);

/// Hold-phase plot: measured points plus the closed-form overlay when available.
std::string series_svg(const ObservableResult& observable);

/// Writes series_<label>.csv, summary.json and plot_<label>.svg under the
/// configured output directory, following the output toggles.
void write_run_artifacts(const RunResult& result, const std::filesystem::path& directory);

}  // namespace adiaprep
