#include "adiaprep/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "adiaprep/svg_plot.hpp"

namespace adiaprep {

namespace fs = std::filesystem;

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string file_stem(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '+' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::string series_csv(const TimeSeries& series) {
  std::ostringstream csv;
  csv << "# observable=" << series.observable_label << " hold_start=" << format_real(series.start_time)
      << " absolute_time=t+" << format_real(series.start_time) << " shots=" << series.shots_per_point
      << "\n";
  csv << "t,exact,sampled,stderr\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    csv << format_real(series.elapsed(k)) << ',' << format_real(series.exact_values[k])
        << ',';
    if (series.has_samples()) {
      csv << format_real(series.sampled_values[k]) << ',' << format_real(series.standard_errors[k]);
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  return csv.str();
}

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

std::string series_svg(const ObservableResult& observable) {
  const TimeSeries& s = observable.series;
  std::vector<PlotTrace> traces;
  PlotTrace measured;
  measured.name = s.has_samples() ? "shot estimate" : "exact";
  measured.color = "#1f77b4";
  measured.markers = true;
  for (std::size_t k = 0; k < s.size(); ++k) {
    measured.xs.push_back(s.elapsed(k));
    measured.ys.push_back(s.has_samples() ? s.sampled_values[k] : s.exact_values[k]);
  }
  traces.push_back(std::move(measured));

  PlotTrace theory;
  theory.color = "#ff7f0e";
  const TimeSeries& overlay = observable.theory ? *observable.theory : s;
  theory.name = observable.theory ? "closed form" : "exact";
  for (std::size_t k = 0; k < overlay.size(); ++k) {
    theory.xs.push_back(s.elapsed(k));
    theory.ys.push_back(overlay.exact_values[k]);
  }
  traces.push_back(std::move(theory));

  PlotLayout layout;
  layout.title = "<" + s.observable_label + "> during hold";
  layout.x_label = "t - T";
  layout.y_label = "<" + s.observable_label + ">";
  return render_svg_plot(layout, traces);
}

void write_run_artifacts(const RunResult& result, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw OutputError("cannot create '" + directory.string() + "': " + ec.message());
  const auto& out = result.resolved.config.output;
  for (const auto& o : result.observables) {
    const std::string stem = file_stem(o.label);
    if (out.csv) write_text(directory / ("series_" + stem + ".csv"), series_csv(o.series));
    if (out.svg) {
      write_text(directory / ("plot_" + stem + ".svg"), series_svg(o));
    }
  }
  if (out.json) write_text(directory / "summary.json", json_text(summarize(result, out.timing)));
}

}  // namespace adiaprep
