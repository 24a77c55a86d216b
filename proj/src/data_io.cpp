#include "bqte/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bqte/errors.hpp"

namespace bqte {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& token, const std::string& what, std::size_t row) {
  const std::string t = trim(token);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw DataError("row " + std::to_string(row) + ": cannot parse " + what + " '" + token + "'");
  }
  if (consumed != t.size() || !std::isfinite(value))
    throw DataError("row " + std::to_string(row) + ": cannot parse " + what + " '" + token + "'");
  return value;
}

bool parse_flag(const std::string& token, std::size_t row) {
  const std::string t = lower(trim(token));
  if (t.empty() || t == "0" || t == "false" || t == "no") return false;
  if (t == "1" || t == "true" || t == "yes") return true;
  throw DataError("row " + std::to_string(row) + ": cannot parse censoring flag '" + token + "'");
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "bqte") return CurveKind::bqte;
  if (name == "utbqte") return CurveKind::utbqte;
  if (name == "ltbqte") return CurveKind::ltbqte;
  throw DataError("unknown curve kind '" + name + "'");
}

Scale scale_from_string(const std::string& name) {
  if (name == "absolute") return Scale::absolute;
  if (name == "relative") return Scale::relative;
  throw DataError("unknown scale '" + name + "'");
}

ordered_json provenance_to_json(const Provenance& p) {
  ordered_json j;
  j["dataset_id"] = p.dataset_id;
  j["control_label"] = p.control_label;
  j["treatment_label"] = p.treatment_label;
  j["n_control"] = p.n_control;
  j["n_treatment"] = p.n_treatment;
  j["estimator"] = to_string(p.kind);
  j["bootstrap_count"] = p.bootstrap_count;
  j["cutpoint_count"] = p.cutpoint_count;
  j["alpha"] = p.alpha;
  j["seed"] = p.seed;
  j["grid"] = p.grid_policy;
  j["warnings"] = p.warnings;
  return j;
}

Provenance provenance_from_json(const ordered_json& j) {
  Provenance p;
  p.dataset_id = j.at("dataset_id").get<std::string>();
  p.control_label = j.at("control_label").get<std::string>();
  p.treatment_label = j.at("treatment_label").get<std::string>();
  p.n_control = j.at("n_control").get<std::size_t>();
  p.n_treatment = j.at("n_treatment").get<std::size_t>();
  p.kind = estimator_kind_from_string(j.at("estimator").get<std::string>());
  p.bootstrap_count = j.at("bootstrap_count").get<std::size_t>();
  p.cutpoint_count = j.at("cutpoint_count").get<std::size_t>();
  p.alpha = j.at("alpha").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.grid_policy = j.at("grid").get<std::string>();
  p.warnings = j.at("warnings").get<std::vector<std::string>>();
  return p;
}

ordered_json curve_to_json(const EffectCurve& curve) {
  ordered_json j;
  j["schema"] = "bqte-curve/1";
  j["curve"] = to_string(curve.curve_kind);
  j["scale"] = to_string(curve.scale);
  j["alpha"] = curve.alpha;
  j["valid_range"] = {curve.valid_range.first, curve.valid_range.second};
  j["provenance"] = provenance_to_json(curve.provenance);
  ordered_json pts = ordered_json::array();
  for (const CurvePoint& p : curve.points) {
    ordered_json pj;
    pj["x"] = p.x;
    pj["estimate"] = p.estimate;
    pj["ci_low"] = p.ci_low;
    pj["ci_high"] = p.ci_high;
    pts.push_back(std::move(pj));
  }
  j["points"] = std::move(pts);
  return j;
}

EffectCurve curve_from_json(const ordered_json& j) {
  if (!j.is_object() || j.value("schema", "") != "bqte-curve/1")
    throw DataError("not a bqte-curve/1 document");
  EffectCurve curve;
  curve.curve_kind = curve_kind_from_string(j.at("curve").get<std::string>());
  curve.scale = scale_from_string(j.at("scale").get<std::string>());
  curve.alpha = j.at("alpha").get<double>();
  const auto& vr = j.at("valid_range");
  curve.valid_range = {vr.at(0).get<double>(), vr.at(1).get<double>()};
  curve.provenance = provenance_from_json(j.at("provenance"));
  for (const auto& pj : j.at("points")) {
    CurvePoint p;
    p.x = pj.at("x").get<double>();
    p.estimate = pj.at("estimate").get<double>();
    p.ci_low = pj.at("ci_low").get<double>();
    p.ci_high = pj.at("ci_high").get<double>();
    curve.points.push_back(p);
  }
  return curve;
}

std::string curve_csv_row(const CurvePoint& p) {
  return format_double(p.x) + "," + format_double(p.estimate) + "," +
         format_double(p.ci_low) + "," + format_double(p.ci_high) + "\n";
}

std::string series_label(const EffectCurve& curve) {
  std::string label = to_string(curve.curve_kind);
  std::transform(label.begin(), label.end(), label.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (curve.scale == Scale::relative) label += " (relative)";
  return label;
}

// Minimal static figure: axes with ticks, one marker + vertical CI whisker
// per grid point, a dashed horizontal reference line, and a legend when
// several curves are overlaid.
std::string render_svg(std::span<const EffectCurve> curves, const PlotOptions& plot) {
  constexpr double width = 720, height = 480;
  constexpr double ml = 72, mr = 24, mt = 46, mb = 58;
  static const char* palette[] = {"#1f6fb4", "#c23b3b", "#2c8a4b", "#8452a8"};

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool any = false;
  for (const EffectCurve& c : curves)
    for (const CurvePoint& p : c.points) {
      if (!any) {
        xmin = xmax = p.x;
        ymin = p.ci_low;
        ymax = p.ci_high;
        any = true;
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, std::min(p.ci_low, p.estimate));
      ymax = std::max(ymax, std::max(p.ci_high, p.estimate));
    }
  if (plot.reference) {
    ymin = std::min(ymin, *plot.reference);
    ymax = std::max(ymax, *plot.reference);
  }
  auto pad = [](double lo, double hi) {
    double span = hi - lo;
    if (span <= 0.0) span = std::max(1.0, std::fabs(hi));
    return 0.06 * span;
  };
  const double xpad = pad(xmin, xmax), ypad = pad(ymin, ymax);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  if (!plot.title.empty())
    svg << "  <text x=\"" << width / 2 << "\" y=\"26\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(plot.title)
        << "</text>\n";

  // frame and ticks
  svg << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  constexpr int ticks = 6;
  for (int i = 0; i < ticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / (ticks - 1);
    const double fy = ymin + (ymax - ymin) * i / (ticks - 1);
    svg << "  <line x1=\"" << px(fx) << "\" y1=\"" << height - mb << "\" x2=\"" << px(fx)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << px(fx) << "\" y=\"" << height - mb + 19
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
        << "</text>\n";
    svg << "  <line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
        << py(fy) << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
        << "</text>\n";
  }

  std::string y_label = plot.y_label;
  if (y_label.empty() && !curves.empty()) {
    y_label = series_label(curves.front());
    if (curves.size() > 1) y_label = "effect";
  }
  svg << "  <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(plot.x_label) << "</text>\n";
  svg << "  <text x=\"18\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">"
      << xml_escape(y_label) << "</text>\n";

  if (plot.reference) {
    const double ry = py(*plot.reference);
    svg << "  <line class=\"reference\" x1=\"" << ml << "\" y1=\"" << ry << "\" x2=\""
        << width - mr << "\" y2=\"" << ry
        << "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
    svg << "  <text x=\"" << width - mr - 4 << "\" y=\"" << ry - 5
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
        << "fill=\"#555555\">" << num(*plot.reference) << "</text>\n";
  }

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const char* color = palette[ci % 4];
    for (const CurvePoint& p : curves[ci].points) {
      svg << "  <line class=\"whisker\" x1=\"" << px(p.x) << "\" y1=\"" << py(p.ci_low)
          << "\" x2=\"" << px(p.x) << "\" y2=\"" << py(p.ci_high) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.2\"/>\n";
      svg << "  <circle class=\"marker\" cx=\"" << px(p.x) << "\" cy=\"" << py(p.estimate)
          << "\" r=\"3.2\" fill=\"" << color << "\"/>\n";
    }
  }

  if (curves.size() > 1) {
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
      const double ly = mt + 8 + 18 * static_cast<double>(ci);
      svg << "  <rect x=\"" << width - mr - 150 << "\" y=\"" << ly
          << "\" width=\"12\" height=\"12\" fill=\"" << palette[ci % 4] << "\"/>\n";
      svg << "  <text x=\"" << width - mr - 133 << "\" y=\"" << ly + 10
          << "\" font-family=\"sans-serif\" font-size=\"12\">"
          << xml_escape(series_label(curves[ci])) << "</text>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

ordered_json interval_to_json(const IntervalEstimate& e) {
  ordered_json j;
  j["estimate"] = e.estimate;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  return j;
}

std::vector<double> parse_grid_levels(const std::string& text) {
  std::vector<double> levels;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid_levels range must be lo:hi:count");
    const double lo = parse_real(parts[0], "grid level", 0);
    const double hi = parse_real(parts[1], "grid level", 0);
    const double count_real = parse_real(parts[2], "grid level count", 0);
    const auto count = static_cast<std::size_t>(count_real);
    if (count_real != static_cast<double>(count) || count == 0)
      throw ConfigError("grid_levels count must be a positive integer");
    if (count == 1) {
      levels.push_back(lo);
    } else {
      for (std::size_t i = 0; i < count; ++i)
        levels.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  } else {
    for (const std::string& tok : split(text, ','))
      levels.push_back(parse_real(tok, "grid level", 0));
  }
  return levels;
}

TreatmentMap parse_treatment(const std::string& text) {
  const std::string t = trim(text);
  if (lower(t).rfind("independent", 0) == 0)
    return TreatmentMap::independent(Law::parse(trim(t.substr(11))));
  const auto open = t.find('(');
  const auto close = t.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ConfigError("cannot parse treatment map '" + text + "'");
  const std::string name = lower(trim(t.substr(0, open)));
  const double arg = parse_real(t.substr(open + 1, close - open - 1), "treatment parameter", 0);
  if (name == "shift") return TreatmentMap::shift(arg);
  if (name == "scale") return TreatmentMap::scale(arg);
  throw ConfigError("unknown treatment map '" + name + "' (file form supports shift, scale, independent)");
}

std::size_t parse_size(const std::string& value, const std::string& key) {
  const double v = parse_real(value, key, 0);
  const auto n = static_cast<std::size_t>(v);
  if (v != static_cast<double>(n)) throw ConfigError(key + " must be a nonnegative integer");
  return n;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

OutputFormat output_format_from_string(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "csv") return OutputFormat::csv;
  if (n == "json") return OutputFormat::json;
  if (n == "svg") return OutputFormat::svg;
  throw ConfigError("unknown output format '" + name + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "?";
}

TrialDataset parse_dataset_csv(std::istream& in, const CsvSchema& schema,
                               const std::string& trial_id,
                               std::vector<std::string>* warnings) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: no header row");
  std::vector<std::string> header = split(line, ',');
  for (std::string& h : header) h = lower(trim(h));

  auto find_column = [&](const std::string& name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), lower(trim(name)));
    return it == header.end() ? -1 : it - header.begin();
  };
  const std::ptrdiff_t group_col = find_column(schema.group_column);
  const std::ptrdiff_t duration_col = find_column(schema.duration_column);
  const std::ptrdiff_t censored_col = find_column(schema.censored_column);
  if (group_col < 0) throw DataError("missing required column '" + schema.group_column + "'");
  if (duration_col < 0)
    throw DataError("missing required column '" + schema.duration_column + "'");

  TrialDataset ds;
  ds.trial_id = trial_id;
  ds.control.label = "control";
  ds.treatment.label = "treatment";

  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    const auto need = static_cast<std::size_t>(std::max(
        {group_col, duration_col, censored_col < 0 ? std::ptrdiff_t{0} : censored_col}));
    if (cells.size() <= need)
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(cells.size()));

    const std::string group = lower(trim(cells[static_cast<std::size_t>(group_col)]));
    const double duration =
        parse_real(cells[static_cast<std::size_t>(duration_col)], "duration", row);
    if (duration <= 0.0) {
      if (schema.nonpositive_is_error)
        throw DataError("row " + std::to_string(row) + ": nonpositive duration " +
                        format_double(duration));
      if (warnings)
        warnings->push_back("row " + std::to_string(row) + ": nonpositive duration " +
                            format_double(duration) + " kept");
    }
    const bool censored =
        censored_col >= 0 && parse_flag(cells[static_cast<std::size_t>(censored_col)], row);

    Sample* target = nullptr;
    if (group == "control" || group == "0")
      target = &ds.control;
    else if (group == "treatment" || group == "1")
      target = &ds.treatment;
    else
      throw DataError("row " + std::to_string(row) + ": unknown group label '" + group + "'");
    target->values.push_back(duration);
    target->censor_flags.push_back(censored);
  }

  if (ds.control.values.empty()) throw DataError("no control rows in '" + trial_id + "'");
  if (ds.treatment.values.empty()) throw DataError("no treatment rows in '" + trial_id + "'");
  return ds;
}

TrialDataset load_csv(const std::string& path, const CsvSchema& schema,
                      std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_dataset_csv(in, schema, std::filesystem::path(path).stem().string(), warnings);
}

std::string dataset_to_csv(const TrialDataset& dataset) {
  std::string out = "group,duration,censored\n";
  auto emit = [&](const Sample& s) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out += s.label + "," + format_double(s.values[i]) + "," +
             (i < s.censor_flags.size() && s.censor_flags[i] ? "1" : "0") + "\n";
    }
  };
  emit(dataset.control);
  emit(dataset.treatment);
  return out;
}

void save_dataset_csv(const TrialDataset& dataset, const std::string& path) {
  write_text_file(path, dataset_to_csv(dataset));
}

std::string serialize_curve(const EffectCurve& curve, OutputFormat format,
                            const PlotOptions& plot) {
  switch (format) {
    case OutputFormat::csv: {
      std::string out = "x,estimate,ci_low,ci_high\n";
      for (const CurvePoint& p : curve.points) out += curve_csv_row(p);
      return out;
    }
    case OutputFormat::json:
      return curve_to_json(curve).dump(2) + "\n";
    case OutputFormat::svg:
      return render_svg({&curve, 1}, plot);
  }
  throw ConfigError("unknown output format");
}

std::string serialize_curves(std::span<const EffectCurve> curves, OutputFormat format,
                             const PlotOptions& plot) {
  switch (format) {
    case OutputFormat::csv: {
      std::string out = "curve,scale,x,estimate,ci_low,ci_high\n";
      for (const EffectCurve& c : curves)
        for (const CurvePoint& p : c.points)
          out += to_string(c.curve_kind) + "," + to_string(c.scale) + "," + curve_csv_row(p);
      return out;
    }
    case OutputFormat::json: {
      ordered_json j;
      j["schema"] = "bqte-curveset/1";
      ordered_json arr = ordered_json::array();
      for (const EffectCurve& c : curves) arr.push_back(curve_to_json(c));
      j["curves"] = std::move(arr);
      return j.dump(2) + "\n";
    }
    case OutputFormat::svg:
      return render_svg(curves, plot);
  }
  throw ConfigError("unknown output format");
}

EffectCurve parse_curve_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("invalid json: ") + e.what());
  }
  return curve_from_json(j);
}

std::vector<EffectCurve> parse_curves_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("invalid json: ") + e.what());
  }
  if (j.is_object() && j.value("schema", "") == "bqte-curveset/1") {
    std::vector<EffectCurve> curves;
    for (const auto& cj : j.at("curves")) curves.push_back(curve_from_json(cj));
    return curves;
  }
  return {curve_from_json(j)};
}

std::string serialize_summary(const SummaryEffects& summary, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: {
      std::string out = "effect,estimate,ci_low,ci_high\n";
      auto row = [&](const char* name, const IntervalEstimate& e) {
        out += std::string(name) + "," + format_double(e.estimate) + "," +
               format_double(e.ci_low) + "," + format_double(e.ci_high) + "\n";
      };
      row("ate", summary.ate);
      row("rom", summary.rom);
      row("relative_reduction", summary.relative_reduction);
      return out;
    }
    case OutputFormat::json: {
      ordered_json j;
      j["schema"] = "bqte-summary/1";
      j["alpha"] = summary.alpha;
      j["ate"] = interval_to_json(summary.ate);
      j["rom"] = interval_to_json(summary.rom);
      j["relative_reduction"] = interval_to_json(summary.relative_reduction);
      j["provenance"] = provenance_to_json(summary.provenance);
      return j.dump(2) + "\n";
    }
    case OutputFormat::svg:
      throw ConfigError("summaries have no svg form");
  }
  throw ConfigError("unknown output format");
}

std::string serialize_report(const SimulationReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: {
      std::string out = "scenario,estimator,level,x,truth,mean_estimate,bias,rmse,coverage\n";
      for (const ArmReport& arm : report.arms)
        for (const GridPointStats& p : arm.points)
          out += report.scenario_name + "," + to_string(arm.kind) + "," +
                 format_double(p.level) + "," + format_double(p.x) + "," +
                 format_double(p.truth) + "," + format_double(p.mean_estimate) + "," +
                 format_double(p.bias) + "," + format_double(p.rmse) + "," +
                 format_double(p.coverage) + "\n";
      return out;
    }
    case OutputFormat::json: {
      ordered_json j;
      j["schema"] = "bqte-simulation/1";
      j["scenario"] = report.scenario_name;
      j["control_law"] = report.control_law;
      j["treatment"] = report.treatment;
      j["n_control"] = report.n_control;
      j["n_treatment"] = report.n_treatment;
      j["replications"] = report.replications;
      j["bootstrap_count"] = report.bootstrap_count;
      j["cutpoint_count"] = report.cutpoint_count;
      j["alpha"] = report.alpha;
      j["seed"] = report.seed;
      j["enforce_valid_range"] = report.enforce_valid_range;
      ordered_json arms = ordered_json::array();
      for (const ArmReport& arm : report.arms) {
        ordered_json aj;
        aj["estimator"] = to_string(arm.kind);
        ordered_json pts = ordered_json::array();
        for (const GridPointStats& p : arm.points) {
          ordered_json pj;
          pj["level"] = p.level;
          pj["x"] = p.x;
          pj["truth"] = p.truth;
          pj["mean_estimate"] = p.mean_estimate;
          pj["bias"] = p.bias;
          pj["rmse"] = p.rmse;
          pj["coverage"] = p.coverage;
          pts.push_back(std::move(pj));
        }
        aj["points"] = std::move(pts);
        arms.push_back(std::move(aj));
      }
      j["arms"] = std::move(arms);
      j["runtime_seconds"] = report.runtime_seconds;
      return j.dump(2) + "\n";
    }
    case OutputFormat::svg:
      throw ConfigError("simulation reports have no svg form");
  }
  throw ConfigError("unknown output format");
}

SimulationScenario parse_scenario_text(const std::string& text) {
  SimulationScenario sc;
  bool have_control = false, have_treatment = false, have_grid = false;
  std::stringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "name") {
      sc.name = value;
    } else if (key == "control") {
      sc.control_law = Law::parse(value);
      have_control = true;
    } else if (key == "treatment") {
      sc.treatment = parse_treatment(value);
      have_treatment = true;
    } else if (key == "n_control") {
      sc.n_control = parse_size(value, key);
    } else if (key == "n_treatment") {
      sc.n_treatment = parse_size(value, key);
    } else if (key == "replications") {
      sc.replications = parse_size(value, key);
    } else if (key == "grid_levels") {
      sc.grid_levels = parse_grid_levels(value);
      have_grid = true;
    } else if (key == "bootstrap") {
      sc.estimator.bootstrap_count = parse_size(value, key);
    } else if (key == "cutpoints") {
      sc.estimator.cutpoint_count = lower(value) == "auto" ? 0 : parse_size(value, key);
    } else if (key == "alpha") {
      sc.estimator.alpha = parse_real(value, key, line_no);
    } else if (key == "estimator") {
      sc.arms.clear();
      for (const std::string& tok : split(value, ','))
        sc.arms.push_back(estimator_kind_from_string(trim(tok)));
      if (sc.arms.empty()) throw ConfigError("estimator list is empty");
      sc.estimator.kind = sc.arms.front();
    } else if (key == "seed") {
      sc.seed = parse_size(value, key);
    } else if (key == "workers") {
      sc.workers = static_cast<unsigned>(parse_size(value, key));
    } else {
      throw ConfigError("scenario line " + std::to_string(line_no) + ": unknown key '" + key +
                        "'");
    }
  }
  if (!have_control) throw ConfigError("scenario is missing 'control'");
  if (!have_treatment) throw ConfigError("scenario is missing 'treatment'");
  if (!have_grid) {
    for (int i = 1; i <= 19; ++i) sc.grid_levels.push_back(0.05 * i);
  }
  return sc;
}

SimulationScenario load_scenario(const std::string& path) {
  return parse_scenario_text(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace bqte
