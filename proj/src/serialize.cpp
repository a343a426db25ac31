#include "ric/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ric {
namespace {

using ordered_json = nlohmann::ordered_json;

// JSON value for a double: finite numbers stay numbers, the infinities become
// the strings "inf" / "-inf" so a parser never meets an IEEE literal.
ordered_json json_number(double v) {
  require(!std::isnan(v), "serialize: NaN has no representation");
  if (!is_finite(v)) return v > 0 ? ordered_json("inf") : ordered_json("-inf");
  return ordered_json(v);
}

double number_from_json(const ordered_json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  require(j.is_number(), "serialize: expected a number or 'inf'");
  return j.get<double>();
}

ordered_json json_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

std::vector<double> array_from_json(const ordered_json& j) {
  require(j.is_array(), "serialize: expected an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(number_from_json(e));
  return v;
}

ordered_json parse_json(const std::string& text) {
  return ordered_json::parse(text);  // throws nlohmann's parse_error on bad input
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* verdict_name(bool pass) { return pass ? "pass" : "fail"; }

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Round tick steps to 1/2/5 times a power of ten.
double nice_step(double raw) {
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double m = raw / mag;
  if (m <= 1.0) return mag;
  if (m <= 2.0) return 2.0 * mag;
  if (m <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  double step = nice_step((hi - lo) / std::max(1, target));
  double first = std::ceil(lo / step) * step;
  std::vector<double> t;
  for (double v = first; v <= hi + 0.5 * step; v += step) {
    if (std::abs(v) < 1e-12 * step) v = 0.0;  // kill -0 labels
    if (v >= lo - 1e-9 * step && v <= hi + 1e-9 * step) t.push_back(v);
    if (t.size() > 12) break;
  }
  return t;
}

}  // namespace

std::string format_double(double v) {
  require(!std::isnan(v), "format_double: NaN has no representation");
  if (!is_finite(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  require(!s.empty(), "parse_double: empty token");
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  require(end == s.c_str() + s.size(), "parse_double: trailing characters in '" + s + "'");
  require(!std::isnan(v), "parse_double: NaN is not accepted");
  return v;
}

std::string transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::Legendre: return "legendre";
    case TransformKind::Polar: return "polar";
    case TransformKind::T: return "t";
  }
  require(false, "transform_kind_name: unknown kind");
  return {};
}

TransformKind transform_kind_from_name(const std::string& name) {
  if (name == "legendre") return TransformKind::Legendre;
  if (name == "polar") return TransformKind::Polar;
  if (name == "t") return TransformKind::T;
  require(false, "transform_kind_from_name: unknown name '" + name + "'");
  return TransformKind::Legendre;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto join = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(table.header);
  for (const auto& row : table.rows) {
    require(row.size() == table.header.size(), "to_csv: row width mismatch");
    join(row);
  }
  return out;
}

CsvTable rearrange_csv(const std::vector<double>& lambda, const std::vector<double>& mass_f,
                       const std::vector<double>& mass_rearranged,
                       const std::vector<double>& error_bound,
                       const std::vector<bool>& verdict) {
  require(mass_f.size() == lambda.size() && mass_rearranged.size() == lambda.size() &&
              error_bound.size() == lambda.size() && verdict.size() == lambda.size(),
          "rearrange_csv: column length mismatch");
  CsvTable t;
  t.header = {"lambda", "mass_f", "mass_rearranged", "error_bound", "verdict"};
  for (std::size_t i = 0; i < lambda.size(); ++i)
    t.rows.push_back({format_double(lambda[i]), format_double(mass_f[i]),
                      format_double(mass_rearranged[i]), format_double(error_bound[i]),
                      verdict_name(verdict[i])});
  return t;
}

CsvTable comparison_csv(const ComparisonReport& rep) {
  CsvTable t;
  t.header = {"lambda", "mass_lhs", "mass_rhs", "slack", "verdict"};
  for (const auto& row : rep.rows)
    t.rows.push_back({format_double(row.lambda), format_double(row.mass_lhs),
                      format_double(row.mass_rhs), format_double(row.slack),
                      verdict_name(row.pass)});
  return t;
}

CsvTable transform_csv(const TransformReport& rep) {
  CsvTable t;
  t.header = {"lambda", "mass_lhs", "mass_rhs", "slack", "verdict"};
  for (const auto& row : rep.rows)
    t.rows.push_back({format_double(row.lambda), format_double(row.mass_lhs),
                      format_double(row.mass_rhs), format_double(row.slack),
                      verdict_name(row.pass)});
  return t;
}

CsvTable flow_csv(const FlowTrace& trace) {
  CsvTable t;
  t.header = {"t", "mass", "alpha", "residual", "verdict"};
  if (trace.states.empty()) return t;
  const double m0 = trace.states.front().mass;
  const double alpha_scale = std::max(1.0, std::abs(trace.states.front().alpha));
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    const FlowState& s = trace.states[k];
    bool ok = s.convex_ok;
    if (m0 > 0.0) ok = ok && std::abs(s.mass - m0) / m0 <= kFlowMassTol;
    if (k > 0)
      ok = ok && s.alpha - trace.states[k - 1].alpha >= -kFlowAlphaTol * alpha_scale;
    // residuals align with the t > 0 states, in order.
    std::string residual;
    if (k > 0 && k - 1 < trace.residuals.size())
      residual = format_double(trace.residuals[k - 1]);
    t.rows.push_back({format_double(s.t), format_double(s.mass), format_double(s.alpha),
                      residual, verdict_name(ok)});
  }
  return t;
}

CsvTable body_csv(const SupportBody2D& k) {
  k.validate();
  CsvTable t;
  t.header = {"angle", "support"};
  for (int j = 0; j < k.m; ++j)
    t.rows.push_back({format_double(k.angle(j)), format_double(k.h[j])});
  return t;
}

std::string profile_json(const PLProfile& p) {
  p.validate();
  ordered_json j;
  j["kind"] = "pl_profile";
  j["knots"] = json_array(p.r);
  j["values"] = json_array(p.v);
  j["terminal_slope"] = json_number(p.tail_slope);
  return dump(j);
}

PLProfile profile_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  require(j.value("kind", "") == "pl_profile", "profile_from_json: kind mismatch");
  PLProfile p;
  p.r = array_from_json(j.at("knots"));
  p.v = array_from_json(j.at("values"));
  p.tail_slope = number_from_json(j.at("terminal_slope"));
  p.validate();
  return p;
}

std::string grid1d_json(const GridFunction1D& g) {
  ordered_json j;
  j["kind"] = "grid1d";
  j["domain"] = {g.axis().lo, g.axis().hi};
  j["values"] = json_array(g.values());
  return dump(j);
}

GridFunction1D grid1d_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  require(j.value("kind", "") == "grid1d", "grid1d_from_json: kind mismatch");
  const auto& dom = j.at("domain");
  require(dom.is_array() && dom.size() == 2, "grid1d_from_json: domain must be [lo, hi]");
  std::vector<double> values = array_from_json(j.at("values"));
  Axis axis{number_from_json(dom[0]), number_from_json(dom[1]), (int)values.size()};
  return GridFunction1D(axis, std::move(values));
}

std::string comparison_summary_json(const ComparisonReport& rep) {
  std::size_t failures = 0;
  for (const auto& row : rep.rows)
    if (!row.pass) ++failures;
  ordered_json j;
  j["kind"] = "comparison_summary";
  j["rows"] = rep.rows.size();
  j["failures"] = failures;
  j["kappa"] = json_number(rep.kappa);
  j["delta"] = json_number(rep.delta);
  j["pass"] = rep.pass;
  return dump(j);
}

std::string transform_summary_json(const TransformReport& rep) {
  std::size_t failures = 0;
  for (const auto& row : rep.rows)
    if (!row.pass) ++failures;
  ordered_json j;
  j["kind"] = "transform_summary";
  j["transform"] = transform_kind_name(rep.kind);
  j["rows"] = rep.rows.size();
  j["failures"] = failures;
  j["kappa"] = json_number(rep.kappa);
  j["pass"] = rep.pass;
  return dump(j);
}

std::string flow_summary_json(const FlowTrace& trace) {
  ordered_json j;
  j["kind"] = "flow_summary";
  ordered_json t = ordered_json::array(), mass = ordered_json::array(),
               alpha = ordered_json::array(), product = ordered_json::array();
  for (const auto& s : trace.states) {
    t.push_back(json_number(s.t));
    mass.push_back(json_number(s.mass));
    alpha.push_back(json_number(s.alpha));
    product.push_back(json_number(s.product));
  }
  j["t"] = std::move(t);
  j["mass"] = std::move(mass);
  j["alpha"] = std::move(alpha);
  j["product"] = std::move(product);
  j["residuals"] = json_array(trace.residuals);
  j["mass_rel_drift"] = json_number(trace.mass_rel_drift);
  j["alpha_min_step"] = json_number(trace.alpha_min_step);
  j["mass_ok"] = trace.mass_ok;
  j["alpha_ok"] = trace.alpha_ok;
  j["pass"] = trace.pass;
  return dump(j);
}

std::string search_result_json(const SearchResult& res) {
  ordered_json j;
  j["kind"] = "search_result";
  j["value"] = json_number(res.best_value);
  ordered_json prof;
  prof["kind"] = "pl_profile";
  prof["knots"] = json_array(res.best.r);
  prof["values"] = json_array(res.best.v);
  prof["terminal_slope"] = json_number(res.best.tail_slope);
  j["profile"] = std::move(prof);
  j["history"] = json_array(res.history);
  j["evaluations"] = res.evaluations;
  j["best_restart"] = res.best_restart;
  j["normalization_residual"] = json_number(res.normalization_residual);
  return dump(j);
}

std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series,
                          bool timestamp) {
  // Data window over the finite points of every series.
  double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
  for (const auto& s : series) {
    require(s.x.size() == s.y.size(), "svg_line_plot: series length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!is_finite(s.x[i]) || !is_finite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  require(is_finite(xlo) && is_finite(ylo), "svg_line_plot: no finite data points");
  auto pad = [](double& lo, double& hi) {
    double w = hi - lo;
    if (w <= 0.0) w = std::max(1.0, std::abs(lo));
    lo -= 0.05 * w;
    hi += 0.05 * w;
  };
  pad(xlo, xhi);
  pad(ylo, yhi);

  const double px0 = 70, px1 = 620, py0 = 40, py1 = 370;
  auto sx = [&](double x) { return px0 + (x - xlo) / (xhi - xlo) * (px1 - px0); };
  auto sy = [&](double y) { return py1 - (y - ylo) / (yhi - ylo) * (py1 - py0); };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#17becf"};
  constexpr int kColorCount = 6;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
         "viewBox=\"0 0 640 420\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"420\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"345\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">" + xml_escape(title) + "</text>\n";

  for (double v : nice_ticks(xlo, xhi, 5)) {
    std::string X = fmt("%.2f", sx(v));
    svg += "<line x1=\"" + X + "\" y1=\"" + fmt("%.2f", py0) + "\" x2=\"" + X + "\" y2=\"" +
           fmt("%.2f", py1) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + X + "\" y=\"" + fmt("%.2f", py1 + 16) +
           "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" +
           fmt("%.6g", v) + "</text>\n";
  }
  for (double v : nice_ticks(ylo, yhi, 5)) {
    std::string Y = fmt("%.2f", sy(v));
    svg += "<line x1=\"" + fmt("%.2f", px0) + "\" y1=\"" + Y + "\" x2=\"" + fmt("%.2f", px1) +
           "\" y2=\"" + Y + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", px0 - 6) + "\" y=\"" + Y +
           "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" "
           "dominant-baseline=\"middle\">" + fmt("%.6g", v) + "</text>\n";
  }
  svg += "<rect x=\"" + fmt("%.2f", px0) + "\" y=\"" + fmt("%.2f", py0) + "\" width=\"" +
         fmt("%.2f", px1 - px0) + "\" height=\"" + fmt("%.2f", py1 - py0) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"345\" y=\"404\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">" + xml_escape(xlabel) + "</text>\n";
  svg += "<text x=\"18\" y=\"205\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 205)\">" + xml_escape(ylabel) +
         "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kColors[si % kColorCount];
    const Series& s = series[si];
    // Runs of finite points; singletons become dots.
    std::size_t i = 0;
    while (i < s.x.size()) {
      while (i < s.x.size() && !(is_finite(s.x[i]) && is_finite(s.y[i]))) ++i;
      std::size_t j = i;
      while (j < s.x.size() && is_finite(s.x[j]) && is_finite(s.y[j])) ++j;
      if (j == i) break;
      if (j - i == 1) {
        svg += "<circle cx=\"" + fmt("%.2f", sx(s.x[i])) + "\" cy=\"" + fmt("%.2f", sy(s.y[i])) +
               "\" r=\"2\" fill=\"" + color + "\"/>\n";
      } else {
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = i; k < j; ++k) {
          if (k > i) svg += ' ';
          svg += fmt("%.2f", sx(s.x[k])) + "," + fmt("%.2f", sy(s.y[k]));
        }
        svg += "\"/>\n";
      }
      i = j;
    }
  }

  double ly = py0 + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    if (series[si].name.empty()) continue;
    const char* color = kColors[si % kColorCount];
    svg += "<line x1=\"" + fmt("%.2f", px1 - 150) + "\" y1=\"" + fmt("%.2f", ly - 4) +
           "\" x2=\"" + fmt("%.2f", px1 - 126) + "\" y2=\"" + fmt("%.2f", ly - 4) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", px1 - 120) + "\" y=\"" + fmt("%.2f", ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(series[si].name) +
           "</text>\n";
    ly += 16;
  }

  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    svg += std::string("<!-- generated ") + buf + " -->\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.is_open(), "write_text_file: cannot open '" + path + "'");
  out.write(content.data(), (std::streamsize)content.size());
  require(out.good(), "write_text_file: write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), "read_text_file: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ric
