#pragma once

#include <string>
#include <vector>

#include "ric/body.hpp"
#include "ric/extremizer.hpp"
#include "ric/flow.hpp"
#include "ric/grid.hpp"
#include "ric/infconv.hpp"
#include "ric/profile.hpp"
#include "ric/transforms.hpp"

namespace ric {

// Shortest exact decimal (%.17g); infinities spell "inf" / "-inf".  NaN has
// no representation in any artifact and throws.
std::string format_double(double v);
double parse_double(const std::string& s);

std::string transform_kind_name(TransformKind kind);
TransformKind transform_kind_from_name(const std::string& name);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-joined rows, "\n" line ends, no quoting: every cell the writers
// produce is a number, a name, or a verdict, never a comma.
std::string to_csv(const CsvTable& table);

CsvTable rearrange_csv(const std::vector<double>& lambda, const std::vector<double>& mass_f,
                       const std::vector<double>& mass_rearranged,
                       const std::vector<double>& error_bound,
                       const std::vector<bool>& verdict);
CsvTable comparison_csv(const ComparisonReport& rep);
CsvTable transform_csv(const TransformReport& rep);
// Rows carry the per-state verdict: convex samples, mass within kFlowMassTol
// of the initial state, and alpha not dropping below the previous state by
// more than the scaled kFlowAlphaTol.  The residual column is blank where no
// residual was computed (t = 0, or residuals disabled).
CsvTable flow_csv(const FlowTrace& trace);
CsvTable body_csv(const SupportBody2D& k);  // angle, support

// {"kind": "pl_profile", "knots": [...], "values": [...], "terminal_slope": s}
// and {"kind": "grid1d", "domain": [lo, hi], "values": [...]}; both round-trip.
std::string profile_json(const PLProfile& p);
PLProfile profile_from_json(const std::string& text);
std::string grid1d_json(const GridFunction1D& g);
GridFunction1D grid1d_from_json(const std::string& text);

std::string comparison_summary_json(const ComparisonReport& rep);
std::string transform_summary_json(const TransformReport& rep);
std::string flow_summary_json(const FlowTrace& trace);
std::string search_result_json(const SearchResult& res);

struct Series {
  std::string name;
  std::vector<double> x, y;
};

// Self-contained 640x420 line plot: axes, ~5 ticks a side, fixed color cycle,
// legend.  Non-finite points break the polyline.  The generation timestamp is
// off by default so identical inputs yield identical bytes.
std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series,
                          bool timestamp = false);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ric
