#pragma once

#include <string>
#include <vector>

#include "dicke/sweep.hpp"

namespace dicke {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Metadata as leading `# key = value` lines, then a header row and data rows.
/// Throws IoError naming the path.
void emit_csv(const SweepTable& table, const std::string& path);
std::string to_csv(const SweepTable& table);

SweepTable parse_csv(const std::string& text);
SweepTable read_csv(const std::string& path);

struct Curve {
    std::string column;
    std::string label;
    bool dashed = false;
};

struct PanelSpec {
    std::string x_column = "g";
    std::string title;
    std::string x_label = "g";
    std::string y_label;
    std::vector<Curve> curves;
    std::vector<Curve> inset;  ///< optional inset panel, empty for none
    std::string inset_label;
    std::vector<double> markers;  ///< vertical guide lines at these x
};

/// Static SVG 1.1 line plot. Throws SpecificationError for missing columns
/// and IoError on write failure. Output bytes depend only on the inputs.
void emit_svg(const SweepTable& table, const std::string& path, const PanelSpec& panel);
std::string to_svg(const SweepTable& table, const PanelSpec& panel);

PanelSpec fig1_panel(double critical);
PanelSpec fig2_panel(double critical);

}  // namespace dicke
