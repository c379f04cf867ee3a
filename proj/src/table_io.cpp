#include "dicke/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke {

std::string format_double(double x) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, result.ptr);
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata) out += "# " + key + " = " + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += "\n";
    }
    return out;
}

namespace {

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path, "cannot open for writing");
    os << contents;
    os.flush();
    if (!os) throw IoError(path, "write failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_number(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    // from_chars rejects a leading '+' and spells infinities "inf".
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last)
        throw SpecificationError("malformed number '" + text + "' in CSV");
    return value;
}

}  // namespace

void emit_csv(const SweepTable& table, const std::string& path) { write_file(path, to_csv(table)); }

SweepTable parse_csv(const std::string& text) {
    SweepTable table;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find(" = ");
            if (eq == std::string::npos) throw SpecificationError("malformed metadata line '" + line + "'");
            table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        if (!have_header) {
            table.columns = split(line, ',');
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& field : split(line, ',')) row.push_back(parse_number(field));
        if (row.size() != table.columns.size())
            throw SpecificationError("row width " + std::to_string(row.size()) + " does not match header");
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw SpecificationError("CSV has no header row");
    return table;
}

SweepTable read_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path, "cannot open for reading");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_csv(buf.str());
}

// --- SVG -------------------------------------------------------------------

namespace {

constexpr double svg_width = 640.0;
constexpr double svg_height = 480.0;
constexpr const char* palette[] = {"#1f4e9c", "#c0392b", "#27803b", "#8e44ad", "#d35400", "#2c3e50"};

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double x) {
        if (!std::isfinite(x)) return;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    void finish(double pad) {
        if (!std::isfinite(lo)) lo = hi = 0.0;
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double extra = pad * (hi - lo);
        lo -= extra;
        hi += extra;
    }
};

struct Box {
    double x, y, w, h;
};

// Draws axes, ticks and curves of one panel into `out`.
void draw_panel(std::string& out, const Box& box, const std::vector<double>& xs,
                const std::vector<std::vector<double>>& ys, const std::vector<Curve>& curves,
                const std::vector<double>& markers, const std::string& x_label, const std::string& y_label,
                double font, bool legend) {
    Range xr;
    Range yr;
    for (double x : xs) xr.include(x);
    for (const auto& col : ys)
        for (double y : col) yr.include(y);
    const double x_lo = xr.lo;
    const double x_hi = xr.hi > xr.lo ? xr.hi : xr.lo + 1.0;
    yr.finish(0.05);

    auto px = [&](double x) { return box.x + (x - x_lo) / (x_hi - x_lo) * box.w; };
    auto py = [&](double y) { return box.y + box.h - (y - yr.lo) / (yr.hi - yr.lo) * box.h; };

    out += "<rect x=\"" + fmt("%.2f", box.x) + "\" y=\"" + fmt("%.2f", box.y) + "\" width=\"" +
           fmt("%.2f", box.w) + "\" height=\"" + fmt("%.2f", box.h) +
           "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

    constexpr int ticks = 5;
    for (int t = 0; t < ticks; ++t) {
        const double fx = x_lo + (x_hi - x_lo) * t / (ticks - 1);
        const double fy = yr.lo + (yr.hi - yr.lo) * t / (ticks - 1);
        out += "<line x1=\"" + fmt("%.2f", px(fx)) + "\" y1=\"" + fmt("%.2f", box.y + box.h) + "\" x2=\"" +
               fmt("%.2f", px(fx)) + "\" y2=\"" + fmt("%.2f", box.y + box.h - 4) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt("%.2f", px(fx)) + "\" y=\"" + fmt("%.2f", box.y + box.h + font + 2) +
               "\" font-size=\"" + fmt("%.0f", font) + "\" text-anchor=\"middle\">" + fmt("%.3g", fx) + "</text>\n";
        out += "<line x1=\"" + fmt("%.2f", box.x) + "\" y1=\"" + fmt("%.2f", py(fy)) + "\" x2=\"" +
               fmt("%.2f", box.x + 4) + "\" y2=\"" + fmt("%.2f", py(fy)) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt("%.2f", box.x - 4) + "\" y=\"" + fmt("%.2f", py(fy) + font / 3) +
               "\" font-size=\"" + fmt("%.0f", font) + "\" text-anchor=\"end\">" + fmt("%.3g", fy) + "</text>\n";
    }

    for (double m : markers) {
        if (m < x_lo || m > x_hi) continue;
        out += "<line x1=\"" + fmt("%.2f", px(m)) + "\" y1=\"" + fmt("%.2f", box.y) + "\" x2=\"" +
               fmt("%.2f", px(m)) + "\" y2=\"" + fmt("%.2f", box.y + box.h) +
               "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n";
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = palette[c % std::size(palette)];
        std::string points;
        auto flush = [&] {
            if (points.empty()) return;
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"";
            if (curves[c].dashed) out += " stroke-dasharray=\"6,4\"";
            out += " points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(ys[c][i]) || !std::isfinite(xs[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fmt("%.2f", px(xs[i])) + "," + fmt("%.2f", py(ys[c][i]));
        }
        flush();
        if (legend) {
            const double ly = box.y + 14 + 16 * static_cast<double>(c);
            out += "<line x1=\"" + fmt("%.2f", box.x + box.w - 120) + "\" y1=\"" + fmt("%.2f", ly) + "\" x2=\"" +
                   fmt("%.2f", box.x + box.w - 96) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color +
                   "\" stroke-width=\"1.5\"" + (curves[c].dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
            out += "<text x=\"" + fmt("%.2f", box.x + box.w - 90) + "\" y=\"" + fmt("%.2f", ly + 4) +
                   "\" font-size=\"" + fmt("%.0f", font) + "\">" + xml_escape(curves[c].label) + "</text>\n";
        }
    }

    out += "<text x=\"" + fmt("%.2f", box.x + box.w / 2) + "\" y=\"" + fmt("%.2f", box.y + box.h + 2 * font + 6) +
           "\" font-size=\"" + fmt("%.0f", font) + "\" text-anchor=\"middle\">" + xml_escape(x_label) + "</text>\n";
    if (!y_label.empty()) {
        const double yx = box.x - 4.2 * font;
        const double yy = box.y + box.h / 2;
        out += "<text x=\"" + fmt("%.2f", yx) + "\" y=\"" + fmt("%.2f", yy) + "\" font-size=\"" + fmt("%.0f", font) +
               "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fmt("%.2f", yx) + " " + fmt("%.2f", yy) +
               ")\">" + xml_escape(y_label) + "</text>\n";
    }
}

std::vector<std::vector<double>> gather(const SweepTable& table, const std::vector<Curve>& curves) {
    std::vector<std::vector<double>> out;
    for (const auto& c : curves) out.push_back(table.column(c.column));
    return out;
}

}  // namespace

std::string to_svg(const SweepTable& table, const PanelSpec& panel) {
    if (panel.curves.empty()) throw SpecificationError("panel has no curves");
    // Column lookups throw SpecificationError before any output is produced.
    const std::vector<double> xs = table.column(panel.x_column);
    const auto main_ys = gather(table, panel.curves);
    const auto inset_ys = gather(table, panel.inset);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt("%.0f", svg_width) +
           "\" height=\"" + fmt("%.0f", svg_height) + "\" viewBox=\"0 0 " + fmt("%.0f", svg_width) + " " +
           fmt("%.0f", svg_height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!panel.title.empty()) {
        out += "<text x=\"" + fmt("%.2f", svg_width / 2) + "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" +
               xml_escape(panel.title) + "</text>\n";
    }
    const Box main{80.0, 40.0, svg_width - 110.0, svg_height - 100.0};
    draw_panel(out, main, xs, main_ys, panel.curves, panel.markers, panel.x_label, panel.y_label, 12.0, true);
    if (!panel.inset.empty()) {
        const Box inset{main.x + 55.0, main.y + 18.0, main.w * 0.36, main.h * 0.34};
        draw_panel(out, inset, xs, inset_ys, panel.inset, panel.markers, panel.x_label, panel.inset_label, 9.0,
                   false);
    }
    out += "</svg>\n";
    return out;
}

void emit_svg(const SweepTable& table, const std::string& path, const PanelSpec& panel) {
    const std::string doc = to_svg(table, panel);
    write_file(path, doc);
}

PanelSpec fig1_panel(double critical) {
    PanelSpec panel;
    panel.title = "MQS energy branches";
    panel.y_label = "E/N";
    panel.curves = {{"e_minus_per_atom", "E-/N", false}, {"e_plus_per_atom", "E+/N", true}};
    panel.inset = {{"jz_per_atom", "<Jz>/N", false}};
    panel.inset_label = "<Jz>/N";
    panel.markers = {critical};
    return panel;
}

PanelSpec fig2_panel(double critical) {
    PanelSpec panel;
    panel.title = "Geometric phase";
    panel.y_label = "gamma/N";
    panel.curves = {{"gamma_per_atom", "gamma/N", false}};
    panel.inset = {{"dgamma_dg_per_atom", "dgamma/(N dg)", false}};
    panel.inset_label = "dgamma/(N dg)";
    panel.markers = {critical};
    return panel;
}

}  // namespace dicke
