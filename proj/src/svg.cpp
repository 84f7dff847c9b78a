#include "fracreg/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fracreg/errors.hpp"

namespace fracreg {
namespace svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
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

}  // namespace

Canvas::Canvas(double width, double height) : width_(width), height_(height) {}

void Canvas::line(double x1, double y1, double x2, double y2,
                  const std::string& stroke, double stroke_width) {
    body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
             num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Canvas::rect(double x, double y, double w, double h,
                  const std::string& fill, const std::string& stroke) {
    body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
             num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill +
             "\" stroke=\"" + stroke + "\"/>\n";
}

void Canvas::circle(double cx, double cy, double r, const std::string& fill) {
    body_ += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
             num(r) + "\" fill=\"" + fill + "\"/>\n";
}

void Canvas::polyline(const std::vector<std::pair<double, double>>& pts,
                      const std::string& stroke, double stroke_width) {
    if (pts.empty()) return;
    body_ += "  <polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += ' ';
        body_ += num(pts[i].first) + "," + num(pts[i].second);
    }
    body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
             num(stroke_width) + "\"/>\n";
}

void Canvas::text(double x, double y, const std::string& content,
                  double font_size, const std::string& anchor,
                  const std::string& fill) {
    body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) +
             "\" font-family=\"sans-serif\" font-size=\"" + num(font_size) +
             "\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" +
             escape(content) + "</text>\n";
}

std::string Canvas::str() const {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" + num(width_) + "\" height=\"" + num(height_) +
           "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
    out += "  <rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" +
           num(height_) + "\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

void Canvas::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("svg: cannot open " + path + " for writing");
    }
    out << str();
    if (!out) {
        throw IoError("svg: failed writing " + path);
    }
}

std::pair<double, double> padded_range(double lo, double hi, double fraction) {
    if (hi < lo) std::swap(lo, hi);
    double span = hi - lo;
    if (span <= 0.0) {
        span = (lo == 0.0) ? 1.0 : std::abs(lo);
    }
    return {lo - fraction * span, hi + fraction * span};
}

std::vector<double> ticks(double lo, double hi, int count) {
    std::vector<double> out;
    if (count < 2) count = 2;
    for (int i = 0; i < count; ++i) {
        out.push_back(lo + (hi - lo) * i / (count - 1));
    }
    return out;
}

std::string format_tick(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void draw_axes(Canvas& canvas, const Scale& x_scale, const Scale& y_scale,
               const std::string& x_label, const std::string& y_label,
               const std::string& title) {
    const double left = x_scale.pix_lo;
    const double right = x_scale.pix_hi;
    const double bottom = y_scale.pix_lo;
    const double top = y_scale.pix_hi;

    canvas.line(left, bottom, right, bottom, "#000000");
    canvas.line(left, bottom, left, top, "#000000");

    for (double t : ticks(x_scale.data_lo, x_scale.data_hi, 6)) {
        const double px = x_scale(t);
        canvas.line(px, bottom, px, bottom + 4, "#000000");
        canvas.text(px, bottom + 16, format_tick(t), 10, "middle");
    }
    for (double t : ticks(y_scale.data_lo, y_scale.data_hi, 6)) {
        const double py = y_scale(t);
        canvas.line(left - 4, py, left, py, "#000000");
        canvas.text(left - 7, py + 3, format_tick(t), 10, "end");
    }
    canvas.text((left + right) / 2, bottom + 32, x_label, 12, "middle");
    canvas.text(14, (top + bottom) / 2, y_label, 12, "middle");
    canvas.text((left + right) / 2, top - 10, title, 13, "middle");
}

}  // namespace svg
}  // namespace fracreg
