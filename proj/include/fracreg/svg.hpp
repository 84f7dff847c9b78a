#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracreg {
namespace svg {

/// Minimal deterministic SVG 1.1 document builder. Coordinates are emitted
/// with fixed precision so identical inputs produce byte-identical files.
class Canvas {
public:
    Canvas(double width, double height);

    void line(double x1, double y1, double x2, double y2,
              const std::string& stroke, double stroke_width = 1.0);
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none");
    void circle(double cx, double cy, double r, const std::string& fill);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double stroke_width = 1.0);
    void text(double x, double y, const std::string& content,
              double font_size = 12.0, const std::string& anchor = "start",
              const std::string& fill = "#000000");

    double width() const { return width_; }
    double height() const { return height_; }

    std::string str() const;
    void save(const std::string& path) const;  // throws IoError

private:
    double width_;
    double height_;
    std::string body_;
};

/// Linear map from a data interval onto a pixel interval.
struct Scale {
    double data_lo = 0.0;
    double data_hi = 1.0;
    double pix_lo = 0.0;
    double pix_hi = 1.0;

    double operator()(double v) const {
        return pix_lo +
               (v - data_lo) / (data_hi - data_lo) * (pix_hi - pix_lo);
    }
};

/// Expands [lo, hi] by a small margin (and handles the degenerate lo == hi).
std::pair<double, double> padded_range(double lo, double hi,
                                       double fraction = 0.06);

/// Evenly spaced tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi, int count);

/// Compact numeric label (%.6g trimmed).
std::string format_tick(double v);

/// Draws the plot frame, tick marks, tick labels, and axis titles for the
/// given scales. Assumes y pixels grow downward (pix_lo = bottom).
void draw_axes(Canvas& canvas, const Scale& x_scale, const Scale& y_scale,
               const std::string& x_label, const std::string& y_label,
               const std::string& title);

}  // namespace svg
}  // namespace fracreg
