#include "fracreg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fracreg/svg.hpp"

namespace fracreg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

Date parse_date(const std::string& cell, long line_no) {
    Date d;
    char extra = 0;
    if (std::sscanf(cell.c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day,
                    &extra) != 3 ||
        d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw SchemaError("row " + std::to_string(line_no) +
                          ": malformed date '" + cell + "'");
    }
    return d;
}

double parse_price(const std::string& cell, long line_no) {
    const std::string t = trim(cell);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw SchemaError("row " + std::to_string(line_no) +
                          ": malformed price '" + cell + "'");
    }
    if (!(v > 0.0)) {
        throw SchemaError("row " + std::to_string(line_no) +
                          ": price must be positive");
    }
    return v;
}

std::string format6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

AvocadoType parse_avocado_type(const std::string& s) {
    if (s == "conventional") return AvocadoType::Conventional;
    if (s == "organic") return AvocadoType::Organic;
    throw DomainError("unknown avocado type '" + s + "'");
}

std::string to_string(AvocadoType t) {
    return t == AvocadoType::Conventional ? "conventional" : "organic";
}

Aggregate parse_aggregate(const std::string& s) {
    if (s == "median") return Aggregate::Median;
    if (s == "mean") return Aggregate::Mean;
    throw DomainError("unknown aggregate '" + s + "'");
}

std::string to_string(Aggregate a) {
    return a == Aggregate::Median ? "median" : "mean";
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) {
        throw DomainError("quantile_sorted: empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("quantile_sorted: p outside [0,1]");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<RawRecord> ingest_csv(const std::string& path,
                                  const std::string& region,
                                  AvocadoType type) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError("'" + path + "' is empty");
    }
    const std::vector<std::string> header = split_csv_line(line);
    auto column = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == name) return i;
        }
        throw SchemaError("missing column '" + name + "'");
    };
    const std::size_t col_date = column("Date");
    const std::size_t col_price = column("AveragePrice");
    const std::size_t col_type = column("type");
    const std::size_t col_region = column("region");
    const std::size_t max_col =
        std::max({col_date, col_price, col_type, col_region});

    const std::string wanted_type = to_string(type);
    std::vector<RawRecord> records;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= max_col) {
            throw SchemaError("row " + std::to_string(line_no) +
                              ": too few columns");
        }
        if (trim(fields[col_region]) != region ||
            trim(fields[col_type]) != wanted_type) {
            continue;
        }
        RawRecord rec;
        rec.date = parse_date(trim(fields[col_date]), line_no);
        rec.region = region;
        rec.type = type;
        rec.average_price = parse_price(fields[col_price], line_no);
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw EmptySelectionError("no rows match region '" + region +
                                  "' and type '" + wanted_type + "'");
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const RawRecord& a, const RawRecord& b) {
                         return a.date < b.date;
                     });
    return records;
}

MonthlySeries group_monthly(const std::vector<RawRecord>& records,
                            Aggregate agg) {
    if (records.empty()) {
        throw EmptySelectionError("group_monthly: no records");
    }
    // Chronological rank of (year, month); std::map keeps key order.
    std::map<std::pair<int, int>, std::vector<double>> buckets;
    for (const RawRecord& rec : records) {
        buckets[{rec.date.year, rec.date.month}].push_back(rec.average_price);
    }
    MonthlySeries out;
    int index = 0;
    for (auto& [key, prices] : buckets) {
        ++index;
        MonthlyGroup group;
        group.month_index = index;
        group.year = key.first;
        group.month = key.second;
        std::sort(prices.begin(), prices.end());
        group.prices = prices;
        group.median = quantile_sorted(prices, 0.5);
        group.q1 = quantile_sorted(prices, 0.25);
        group.q3 = quantile_sorted(prices, 0.75);
        const double iqr = group.q3 - group.q1;
        const double lo_fence = group.q1 - 1.5 * iqr;
        const double hi_fence = group.q3 + 1.5 * iqr;
        group.whisker_lo = group.q1;
        group.whisker_hi = group.q3;
        for (double p : prices) {
            if (p >= lo_fence) {
                group.whisker_lo = std::min(group.whisker_lo, p);
                break;  // prices sorted: first point inside the fence
            }
        }
        for (auto it = prices.rbegin(); it != prices.rend(); ++it) {
            if (*it <= hi_fence) {
                group.whisker_hi = std::max(group.whisker_hi, *it);
                break;
            }
        }
        double aggregate = group.median;
        if (agg == Aggregate::Mean) {
            double sum = 0.0;
            for (double p : prices) sum += p;
            aggregate = sum / static_cast<double>(prices.size());
        }
        out.series.x.push_back(static_cast<double>(index));
        out.series.y.push_back(aggregate);
        out.groups.push_back(std::move(group));
    }
    return out;
}

WorkflowResult run_workflow(const WorkflowConfig& config) {
    const std::vector<RawRecord> records =
        ingest_csv(config.csv_path, config.region, config.type);
    WorkflowResult result;
    result.monthly = group_monthly(records, config.agg);
    result.split = split_ordered(result.monthly.series, config.test_fraction);
    result.base = fit_poly(result.split.train, config.degree);
    const std::vector<double> grid =
        alpha_grid(config.alpha_min, config.alpha_max, config.alpha_step);
    std::vector<SweepRow> rows =
        sweep_alpha(result.base, result.split, grid, config.beta_mode);
    // Table order: descending effective degree.
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.effective_degree > b.effective_degree;
    });
    result.report.region = config.region;
    result.report.type = to_string(config.type);
    result.report.degree = config.degree;
    result.report.rows = rows;
    result.report.best = select_best(rows);

    const double best_alpha = result.report.best.row.alpha;
    if (config.beta_mode == BetaMode::Refit) {
        result.best_model =
            refit_per_alpha(result.split.train, config.degree, best_alpha);
    } else {
        result.best_model = FracModel{result.base, best_alpha};
    }
    return result;
}

void emit_sweep_csv(const SweepReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << "degree,alpha,r2_interp,r2_extrap\n";
    for (const SweepRow& row : report.rows) {
        out << format6(row.effective_degree) << ',' << format6(row.alpha)
            << ',' << format6(row.r2_interp) << ',' << format6(row.r2_extrap)
            << '\n';
    }
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

namespace {

constexpr double kPlotWidth = 640.0;
constexpr double kPlotHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 52.0;

svg::Scale make_x_scale(double lo, double hi) {
    return svg::Scale{lo, hi, kMarginLeft, kPlotWidth - kMarginRight};
}

svg::Scale make_y_scale(double lo, double hi) {
    return svg::Scale{lo, hi, kPlotHeight - kMarginBottom, kMarginTop};
}

const char* kTrainColor = "#1f77b4";
const char* kTestColor = "#d62728";
const char* kCurveColor = "#2ca02c";

void plot_boxes(const WorkflowResult& result, const std::string& path) {
    const auto& groups = result.monthly.groups;
    svg::Canvas canvas(kPlotWidth, kPlotHeight);
    double price_lo = groups.front().prices.front();
    double price_hi = price_lo;
    for (const MonthlyGroup& g : groups) {
        price_lo = std::min(price_lo, g.prices.front());
        price_hi = std::max(price_hi, g.prices.back());
    }
    const auto [y_lo, y_hi] = svg::padded_range(price_lo, price_hi);
    const svg::Scale xs =
        make_x_scale(0.0, static_cast<double>(groups.size()) + 1.0);
    const svg::Scale ys = make_y_scale(y_lo, y_hi);
    svg::draw_axes(canvas, xs, ys, "month", "price",
                   result.report.region + " (" + result.report.type +
                       "): monthly price distribution");
    const double box_half =
        0.35 * (xs(1.0) - xs(0.0));
    for (const MonthlyGroup& g : groups) {
        const double cx = xs(static_cast<double>(g.month_index));
        canvas.line(cx, ys(g.whisker_lo), cx, ys(g.q1), "#555555");
        canvas.line(cx, ys(g.q3), cx, ys(g.whisker_hi), "#555555");
        canvas.line(cx - box_half * 0.6, ys(g.whisker_lo),
                    cx + box_half * 0.6, ys(g.whisker_lo), "#555555");
        canvas.line(cx - box_half * 0.6, ys(g.whisker_hi),
                    cx + box_half * 0.6, ys(g.whisker_hi), "#555555");
        canvas.rect(cx - box_half, ys(g.q3), 2.0 * box_half,
                    ys(g.q1) - ys(g.q3), "#aec7e8", "#1f77b4");
        canvas.line(cx - box_half, ys(g.median), cx + box_half, ys(g.median),
                    "#1f77b4", 1.5);
        for (double p : g.prices) {
            if (p < g.whisker_lo || p > g.whisker_hi) {
                canvas.circle(cx, ys(p), 1.5, "#999999");
            }
        }
    }
    canvas.save(path);
}

void plot_r2_log(const WorkflowResult& result, const std::string& path) {
    svg::Canvas canvas(kPlotWidth, kPlotHeight);
    // Only rows where both values are positive can appear on a log scale.
    std::vector<const SweepRow*> rows;
    for (const SweepRow& row : result.report.rows) {
        if (row.r2_interp > 0.0 && row.r2_extrap > 0.0) rows.push_back(&row);
    }
    const std::string title = result.report.region +
                              ": log10 R2, interpolation vs extrapolation";
    if (rows.empty()) {
        const svg::Scale xs = make_x_scale(0.0, 1.0);
        const svg::Scale ys = make_y_scale(0.0, 1.0);
        svg::draw_axes(canvas, xs, ys, "effective degree", "log10(R2)", title);
        canvas.text(kPlotWidth / 2, kPlotHeight / 2,
                    "no rows with both R2 values positive", 14, "middle",
                    "#777777");
        canvas.save(path);
        return;
    }
    double deg_lo = rows.front()->effective_degree;
    double deg_hi = deg_lo;
    double log_lo = 0.0, log_hi = 0.0;
    bool first = true;
    for (const SweepRow* row : rows) {
        deg_lo = std::min(deg_lo, row->effective_degree);
        deg_hi = std::max(deg_hi, row->effective_degree);
        for (double v : {row->r2_interp, row->r2_extrap}) {
            const double lg = std::log10(v);
            if (first || lg < log_lo) log_lo = lg;
            if (first || lg > log_hi) log_hi = lg;
            first = false;
        }
    }
    const auto [xl, xh] = svg::padded_range(deg_lo, deg_hi);
    const auto [yl, yh] = svg::padded_range(log_lo, log_hi);
    const svg::Scale xs = make_x_scale(xl, xh);
    const svg::Scale ys = make_y_scale(yl, yh);
    svg::draw_axes(canvas, xs, ys, "effective degree", "log10(R2)", title);

    std::vector<std::pair<double, double>> interp_pts, extrap_pts;
    for (const SweepRow* row : rows) {
        interp_pts.emplace_back(xs(row->effective_degree),
                                ys(std::log10(row->r2_interp)));
        extrap_pts.emplace_back(xs(row->effective_degree),
                                ys(std::log10(row->r2_extrap)));
    }
    canvas.polyline(interp_pts, kTrainColor, 1.5);
    canvas.polyline(extrap_pts, kTestColor, 1.5);
    for (const auto& p : interp_pts) canvas.circle(p.first, p.second, 3, kTrainColor);
    for (const auto& p : extrap_pts) canvas.circle(p.first, p.second, 3, kTestColor);
    canvas.rect(kMarginLeft + 10, kMarginTop + 8, 10, 10, kTrainColor);
    canvas.text(kMarginLeft + 26, kMarginTop + 17, "interpolation", 11);
    canvas.rect(kMarginLeft + 10, kMarginTop + 24, 10, 10, kTestColor);
    canvas.text(kMarginLeft + 26, kMarginTop + 33, "extrapolation", 11);
    canvas.save(path);
}

void plot_model(const WorkflowResult& result, const FracModel& model,
                const std::string& label, const std::string& path) {
    svg::Canvas canvas(kPlotWidth, kPlotHeight);
    const Series& all = result.monthly.series;
    double y_min = all.y.front(), y_max = all.y.front();

    const double x_first = all.x.front();
    const double x_last = all.x.back();
    std::vector<std::pair<double, double>> curve;
    const int samples = 200;
    std::vector<double> curve_y(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        const double x = x_first + (x_last - x_first) * i / samples;
        curve_y[static_cast<std::size_t>(i)] = predict_frac(model, x);
    }
    for (double v : all.y) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
    }
    for (double v : curve_y) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
    }
    const auto [xl, xh] = svg::padded_range(x_first, x_last);
    const auto [yl, yh] = svg::padded_range(y_min, y_max);
    const svg::Scale xs = make_x_scale(xl, xh);
    const svg::Scale ys = make_y_scale(yl, yh);
    svg::draw_axes(canvas, xs, ys, "month", "price",
                   result.report.region + " (" + result.report.type + "): " +
                       label);

    // Train/test boundary marker.
    if (!result.split.test.x.empty()) {
        const double boundary =
            0.5 * (result.split.train.x.back() + result.split.test.x.front());
        canvas.line(xs(boundary), ys.pix_lo, xs(boundary), ys.pix_hi,
                    "#bbbbbb");
    }
    for (int i = 0; i <= samples; ++i) {
        const double x = x_first + (x_last - x_first) * i / samples;
        curve.emplace_back(xs(x), ys(curve_y[static_cast<std::size_t>(i)]));
    }
    canvas.polyline(curve, kCurveColor, 2.0);
    for (std::size_t i = 0; i < result.split.train.size(); ++i) {
        canvas.circle(xs(result.split.train.x[i]), ys(result.split.train.y[i]),
                      3, kTrainColor);
    }
    for (std::size_t i = 0; i < result.split.test.size(); ++i) {
        canvas.circle(xs(result.split.test.x[i]), ys(result.split.test.y[i]),
                      3, kTestColor);
    }
    canvas.rect(kMarginLeft + 10, kMarginTop + 8, 10, 10, kTrainColor);
    canvas.text(kMarginLeft + 26, kMarginTop + 17, "train (interpolation)", 11);
    canvas.rect(kMarginLeft + 10, kMarginTop + 24, 10, 10, kTestColor);
    canvas.text(kMarginLeft + 26, kMarginTop + 33, "test (extrapolation)", 11);
    canvas.save(path);
}

std::string alpha_label(double alpha, int degree) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "alpha=%.2f (degree %.2f)", alpha,
                  static_cast<double>(degree) - alpha);
    return buf;
}

}  // namespace

void emit_plots(const WorkflowResult& result, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + dir + "'");
    }
    const std::filesystem::path base(dir);
    plot_boxes(result, (base / "boxplot.svg").string());
    plot_r2_log(result, (base / "r2_log.svg").string());
    plot_model(result, FracModel{result.base, 0.0}, "alpha=0 model",
               (base / "model_base.svg").string());
    plot_model(result, result.best_model,
               alpha_label(result.best_model.alpha, result.report.degree),
               (base / "model_frac.svg").string());
}

void write_series_json(const StoredSeries& stored, const std::string& path) {
    nlohmann::json j;
    j["x"] = stored.series.x;
    j["y"] = stored.series.y;
    j["region"] = stored.region;
    j["type"] = stored.type;
    j["agg"] = stored.agg;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

StoredSeries read_series_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("'" + path + "': " + e.what());
    }
    StoredSeries stored;
    try {
        stored.series.x = j.at("x").get<std::vector<double>>();
        stored.series.y = j.at("y").get<std::vector<double>>();
        stored.region = j.at("region").get<std::string>();
        stored.type = j.at("type").get<std::string>();
        stored.agg = j.at("agg").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("'" + path + "': " + e.what());
    }
    if (stored.series.x.size() != stored.series.y.size()) {
        throw SchemaError("'" + path + "': x and y lengths differ");
    }
    return stored;
}

}  // namespace fracreg
