#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fracreg/pipeline.hpp"

using namespace fracreg;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fracreg_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kSmallCsv =
    ",Date,AveragePrice,Total Volume,type,year,region\n"
    "0,2015-01-04,1.22,40873.28,conventional,2015,TestCity\n"
    "1,2015-01-11,1.24,41195.08,conventional,2015,TestCity\n"
    "2,2015-01-18,1.17,44511.28,conventional,2015,TestCity\n"
    "3,2015-02-01,1.29,40873.28,conventional,2015,TestCity\n"
    "4,2015-02-08,1.35,41195.08,conventional,2015,TestCity\n"
    "5,2015-03-01,1.05,44511.28,conventional,2015,TestCity\n"
    "6,2015-01-04,1.80,1000.00,organic,2015,TestCity\n"
    "7,2015-01-04,0.95,99999.99,conventional,2015,OtherCity\n";

RawRecord rec(int y, int m, int d, double price) {
    RawRecord r;
    r.date = Date{y, m, d};
    r.region = "TestCity";
    r.type = AvocadoType::Conventional;
    r.average_price = price;
    return r;
}

}  // namespace

TEST_CASE("ingest_csv filters region and type and sorts by date") {
    TempDir tmp;
    const std::string path = write_file(tmp.path / "small.csv", kSmallCsv);
    const auto records =
        ingest_csv(path, "TestCity", AvocadoType::Conventional);
    REQUIRE(records.size() == 6);
    CHECK(records.front().date == Date{2015, 1, 4});
    CHECK(records.back().date == Date{2015, 3, 1});
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(!(records[i].date < records[i - 1].date));
    }
    CHECK(records[0].average_price == doctest::Approx(1.22));

    const auto organics = ingest_csv(path, "TestCity", AvocadoType::Organic);
    REQUIRE(organics.size() == 1);
    CHECK(organics[0].average_price == doctest::Approx(1.80));
}

TEST_CASE("ingest_csv error paths") {
    TempDir tmp;
    CHECK_THROWS_AS(ingest_csv((tmp.path / "missing.csv").string(), "X",
                               AvocadoType::Conventional),
                    IoError);

    const std::string no_region = write_file(
        tmp.path / "nocol.csv", "Date,AveragePrice,type\n2015-01-04,1.0,conventional\n");
    CHECK_THROWS_AS(ingest_csv(no_region, "X", AvocadoType::Conventional),
                    SchemaError);

    const std::string path = write_file(tmp.path / "small.csv", kSmallCsv);
    CHECK_THROWS_AS(ingest_csv(path, "Atlantis", AvocadoType::Conventional),
                    EmptySelectionError);

    const std::string bad_price = write_file(
        tmp.path / "badprice.csv",
        "Date,AveragePrice,type,region\n"
        "2015-01-04,1.10,conventional,A\n"
        "2015-01-11,oops,conventional,A\n");
    try {
        ingest_csv(bad_price, "A", AvocadoType::Conventional);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }

    const std::string bad_date = write_file(
        tmp.path / "baddate.csv",
        "Date,AveragePrice,type,region\n"
        "2015-13-04,1.10,conventional,A\n");
    CHECK_THROWS_AS(ingest_csv(bad_date, "A", AvocadoType::Conventional),
                    SchemaError);

    const std::string negative = write_file(
        tmp.path / "neg.csv",
        "Date,AveragePrice,type,region\n"
        "2015-01-04,-1.10,conventional,A\n");
    CHECK_THROWS_AS(ingest_csv(negative, "A", AvocadoType::Conventional),
                    SchemaError);
}

TEST_CASE("group_monthly: one group per present month, chronological x") {
    std::vector<RawRecord> records{
        rec(2015, 1, 4, 1.0),  rec(2015, 1, 11, 2.0), rec(2015, 2, 1, 3.0),
        rec(2015, 2, 8, 4.0),  rec(2015, 3, 1, 9.0),
    };
    const MonthlySeries monthly = group_monthly(records, Aggregate::Median);
    REQUIRE(monthly.groups.size() == 3);
    CHECK(monthly.series.x == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(monthly.series.y == std::vector<double>{1.5, 3.5, 9.0});
}

TEST_CASE("group_monthly: months with a data gap still get consecutive x") {
    std::vector<RawRecord> records{
        rec(2015, 1, 4, 1.0),
        rec(2015, 4, 4, 2.0),  // February/March missing
        rec(2015, 5, 4, 3.0),
    };
    const MonthlySeries monthly = group_monthly(records, Aggregate::Median);
    CHECK(monthly.series.x == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("median vs mean on a skewed group") {
    std::vector<RawRecord> records{
        rec(2015, 1, 1, 1.0), rec(2015, 1, 8, 1.0), rec(2015, 1, 15, 1.0),
        rec(2015, 1, 22, 100.0),
    };
    const MonthlySeries med = group_monthly(records, Aggregate::Median);
    CHECK(med.series.y[0] == doctest::Approx(1.0));
    const MonthlySeries mean = group_monthly(records, Aggregate::Mean);
    CHECK(mean.series.y[0] == doctest::Approx(25.75));
}

TEST_CASE("even-count median averages the middle pair") {
    std::vector<RawRecord> records{
        rec(2015, 1, 1, 1.0), rec(2015, 1, 8, 2.0), rec(2015, 1, 15, 3.0),
        rec(2015, 1, 22, 4.0),
    };
    const MonthlySeries monthly = group_monthly(records, Aggregate::Median);
    CHECK(monthly.series.y[0] == doctest::Approx(2.5));
}

TEST_CASE("box statistics against brute-force quantiles") {
    std::vector<RawRecord> records;
    const std::vector<double> prices{1.48, 0.93, 1.10, 1.20, 1.05,
                                     1.33, 0.88, 1.62, 1.15, 2.40};
    int day = 1;
    for (double p : prices) records.push_back(rec(2016, 7, day++, p));
    const MonthlyGroup g =
        group_monthly(records, Aggregate::Median).groups.front();

    std::vector<double> sorted = prices;
    std::sort(sorted.begin(), sorted.end());
    // Brute-force type-7 quantile.
    auto q = [&](double p) {
        const double h = (sorted.size() - 1) * p;
        const std::size_t lo = static_cast<std::size_t>(h);
        return sorted[lo] + (h - lo) * (sorted[lo + 1 < sorted.size() ? lo + 1 : lo] - sorted[lo]);
    };
    CHECK(g.median == doctest::Approx(q(0.5)));
    CHECK(g.q1 == doctest::Approx(q(0.25)));
    CHECK(g.q3 == doctest::Approx(q(0.75)));
    CHECK(g.q1 <= g.median);
    CHECK(g.median <= g.q3);

    const double iqr = g.q3 - g.q1;
    for (double p : prices) {
        if (p >= g.q1 - 1.5 * iqr && p <= g.q3 + 1.5 * iqr) {
            CHECK(p >= g.whisker_lo);
            CHECK(p <= g.whisker_hi);
        }
    }
    // 2.40 is an outlier for this sample; whisker_hi must exclude it.
    CHECK(g.whisker_hi < 2.40);
}

TEST_CASE("emit_sweep_csv formatting") {
    TempDir tmp;
    SweepReport report;
    report.region = "TestCity";
    report.type = "conventional";
    report.degree = 3;
    for (int i = 0; i <= 20; ++i) {
        SweepRow row;
        row.alpha = -0.5 + i * 0.05;
        if (std::abs(row.alpha) < 1e-12) row.alpha = 0.0;
        row.effective_degree = 3.0 - row.alpha;
        row.r2_interp = 0.1 * i;
        row.r2_extrap = -0.05 * i;
        report.rows.push_back(row);
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                  return a.effective_degree > b.effective_degree;
              });
    const fs::path out = tmp.path / "sweep.csv";
    emit_sweep_csv(report, out.string());
    const std::string text = read_file(out);

    // header + 21 rows, LF endings only
    CHECK(std::count(text.begin(), text.end(), '\n') == 22);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("degree,alpha,r2_interp,r2_extrap\n", 0) == 0);
    // alpha = 0 row renders the integer degree with 6 decimals
    CHECK(text.find("3.000000,0.000000,") != std::string::npos);
    CHECK(text.find("3.500000,-0.500000,") != std::string::npos);

    SweepReport empty = report;
    empty.rows.clear();
    emit_sweep_csv(empty, out.string());
    CHECK(read_file(out) == "degree,alpha,r2_interp,r2_extrap\n");
}

TEST_CASE("series JSON round-trips") {
    TempDir tmp;
    StoredSeries stored;
    stored.series.x = {1, 2, 3, 4, 5};
    stored.series.y = {1.22, 1.17, 0.3333333333333333, 2.5, 0.1};
    stored.region = "TestCity";
    stored.type = "conventional";
    stored.agg = "median";
    const fs::path path = tmp.path / "series.json";
    write_series_json(stored, path.string());
    const StoredSeries back = read_series_json(path.string());
    CHECK(back.series.x == stored.series.x);
    CHECK(back.series.y == stored.series.y);
    CHECK(back.region == stored.region);
    CHECK(back.type == stored.type);
    CHECK(back.agg == stored.agg);

    CHECK_THROWS_AS(read_series_json((tmp.path / "nope.json").string()),
                    IoError);
    write_file(tmp.path / "broken.json", "{\"x\": [1,2]");
    CHECK_THROWS_AS(read_series_json((tmp.path / "broken.json").string()),
                    SchemaError);
    write_file(tmp.path / "short.json", "{\"x\": [1,2], \"y\": [1]}");
    CHECK_THROWS_AS(read_series_json((tmp.path / "short.json").string()),
                    SchemaError);
}

TEST_CASE("run_workflow on the fixture is deterministic end to end") {
    const std::string fixture =
        std::string(FRACREG_DATA_DIR) + "/avocado_fixture.csv";
    WorkflowConfig config;
    config.csv_path = fixture;
    config.region = "Chicago";
    config.type = AvocadoType::Conventional;
    config.degree = 3;

    const WorkflowResult a = run_workflow(config);
    const WorkflowResult b = run_workflow(config);
    REQUIRE(a.report.rows.size() == 21);
    CHECK(a.report.rows.size() == b.report.rows.size());
    for (std::size_t i = 0; i < a.report.rows.size(); ++i) {
        CHECK(a.report.rows[i].alpha == b.report.rows[i].alpha);
        CHECK(a.report.rows[i].r2_interp == b.report.rows[i].r2_interp);
        CHECK(a.report.rows[i].r2_extrap == b.report.rows[i].r2_extrap);
    }
    // Rows arrive in table order.
    for (std::size_t i = 1; i < a.report.rows.size(); ++i) {
        CHECK(a.report.rows[i].effective_degree <
              a.report.rows[i - 1].effective_degree);
    }
    // The alpha=0 row matches a direct fit of the same split.
    TempDir tmp;
    const fs::path c1 = tmp.path / "a.csv";
    const fs::path c2 = tmp.path / "b.csv";
    emit_sweep_csv(a.report, c1.string());
    emit_sweep_csv(b.report, c2.string());
    CHECK(read_file(c1) == read_file(c2));
}

TEST_CASE("ingest output re-read by fit reproduces the in-process series") {
    const std::string fixture =
        std::string(FRACREG_DATA_DIR) + "/avocado_fixture.csv";
    const auto records =
        ingest_csv(fixture, "Chicago", AvocadoType::Conventional);
    const MonthlySeries monthly = group_monthly(records, Aggregate::Median);

    TempDir tmp;
    const fs::path path = tmp.path / "series.json";
    write_series_json(
        StoredSeries{monthly.series, "Chicago", "conventional", "median"},
        path.string());
    const StoredSeries back = read_series_json(path.string());
    CHECK(back.series.x == monthly.series.x);
    CHECK(back.series.y == monthly.series.y);
}

TEST_CASE("emit_plots writes the four SVG files") {
    const std::string fixture =
        std::string(FRACREG_DATA_DIR) + "/avocado_fixture.csv";
    WorkflowConfig config;
    config.csv_path = fixture;
    config.region = "Chicago";
    config.type = AvocadoType::Conventional;
    config.degree = 3;
    const WorkflowResult result = run_workflow(config);

    TempDir tmp;
    const fs::path dir = tmp.path / "plots";
    emit_plots(result, dir.string());
    for (const char* name :
         {"boxplot.svg", "r2_log.svg", "model_base.svg", "model_frac.svg"}) {
        const std::string text = read_file(dir / name);
        CHECK(text.find("<svg") != std::string::npos);
        CHECK(text.find("</svg>") != std::string::npos);
    }
    // The log plot only contains circles when some row has both R2 > 0;
    // otherwise it must carry the annotation.
    const std::string r2 = read_file(dir / "r2_log.svg");
    bool any_both_positive = false;
    for (const SweepRow& row : result.report.rows) {
        if (row.r2_interp > 0.0 && row.r2_extrap > 0.0) any_both_positive = true;
    }
    if (any_both_positive) {
        CHECK(r2.find("<circle") != std::string::npos);
    } else {
        CHECK(r2.find("no rows with both R2") != std::string::npos);
    }
}

TEST_CASE("r2_log plot keeps only rows with both values positive") {
    // Synthetic report: exactly one row qualifies.
    WorkflowResult result;
    result.report.region = "X";
    result.report.type = "conventional";
    result.report.degree = 3;
    result.report.rows = {
        {-0.05, 3.05, 0.5, -0.1},
        {0.00, 3.00, 0.5, 0.2},
        {0.05, 2.95, -0.5, 0.3},
    };
    result.report.best = select_best(result.report.rows);
    result.monthly.series.x = {1, 2, 3, 4, 5, 6};
    result.monthly.series.y = {1.0, 1.1, 1.2, 1.1, 1.0, 0.9};
    for (int i = 0; i < 6; ++i) {
        MonthlyGroup g;
        g.month_index = i + 1;
        g.prices = {result.monthly.series.y[static_cast<std::size_t>(i)]};
        g.median = g.q1 = g.q3 = g.whisker_lo = g.whisker_hi = g.prices[0];
        result.monthly.groups.push_back(g);
    }
    result.split = split_ordered(result.monthly.series, 0.2);
    result.base = fit_poly(result.split.train, 1);
    result.best_model = FracModel{result.base, result.report.best.row.alpha};

    TempDir tmp;
    emit_plots(result, tmp.path.string());
    const std::string r2 = read_file(tmp.path / "r2_log.svg");
    // 1 qualifying row x 2 series = 2 data circles.
    std::size_t circles = 0;
    for (std::size_t pos = r2.find("<circle"); pos != std::string::npos;
         pos = r2.find("<circle", pos + 1)) {
        ++circles;
    }
    CHECK(circles == 2);

    // All-negative extrapolation: the log plot degenerates to an annotation.
    for (SweepRow& row : result.report.rows) row.r2_extrap = -1.0;
    result.report.best = select_best(result.report.rows);
    emit_plots(result, (tmp.path / "neg").string());
    const std::string annotated = read_file(tmp.path / "neg" / "r2_log.svg");
    CHECK(annotated.find("no rows with both R2 values positive") !=
          std::string::npos);
    CHECK(annotated.find("<circle") == std::string::npos);
}

TEST_CASE("parse helpers") {
    CHECK(parse_avocado_type("conventional") == AvocadoType::Conventional);
    CHECK(parse_avocado_type("organic") == AvocadoType::Organic);
    CHECK_THROWS_AS(parse_avocado_type("heirloom"), DomainError);
    CHECK(parse_aggregate("median") == Aggregate::Median);
    CHECK(parse_aggregate("mean") == Aggregate::Mean);
    CHECK_THROWS_AS(parse_aggregate("mode"), DomainError);
}
