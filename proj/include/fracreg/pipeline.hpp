#pragma once

#include <string>
#include <vector>

#include "fracreg/fracmodel.hpp"
#include "fracreg/regress.hpp"

namespace fracreg {

enum class AvocadoType { Conventional, Organic };

AvocadoType parse_avocado_type(const std::string& s);  // throws DomainError
std::string to_string(AvocadoType t);

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;
};

/// One input row after filtering: date, region, type, average price.
struct RawRecord {
    Date date;
    std::string region;
    AvocadoType type = AvocadoType::Conventional;
    double average_price = 0.0;
};

/// Prices of one calendar month plus its box-plot statistics. Quartiles use
/// linear interpolation between order statistics; whiskers clamp to the
/// most extreme points within 1.5 IQR of the quartiles.
struct MonthlyGroup {
    int month_index = 0;  // 1-based chronological rank
    int year = 0;
    int month = 0;
    std::vector<double> prices;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_lo = 0.0;
    double whisker_hi = 0.0;
};

enum class Aggregate { Median, Mean };

Aggregate parse_aggregate(const std::string& s);
std::string to_string(Aggregate a);

struct MonthlySeries {
    Series series;  // x = 1..N month index, y = monthly aggregate
    std::vector<MonthlyGroup> groups;
};

/// Linear-interpolation quantile of a sorted sample (the common "type 7"
/// convention), p in [0,1].
double quantile_sorted(const std::vector<double>& sorted, double p);

/// Reads the CSV at `path` and returns the rows matching region and type,
/// sorted by date (stable for duplicate dates). Requires the header to name
/// the Date, AveragePrice, type, and region columns; extra columns are
/// ignored. Throws IoError, SchemaError (with the offending row number),
/// or EmptySelectionError.
std::vector<RawRecord> ingest_csv(const std::string& path,
                                  const std::string& region,
                                  AvocadoType type);

/// Groups date-sorted records by calendar month (chronological rank, so
/// gaps in the data do not create gaps in x) and aggregates each group.
MonthlySeries group_monthly(const std::vector<RawRecord>& records,
                            Aggregate agg);

struct WorkflowConfig {
    std::string csv_path;
    std::string region;
    AvocadoType type = AvocadoType::Conventional;
    Aggregate agg = Aggregate::Median;
    int degree = 3;
    double alpha_min = -0.50;
    double alpha_max = 0.50;
    double alpha_step = 0.05;
    BetaMode beta_mode = BetaMode::Fixed;
    double test_fraction = 0.2;
};

/// Sweep table for one region/degree, rows ordered by descending effective
/// degree (ascending alpha) as laid out in the emitted CSV.
struct SweepReport {
    std::string region;
    std::string type;
    int degree = 0;
    std::vector<SweepRow> rows;
    Selection best;
};

/// Everything run_workflow produced: the report plus the intermediate data
/// needed for plotting.
struct WorkflowResult {
    SweepReport report;
    MonthlySeries monthly;
    SplitSeries split;
    PolyModel base;
    FracModel best_model;
};

/// ingest -> group -> ordered split -> integer-order fit -> alpha sweep ->
/// selection. Deterministic for a fixed config and input file.
WorkflowResult run_workflow(const WorkflowConfig& config);

/// Writes `degree,alpha,r2_interp,r2_extrap` rows (6 decimals, LF endings)
/// in the report's row order.
void emit_sweep_csv(const SweepReport& report, const std::string& path);

/// Writes the four standalone SVGs into `dir`: per-month box plots
/// (boxplot.svg), the log-scale plot of rows where both R^2 values are
/// positive (r2_log.svg), the series with the integer-order curve
/// (model_base.svg), and the series with the selected fractional curve
/// (model_frac.svg).
void emit_plots(const WorkflowResult& result, const std::string& dir);

/// Series interchange file: JSON object with arrays x, y and metadata
/// region, type, agg.
struct StoredSeries {
    Series series;
    std::string region;
    std::string type;
    std::string agg;
};

void write_series_json(const StoredSeries& stored, const std::string& path);
StoredSeries read_series_json(const std::string& path);

}  // namespace fracreg
