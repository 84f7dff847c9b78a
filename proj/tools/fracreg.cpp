#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracreg/fracmodel.hpp"
#include "fracreg/opalgebra.hpp"
#include "fracreg/pipeline.hpp"

namespace {

using namespace fracreg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct GridFlags {
    double alpha_min = -0.50;
    double alpha_max = 0.50;
    double alpha_step = 0.05;
};

void add_grid_flags(CLI::App* cmd, GridFlags& grid) {
    cmd->add_option("--alpha-min", grid.alpha_min, "Smallest alpha in the sweep");
    cmd->add_option("--alpha-max", grid.alpha_max, "Largest alpha in the sweep");
    cmd->add_option("--alpha-step", grid.alpha_step, "Grid step");
}

void print_axioms(const AxiomReport& report) {
    std::printf("axioms: closure=%s associativity=%s identity=%s "
                "inverses=%s commutativity=%s\n",
                report.closure ? "true" : "false",
                report.associativity ? "true" : "false",
                report.identity ? "true" : "false",
                report.inverses ? "true" : "false",
                report.commutativity ? "true" : "false");
}

void print_group(const std::string& name, const OperatorGroup& group) {
    std::printf("%s: order %zu, alpha=%g, op=%s\n", name.c_str(),
                group.order(), group.base_alpha(),
                group.composition() == Composition::Additive ? "hadamard(+)"
                                                             : "star(*)");
    std::printf("elements:");
    for (int r : group.carrier()) {
        std::printf(" %s", to_string(group.element(r)).c_str());
    }
    std::printf("\n");
    print_axioms(verify_group_axioms(group));
}

void print_sweep_summary(const SweepReport& report) {
    const SweepRow& best = report.best.row;
    std::printf("best: alpha=%.6f degree=%.6f r2_interp=%.6f r2_extrap=%.6f%s\n",
                best.alpha, best.effective_degree, best.r2_interp,
                best.r2_extrap,
                report.best.no_positive_interp
                    ? " (no row had positive interpolation R2)"
                    : "");
}

Series to_series(const StoredSeries& stored) { return stored.series; }

int run(int argc, char** argv) {
    CLI::App app{"Fractional polynomial regression toolkit"};
    app.require_subcommand(1);

    // ingest: CSV -> series JSON
    std::string in_csv, in_region, in_type = "conventional";
    std::string in_agg = "median", in_out = "series.json";
    CLI::App* ingest = app.add_subcommand("ingest", "Aggregate a CSV into a monthly series file");
    ingest->add_option("--csv", in_csv, "Input CSV path")->required();
    ingest->add_option("--region", in_region, "Region filter")->required();
    ingest->add_option("--type", in_type, "conventional|organic");
    ingest->add_option("--agg", in_agg, "median|mean");
    ingest->add_option("--out", in_out, "Output series JSON path");

    // fit: series JSON -> coefficients
    std::string fit_series;
    int fit_degree = 3;
    double fit_fraction = 0.2;
    CLI::App* fit = app.add_subcommand("fit", "Fit the integer-order polynomial on the train part");
    fit->add_option("--series", fit_series, "Series JSON path")->required();
    fit->add_option("--degree", fit_degree, "Polynomial degree");
    fit->add_option("--test-fraction", fit_fraction, "Held-out tail fraction");

    // sweep: series JSON -> sweep CSV
    std::string sw_series, sw_out = "sweep.csv", sw_beta = "fixed";
    int sw_degree = 3;
    double sw_fraction = 0.2;
    GridFlags sw_grid;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep alpha and write the R2 table");
    sweep->add_option("--series", sw_series, "Series JSON path")->required();
    sweep->add_option("--degree", sw_degree, "Polynomial degree");
    sweep->add_option("--beta-mode", sw_beta, "fixed|refit");
    sweep->add_option("--test-fraction", sw_fraction, "Held-out tail fraction");
    sweep->add_option("--out", sw_out, "Output CSV path");
    add_grid_flags(sweep, sw_grid);

    // report: CSV -> sweep CSV + plots
    std::string rp_csv, rp_region, rp_type = "conventional";
    std::string rp_agg = "median", rp_beta = "fixed", rp_out_dir = ".";
    int rp_degree = 3;
    double rp_fraction = 0.2;
    GridFlags rp_grid;
    unsigned rp_seed = 0;
    CLI::App* report = app.add_subcommand("report", "Run the full workflow and write CSV + SVG plots");
    report->add_option("--csv", rp_csv, "Input CSV path")->required();
    report->add_option("--region", rp_region, "Region filter")->required();
    report->add_option("--type", rp_type, "conventional|organic");
    report->add_option("--agg", rp_agg, "median|mean");
    report->add_option("--degree", rp_degree, "Polynomial degree");
    report->add_option("--beta-mode", rp_beta, "fixed|refit");
    report->add_option("--test-fraction", rp_fraction, "Held-out tail fraction");
    report->add_option("--out-dir", rp_out_dir, "Output directory");
    report->add_option("--seed", rp_seed,
                       "Reserved; the pipeline is deterministic");
    add_grid_flags(report, rp_grid);

    // group: operator group demos
    int gr_zn = 0, gr_mn = 0, gr_zp = 0;
    double gr_alpha = 0.5;
    CLI::App* group = app.add_subcommand("group", "Build a finite operator group and verify its axioms");
    group->add_option("--zn", gr_zn, "Additive group on residues mod N");
    group->add_option("--mn", gr_mn, "Star group on residues coprime to N");
    group->add_option("--zp", gr_zp, "Star group on positive residues mod prime P");
    group->add_option("--alpha", gr_alpha, "Generator order");

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) {
        const auto records =
            ingest_csv(in_csv, in_region, parse_avocado_type(in_type));
        const MonthlySeries monthly =
            group_monthly(records, parse_aggregate(in_agg));
        StoredSeries stored{monthly.series, in_region, in_type, in_agg};
        write_series_json(stored, in_out);
        std::printf("wrote %s (%zu months)\n", in_out.c_str(),
                    monthly.series.size());
        return kExitOk;
    }

    if (fit->parsed()) {
        const Series series = to_series(read_series_json(fit_series));
        const SplitSeries split = split_ordered(series, fit_fraction);
        const PolyModel model = fit_poly(split.train, fit_degree);
        std::printf("degree %d coefficients:", model.degree);
        for (double b : model.coeffs) std::printf(" %.12g", b);
        std::printf("\n");
        std::vector<double> train_pred, test_pred;
        for (double x : split.train.x) train_pred.push_back(predict_poly(model, x));
        for (double x : split.test.x) test_pred.push_back(predict_poly(model, x));
        std::printf("r2_interp=%.6f r2_extrap=%.6f\n",
                    r_squared(split.train.y, train_pred),
                    r_squared(split.test.y, test_pred));
        return kExitOk;
    }

    if (sweep->parsed()) {
        const StoredSeries stored = read_series_json(sw_series);
        const SplitSeries split = split_ordered(stored.series, sw_fraction);
        const PolyModel base = fit_poly(split.train, sw_degree);
        const BetaMode mode =
            sw_beta == "refit" ? BetaMode::Refit : BetaMode::Fixed;
        auto rows = sweep_alpha(
            base, split,
            alpha_grid(sw_grid.alpha_min, sw_grid.alpha_max, sw_grid.alpha_step),
            mode);
        std::sort(rows.begin(), rows.end(),
                  [](const SweepRow& a, const SweepRow& b) {
                      return a.effective_degree > b.effective_degree;
                  });
        SweepReport rep;
        rep.region = stored.region;
        rep.type = stored.type;
        rep.degree = sw_degree;
        rep.rows = rows;
        rep.best = select_best(rows);
        emit_sweep_csv(rep, sw_out);
        print_sweep_summary(rep);
        std::printf("wrote %s\n", sw_out.c_str());
        return kExitOk;
    }

    if (report->parsed()) {
        WorkflowConfig config;
        config.csv_path = rp_csv;
        config.region = rp_region;
        config.type = parse_avocado_type(rp_type);
        config.agg = parse_aggregate(rp_agg);
        config.degree = rp_degree;
        config.alpha_min = rp_grid.alpha_min;
        config.alpha_max = rp_grid.alpha_max;
        config.alpha_step = rp_grid.alpha_step;
        config.beta_mode = rp_beta == "refit" ? BetaMode::Refit : BetaMode::Fixed;
        config.test_fraction = rp_fraction;
        const WorkflowResult result = run_workflow(config);
        std::filesystem::create_directories(rp_out_dir);
        emit_sweep_csv(result.report,
                       (std::filesystem::path(rp_out_dir) / "sweep.csv").string());
        emit_plots(result, rp_out_dir);
        print_sweep_summary(result.report);
        std::printf("wrote sweep.csv, boxplot.svg, r2_log.svg, model_base.svg, "
                    "model_frac.svg under %s\n",
                    rp_out_dir.c_str());
        return kExitOk;
    }

    if (group->parsed()) {
        const int picked = (gr_zn > 0 ? 1 : 0) + (gr_mn > 0 ? 1 : 0) +
                           (gr_zp > 0 ? 1 : 0);
        if (picked != 1) {
            std::fprintf(stderr, "group: pass exactly one of --zn, --mn, --zp\n");
            return kExitUsage;
        }
        if (gr_zn > 0) {
            print_group("Z_" + std::to_string(gr_zn),
                        build_group_zn(gr_zn, gr_alpha));
        } else if (gr_mn > 0) {
            print_group("M_" + std::to_string(gr_mn),
                        build_group_mn(gr_mn, gr_alpha));
        } else {
            print_group("Z+_" + std::to_string(gr_zp),
                        build_group_zp(gr_zp, gr_alpha));
        }
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const DataError& e) {
        std::fprintf(stderr, "error [data]: %s\n", e.what());
        return kExitData;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "error [numeric]: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}
