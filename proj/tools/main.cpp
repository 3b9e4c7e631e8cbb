// anchorlab command-line interface: analytic evaluation, Monte Carlo
// simulation, parameter sweeps, and file-driven backtests. Every output
// file starts with a comment preamble naming the full parameter set so
// runs are reproducible from the artifact alone.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anchorlab/analytic.hpp"
#include "anchorlab/backtest.hpp"
#include "anchorlab/dates.hpp"
#include "anchorlab/price_models.hpp"
#include "anchorlab/stats.hpp"
#include "anchorlab/strategy.hpp"

namespace {

using namespace anchorlab;

// All numbers go out with 12 significant digits so closed-form comparisons
// stay testable from files.
std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    std::ostringstream ss;
    ss << std::setprecision(12) << x;
    return ss.str();
}

std::string fmt_timestamp(std::int64_t ts, TimeAxis axis) {
    return axis == TimeAxis::date ? format_iso_date(ts) : std::to_string(ts);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

Mode parse_mode(const std::string& mode) {
    if (mode == "long-only") return Mode::long_only;
    if (mode == "market-neutral") return Mode::market_neutral;
    throw CLI::ValidationError("--mode", "must be long-only or market-neutral");
}

struct SimulationStats {
    std::vector<double> returns;  // gross per-step returns after warm-up
    double mean = 0.0;
    double variance = 0.0;
    double mean_se = 0.0;
    double variance_se = 0.0;
};

// Runs the strategy over freshly sampled two-point series. Per-asset seeds
// are derived from the master seed.
SimulationStats simulate_two_point(const TwoPointModel& m1, const TwoPointModel& m2, Mode mode,
                                   int memory, std::int64_t steps, std::uint64_t seed) {
    const auto series1 = sample_anchored_series(m1, steps, mix_seed(seed, 0));
    const auto series2 = sample_anchored_series(m2, steps, mix_seed(seed, 1));
    Strategy strategy(mode, memory);
    SimulationStats stats;
    stats.returns.reserve(steps);
    for (std::int64_t t = 0; t < steps; ++t) {
        const auto out = strategy.step(series1.prices[t], series2.prices[t]);
        if (t > memory) stats.returns.push_back(out.gross_return);
    }
    stats.mean = mean(stats.returns);
    stats.variance = sample_variance(stats.returns);
    const auto se = batch_standard_errors(stats.returns);
    stats.mean_se = se.mean_se;
    stats.variance_se = se.variance_se;
    return stats;
}

int cmd_analytic(double a1, double da1, double a2, double da2) {
    const TwoPointModel m1{a1, da1};
    const TwoPointModel m2{a2, da2};
    const auto result = analyze(m1, m2);
    const double closed_mean = closed_form_binomial_return(m1, m2);
    const double closed_var = closed_form_binomial_variance(m1, m2);

    std::cout << "mean_return_engine=" << fmt(result.mean_return_per_step) << "\n"
              << "mean_return_closed_form=" << fmt(closed_mean) << "\n"
              << "mean_return_difference=" << fmt(result.mean_return_per_step - closed_mean) << "\n"
              << "variance_engine=" << fmt(result.variance_per_step) << "\n"
              << "variance_closed_form=" << fmt(closed_var) << "\n"
              << "variance_difference=" << fmt(result.variance_per_step - closed_var) << "\n";
    return 0;
}

int cmd_simulate(double a1, double da1, double a2, double da2, int memory, std::int64_t steps,
                 std::uint64_t seed, const std::string& mode_name, const std::string& output) {
    if (steps < 1) throw CLI::ValidationError("--steps", "must be >= 1");
    if (steps <= memory + 1) throw CLI::ValidationError("--steps", "must exceed memory+1");
    const Mode mode = parse_mode(mode_name);
    const TwoPointModel m1{a1, da1};
    const TwoPointModel m2{a2, da2};

    const auto d1 = two_point_distribution(m1);
    const auto d2 = two_point_distribution(m2);
    const auto chain = build_joint_chain(d1, d2, a1, a2);
    const double analytic_mean = mode == Mode::market_neutral
                                     ? expected_return_market_neutral(chain, d1, d2, a1, a2)
                                     : expected_return(chain, d1, d2, a1, a2);

    const auto series1 = sample_anchored_series(m1, steps, mix_seed(seed, 0));
    const auto series2 = sample_anchored_series(m2, steps, mix_seed(seed, 1));
    Strategy strategy(mode, memory);

    auto out = open_output(output);
    out << "# anchorlab simulate a1=" << fmt(a1) << " da1=" << fmt(da1) << " a2=" << fmt(a2)
        << " da2=" << fmt(da2) << " memory=" << memory << " steps=" << steps << " seed=" << seed
        << " mode=" << mode_name << "\n";
    out << "t,running_mean_return,analytic_mean\n";

    double sum = 0.0;
    std::int64_t count = 0;
    for (std::int64_t t = 0; t < steps; ++t) {
        const auto step = strategy.step(series1.prices[t], series2.prices[t]);
        if (t <= memory) continue;
        sum += step.gross_return;
        ++count;
        out << t << "," << fmt(sum / static_cast<double>(count)) << "," << fmt(analytic_mean) << "\n";
    }
    return 0;
}

int cmd_sweep(double da1_min, double da1_max, int points, double a1, double a2, double da2,
              int memory, std::int64_t steps, std::uint64_t seed, const std::string& output) {
    if (points < 1) throw CLI::ValidationError("--points", "must be >= 1");
    if (points == 1 && da1_min != da1_max)
        throw CLI::ValidationError("--points", "a single-point sweep needs min == max");
    if (da1_max < da1_min) throw CLI::ValidationError("--da1-max", "must be >= --da1-min");
    if (steps <= memory + 1) throw CLI::ValidationError("--steps", "must exceed memory+1");

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = points == 1 ? da1_min
                              : da1_min + (da1_max - da1_min) * static_cast<double>(i) /
                                              static_cast<double>(points - 1);
    for (double da1 : grid)
        if (!(da1 > 0.0 && da1 < a1))
            throw CLI::ValidationError("--da1-min/--da1-max", "grid must satisfy 0 < da1 < a1");

    struct Row {
        double da1, sim_mean, sim_var, analytic_mean, analytic_var, mean_se, var_se;
    };

    // Grid points run concurrently; rows are emitted in grid order.
    std::vector<std::future<Row>> futures;
    futures.reserve(grid.size());
    for (int i = 0; i < points; ++i) {
        futures.push_back(std::async(std::launch::async, [&, i]() {
            const TwoPointModel m1{a1, grid[i]};
            const TwoPointModel m2{a2, da2};
            const auto analytic = analyze(m1, m2);
            const auto sim = simulate_two_point(m1, m2, Mode::long_only, memory, steps, mix_seed(seed, i));
            return Row{grid[i],  sim.mean,       sim.variance, analytic.mean_return_per_step,
                       analytic.variance_per_step, sim.mean_se, sim.variance_se};
        }));
    }

    auto out = open_output(output);
    out << "# anchorlab sweep da1_min=" << fmt(da1_min) << " da1_max=" << fmt(da1_max)
        << " points=" << points << " a1=" << fmt(a1) << " a2=" << fmt(a2) << " da2=" << fmt(da2)
        << " memory=" << memory << " steps=" << steps << " seed=" << seed << "\n";
    out << "da1,sim_mean,sim_variance,analytic_mean,analytic_variance,sim_mean_se,sim_variance_se\n";
    for (auto& f : futures) {
        const Row r = f.get();
        out << fmt(r.da1) << "," << fmt(r.sim_mean) << "," << fmt(r.sim_var) << ","
            << fmt(r.analytic_mean) << "," << fmt(r.analytic_var) << "," << fmt(r.mean_se) << ","
            << fmt(r.var_se) << "\n";
    }
    return 0;
}

void write_equity_file(const std::string& path, const std::string& preamble,
                       const PriceSeries& timeline, const BacktestResult& result) {
    auto out = open_output(path);
    out << preamble;
    out << "timestamp,net_return,equity\n";
    for (std::size_t t = 0; t < result.per_step_returns.size(); ++t) {
        out << fmt_timestamp(timeline.timestamps[t], timeline.axis) << ","
            << fmt(result.per_step_returns[t]) << "," << fmt(result.equity_curve[t]) << "\n";
    }
}

int cmd_backtest(const std::string& file1, const std::string& file2, const std::string& date_column,
                 const std::string& price_column, const std::string& mode_name,
                 const std::vector<int>& memory_grid, double cost, double split, double cadence,
                 const std::string& resample, const std::string& prefix) {
    BacktestConfig config;
    config.mode = parse_mode(mode_name);
    config.memory_grid = memory_grid;
    config.cost_rate = cost;
    config.split_fraction = split;
    config.cadence = cadence;
    if (resample == "weekly") {
        config.resample = Resample::weekly;
    } else if (resample != "none") {
        throw CLI::ValidationError("--resample", "must be none or weekly");
    }
    config.validate();

    const auto series1 = load_price_series(file1, date_column, price_column);
    const auto series2 = load_price_series(file2, date_column, price_column);
    AlignedPair pair = align(series1, series2);
    if (config.resample == Resample::weekly) {
        // identical timestamps on both legs, so the week picks stick together
        pair.first = resample_weekly(pair.first);
        pair.second = resample_weekly(pair.second);
    }
    const MemorySelection sel = select_memory_in_sample(pair, config);

    std::ostringstream pre;
    pre << "# anchorlab backtest file1=" << file1 << " file2=" << file2 << " mode=" << mode_name
        << " memory_grid=";
    for (std::size_t i = 0; i < memory_grid.size(); ++i)
        pre << (i ? ";" : "") << memory_grid[i];
    pre << " cost=" << fmt(cost) << " split=" << fmt(split) << " cadence=" << fmt(cadence)
        << " resample=" << resample << "\n";
    const std::string preamble = pre.str();

    const std::size_t split_at = sel.in_sample.per_step_returns.size();
    PriceSeries in_timeline, out_timeline;
    in_timeline.axis = out_timeline.axis = pair.first.axis;
    in_timeline.timestamps.assign(pair.first.timestamps.begin(),
                                  pair.first.timestamps.begin() + split_at);
    out_timeline.timestamps.assign(pair.first.timestamps.begin() + split_at,
                                   pair.first.timestamps.end());

    write_equity_file(prefix + "_in_sample_equity.csv", preamble, in_timeline, sel.in_sample);
    write_equity_file(prefix + "_out_of_sample_equity.csv", preamble, out_timeline, sel.out_of_sample);

    auto summary = open_output(prefix + "_summary.txt");
    summary << preamble;
    summary << "chosen_m=" << sel.chosen_m << "\n"
            << "sharpe_in=" << fmt(sel.in_sample.sharpe) << "\n"
            << "sharpe_out=" << fmt(sel.out_of_sample.sharpe) << "\n"
            << "n_trades=" << sel.out_of_sample.n_trades << "\n"
            << "total_cost=" << fmt(sel.out_of_sample.total_cost) << "\n"
            << "n_trades_in=" << sel.in_sample.n_trades << "\n"
            << "total_cost_in=" << fmt(sel.in_sample.total_cost) << "\n";
    for (const auto& [m, sharpe] : sel.in_sample_sharpes)
        summary << "sharpe_in_m" << m << "=" << fmt(sharpe) << "\n";

    std::cout << "chosen_m=" << sel.chosen_m << " sharpe_in=" << fmt(sel.in_sample.sharpe)
              << " sharpe_out=" << fmt(sel.out_of_sample.sharpe) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anchoring-driven two-asset trading: exact analytics, simulation, backtesting"};
    app.require_subcommand(1);

    double a1 = 1.0, da1 = 0.11, a2 = 1.0, da2 = 0.11;
    int memory = 5;
    std::int64_t steps = 100000;
    std::uint64_t seed = 1;
    std::string mode_name = "long-only";
    std::string output = "out.csv";

    auto* analytic = app.add_subcommand("analytic", "evaluate steady-state return and variance");
    analytic->add_option("--a1", a1, "anchor of asset 1")->required();
    analytic->add_option("--da1", da1, "half spread of asset 1")->required();
    analytic->add_option("--a2", a2, "anchor of asset 2")->required();
    analytic->add_option("--da2", da2, "half spread of asset 2")->required();

    auto* simulate = app.add_subcommand("simulate", "running mean return of a simulated run");
    simulate->add_option("--a1", a1)->required();
    simulate->add_option("--da1", da1)->required();
    simulate->add_option("--a2", a2)->required();
    simulate->add_option("--da2", da2)->required();
    simulate->add_option("--memory", memory, "anchor window length")->required();
    simulate->add_option("--steps", steps)->required();
    simulate->add_option("--seed", seed)->required();
    simulate->add_option("--mode", mode_name, "long-only or market-neutral");
    simulate->add_option("--output", output, "output csv path")->required();

    double da1_min = 0.02, da1_max = 0.2;
    int points = 7;
    auto* sweep = app.add_subcommand("sweep", "simulated vs analytic moments over a da1 grid");
    sweep->add_option("--da1-min", da1_min)->required();
    sweep->add_option("--da1-max", da1_max)->required();
    sweep->add_option("--points", points)->required();
    sweep->add_option("--a1", a1)->required();
    sweep->add_option("--a2", a2)->required();
    sweep->add_option("--da2", da2)->required();
    sweep->add_option("--memory", memory)->required();
    sweep->add_option("--steps", steps, "steps per grid point")->required();
    sweep->add_option("--seed", seed)->required();
    sweep->add_option("--output", output)->required();

    std::string file1, file2, prefix = "backtest";
    std::string date_column = "date", price_column = "price";
    std::string resample = "none";
    std::vector<int> memory_grid = {5, 10, 15};
    double cost = 0.001, split = 0.5, cadence = 252.0;
    auto* backtest = app.add_subcommand("backtest", "in/out-of-sample backtest on two csv files");
    backtest->add_option("--file1", file1)->required();
    backtest->add_option("--file2", file2)->required();
    backtest->add_option("--date-column", date_column);
    backtest->add_option("--price-column", price_column);
    backtest->add_option("--mode", mode_name, "long-only or market-neutral");
    backtest->add_option("--memory-grid", memory_grid, "candidate anchor windows")->delimiter(',');
    backtest->add_option("--cost", cost, "proportional cost per changed leg");
    backtest->add_option("--split", split, "in-sample fraction");
    backtest->add_option("--cadence", cadence, "periods per year for the Sharpe");
    backtest->add_option("--resample", resample, "none or weekly");
    backtest->add_option("--output-prefix", prefix);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analytic)) return cmd_analytic(a1, da1, a2, da2);
        if (app.got_subcommand(simulate))
            return cmd_simulate(a1, da1, a2, da2, memory, steps, seed, mode_name, output);
        if (app.got_subcommand(sweep))
            return cmd_sweep(da1_min, da1_max, points, a1, a2, da2, memory, steps, seed, output);
        if (app.got_subcommand(backtest))
            return cmd_backtest(file1, file2, date_column, price_column, mode_name, memory_grid,
                                cost, split, cadence, resample, prefix);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
