#include "anchorlab/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "anchorlab/dates.hpp"
#include "anchorlab/errors.hpp"
#include "anchorlab/stats.hpp"

namespace anchorlab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void BacktestConfig::validate() const {
    if (cost_rate < 0.0 || cost_rate >= 1.0) throw std::invalid_argument("cost_rate must be in [0, 1)");
    if (memory_grid.empty()) throw std::invalid_argument("memory_grid must be nonempty");
    for (int m : memory_grid)
        if (m < 1) throw std::invalid_argument("memory values must be >= 1");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw std::invalid_argument("split_fraction must be in (0, 1)");
    if (!(cadence > 0.0)) throw std::invalid_argument("cadence must be positive");
}

PriceSeries load_price_series(const std::string& path, const std::string& date_column,
                              const std::string& price_column) {
    std::ifstream in(path);
    if (!in.is_open()) throw FileNotFoundError("file not found: " + path);

    std::string line;
    if (!std::getline(in, line)) throw EmptySeriesError("empty file: " + path);

    const auto header = split_csv_line(trim(line));
    std::size_t date_idx = header.size(), price_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == date_column) date_idx = i;
        if (trim(header[i]) == price_column) price_idx = i;
    }
    if (date_idx == header.size()) throw ParseError("missing column '" + date_column + "'", 1);
    if (price_idx == header.size()) throw ParseError("missing column '" + price_column + "'", 1);

    std::vector<std::pair<std::int64_t, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto fields = split_csv_line(trimmed);
        if (fields.size() <= std::max(date_idx, price_idx))
            throw ParseError("row has too few fields", line_no);

        const auto day = parse_iso_date(trim(fields[date_idx]));
        if (!day) throw ParseError("bad date '" + trim(fields[date_idx]) + "'", line_no);

        const std::string price_text = trim(fields[price_idx]);
        double price = 0.0;
        try {
            std::size_t consumed = 0;
            price = std::stod(price_text, &consumed);
            if (consumed != price_text.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw ParseError("bad price '" + price_text + "'", line_no);
        }
        if (!(price > 0.0)) throw ParseError("non-positive price '" + price_text + "'", line_no);
        rows.emplace_back(*day, price);
    }
    if (rows.empty()) throw EmptySeriesError("no data rows in " + path);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first)
            throw ParseError("duplicate date " + format_iso_date(rows[i].first), 0);
    }

    PriceSeries out;
    out.axis = TimeAxis::date;
    out.timestamps.reserve(rows.size());
    out.prices.reserve(rows.size());
    for (const auto& [day, price] : rows) {
        out.timestamps.push_back(day);
        out.prices.push_back(price);
    }
    out.validate();
    return out;
}

AlignedPair align(const PriceSeries& a, const PriceSeries& b) {
    a.validate();
    b.validate();
    AlignedPair pair;
    pair.first.axis = a.axis;
    pair.second.axis = b.axis;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a.timestamps[i] < b.timestamps[j]) {
            ++i;
        } else if (a.timestamps[i] > b.timestamps[j]) {
            ++j;
        } else {
            pair.first.timestamps.push_back(a.timestamps[i]);
            pair.first.prices.push_back(a.prices[i]);
            pair.second.timestamps.push_back(b.timestamps[j]);
            pair.second.prices.push_back(b.prices[j]);
            ++i;
            ++j;
        }
    }
    if (pair.size() < 2)
        throw InsufficientOverlapError("series share fewer than two timestamps");
    return pair;
}

PriceSeries resample_weekly(const PriceSeries& series) {
    series.validate();
    if (series.axis != TimeAxis::date)
        throw std::invalid_argument("weekly resampling needs dated timestamps");
    PriceSeries out;
    out.axis = TimeAxis::date;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const bool last_of_week = i + 1 == series.size() ||
                                  iso_week_monday(series.timestamps[i]) !=
                                      iso_week_monday(series.timestamps[i + 1]);
        if (last_of_week) {
            out.timestamps.push_back(series.timestamps[i]);
            out.prices.push_back(series.prices[i]);
        }
    }
    return out;
}

BacktestResult run(const AlignedPair& pair, const BacktestConfig& config, int memory) {
    config.validate();
    if (memory < 1) throw std::invalid_argument("memory must be >= 1");
    const std::size_t n = pair.size();
    if (n <= static_cast<std::size_t>(memory) + 1)
        throw SeriesTooShortError("need more than memory+1 points, got " + std::to_string(n));

    const double leg_cost = config.cost_rate > 0.0 ? std::log(1.0 - config.cost_rate) : 0.0;

    Strategy strategy(config.mode, memory);
    BacktestResult result;
    result.memory = memory;
    result.warmup_steps = static_cast<std::size_t>(memory);
    result.per_step_returns.resize(n, 0.0);
    result.equity_curve.resize(n, 0.0);

    double equity = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const StepOutcome out = strategy.step(pair.first.prices[t], pair.second.prices[t]);
        const double cost = out.decision.trades_executed * leg_cost;
        result.per_step_returns[t] = out.gross_return + cost;
        result.n_trades += out.decision.trades_executed;
        result.total_cost += cost;
        equity += result.per_step_returns[t];
        result.equity_curve[t] = equity;
    }
    result.sharpe = sharpe_ratio(result.active_returns(), config.cadence);
    return result;
}

MemorySelection select_memory_in_sample(const AlignedPair& pair, const BacktestConfig& config) {
    config.validate();
    const std::size_t n = pair.size();
    const std::size_t split = static_cast<std::size_t>(std::floor(config.split_fraction * n));
    const int max_memory = *std::max_element(config.memory_grid.begin(), config.memory_grid.end());
    if (split <= static_cast<std::size_t>(max_memory) + 1 ||
        n - split <= static_cast<std::size_t>(max_memory) + 1)
        throw SeriesTooShortError("both split segments must exceed max(memory_grid)+1 points");

    const auto slice = [&](std::size_t from, std::size_t to) {
        AlignedPair seg;
        seg.first.axis = pair.first.axis;
        seg.second.axis = pair.second.axis;
        seg.first.timestamps.assign(pair.first.timestamps.begin() + from, pair.first.timestamps.begin() + to);
        seg.first.prices.assign(pair.first.prices.begin() + from, pair.first.prices.begin() + to);
        seg.second.timestamps.assign(pair.second.timestamps.begin() + from,
                                     pair.second.timestamps.begin() + to);
        seg.second.prices.assign(pair.second.prices.begin() + from, pair.second.prices.begin() + to);
        return seg;
    };
    const AlignedPair in_seg = slice(0, split);
    const AlignedPair out_seg = slice(split, n);

    std::vector<int> grid = config.memory_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    MemorySelection selection;
    std::vector<BacktestResult> in_runs;
    std::size_t best_idx = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        BacktestResult r = run(in_seg, config, grid[k]);
        const double score = std::isnan(r.sharpe) ? -std::numeric_limits<double>::infinity() : r.sharpe;
        selection.in_sample_sharpes.emplace_back(grid[k], r.sharpe);
        in_runs.push_back(std::move(r));
        if (score > best) {  // strict: ties keep the smallest m
            best = score;
            best_idx = k;
        }
    }
    selection.chosen_m = grid[best_idx];
    selection.in_sample = std::move(in_runs[best_idx]);
    selection.out_of_sample = run(out_seg, config, selection.chosen_m);
    return selection;
}

}  // namespace anchorlab
