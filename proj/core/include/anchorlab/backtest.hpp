#pragma once

#include <span>
#include <string>
#include <vector>

#include "anchorlab/price_models.hpp"
#include "anchorlab/strategy.hpp"

namespace anchorlab {

enum class Resample { none, weekly };

struct BacktestConfig {
    Mode mode = Mode::market_neutral;
    std::vector<int> memory_grid = {5, 10, 15};
    double cost_rate = 0.0;        // proportional cost per changed position leg
    double split_fraction = 0.5;   // in-sample share for memory selection
    double cadence = 252.0;        // periods per year, for Sharpe annualization
    Resample resample = Resample::none;

    void validate() const;
};

// Two price series on identical strictly-increasing timestamps.
struct AlignedPair {
    PriceSeries first;
    PriceSeries second;

    std::size_t size() const { return first.size(); }
};

struct BacktestResult {
    std::vector<double> per_step_returns;  // net log returns, one per input step
    std::vector<double> equity_curve;      // running sum of per_step_returns
    long n_trades = 0;                     // changed position legs
    double total_cost = 0.0;               // sum of per-leg log cost terms, <= 0
    double sharpe = 0.0;                   // annualized, warm-up steps excluded; NaN if undefined
    int memory = 0;                        // the m this run used
    std::size_t warmup_steps = 0;          // leading steps excluded from the Sharpe

    // Net returns after the warm-up, the slice performance stats run on.
    std::span<const double> active_returns() const {
        return std::span<const double>(per_step_returns).subspan(warmup_steps);
    }
};

// Result of in-sample memory selection plus the out-of-sample rerun.
struct MemorySelection {
    int chosen_m = 0;
    BacktestResult in_sample;
    BacktestResult out_of_sample;
    std::vector<std::pair<int, double>> in_sample_sharpes;  // (m, sharpe) per grid entry
};

// Reads a delimited text file with a header row into a dated series. Rows
// are sorted by date; a malformed date, a duplicate date, or a non-positive
// price raises ParseError naming the line.
PriceSeries load_price_series(const std::string& path, const std::string& date_column,
                              const std::string& price_column);

// Intersection of the two series' timestamps, order preserved. Throws
// InsufficientOverlapError when fewer than two shared points remain.
AlignedPair align(const PriceSeries& a, const PriceSeries& b);

// Keeps the last observation of each ISO week. Requires dated input.
PriceSeries resample_weekly(const PriceSeries& series);

// Drives the strategy over the pair with the given memory. Net per-step
// return is the gross strategy return plus trades * ln(1 - cost_rate).
BacktestResult run(const AlignedPair& pair, const BacktestConfig& config, int memory);

// Splits the pair at floor(split_fraction * length), picks the memory with
// the highest in-sample Sharpe (ties go to the smallest m), and reruns the
// winner on the held-out segment with fresh warm-up.
MemorySelection select_memory_in_sample(const AlignedPair& pair, const BacktestConfig& config);

}  // namespace anchorlab
