#pragma once

#include <optional>
#include <vector>

#include "anchorlab/analytic.hpp"

namespace anchorlab {

// Trailing-mean anchor estimate over the last `memory` observed prices.
// The anchor is defined only once the window is full.
class AnchorEstimator {
public:
    explicit AnchorEstimator(int memory);

    void update(double price);
    bool ready() const { return count_ == memory_; }
    double anchor() const;  // throws if not ready
    int memory() const { return memory_; }

private:
    int memory_;
    int count_ = 0;
    int next_ = 0;
    std::vector<double> window_;
};

enum class Mode { long_only, market_neutral };

// Current exposure: one long asset in long-only mode, a long/short pair in
// market-neutral mode, nothing during warm-up.
struct Position {
    std::optional<Asset> long_leg;
    std::optional<Asset> short_leg;

    bool flat() const { return !long_leg.has_value(); }
    friend bool operator==(const Position&, const Position&) = default;
};

// What one step observed and did. `trades_executed` counts changed
// position legs: 0 on hold, 1 for a long-only switch or entry, 2 when a
// market-neutral pair is opened or flipped.
struct StepDecision {
    std::optional<Configuration> configuration;  // nullopt: warm-up or a price tied its anchor
    Position position_after;
    int trades_executed = 0;
};

struct StepOutcome {
    double gross_return = 0.0;  // log return of the position held over the step interval
    StepDecision decision;
};

// Classifies a price pair against the anchors with strict comparisons; a
// price exactly at its anchor yields no signal.
std::optional<Configuration> classify(double price1, double price2, double anchor1, double anchor2);

// The online trading algorithm. Each step, in order: accrue the log return
// of the position held over the interval, classify the new prices against
// anchors estimated from the previous `memory` prices (the current price
// is excluded from its own anchor), reposition on a mixed-side
// configuration, then absorb the prices into the anchor windows.
class Strategy {
public:
    Strategy(Mode mode, int memory);

    StepOutcome step(double price1, double price2);

    Mode mode() const { return mode_; }
    int memory() const { return memory_; }
    const Position& position() const { return position_; }
    bool warmed_up() const { return estimator1_.ready(); }

private:
    Mode mode_;
    int memory_;
    AnchorEstimator estimator1_;
    AnchorEstimator estimator2_;
    Position position_;
    std::optional<double> prev_price1_;
    std::optional<double> prev_price2_;
};

}  // namespace anchorlab
