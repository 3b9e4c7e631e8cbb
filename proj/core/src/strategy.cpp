#include "anchorlab/strategy.hpp"

#include <cmath>
#include <stdexcept>

namespace anchorlab {

AnchorEstimator::AnchorEstimator(int memory) : memory_(memory) {
    if (memory < 1) throw std::invalid_argument("memory must be >= 1");
    window_.resize(static_cast<std::size_t>(memory), 0.0);
}

void AnchorEstimator::update(double price) {
    if (!(price > 0.0)) throw std::invalid_argument("price must be positive");
    window_[static_cast<std::size_t>(next_)] = price;
    next_ = (next_ + 1) % memory_;
    if (count_ < memory_) ++count_;
}

double AnchorEstimator::anchor() const {
    if (!ready()) throw std::logic_error("anchor undefined until the window is full");
    double sum = 0.0;
    for (double p : window_) sum += p;
    return sum / static_cast<double>(memory_);
}

std::optional<Configuration> classify(double price1, double price2, double anchor1, double anchor2) {
    if (price1 == anchor1 || price2 == anchor2) return std::nullopt;
    return Configuration{price1 > anchor1 ? Side::above : Side::below,
                         price2 > anchor2 ? Side::above : Side::below};
}

Strategy::Strategy(Mode mode, int memory)
    : mode_(mode), memory_(memory), estimator1_(memory), estimator2_(memory) {}

StepOutcome Strategy::step(double price1, double price2) {
    if (!(price1 > 0.0) || !(price2 > 0.0)) throw std::invalid_argument("prices must be positive");

    StepOutcome out;

    // 1. Accrue the return of the position held over (t-1, t].
    if (!position_.flat() && prev_price1_.has_value()) {
        const auto leg_return = [&](Asset a) {
            const double now = a == Asset::first ? price1 : price2;
            const double prev = a == Asset::first ? *prev_price1_ : *prev_price2_;
            return std::log(now / prev);
        };
        out.gross_return = leg_return(*position_.long_leg);
        if (mode_ == Mode::market_neutral) out.gross_return -= leg_return(*position_.short_leg);
    }

    // 2. Classify against anchors built from the previous `memory` prices.
    std::optional<Configuration> config;
    if (estimator1_.ready() && estimator2_.ready())
        config = classify(price1, price2, estimator1_.anchor(), estimator2_.anchor());
    out.decision.configuration = config;

    // 3. Reposition only when a mixed-side configuration names a cheap asset.
    if (config.has_value()) {
        if (const auto forced = config->forced_holding(); forced.has_value()) {
            Position want;
            want.long_leg = *forced;
            if (mode_ == Mode::market_neutral) want.short_leg = other_asset(*forced);
            if (want != position_) {
                out.decision.trades_executed = mode_ == Mode::market_neutral ? 2 : 1;
                position_ = want;
            }
        }
    }
    out.decision.position_after = position_;

    // 4. Absorb the new prices into the anchor windows.
    estimator1_.update(price1);
    estimator2_.update(price2);
    prev_price1_ = price1;
    prev_price2_ = price2;
    return out;
}

}  // namespace anchorlab
