#pragma once

#include <cstdint>
#include <vector>

#include "anchorlab/rng.hpp"

namespace anchorlab {

// One support point of a finite price distribution.
struct Atom {
    double price = 0.0;
    double prob = 0.0;
};

// Finite distribution over strictly positive prices. Atoms are kept sorted
// ascending by price, prices are strictly distinct, probabilities are
// nonnegative and sum to one within 1e-12.
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    // Probability mass strictly above / strictly below the given level.
    double mass_above(double level) const;
    double mass_below(double level) const;

    // E[f(price)] over the distribution.
    template <typename F>
    double expectation(F&& f) const {
        double acc = 0.0;
        for (const Atom& a : atoms_) acc += a.prob * f(a.price);
        return acc;
    }

private:
    std::vector<Atom> atoms_;
};

// Price taking the two values anchor +- half_spread, each with probability
// one half. half_spread must be positive and smaller than the anchor so
// both prices stay positive.
struct TwoPointModel {
    double anchor = 1.0;
    double half_spread = 0.1;

    void validate() const;
    double low() const { return anchor - half_spread; }
    double high() const { return anchor + half_spread; }
};

// Two-point model whose anchor moves by a fixed additive amount each step.
// The spread scales with the anchor level so the fluctuation stays the
// same fraction of the price; with drift_per_step == 0 this reduces
// bit-exactly to the plain model.
struct DriftingTwoPointModel {
    TwoPointModel base;
    double drift_per_step = 0.0;

    // Anchor after t drift steps.
    double anchor_at(std::int64_t t) const { return base.anchor + static_cast<double>(t) * drift_per_step; }
    // Checks base validity and positivity of anchor - spread over t = 0..steps-1.
    void validate(std::int64_t steps) const;
};

enum class TimeAxis { index, date };

// A positive price per strictly increasing timestamp. Timestamps are plain
// step indices for synthetic series and epoch-day ordinals for dated ones.
struct PriceSeries {
    std::vector<std::int64_t> timestamps;
    std::vector<double> prices;
    TimeAxis axis = TimeAxis::index;

    std::size_t size() const { return prices.size(); }
    void validate() const;
};

class Configuration;  // analytic.hpp

// The two-atom distribution {anchor - dA: 1/2, anchor + dA: 1/2}.
DiscreteDistribution two_point_distribution(const TwoPointModel& model);

// I.i.d. draws from the two-point model; indices 0..steps-1.
PriceSeries sample_anchored_series(const TwoPointModel& model, std::int64_t steps, std::uint64_t seed);

// Same, with the anchor drifting linearly; rejects horizons over which the
// low price would become non-positive.
PriceSeries sample_drifting_series(const DriftingTwoPointModel& model, std::int64_t steps, std::uint64_t seed);

// Null model: log price takes i.i.d. +-step_vol increments from `initial`.
PriceSeries sample_random_walk(double initial, double step_vol, std::int64_t steps, std::uint64_t seed);

}  // namespace anchorlab
