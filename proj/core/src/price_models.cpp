#include "anchorlab/price_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anchorlab/errors.hpp"

namespace anchorlab {

namespace {
constexpr double kProbSumTol = 1e-12;
}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("distribution needs at least one atom");
    double sum = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (!(a.price > 0.0)) throw std::invalid_argument("atom price must be strictly positive");
        if (a.prob < 0.0) throw std::invalid_argument("atom probability must be nonnegative");
        if (i > 0 && !(atoms_[i - 1].price < a.price))
            throw std::invalid_argument("atom prices must be strictly ascending");
        sum += a.prob;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
        throw std::invalid_argument("atom probabilities must sum to 1, got " + std::to_string(sum));
}

double DiscreteDistribution::mass_above(double level) const {
    double m = 0.0;
    for (const Atom& a : atoms_)
        if (a.price > level) m += a.prob;
    return m;
}

double DiscreteDistribution::mass_below(double level) const {
    double m = 0.0;
    for (const Atom& a : atoms_)
        if (a.price < level) m += a.prob;
    return m;
}

void TwoPointModel::validate() const {
    if (!(anchor > 0.0)) throw std::invalid_argument("anchor must be positive");
    if (!(half_spread > 0.0)) throw std::invalid_argument("half_spread must be positive");
    if (!(half_spread < anchor)) throw std::invalid_argument("half_spread must be smaller than anchor");
}

void DriftingTwoPointModel::validate(std::int64_t steps) const {
    base.validate();
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    // Linear anchor path: the extremes occur at the ends of the horizon.
    for (std::int64_t t : {std::int64_t{0}, steps - 1}) {
        if (!(anchor_at(t) - base.half_spread > 0.0))
            throw std::invalid_argument("anchor path crosses positivity bound at step " + std::to_string(t));
    }
}

void PriceSeries::validate() const {
    if (prices.empty()) throw EmptySeriesError("price series is empty");
    if (timestamps.size() != prices.size())
        throw std::invalid_argument("timestamps and prices differ in length");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0)) throw std::invalid_argument("prices must be strictly positive");
        if (i > 0 && !(timestamps[i - 1] < timestamps[i]))
            throw std::invalid_argument("timestamps must be strictly increasing");
    }
}

DiscreteDistribution two_point_distribution(const TwoPointModel& model) {
    model.validate();
    return DiscreteDistribution{{{model.low(), 0.5}, {model.high(), 0.5}}};
}

PriceSeries sample_anchored_series(const TwoPointModel& model, std::int64_t steps, std::uint64_t seed) {
    model.validate();
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    Rng rng = make_rng(seed);
    PriceSeries out;
    out.axis = TimeAxis::index;
    out.timestamps.reserve(steps);
    out.prices.reserve(steps);
    for (std::int64_t t = 0; t < steps; ++t) {
        out.timestamps.push_back(t);
        out.prices.push_back(coin_flip(rng) ? model.high() : model.low());
    }
    return out;
}

PriceSeries sample_drifting_series(const DriftingTwoPointModel& model, std::int64_t steps, std::uint64_t seed) {
    model.validate(steps);
    Rng rng = make_rng(seed);
    PriceSeries out;
    out.axis = TimeAxis::index;
    out.timestamps.reserve(steps);
    out.prices.reserve(steps);
    for (std::int64_t t = 0; t < steps; ++t) {
        const double anchor = model.anchor_at(t);
        const double spread = model.base.half_spread * (anchor / model.base.anchor);
        out.timestamps.push_back(t);
        out.prices.push_back(coin_flip(rng) ? anchor + spread : anchor - spread);
    }
    return out;
}

PriceSeries sample_random_walk(double initial, double step_vol, std::int64_t steps, std::uint64_t seed) {
    if (!(initial > 0.0)) throw std::invalid_argument("initial price must be positive");
    if (step_vol < 0.0) throw std::invalid_argument("step_vol must be nonnegative");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    Rng rng = make_rng(seed);
    PriceSeries out;
    out.axis = TimeAxis::index;
    out.timestamps.reserve(steps);
    out.prices.reserve(steps);
    double cum_log = 0.0;
    for (std::int64_t t = 0; t < steps; ++t) {
        cum_log += coin_flip(rng) ? step_vol : -step_vol;
        out.timestamps.push_back(t);
        out.prices.push_back(initial * std::exp(cum_log));
    }
    return out;
}

}  // namespace anchorlab
