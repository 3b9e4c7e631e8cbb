#include "anchorlab/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anchorlab/errors.hpp"

namespace anchorlab {

namespace {

constexpr double kStationaryTol = 1e-13;
constexpr std::int64_t kMaxPowerIterations = 1'000'000;

// Analytic inputs require every atom strictly off the anchor, otherwise
// the four-configuration partition would not be exhaustive.
void reject_atoms_at_anchor(const DiscreteDistribution& dist, double anchor, const char* which) {
    for (const Atom& a : dist.atoms()) {
        if (a.price == anchor)
            throw std::invalid_argument(std::string(which) + ": atom exactly at the anchor is not allowed");
    }
}

double side_mass(const DiscreteDistribution& dist, double anchor, Side side) {
    return side == Side::above ? dist.mass_above(anchor) : dist.mass_below(anchor);
}

// Log-price moments of the side-conditional distributions, precomputed per
// (asset, side).
struct LogMoments {
    // [asset][side]: E[ln A] and E[ln^2 A] under the conditional law.
    std::array<std::array<double, 2>, 2> mean{};
    std::array<std::array<double, 2>, 2> second{};

    double mu(Asset a, Side s) const { return mean[asset_index(a)][s == Side::above ? 1 : 0]; }
    double nu(Asset a, Side s) const { return second[asset_index(a)][s == Side::above ? 1 : 0]; }
};

LogMoments conditional_log_moments(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                                   double anchor1, double anchor2) {
    LogMoments m;
    const DiscreteDistribution* dists[2] = {&dist1, &dist2};
    const double anchors[2] = {anchor1, anchor2};
    for (std::size_t a = 0; a < 2; ++a) {
        for (Side side : {Side::below, Side::above}) {
            ConditionalDistribution cond = conditional_distribution(*dists[a], anchors[a], side);
            const std::size_t s = side == Side::above ? 1 : 0;
            m.mean[a][s] = cond.dist.expectation([](double p) { return std::log(p); });
            m.second[a][s] = cond.dist.expectation([](double p) {
                const double l = std::log(p);
                return l * l;
            });
        }
    }
    return m;
}

std::array<double, kNumConfigurations> configuration_probabilities(const DiscreteDistribution& dist1,
                                                                   const DiscreteDistribution& dist2,
                                                                   double anchor1, double anchor2) {
    std::array<double, kNumConfigurations> q{};
    for (std::size_t i = 0; i < kNumConfigurations; ++i)
        q[i] = configuration_probability(dist1, dist2, anchor1, anchor2, kAllConfigurations[i]);
    return q;
}

// Shared accumulation for the mean / second-moment sums. `kernel` receives
// the conditional log moments of the held (and, for the market-neutral
// variant, shorted) asset before and after the transition.
template <typename Kernel>
double quadruple_sum(const JointChain& chain, const LogMoments& m, Kernel&& kernel) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kNumConfigurations; ++i) {
        const double qi = chain.configuration_probability(i);
        for (std::size_t j = 0; j < kNumConfigurations; ++j) {
            const double qj = chain.configuration_probability(j);
            for (Asset held : {Asset::first, Asset::second}) {
                const double w = qi * qj * chain.holding_conditional(i, held);
                if (w == 0.0) continue;
                acc += w * kernel(kAllConfigurations[i], kAllConfigurations[j], held, m);
            }
        }
    }
    return acc;
}

}  // namespace

std::size_t Configuration::index() const {
    for (std::size_t i = 0; i < kNumConfigurations; ++i)
        if (kAllConfigurations[i] == *this) return i;
    return 0;  // unreachable: all four patterns are enumerated
}

Configuration Configuration::from_index(std::size_t i) {
    if (i >= kNumConfigurations) throw std::out_of_range("configuration index must be 0..3");
    return kAllConfigurations[i];
}

std::optional<Asset> Configuration::forced_holding() const {
    if (first_ == Side::above && second_ == Side::below) return Asset::second;
    if (first_ == Side::below && second_ == Side::above) return Asset::first;
    return std::nullopt;
}

double JointChain::configuration_probability(std::size_t config) const {
    return stationary[state_index(config, Asset::first)] + stationary[state_index(config, Asset::second)];
}

double JointChain::holding_conditional(std::size_t config, Asset held) const {
    const double q = configuration_probability(config);
    if (q <= 0.0) return 0.0;
    return stationary[state_index(config, held)] / q;
}

ConditionalDistribution conditional_distribution(const DiscreteDistribution& dist, double anchor, Side side) {
    if (!(anchor > 0.0)) throw std::invalid_argument("anchor must be positive");
    reject_atoms_at_anchor(dist, anchor, "conditional_distribution");
    std::vector<Atom> kept;
    double mass = 0.0;
    for (const Atom& a : dist.atoms()) {
        const bool on_side = side == Side::above ? a.price > anchor : a.price < anchor;
        if (on_side && a.prob > 0.0) {
            kept.push_back(a);
            mass += a.prob;
        }
    }
    if (kept.empty() || mass <= 0.0)
        throw EmptySideError(std::string("no probability mass ") +
                             (side == Side::above ? "above" : "below") + " anchor " + std::to_string(anchor));
    for (Atom& a : kept) a.prob /= mass;
    return ConditionalDistribution{DiscreteDistribution{std::move(kept)}, anchor, side};
}

double configuration_probability(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                                 double anchor1, double anchor2, Configuration config) {
    reject_atoms_at_anchor(dist1, anchor1, "configuration_probability");
    reject_atoms_at_anchor(dist2, anchor2, "configuration_probability");
    const double p1 = side_mass(dist1, anchor1, config.first());
    const double p2 = side_mass(dist2, anchor2, config.second());
    if (side_mass(dist1, anchor1, Side::above) == 0.0 || side_mass(dist1, anchor1, Side::below) == 0.0)
        throw EmptySideError("first distribution has no mass on one side of its anchor");
    if (side_mass(dist2, anchor2, Side::above) == 0.0 || side_mass(dist2, anchor2, Side::below) == 0.0)
        throw EmptySideError("second distribution has no mass on one side of its anchor");
    return p1 * p2;
}

JointChain build_joint_chain(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                             double anchor1, double anchor2) {
    const auto q = configuration_probabilities(dist1, dist2, anchor1, anchor2);

    JointChain chain;
    for (std::size_t i = 0; i < kNumConfigurations; ++i) {
        for (Asset held : {Asset::first, Asset::second}) {
            const std::size_t row = JointChain::state_index(i, held);
            for (std::size_t j = 0; j < kNumConfigurations; ++j) {
                const Asset next = kAllConfigurations[j].forced_holding().value_or(held);
                chain.transition[row][JointChain::state_index(j, next)] += q[j];
            }
        }
    }

    // Power iteration from the uniform vector.
    std::array<double, 8> pi{};
    pi.fill(1.0 / 8.0);
    bool converged = false;
    for (std::int64_t it = 0; it < kMaxPowerIterations; ++it) {
        std::array<double, 8> next{};
        for (std::size_t r = 0; r < 8; ++r) {
            const double w = pi[r];
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < 8; ++c) next[c] += w * chain.transition[r][c];
        }
        double diff = 0.0;
        for (std::size_t c = 0; c < 8; ++c) diff = std::max(diff, std::abs(next[c] - pi[c]));
        pi = next;
        if (diff < kStationaryTol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw SolverError("stationary vector did not converge");
    chain.stationary = pi;
    return chain;
}

double expected_return(const JointChain& chain, const DiscreteDistribution& dist1,
                       const DiscreteDistribution& dist2, double anchor1, double anchor2) {
    const LogMoments m = conditional_log_moments(dist1, dist2, anchor1, anchor2);
    return quadruple_sum(chain, m, [](Configuration from, Configuration to, Asset held, const LogMoments& lm) {
        return lm.mu(held, to.side_of(held)) - lm.mu(held, from.side_of(held));
    });
}

double return_variance(const JointChain& chain, const DiscreteDistribution& dist1,
                       const DiscreteDistribution& dist2, double anchor1, double anchor2) {
    const LogMoments m = conditional_log_moments(dist1, dist2, anchor1, anchor2);
    const double mean = expected_return(chain, dist1, dist2, anchor1, anchor2);
    // E[(ln A' - ln A)^2] expands into the conditional first and second
    // log moments since the draws before and after are independent.
    const double second =
        quadruple_sum(chain, m, [](Configuration from, Configuration to, Asset held, const LogMoments& lm) {
            const Side sf = from.side_of(held);
            const Side st = to.side_of(held);
            return lm.nu(held, st) - 2.0 * lm.mu(held, st) * lm.mu(held, sf) + lm.nu(held, sf);
        });
    double var = second - mean * mean;
    if (var < -1e-12) throw NegativeVarianceError("variance " + std::to_string(var) + " below -1e-12");
    return var < 0.0 ? 0.0 : var;
}

double expected_return_market_neutral(const JointChain& chain, const DiscreteDistribution& dist1,
                                      const DiscreteDistribution& dist2, double anchor1, double anchor2) {
    const LogMoments m = conditional_log_moments(dist1, dist2, anchor1, anchor2);
    return quadruple_sum(chain, m, [](Configuration from, Configuration to, Asset held, const LogMoments& lm) {
        const Asset shorted = other_asset(held);
        const double long_leg = lm.mu(held, to.side_of(held)) - lm.mu(held, from.side_of(held));
        const double short_leg = lm.mu(shorted, to.side_of(shorted)) - lm.mu(shorted, from.side_of(shorted));
        return long_leg - short_leg;
    });
}

AnalyticResult analyze(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                       double anchor1, double anchor2) {
    const JointChain chain = build_joint_chain(dist1, dist2, anchor1, anchor2);
    return AnalyticResult{expected_return(chain, dist1, dist2, anchor1, anchor2),
                          return_variance(chain, dist1, dist2, anchor1, anchor2)};
}

AnalyticResult analyze(const TwoPointModel& m1, const TwoPointModel& m2) {
    return analyze(two_point_distribution(m1), two_point_distribution(m2), m1.anchor, m2.anchor);
}

double closed_form_binomial_return(const TwoPointModel& m1, const TwoPointModel& m2) {
    m1.validate();
    m2.validate();
    return 0.125 * (std::log(m1.high() / m1.low()) + std::log(m2.high() / m2.low()));
}

double closed_form_binomial_variance(const TwoPointModel& m1, const TwoPointModel& m2) {
    m1.validate();
    m2.validate();
    const double l1 = std::log(m1.high() / m1.low());
    const double l2 = std::log(m2.high() / m2.low());
    return 15.0 / 64.0 * l1 * l1 + 15.0 / 64.0 * l2 * l2 -
           1.0 / 32.0 * std::log((m2.high() / m2.low()) * (m1.high() / m1.low()));
}

}  // namespace anchorlab
