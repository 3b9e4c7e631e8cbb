#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "anchorlab/price_models.hpp"

namespace anchorlab {

enum class Side { below, above };

// Which of the two assets a position is in.
enum class Asset { first, second };

inline std::size_t asset_index(Asset a) { return a == Asset::first ? 0 : 1; }
inline Asset other_asset(Asset a) { return a == Asset::first ? Asset::second : Asset::first; }

// Joint above/below-anchor sign pattern of the two asset prices. The
// canonical index order is (above,below), (above,above), (below,below),
// (below,above); the whole engine indexes configurations this way.
class Configuration {
public:
    constexpr Configuration(Side first, Side second) : first_(first), second_(second) {}

    constexpr Side first() const { return first_; }
    constexpr Side second() const { return second_; }
    constexpr Side side_of(Asset a) const { return a == Asset::first ? first_ : second_; }

    std::size_t index() const;
    static Configuration from_index(std::size_t i);

    // The asset the policy forces a long position in: the one strictly
    // below its anchor while the other is above. Mixed-side patterns force
    // a holding, same-side patterns leave it unchanged.
    std::optional<Asset> forced_holding() const;

    friend bool operator==(Configuration a, Configuration b) {
        return a.first_ == b.first_ && a.second_ == b.second_;
    }

private:
    Side first_;
    Side second_;
};

inline constexpr std::size_t kNumConfigurations = 4;
inline constexpr std::array<Configuration, kNumConfigurations> kAllConfigurations = {
    Configuration{Side::above, Side::below},
    Configuration{Side::above, Side::above},
    Configuration{Side::below, Side::below},
    Configuration{Side::below, Side::above},
};

// A distribution truncated strictly to one side of an anchor and
// renormalized. The support is entirely on `side`.
struct ConditionalDistribution {
    DiscreteDistribution dist;
    double anchor;
    Side side;
};

// Markov chain over the eight (configuration, holding) pairs. State index
// is configuration_index * 2 + holding_index. Rows of `transition` sum to
// one; `stationary` is its fixed point.
struct JointChain {
    std::array<std::array<double, 8>, 8> transition{};
    std::array<double, 8> stationary{};

    static std::size_t state_index(std::size_t config, Asset held) {
        return config * 2 + asset_index(held);
    }
    // P(configuration i) from the stationary vector.
    double configuration_probability(std::size_t config) const;
    // P(held | configuration i) from the stationary vector.
    double holding_conditional(std::size_t config, Asset held) const;
};

// Per-step log-return moments of the strategy in steady state.
struct AnalyticResult {
    double mean_return_per_step = 0.0;
    double variance_per_step = 0.0;
};

// Truncates `dist` strictly to one side of `anchor` and renormalizes.
// Throws EmptySideError when no atom lies on that side.
ConditionalDistribution conditional_distribution(const DiscreteDistribution& dist, double anchor, Side side);

// Probability of a joint configuration under independent draws.
double configuration_probability(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                                 double anchor1, double anchor2, Configuration config);

// Builds the joint (configuration x holding) chain: the next configuration
// is an independent draw, the next holding is forced by mixed-side
// configurations and carried otherwise. The stationary vector is solved by
// power iteration (tolerance 1e-13 in max norm, capped at 1e6 sweeps).
JointChain build_joint_chain(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                             double anchor1, double anchor2);

// Steady-state mean per-step log return: the sum over (source
// configuration, destination configuration, held asset) of the transition
// weight times the expected log ratio of the held asset's conditional
// prices after and before the transition.
double expected_return(const JointChain& chain, const DiscreteDistribution& dist1,
                       const DiscreteDistribution& dist2, double anchor1, double anchor2);

// Same sum with a squared-log kernel, minus the squared mean.
double return_variance(const JointChain& chain, const DiscreteDistribution& dist1,
                       const DiscreteDistribution& dist2, double anchor1, double anchor2);

// Mean per-step return of the market-neutral variant (long leg minus short
// leg) in steady state. For two-point models this equals twice the
// long-only value.
double expected_return_market_neutral(const JointChain& chain, const DiscreteDistribution& dist1,
                                      const DiscreteDistribution& dist2, double anchor1, double anchor2);

// Convenience: chain build plus both moments.
AnalyticResult analyze(const DiscreteDistribution& dist1, const DiscreteDistribution& dist2,
                       double anchor1, double anchor2);
AnalyticResult analyze(const TwoPointModel& m1, const TwoPointModel& m2);

// Binomial closed form of the mean return:
//   (1/8) [ ln((a1+d1)/(a1-d1)) + ln((a2+d2)/(a2-d2)) ].
double closed_form_binomial_return(const TwoPointModel& m1, const TwoPointModel& m2);

// Binomial variance shorthand, evaluated literally:
//   15/64 ln^2(r1) + 15/64 ln^2(r2) - 1/32 ln(r2 r1),  r_i = (a_i+d_i)/(a_i-d_i).
// Its last term is linear in the logs where the others are quadratic, so
// it disagrees with return_variance and with Monte Carlo; callers surface
// the three values side by side rather than asserting any one of them.
double closed_form_binomial_variance(const TwoPointModel& m1, const TwoPointModel& m2);

}  // namespace anchorlab
