#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "anchorlab/errors.hpp"
#include "anchorlab/analytic.hpp"

using namespace anchorlab;

namespace {

// Frozen reference values, computed independently from the closed forms at
// high precision before the engine was built.
constexpr double kMeanReturnAt011 = 0.05522345789504857;    // (1/4) ln(1.11/0.89)
constexpr double kVarianceAt011 = 0.02134741211320342;      // (7/16) ln^2(1.11/0.89)
constexpr double kVarianceShorthandAt011 = 0.009066362790384377;
constexpr double kMeanReturnOneSided02 = 0.05068313851352055;  // (1/8) ln(1.2/0.8)

DiscreteDistribution symmetric_two_point(double anchor, double spread) {
    return two_point_distribution({anchor, spread});
}

// Independent stationary oracle: assemble the 8x8 transition directly from
// first principles and run a plain power iteration, without touching
// build_joint_chain.
std::array<double, 8> brute_force_stationary(const std::array<double, 4>& q) {
    // forced next holding per configuration index; -1 carries
    const int forced[4] = {1, -1, -1, 0};
    std::array<std::array<double, 8>, 8> t{};
    for (int i = 0; i < 4; ++i) {
        for (int s = 0; s < 2; ++s) {
            for (int j = 0; j < 4; ++j) {
                const int ns = forced[j] >= 0 ? forced[j] : s;
                t[i * 2 + s][j * 2 + ns] += q[j];
            }
        }
    }
    std::array<double, 8> pi{};
    pi.fill(0.125);
    for (int it = 0; it < 200000; ++it) {
        std::array<double, 8> next{};
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) next[c] += pi[r] * t[r][c];
        double diff = 0.0;
        for (int c = 0; c < 8; ++c) diff = std::max(diff, std::abs(next[c] - pi[c]));
        pi = next;
        if (diff < 1e-15) break;
    }
    return pi;
}

}  // namespace

TEST_CASE("conditional_distribution truncates and renormalizes") {
    const auto d = symmetric_two_point(1.0, 0.11);
    const auto below = conditional_distribution(d, 1.0, Side::below);
    REQUIRE(below.dist.size() == 1);
    CHECK(below.dist.atoms()[0].price == doctest::Approx(0.89).epsilon(1e-15));
    CHECK(below.dist.atoms()[0].prob == 1.0);

    const auto above = conditional_distribution(d, 1.0, Side::above);
    REQUIRE(above.dist.size() == 1);
    CHECK(above.dist.atoms()[0].price == doctest::Approx(1.11).epsilon(1e-15));
    CHECK(above.dist.atoms()[0].prob == 1.0);
}

TEST_CASE("conditional_distribution throws EmptySide when a side is empty") {
    const DiscreteDistribution d({{1.11, 1.0}});
    CHECK_THROWS_AS(conditional_distribution(d, 1.0, Side::below), EmptySideError);
    CHECK_NOTHROW(conditional_distribution(d, 1.0, Side::above));
}

TEST_CASE("conditional_distribution rejects atoms sitting exactly on the anchor") {
    const DiscreteDistribution d({{1.0, 0.5}, {2.0, 0.5}});
    CHECK_THROWS_AS(conditional_distribution(d, 1.0, Side::above), std::invalid_argument);
}

TEST_CASE("configuration probabilities multiply per-asset side masses") {
    const auto d1 = DiscreteDistribution({{0.9, 0.7}, {1.1, 0.3}});  // P(above) = 0.3
    const auto d2 = symmetric_two_point(1.0, 0.11);                  // P(above) = 0.5

    const Configuration both_above{Side::above, Side::above};
    CHECK(configuration_probability(d1, d2, 1.0, 1.0, both_above) == doctest::Approx(0.15).epsilon(1e-14));

    double total = 0.0;
    for (const auto& c : kAllConfigurations) total += configuration_probability(d1, d2, 1.0, 1.0, c);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    // symmetric two-point inputs: each configuration carries mass 1/4, exactly
    const auto sym = symmetric_two_point(1.0, 0.11);
    for (const auto& c : kAllConfigurations)
        CHECK(configuration_probability(sym, sym, 1.0, 1.0, c) == 0.25);
}

TEST_CASE("configuration table and forced holdings") {
    CHECK(Configuration{Side::above, Side::below}.forced_holding() == Asset::second);
    CHECK(Configuration{Side::below, Side::above}.forced_holding() == Asset::first);
    CHECK_FALSE(Configuration{Side::above, Side::above}.forced_holding().has_value());
    CHECK_FALSE(Configuration{Side::below, Side::below}.forced_holding().has_value());
    for (std::size_t i = 0; i < kNumConfigurations; ++i)
        CHECK(Configuration::from_index(i).index() == i);
}

TEST_CASE("joint chain: stationary vector is a fixed point with unit mass") {
    const auto d1 = DiscreteDistribution({{0.8, 0.55}, {1.2, 0.45}});
    const auto d2 = DiscreteDistribution({{0.7, 0.2}, {0.95, 0.15}, {1.3, 0.65}});
    const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);

    double mass = 0.0;
    for (double p : chain.stationary) {
        CHECK(p >= 0.0);
        mass += p;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

    for (std::size_t c = 0; c < 8; ++c) {
        double flowed = 0.0;
        for (std::size_t r = 0; r < 8; ++r) flowed += chain.stationary[r] * chain.transition[r][c];
        CHECK(std::abs(flowed - chain.stationary[c]) < 1e-10);
    }
    for (std::size_t r = 0; r < 8; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < 8; ++c) row += chain.transition[r][c];
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("joint chain: symmetric two-point inputs reproduce the quarter split") {
    const auto d = symmetric_two_point(1.0, 0.11);
    const auto chain = build_joint_chain(d, d, 1.0, 1.0);
    for (std::size_t i = 0; i < kNumConfigurations; ++i)
        CHECK(chain.configuration_probability(i) == doctest::Approx(0.25).epsilon(1e-12));
    const std::size_t both_above = Configuration{Side::above, Side::above}.index();
    CHECK(chain.holding_conditional(both_above, Asset::first) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(chain.holding_conditional(both_above, Asset::second) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("joint chain: asymmetric inputs match the brute-force stationary oracle") {
    const auto d1 = DiscreteDistribution({{0.9, 0.7}, {1.1, 0.3}});  // P(above)=0.3
    const auto d2 = symmetric_two_point(1.0, 0.11);
    const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);

    std::array<double, 4> q{};
    for (std::size_t i = 0; i < 4; ++i)
        q[i] = configuration_probability(d1, d2, 1.0, 1.0, kAllConfigurations[i]);
    const auto oracle = brute_force_stationary(q);
    for (std::size_t s = 0; s < 8; ++s) CHECK(std::abs(chain.stationary[s] - oracle[s]) < 1e-12);

    // forcing-ratio split: q1 = P(above,below), q4 = P(below,above)
    const double q1 = q[0], q4 = q[3];
    for (const Configuration& carried :
         {Configuration{Side::above, Side::above}, Configuration{Side::below, Side::below}}) {
        CHECK(chain.holding_conditional(carried.index(), Asset::first) ==
              doctest::Approx(q4 / (q1 + q4)).epsilon(1e-10));
        CHECK(chain.holding_conditional(carried.index(), Asset::second) ==
              doctest::Approx(q1 / (q1 + q4)).epsilon(1e-10));
    }
}

TEST_CASE("joint chain: marginalizing the stationary vector recovers configuration probabilities") {
    const auto d1 = DiscreteDistribution({{0.5, 0.1}, {0.8, 0.3}, {1.2, 0.6}});
    const auto d2 = DiscreteDistribution({{0.6, 0.45}, {1.4, 0.55}});
    const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);
    for (std::size_t i = 0; i < kNumConfigurations; ++i) {
        const double direct = configuration_probability(d1, d2, 1.0, 1.0, kAllConfigurations[i]);
        CHECK(std::abs(chain.configuration_probability(i) - direct) < 1e-10);
    }
}

TEST_CASE("property: chain invariants hold across randomized distributions") {
    Rng rng = make_rng(987654321);
    const auto random_dist = [&](int atoms) {
        std::vector<Atom> out;
        double price = 0.3 + (rng() % 1000) / 2500.0;
        double total = 0.0;
        for (int k = 0; k < atoms; ++k) {
            price += 0.05 + (rng() % 1000) / 1500.0;
            const double w = 1.0 + (rng() % 1000) / 100.0;
            out.push_back({price, w});
            total += w;
        }
        for (auto& a : out) a.prob /= total;
        // force mass on both sides of the anchor at 1.0
        out.front().price = std::min(out.front().price, 0.5);
        return DiscreteDistribution(out);
    };

    for (int trial = 0; trial < 12; ++trial) {
        const auto d1 = random_dist(2 + static_cast<int>(rng() % 4));
        const auto d2 = random_dist(2 + static_cast<int>(rng() % 4));
        if (d1.mass_above(1.0) == 0.0 || d2.mass_above(1.0) == 0.0) continue;

        const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);
        // fixed point
        for (std::size_t c = 0; c < 8; ++c) {
            double flowed = 0.0;
            for (std::size_t r = 0; r < 8; ++r) flowed += chain.stationary[r] * chain.transition[r][c];
            CHECK(std::abs(flowed - chain.stationary[c]) < 1e-10);
        }
        // marginalization recovers the configuration probabilities
        for (std::size_t i = 0; i < kNumConfigurations; ++i) {
            const double direct = configuration_probability(d1, d2, 1.0, 1.0, kAllConfigurations[i]);
            CHECK(std::abs(chain.configuration_probability(i) - direct) < 1e-10);
        }
        // label swap leaves both moments unchanged
        const auto fwd = analyze(d1, d2, 1.0, 1.0);
        const auto rev = analyze(d2, d1, 1.0, 1.0);
        CHECK(fwd.mean_return_per_step == doctest::Approx(rev.mean_return_per_step).epsilon(1e-11));
        CHECK(fwd.variance_per_step == doctest::Approx(rev.variance_per_step).epsilon(1e-11));
        CHECK(fwd.variance_per_step >= 0.0);
    }
}

TEST_CASE("expected_return reproduces the binomial closed form") {
    const TwoPointModel m{1.0, 0.11};
    const auto d = two_point_distribution(m);
    const auto chain = build_joint_chain(d, d, 1.0, 1.0);
    const double engine = expected_return(chain, d, d, 1.0, 1.0);
    CHECK(engine == doctest::Approx(kMeanReturnAt011).epsilon(1e-12));
    CHECK(std::abs(engine - closed_form_binomial_return(m, m)) < 1e-12);
}

TEST_CASE("expected_return equals the closed form across the parameter grid") {
    for (double anchor : {0.5, 1.0, 2.0}) {
        for (double rel : {0.01, 0.1, 0.3}) {
            const TwoPointModel m1{anchor, rel * anchor};
            const TwoPointModel m2{anchor, 0.11 * anchor};
            const auto d1 = two_point_distribution(m1);
            const auto d2 = two_point_distribution(m2);
            const auto chain = build_joint_chain(d1, d2, m1.anchor, m2.anchor);
            const double engine = expected_return(chain, d1, d2, m1.anchor, m2.anchor);
            CHECK(std::abs(engine - closed_form_binomial_return(m1, m2)) < 1e-12);
            CHECK(engine >= 0.0);
        }
    }
}

TEST_CASE("expected_return in the one-sided narrow limit") {
    const TwoPointModel wide{1.0, 0.2};
    const TwoPointModel narrow{1.0, 1e-9};
    const auto d1 = two_point_distribution(wide);
    const auto d2 = two_point_distribution(narrow);
    const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);
    CHECK(expected_return(chain, d1, d2, 1.0, 1.0) ==
          doctest::Approx(kMeanReturnOneSided02).epsilon(1e-8));

    // both spreads narrow: the return vanishes
    const auto dn = two_point_distribution(narrow);
    const auto chain2 = build_joint_chain(dn, dn, 1.0, 1.0);
    CHECK(std::abs(expected_return(chain2, dn, dn, 1.0, 1.0)) < 1e-8);
}

TEST_CASE("return_variance on the symmetric binomial point") {
    const auto d = symmetric_two_point(1.0, 0.11);
    const auto chain = build_joint_chain(d, d, 1.0, 1.0);
    const double var = return_variance(chain, d, d, 1.0, 1.0);
    CHECK(var == doctest::Approx(kVarianceAt011).epsilon(1e-12));
    CHECK(var >= 0.0);

    const auto narrow = symmetric_two_point(1.0, 1e-9);
    const auto chain2 = build_joint_chain(narrow, narrow, 1.0, 1.0);
    CHECK(return_variance(chain2, narrow, narrow, 1.0, 1.0) < 1e-15);
}

TEST_CASE("label-swap symmetry leaves both moments unchanged") {
    const auto d1 = DiscreteDistribution({{0.7, 0.35}, {1.25, 0.65}});
    const auto d2 = DiscreteDistribution({{0.85, 0.5}, {1.05, 0.2}, {1.6, 0.3}});
    const auto fwd = analyze(d1, d2, 1.0, 1.0);
    const auto rev = analyze(d2, d1, 1.0, 1.0);
    CHECK(fwd.mean_return_per_step == doctest::Approx(rev.mean_return_per_step).epsilon(1e-12));
    CHECK(fwd.variance_per_step == doctest::Approx(rev.variance_per_step).epsilon(1e-12));
}

TEST_CASE("market-neutral steady-state mean doubles the long-only value on two-point inputs") {
    const TwoPointModel m1{1.0, 0.07};
    const TwoPointModel m2{1.0, 0.19};
    const auto d1 = two_point_distribution(m1);
    const auto d2 = two_point_distribution(m2);
    const auto chain = build_joint_chain(d1, d2, 1.0, 1.0);
    const double lo = expected_return(chain, d1, d2, 1.0, 1.0);
    const double mn = expected_return_market_neutral(chain, d1, d2, 1.0, 1.0);
    CHECK(mn == doctest::Approx(2.0 * lo).epsilon(1e-12));
}

TEST_CASE("closed-form binomial values match their frozen references") {
    const TwoPointModel m{1.0, 0.11};
    CHECK(closed_form_binomial_return(m, m) == doctest::Approx(kMeanReturnAt011).epsilon(1e-14));
    CHECK(closed_form_binomial_variance(m, m) ==
          doctest::Approx(kVarianceShorthandAt011).epsilon(1e-12));

    const TwoPointModel narrow{1.0, 1e-12};
    CHECK(std::abs(closed_form_binomial_return(narrow, narrow)) < 1e-11);
    CHECK(std::abs(closed_form_binomial_variance(narrow, narrow)) < 1e-11);
}

TEST_CASE("variance shorthand disagrees with the engine; the gap is reported, not asserted away") {
    const TwoPointModel m{1.0, 0.11};
    const auto d = two_point_distribution(m);
    const auto chain = build_joint_chain(d, d, 1.0, 1.0);
    const double engine = return_variance(chain, d, d, 1.0, 1.0);
    const double shorthand = closed_form_binomial_variance(m, m);
    // the two formulas genuinely differ at these parameters
    CHECK(std::abs(engine - shorthand) > 1e-3);
}
