#include <doctest.h>

#include <cmath>

#include "certlab/arm_model.hpp"
#include "certlab/certificates.hpp"
#include "certlab/trial_engine.hpp"

using namespace certlab;

TEST_SUITE_BEGIN("certificates");

TEST_CASE("hoeffding widths match the closed form") {
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    // sqrt(ln(20)/500) and sqrt(ln(20)/1000), m = floor(s2/k)
    CHECK(half_width(4, 1000, 0.1, eq3) == doctest::Approx(0.07740455120409899).epsilon(1e-12));
    CHECK(half_width(1, 500, 0.1, eq3) == doctest::Approx(0.054733283051119734).epsilon(1e-12));
}

TEST_CASE("width scales with sqrt(k) when budgets divide evenly") {
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    CHECK(half_width(4, 1000, 0.1, eq3) ==
          doctest::Approx(2.0 * half_width(1, 1000, 0.1, eq3)).epsilon(1e-12));
    // equal per-arm counts give equal widths
    const double w1 = half_width(1, 1000, 0.1, eq3);
    const double w4 = half_width(4, 4000, 0.1, eq3);
    CHECK(w4 == doctest::Approx(w1).epsilon(1e-12));
}

TEST_CASE("certificate value subtracts the width") {
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    CHECK(certificate_value(0.6, 1, 8, 0.1, eq3) ==
          doctest::Approx(0.16729540434942863).epsilon(1e-12));
    // floor(16/2) = 8 gives the same per-arm count, hence the same value
    CHECK(certificate_value(0.6, 2, 16, 0.1, eq3) ==
          doctest::Approx(0.16729540434942863).epsilon(1e-12));
    CHECK(certificate_value(0.25, 3, 300, 0.05, eq3) ==
          doctest::Approx(0.25 - half_width(3, 300, 0.05, eq3)).epsilon(1e-14));
}

TEST_CASE("monotonicity in k, s2 and delta") {
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    for (int k = 1; k < 8; ++k)
        CHECK(half_width(k + 1, 5000, 0.1, eq3) >= half_width(k, 5000, 0.1, eq3));
    for (long long s2 : {100, 200, 400, 800, 1600})
        CHECK(half_width(3, 2 * s2, 0.1, eq3) <= half_width(3, s2, 0.1, eq3));
    for (double d : {0.01, 0.05, 0.1, 0.2, 0.4})
        CHECK(half_width(3, 500, 2 * d, eq3) <= half_width(3, 500, d, eq3));
}

TEST_CASE("preset identities") {
    // omniscient width equals sqrt(ln(1/delta) k/(2 s2)) when s2 divides by k
    const BoundKind omni = BoundKind::omniscient_c();
    for (int k : {1, 2, 4, 5}) {
        const long long s2 = 1000;
        CHECK(half_width(k, s2, 0.1, omni) ==
              doctest::Approx(std::sqrt(std::log(10.0) * k / (2.0 * s2))).epsilon(1e-12));
    }
    const BoundKind prop1 = BoundKind::prop1_c();
    CHECK(half_width(3, 300, 0.1, prop1) ==
          doctest::Approx(std::sqrt(2.0 * std::log(10.0) * 3 / 300.0)).epsilon(1e-12));
    const BoundKind subg = BoundKind::subgaussian();
    CHECK(half_width(2, 500, 0.1, subg) ==
          doctest::Approx(std::sqrt(2.0 / 250.0 * std::log(20.0))).epsilon(1e-12));
}

TEST_CASE("bound names round-trip") {
    for (const char* name : {"eq3", "prop1", "omniscient", "subgaussian"})
        CHECK(BoundKind::from_name(name).name() == name);
    CHECK_THROWS_AS(BoundKind::from_name("bernstein"), config_error);
}

TEST_CASE("bonferroni flag divides delta by k") {
    BoundKind eq3 = BoundKind::eq3_hoeffding();
    BoundKind bonf = eq3;
    bonf.bonferroni = true;
    CHECK(half_width(1, 500, 0.1, bonf) == half_width(1, 500, 0.1, eq3));
    CHECK(half_width(4, 1000, 0.1, bonf) ==
          doctest::Approx(half_width(4, 1000, 0.025, eq3)).epsilon(1e-12));
}

TEST_CASE("infeasible and invalid inputs") {
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    CHECK_THROWS_AS(half_width(10, 5, 0.1, eq3), infeasible_design);
    CHECK_THROWS_AS(half_width(0, 5, 0.1, eq3), std::domain_error);
    CHECK_THROWS_AS(half_width(1, 5, 1.5, eq3), std::domain_error);
}

TEST_CASE("second-stage coverage holds per arm for a fixed retained set") {
    // Fixed k arms, repeated second stages: l_i <= mu_i must hold with
    // frequency >= 1 - delta - 3 sqrt(delta(1-delta)/reps).
    const MeanVector mu = {0.8, 0.5, 0.3};
    const ArmSet retained = ArmSet::all(3);
    const OutcomeModel model{OutcomeKind::bernoulli, 1.0};
    const long long s2 = 300;
    const double delta = 0.1;
    const BoundKind eq3 = BoundKind::eq3_hoeffding();
    const int reps = 10000;
    const double w = half_width(3, s2, delta, eq3);

    std::vector<int> hits(3, 0);
    Rng rng(2024);
    for (int rep = 0; rep < reps; ++rep) {
        StageData stage = run_uniform_stage(mu, retained, s2, model, rng);
        for (int arm = 0; arm < 3; ++arm)
            if (stage.mean(arm) - w <= mu[arm]) hits[arm] += 1;
    }
    const double floor = 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / reps);
    for (int arm = 0; arm < 3; ++arm)
        CHECK(static_cast<double>(hits[arm]) / reps >= floor);
}

TEST_SUITE_END();
