#include <doctest.h>

#include "erabeam/validation.hpp"

TEST_CASE("the fast invariant suite passes on a pristine build") {
    for (const era::validation::CheckResult& check : era::validation::run_all_checks()) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.passed);
    }
}

TEST_CASE("orthonormality deviation is tiny at L = 4") {
    const era::validation::CheckResult check = era::validation::check_orthonormality(4);
    CHECK(check.passed);
    CHECK(check.value < 1e-12);
}

TEST_CASE("an injected gradient sign bug trips the gradient check") {
    const era::validation::GradientFn flipped =
        [](const era::synthesis::SynthesisProblem& problem,
           const era::manifold::ProductPoint& x, const Eigen::VectorXd& psi) {
            era::manifold::ProductTangent grad = problem.euclidean_gradient(x, psi);
            grad.coeffs = -grad.coeffs;
            return grad;
        };
    const era::validation::CheckResult check =
        era::validation::check_gradient(4, 7, 1e-5, 1e-6, flipped);
    CHECK(!check.passed);
}

TEST_CASE("a scaled gradient also trips the check") {
    const era::validation::GradientFn scaled =
        [](const era::synthesis::SynthesisProblem& problem,
           const era::manifold::ProductPoint& x, const Eigen::VectorXd& psi) {
            era::manifold::ProductTangent grad = problem.euclidean_gradient(x, psi);
            grad.coeffs *= 1.01;
            grad.phases *= 1.01;
            return grad;
        };
    CHECK(!era::validation::check_gradient(4, 7, 1e-5, 1e-6, scaled).passed);
}

TEST_CASE("random far scenarios are deterministic in the seed") {
    const era::synthesis::Scenario a = era::validation::random_far_scenario(2, 2, 2, 5, 42);
    const era::synthesis::Scenario b = era::validation::random_far_scenario(2, 2, 2, 5, 42);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t s = 0; s < a.samples.size(); ++s) {
        CHECK(a.samples[s].desired == b.samples[s].desired);
        CHECK(a.samples[s].weight == b.samples[s].weight);
        CHECK(a.samples[s].target.direction.theta == b.samples[s].target.direction.theta);
    }
}
