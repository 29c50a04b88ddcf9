#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "erabeam/em_response.hpp"

using era::em::EMResponse;
using era::em::SampleTarget;
using era::geometry::ArrayGeometry;
using era::geometry::Direction;
using era::harmonics::TruncationSpec;

namespace {

constexpr double kPi = std::numbers::pi;

// Test oracle: the literal dense NT x N response, ones(NT) a' Hadamard the
// block-diagonal basis stack.
Eigen::MatrixXcd dense_response(const EMResponse& resp) {
    const int n_elem = resp.elements();
    const int t_len = resp.basis_length();
    Eigen::MatrixXcd dense =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n_elem) * t_len, n_elem);
    for (int n = 0; n < n_elem; ++n)
        dense.block(n * t_len, n, t_len, 1) =
            resp.steering[n] * resp.basis.col(n).cast<std::complex<double>>();
    return dense;
}

Eigen::VectorXcd random_phases(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i)
        f[i] = std::polar(1.0, angle(rng));
    return f;
}

} // namespace

TEST_CASE("far-field response composes steering and a shared basis") {
    const ArrayGeometry geom = era::geometry::make_upa(1, 1, 0.005, 0.01);
    const EMResponse resp = era::em::build_response(
        geom, TruncationSpec::from_degree(0), SampleTarget::far_sample({0.0, 0.0}));
    REQUIRE(resp.elements() == 1);
    REQUIRE(resp.basis_length() == 1);
    CHECK(std::abs(resp.steering[0] - std::complex<double>(1, 0)) < 1e-15);
    CHECK(resp.basis(0, 0) == doctest::Approx(0.28209479177387814).epsilon(1e-15));

    const ArrayGeometry upa = era::geometry::make_upa(3, 3, 0.005, 0.01);
    const EMResponse shared = era::em::build_response(
        upa, TruncationSpec::from_degree(3), SampleTarget::far_sample({0.8, -1.2}));
    for (int n = 1; n < shared.elements(); ++n)
        CHECK((shared.basis.col(n) - shared.basis.col(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("near-field basis varies across elements") {
    const ArrayGeometry line = era::geometry::make_upa(1, 64, 0.005, 0.01);
    const EMResponse resp = era::em::build_response(
        line, TruncationSpec::from_degree(2), SampleTarget::near_sample({0.0, 0.1, 2.0}));
    bool any_differ = false;
    for (int n = 1; n < resp.elements(); ++n)
        any_differ = any_differ ||
                     (resp.basis.col(n) - resp.basis.col(0)).cwiseAbs().maxCoeff() > 1e-12;
    CHECK(any_differ);
}

TEST_CASE("near-field basis columns use each element's own departure angle") {
    // Receiver straight above the second element of a 1x2 array: that element
    // sees the boresight basis, the first element an oblique one.
    const double d = 0.005;
    const ArrayGeometry pair = era::geometry::make_upa(1, 2, d, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(1);
    const EMResponse resp =
        era::em::build_response(pair, spec, SampleTarget::near_sample({0.0, d, 1.0}));

    const Eigen::VectorXd boresight = era::harmonics::basis_vector(spec, 0.0, 0.0);
    CHECK((resp.basis.col(1) - boresight).cwiseAbs().maxCoeff() < 1e-12);

    const era::geometry::Direction aod =
        era::geometry::element_aod(pair, 0, {0.0, d, 1.0});
    const Eigen::VectorXd oblique =
        era::harmonics::basis_vector(spec, aod.theta, aod.phi);
    CHECK((resp.basis.col(0) - oblique).cwiseAbs().maxCoeff() == 0.0);
    CHECK((resp.basis.col(0) - boresight).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("beampattern of a matched isotropic array is N") {
    const ArrayGeometry geom = era::geometry::make_upa(2, 3, 0.005, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(2);
    const EMResponse resp =
        era::em::build_response(geom, spec, SampleTarget::far_sample({0.7, 0.4}));

    Eigen::VectorXd b = Eigen::VectorXd::Zero(geom.size() * spec.length);
    for (int n = 0; n < geom.size(); ++n)
        b[n * spec.length] = 2.0 * std::sqrt(kPi); // unit gain per element
    const Eigen::VectorXcd f = resp.steering.conjugate();

    CHECK(era::em::beampattern(b, resp, f) ==
          doctest::Approx(static_cast<double>(geom.size())).epsilon(1e-13));
    CHECK(era::em::beampattern(Eigen::VectorXd::Zero(b.size()), resp, f) == 0.0);
}

TEST_CASE("single-element beampattern reduces to |y' b|") {
    const ArrayGeometry geom = era::geometry::make_upa(1, 1, 0.005, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(3);
    const EMResponse resp =
        era::em::build_response(geom, spec, SampleTarget::far_sample({1.1, 0.3}));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd b(spec.length);
    for (int t = 0; t < spec.length; ++t)
        b[t] = gauss(rng);
    const Eigen::VectorXcd f = random_phases(1, 11);
    CHECK(era::em::beampattern(b, resp, f) ==
          doctest::Approx(std::abs(resp.basis.col(0).dot(b))).epsilon(1e-13));
}

TEST_CASE("blockwise evaluation equals the dense response") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 12; ++trial) {
        const int nx = 1 + static_cast<int>(rng() % 4);
        const int ny = 1 + static_cast<int>(rng() % 2);
        const int max_degree = static_cast<int>(rng() % 5);
        const ArrayGeometry geom = era::geometry::make_upa(nx, ny, 0.005, 0.01);
        const TruncationSpec spec = TruncationSpec::from_degree(max_degree);

        const SampleTarget target =
            (trial % 2 == 0)
                ? SampleTarget::far_sample({0.1 + 0.3 * (trial % 5), -2.0 + 0.5 * trial})
                : SampleTarget::near_sample({0.01 * trial, -0.03, 0.6 + 0.1 * trial});
        const EMResponse resp = era::em::build_response(geom, spec, target);

        Eigen::VectorXd b(geom.size() * spec.length);
        for (Eigen::Index i = 0; i < b.size(); ++i)
            b[i] = gauss(rng);
        const Eigen::VectorXcd f = random_phases(geom.size(), 100 + trial);

        const double blockwise = era::em::beampattern(b, resp, f);
        const double dense =
            std::abs((b.cast<std::complex<double>>().transpose() * dense_response(resp) * f)(0));
        CHECK(blockwise == doctest::Approx(dense).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("beampattern homogeneity and global phase invariance") {
    const ArrayGeometry geom = era::geometry::make_upa(2, 2, 0.005, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(2);
    const EMResponse resp =
        era::em::build_response(geom, spec, SampleTarget::near_sample({0.004, 0.2, 0.9}));

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd b(geom.size() * spec.length);
    for (Eigen::Index i = 0; i < b.size(); ++i)
        b[i] = gauss(rng);
    const Eigen::VectorXcd f = random_phases(geom.size(), 3);

    const double base = era::em::beampattern(b, resp, f);
    for (const double alpha : {-2.0, -0.5, 0.25, 3.0})
        CHECK(era::em::beampattern(alpha * b, resp, f) ==
              doctest::Approx(std::abs(alpha) * base).epsilon(1e-12));

    for (const double angle : {0.3, 1.9, -2.6}) {
        const Eigen::VectorXcd rotated = std::polar(1.0, angle) * f;
        CHECK(era::em::beampattern(b, resp, rotated) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("beampattern grid preserves order and mirror symmetry") {
    const ArrayGeometry geom = era::geometry::make_upa(3, 2, 0.005, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(geom.size() * spec.length);
    for (int n = 0; n < geom.size(); ++n)
        b[n * spec.length] = 2.0 * std::sqrt(kPi);
    const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(geom.size());

    CHECK(era::em::beampattern_grid(b, f, geom, spec, {}).empty());

    const SampleTarget lone = SampleTarget::far_sample({0.9, 1.1});
    const std::vector<double> single = era::em::beampattern_grid(b, f, geom, spec, {lone});
    REQUIRE(single.size() == 1);
    CHECK(single[0] ==
          doctest::Approx(era::em::beampattern(b, era::em::build_response(geom, spec, lone), f))
              .epsilon(1e-15));

    // Uniform excitation: phi -> -phi mirrors the pattern.
    std::vector<SampleTarget> grid;
    for (int k = 0; k < 10; ++k) {
        const double theta = 0.2 + 0.25 * k;
        const double phi = -2.8 + 0.55 * k;
        grid.push_back(SampleTarget::far_sample({theta, phi}));
        grid.push_back(SampleTarget::far_sample({theta, -phi}));
    }
    const std::vector<double> values = era::em::beampattern_grid(b, f, geom, spec, grid);
    for (std::size_t k = 0; k < values.size(); k += 2)
        CHECK(values[k] == doctest::Approx(values[k + 1]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("beampattern rejects mismatched shapes") {
    const ArrayGeometry geom = era::geometry::make_upa(2, 1, 0.005, 0.01);
    const TruncationSpec spec = TruncationSpec::from_degree(1);
    const EMResponse resp =
        era::em::build_response(geom, spec, SampleTarget::far_sample({0.4, 0.0}));
    CHECK_THROWS_AS(era::em::beampattern(Eigen::VectorXd::Zero(3), resp,
                                         Eigen::VectorXcd::Ones(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(era::em::beampattern(Eigen::VectorXd::Zero(8), resp,
                                         Eigen::VectorXcd::Ones(3)),
                    std::invalid_argument);
}
