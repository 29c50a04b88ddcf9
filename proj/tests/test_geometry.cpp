#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "erabeam/geometry.hpp"

using era::geometry::ArrayGeometry;
using era::geometry::Direction;

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_phase(double x) {
    while (x > kPi)
        x -= 2.0 * kPi;
    while (x < -kPi)
        x += 2.0 * kPi;
    return x;
}
} // namespace

TEST_CASE("direction/unit-vector conversions") {
    const Eigen::Vector3d up = era::geometry::direction_to_unit({0.0, 1.234});
    CHECK(up.isApprox(Eigen::Vector3d(0, 0, 1), 1e-15));
    CHECK(era::geometry::direction_to_unit({kPi / 2.0, 0.0})
              .isApprox(Eigen::Vector3d(1, 0, 0), 1e-15));
    CHECK(era::geometry::direction_to_unit({kPi / 2.0, kPi / 2.0})
              .isApprox(Eigen::Vector3d(0, 1, 0), 1e-15));

    for (const double theta : {0.3, 1.2, 2.8})
        for (const double phi : {-2.9, -0.4, 0.0, 1.7}) {
            const Direction dir{theta, phi};
            const Direction back =
                era::geometry::unit_to_direction(era::geometry::direction_to_unit(dir));
            CHECK(back.theta == doctest::Approx(theta).epsilon(1e-12));
            CHECK(back.phi == doctest::Approx(phi).epsilon(1e-12));
        }

    CHECK_THROWS_AS(era::geometry::unit_to_direction(Eigen::Vector3d(1.0, 1.0, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(era::geometry::direction_to_unit({-0.1, 0.0}), std::domain_error);
}

TEST_CASE("element placement follows the x-outermost ordering") {
    const ArrayGeometry single = era::geometry::make_upa(1, 1, 0.005, 0.01);
    REQUIRE(single.positions.size() == 1);
    CHECK(single.positions[0].isZero());

    const ArrayGeometry pair = era::geometry::make_upa(2, 1, 0.005, 0.01);
    REQUIRE(pair.positions.size() == 2);
    CHECK(pair.positions[0].isApprox(Eigen::Vector3d(0, 0, 0)));
    CHECK(pair.positions[1].isApprox(Eigen::Vector3d(0.005, 0, 0)));

    const double d = 0.007;
    const ArrayGeometry square = era::geometry::make_upa(2, 2, d, 0.014);
    REQUIRE(square.positions.size() == 4);
    CHECK(square.positions[0].isApprox(Eigen::Vector3d(0, 0, 0)));
    CHECK(square.positions[1].isApprox(Eigen::Vector3d(0, d, 0)));
    CHECK(square.positions[2].isApprox(Eigen::Vector3d(d, 0, 0)));
    CHECK(square.positions[3].isApprox(Eigen::Vector3d(d, d, 0)));
    for (const Eigen::Vector3d& p : square.positions)
        CHECK(p.z() == 0.0);
}

TEST_CASE("far-field response at boresight is all ones, exactly") {
    const ArrayGeometry geom = era::geometry::make_upa(3, 4, 0.005, 0.01);
    const Eigen::VectorXcd arv = era::geometry::far_field_arv(geom, {0.0, 0.77});
    for (Eigen::Index n = 0; n < arv.size(); ++n)
        CHECK(arv[n] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("far-field response spatial-angle assignment") {
    // phase_x couples to sin(phi): a 2x1 array at phi = pi/2 alternates sign.
    const Eigen::VectorXcd along_x = era::geometry::far_field_arv(
        era::geometry::make_upa(2, 1, 0.005, 0.01), {kPi / 2.0, kPi / 2.0});
    REQUIRE(along_x.size() == 2);
    CHECK(std::abs(along_x[0] - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(along_x[1] - std::complex<double>(-1, 0)) < 1e-12);

    // phase_y couples to cos(phi): a 1x2 array at phi = 0 alternates sign.
    const Eigen::VectorXcd along_y = era::geometry::far_field_arv(
        era::geometry::make_upa(1, 2, 0.005, 0.01), {kPi / 2.0, 0.0});
    REQUIRE(along_y.size() == 2);
    CHECK(std::abs(along_y[0] - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(along_y[1] - std::complex<double>(-1, 0)) < 1e-12);
}

TEST_CASE("far-field response matches the explicit Kronecker product") {
    const ArrayGeometry geom = era::geometry::make_upa(3, 2, 0.004, 0.01);
    const Direction dir{1.1, -0.6};
    const double ratio = geom.spacing / geom.wavelength;
    const double phase_x = ratio * std::sin(dir.theta) * std::sin(dir.phi);
    const double phase_y = ratio * std::sin(dir.theta) * std::cos(dir.phi);

    Eigen::VectorXcd kron(6);
    const std::complex<double> j(0.0, 1.0);
    int slot = 0;
    for (int ix = 0; ix < 3; ++ix)
        for (int iy = 0; iy < 2; ++iy)
            kron[slot++] = std::exp(-j * 2.0 * kPi * phase_x * double(ix)) *
                           std::exp(-j * 2.0 * kPi * phase_y * double(iy));

    const Eigen::VectorXcd arv = era::geometry::far_field_arv(geom, dir);
    CHECK((arv - kron).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("array responses have unit modulus") {
    const ArrayGeometry geom = era::geometry::make_upa(4, 3, 0.005, 0.01);
    const Eigen::VectorXcd far = era::geometry::far_field_arv(geom, {0.9, 2.1});
    const Eigen::VectorXcd near =
        era::geometry::near_field_arv(geom, Eigen::Vector3d(0.3, -0.2, 1.5));
    for (Eigen::Index n = 0; n < far.size(); ++n) {
        CHECK(std::abs(std::abs(far[n]) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(near[n]) - 1.0) < 1e-12);
    }
}

TEST_CASE("near-field response phase against hand values") {
    const ArrayGeometry geom = era::geometry::make_upa(1, 1, 0.005, 0.01);
    const Eigen::VectorXcd full_turn =
        era::geometry::near_field_arv(geom, Eigen::Vector3d(0, 0, 0.01));
    CHECK(std::abs(full_turn[0] - std::complex<double>(1, 0)) < 1e-12);
    const Eigen::VectorXcd half_turn =
        era::geometry::near_field_arv(geom, Eigen::Vector3d(0, 0, 0.005));
    CHECK(std::abs(half_turn[0] - std::complex<double>(-1, 0)) < 1e-12);

    // Equidistant receiver sees identical entries.
    const ArrayGeometry pair = era::geometry::make_upa(2, 1, 0.005, 0.01);
    const Eigen::VectorXcd sym =
        era::geometry::near_field_arv(pair, Eigen::Vector3d(0.0025, 0.0, 0.4));
    CHECK(std::abs(sym[0] - sym[1]) < 1e-12);

    CHECK_THROWS_AS(era::geometry::near_field_arv(pair, Eigen::Vector3d(0.005, 0, 0)),
                    std::invalid_argument);
}

TEST_CASE("near-field phases converge to the planar response far out") {
    // 64-element line; along phi = 3*pi/4 the planar spatial-angle convention
    // and the spherical model agree, so the inter-element phase profiles must
    // match once the range is large. The error is measured against the
    // unwrapped span of the planar profile.
    const double wavelength = 0.01;
    const ArrayGeometry geom = era::geometry::make_upa(64, 1, wavelength / 2.0, wavelength);
    const Direction dir{1.0, 3.0 * kPi / 4.0};
    const Eigen::Vector3d u = era::geometry::direction_to_unit(dir);
    const Eigen::VectorXcd far = era::geometry::far_field_arv(geom, dir);
    const double rayleigh = era::geometry::rayleigh_distance(geom);

    const double step =
        -2.0 * kPi * (geom.spacing / wavelength) * std::sin(dir.theta) * std::sin(dir.phi);
    const double far_span = std::abs(step) * (geom.size() - 1);

    auto max_phase_error = [&](double range) {
        const Eigen::VectorXcd near = era::geometry::near_field_arv(geom, range * u);
        double worst = 0.0;
        for (Eigen::Index n = 1; n < far.size(); ++n) {
            // Both profiles are compared entry by entry; the mismatch is far
            // below pi, so the wrapped difference is the true difference.
            const double mismatch = std::arg(near[n] * std::conj(near[0]) *
                                             std::conj(far[n]) * far[0]);
            worst = std::max(worst, std::abs(wrap_phase(mismatch)));
        }
        return worst / far_span;
    };

    const double error_10x = max_phase_error(10.0 * rayleigh);
    const double error_100x = max_phase_error(100.0 * rayleigh);
    CHECK(error_100x < 1e-3);
    CHECK(error_100x < error_10x); // converging, not just small
}

TEST_CASE("element departure angles") {
    const ArrayGeometry geom = era::geometry::make_upa(1, 1, 0.005, 0.01);
    const Direction boresight = era::geometry::element_aod(geom, 0, {0, 0, 5});
    CHECK(boresight.theta == 0.0);
    CHECK(boresight.phi == 0.0); // atan2(0, 0) pinned to 0

    const Direction sideways = era::geometry::element_aod(geom, 0, {1, 0, 0});
    CHECK(sideways.theta == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(sideways.phi == 0.0);

    const Direction diagonal = era::geometry::element_aod(geom, 0, {0, 1, 1});
    CHECK(diagonal.theta == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(diagonal.phi == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    // Composing with direction_to_unit reproduces the unit separation vector.
    const ArrayGeometry upa = era::geometry::make_upa(3, 3, 0.005, 0.01);
    const Eigen::Vector3d p_rx(0.02, -0.31, 0.87);
    for (int n = 0; n < upa.size(); ++n) {
        const Eigen::Vector3d expected = (p_rx - upa.positions[n]).normalized();
        const Eigen::Vector3d actual =
            era::geometry::direction_to_unit(era::geometry::element_aod(upa, n, p_rx));
        CHECK((actual - expected).norm() < 1e-12);
    }

    CHECK_THROWS_AS(era::geometry::element_aod(geom, 0, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(era::geometry::element_aod(geom, 5, {0, 0, 1}), std::out_of_range);
}

TEST_CASE("Rayleigh distance") {
    CHECK(era::geometry::rayleigh_distance(era::geometry::make_upa(1, 1, 0.005, 0.01)) == 0.0);

    const double r64 =
        era::geometry::rayleigh_distance(era::geometry::make_upa(64, 1, 0.005, 0.01));
    CHECK(r64 == doctest::Approx(19.845).epsilon(1e-12));

    const double wavelength = 0.01;
    const double r22 = era::geometry::rayleigh_distance(
        era::geometry::make_upa(2, 2, wavelength / 2.0, wavelength));
    CHECK(r22 == doctest::Approx(wavelength).epsilon(1e-12));
}
