#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qworldline/detector.hpp"
#include "qworldline/geometry.hpp"
#include "qworldline/quantum.hpp"

using namespace qwl;
using namespace qwl::detector;
using std::complex;

namespace {

constexpr double kPi = 3.14159265358979323846;

UDWDetector make_detector(double gap, double coupling, double width,
                          double internal_m = 1.0, double internal_w = 1.0) {
    UDWDetector det;
    det.gap = gap;
    det.coupling = coupling;
    det.switching = GaussianSwitching::of(width);
    det.internal = quantum::OscillatorSpec(internal_m, internal_w);
    return det;
}

geometry::FermiFrameSample accel_frame(double a1) {
    return geometry::FermiFrameSample(0.0, {a1, 0.0, 0.0}, geometry::Mat3{});
}

// Thermal excitation probability of a pointlike detector on the Rindler
// trajectory with a slowly varying Gaussian window: rate (omega/2pi) times
// the Planck factor, times the window norm integral sqrt(pi) T.
double rindler_rate_oracle(double coupling, double a, double omega, double T) {
    return coupling * coupling * (omega / (2.0 * kPi)) /
           (std::exp(2.0 * kPi * omega / a) - 1.0) * std::sqrt(kPi) * T;
}

}  // namespace

TEST_CASE("gaussian switching autocorrelation closed form") {
    CHECK_THROWS_AS(GaussianSwitching::of(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianSwitching::of(-1.0), std::invalid_argument);

    for (double T : {1.0, 20.0}) {
        const auto sw = GaussianSwitching::of(T);
        CHECK(switching_autocorrelation(sw, 0.0) == doctest::Approx(std::sqrt(kPi) * T));
        for (double u : {0.3, 1.7, 9.0})
            CHECK(switching_autocorrelation(sw, u) == switching_autocorrelation(sw, -u));
    }
    // sqrt(pi) e^{-1} = 0.6520493..., quoted to three figures below.
    CHECK(switching_autocorrelation(GaussianSwitching::of(1.0), 2.0) ==
          doctest::Approx(0.652).epsilon(2e-4));
    CHECK(switching_autocorrelation(GaussianSwitching::of(1.0), 2.0) ==
          doctest::Approx(std::sqrt(kPi) * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("pulled-back wightman functions match their closed forms") {
    CHECK_THROWS_AS(WightmanSpec::inertial(0.0), std::invalid_argument);
    CHECK_THROWS_AS(WightmanSpec::rindler(-1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(WightmanSpec::rindler(1.0, 0.0), std::invalid_argument);

    const double eps = 1e-4;
    const auto inertial = WightmanSpec::inertial(eps);
    for (double u : {0.5, 1.0, 5.0}) {
        const auto w = pulled_back_wightman(inertial, u);
        CHECK(w.real() < 0.0);
        CHECK(std::abs(w.imag()) / std::abs(w.real()) < 3.0 * eps / u);
        const double laurent = -1.0 / (4.0 * kPi * kPi * u * u);
        CHECK(w.real() == doctest::Approx(laurent).epsilon(1e-6));
    }

    // Small acceleration collapses the Rindler form onto the inertial one.
    const double a = 1e-3, u = 1.0;
    const auto tight = WightmanSpec::inertial(1e-6);
    const auto rindler = WightmanSpec::rindler(a, 1e-6);
    const auto wi = pulled_back_wightman(tight, u);
    const auto wr = pulled_back_wightman(rindler, u);
    CHECK(std::abs(wr - wi) / std::abs(wi) < a * a * u * u);

    // Far out on the trajectory 1/sinh^2 underflows; the tail is exactly zero.
    CHECK(pulled_back_wightman(WightmanSpec::rindler(2.0, 1e-3), 400.0) ==
          complex<double>(0.0, 0.0));
}

TEST_CASE("default regulator tracks the shortest timescale") {
    const auto sw = GaussianSwitching::of(20.0);
    CHECK(default_epsilon(sw, 0.0) == doctest::Approx(0.02));
    CHECK(default_epsilon(sw, 2.0 * kPi) == doctest::Approx(1e-3 / (2.0 * kPi)));
    CHECK(default_epsilon(GaussianSwitching::of(0.5), 1.0) == doctest::Approx(5e-4));
    CHECK_THROWS_AS(default_epsilon(sw, -1.0), std::invalid_argument);
}

TEST_CASE("field response vanishes without coupling and in the inertial vacuum") {
    const auto zero = make_detector(1.0, 0.0, 10.0);
    const auto spec = WightmanSpec::inertial(default_epsilon(zero.switching));
    const auto off = field_response(zero, spec);
    CHECK(off.probability == 0.0);
    CHECK(off.error_estimate == 0.0);
    CHECK(off.converged);

    // Omega T = 10: excitation is Gaussian-suppressed below 1e-8 lambda^2.
    const auto det = make_detector(1.0, 1.0, 10.0);
    const auto on = field_response(det, spec);
    CHECK(on.converged);
    CHECK(on.probability < 1e-8);
    CHECK(on.probability >= -on.error_estimate);
}

TEST_CASE("field response scales exactly with the coupling squared") {
    const auto spec = WightmanSpec::rindler(2.0 * kPi, 1e-4);
    const auto weak = field_response(make_detector(1.0, 0.01, 20.0), spec);
    const auto strong = field_response(make_detector(1.0, 0.02, 20.0), spec);
    CHECK(strong.probability == doctest::Approx(4.0 * weak.probability).epsilon(1e-15));
    CHECK(strong.error_estimate == doctest::Approx(4.0 * weak.error_estimate).epsilon(1e-15));
}

TEST_CASE("rindler response reproduces the thermal excitation rate") {
    const double a = 2.0 * kPi, T = 20.0, lambda = 0.01;
    const auto det = make_detector(1.0, lambda, T);
    const auto spec = WightmanSpec::rindler(a, default_epsilon(det.switching, a));
    const auto up = field_response(det, spec, 1.0);
    CHECK(up.converged);
    CHECK(up.probability > 0.0);
    CHECK(up.probability ==
          doctest::Approx(rindler_rate_oracle(lambda, a, 1.0, T)).epsilon(5e-3));
    // The estimate leaves the thermal signal far above the noise floor.
    CHECK(up.probability > 10.0 * up.error_estimate);
}

TEST_CASE("detailed balance matches the KMS ratio") {
    const auto det = make_detector(1.0, 1.0, 20.0);

    const auto one = detailed_balance_ratio(det, 2.0 * kPi, 1.0);
    CHECK(one.converged);
    CHECK(one.kms == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(one.measured / one.kms == doctest::Approx(1.0).epsilon(0.05));

    const auto two = detailed_balance_ratio(det, 2.0 * kPi, 2.0);
    CHECK(two.kms == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(two.measured / two.kms == doctest::Approx(1.0).epsilon(0.05));

    for (double a : {kPi, 2.0 * kPi, 4.0 * kPi})
        for (double omega : {0.5, 1.0, 2.0}) {
            const auto r = detailed_balance_ratio(det, a, omega);
            CHECK(r.converged);
            CHECK(std::abs(r.measured / r.kms - 1.0) < 0.05);
        }

    // Zero gap: up and down transitions coincide and the ratio is exactly 1.
    const auto flat = detailed_balance_ratio(det, 2.0 * kPi, 0.0);
    CHECK(flat.measured == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flat.kms == 1.0);

    CHECK_THROWS_AS(detailed_balance_ratio(det, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(detailed_balance_ratio(det, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("response is insensitive to the regulator after extrapolation") {
    const double a = 2.0 * kPi;
    const auto det = make_detector(1.0, 1.0, 20.0);
    const double eps = default_epsilon(det.switching, a);
    const auto coarse = field_response(det, WightmanSpec::rindler(a, eps));
    const auto fine = field_response(det, WightmanSpec::rindler(a, 0.5 * eps));
    CHECK(coarse.converged);
    CHECK(fine.converged);
    CHECK(std::abs(coarse.probability - fine.probability) < 0.01 * coarse.probability);
}

TEST_CASE("response ignores the switching center on stationary trajectories") {
    UDWDetector early = make_detector(1.0, 1.0, 20.0);
    early.switching = GaussianSwitching::of(20.0, -37.5);
    UDWDetector late = early;
    late.switching = GaussianSwitching::of(20.0, 112.0);
    const auto spec = WightmanSpec::rindler(2.0 * kPi, 1e-4);
    const auto p_early = field_response(early, spec);
    const auto p_late = field_response(late, spec);
    CHECK(std::abs(p_early.probability - p_late.probability) <= p_early.error_estimate);
    CHECK(p_early.probability == p_late.probability);
}

TEST_CASE("response stays nonnegative within the error estimate") {
    for (double a : {kPi, 4.0 * kPi})
        for (double omega : {-1.0, 0.5, 2.0})
            for (double T : {5.0, 20.0}) {
                const auto det = make_detector(omega, 1.0, T);
                const auto spec = WightmanSpec::rindler(a, default_epsilon(det.switching, a));
                const auto r = field_response(det, spec);
                CHECK(r.converged);
                CHECK(r.probability >= -r.error_estimate);
            }
}

TEST_CASE("noise probability reproduces the ladder hand values") {
    // Acceleration line, 0 -> 1: |<1| m a x |0>|^2 = m a^2 / (2 w) = 0.005.
    const auto det = make_detector(1.0, 1.0, 1.0);
    const double p01 = rel_noise_probability(det, accel_frame(0.1), 0, 1);
    CHECK(p01 == doctest::Approx(0.005 * 2.0 * kPi * std::exp(-1.0)).epsilon(1e-12));
    CHECK(p01 == doctest::Approx(0.011557).epsilon(1e-4));

    // De-excitation carries the same element and the same Gaussian factor.
    CHECK(rel_noise_probability(det, accel_frame(0.1), 1, 0) == doctest::Approx(p01));
    // 1 -> 2 doubles the matrix element squared.
    CHECK(rel_noise_probability(det, accel_frame(0.1), 1, 2) == doctest::Approx(2.0 * p01));

    // Curvature line, 0 -> 2 at alpha = 0.04: element = 0.02 sqrt(2)/2.
    const auto curved = geometry::constant_curvature_sample(0.0, 0.04, {0.0, 0.0, 0.0});
    const double elem = 0.5 * 0.04 * std::sqrt(2.0) / 2.0;
    CHECK(elem == doctest::Approx(0.014142).epsilon(1e-4));
    for (double T : {1.0, 2.5}) {
        const auto wide = make_detector(1.0, 1.0, T);
        const double chi_sq = 2.0 * kPi * T * T * std::exp(-4.0 * T * T);
        CHECK(rel_noise_probability(wide, curved, 0, 2) ==
              doctest::Approx(chi_sq * 2e-4).epsilon(1e-9));
    }

    // Flat inertial frame: no coupling at all.
    CHECK(rel_noise_probability(det, accel_frame(0.0), 0, 1) == 0.0);
    // Gaps other than one or two oscillator quanta never couple.
    CHECK(rel_noise_probability(det, accel_frame(0.1), 0, 3) == 0.0);
    CHECK(rel_noise_probability(det, curved, 0, 5) == 0.0);
}

TEST_CASE("noise probability scales as acceleration and curvature squared") {
    const auto det = make_detector(1.0, 1.0, 1.0);
    const double base_a = rel_noise_probability(det, accel_frame(0.1), 0, 1);
    CHECK(rel_noise_probability(det, accel_frame(0.2), 0, 1) ==
          doctest::Approx(4.0 * base_a).epsilon(1e-14));

    const auto c1 = geometry::constant_curvature_sample(0.0, 0.04, {0.0, 0.0, 0.0});
    const auto c2 = geometry::constant_curvature_sample(0.0, 0.08, {0.0, 0.0, 0.0});
    const double base_c = rel_noise_probability(det, c1, 0, 2);
    CHECK(rel_noise_probability(det, c2, 0, 2) == doctest::Approx(4.0 * base_c).epsilon(1e-14));
}

TEST_CASE("noise probability validates its inputs") {
    auto det = make_detector(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(rel_noise_probability(det, accel_frame(0.1), 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(rel_noise_probability(det, accel_frame(0.1), -1, 0), std::invalid_argument);

    UDWDetector hollow = det;
    hollow.internal.reset();
    CHECK_THROWS_AS(rel_noise_probability(hollow, accel_frame(0.1), 0, 1),
                    std::invalid_argument);

    UDWDetector loose = det;
    loose.internal = quantum::OscillatorSpec(1.0, 0.0);
    CHECK_THROWS_AS(rel_noise_probability(loose, accel_frame(0.1), 0, 1),
                    std::invalid_argument);

    // Trajectory overloads: stationary models reduce to their frame sample,
    // tabulated (time-varying) ones are rejected.
    const auto traj = geometry::TrajectoryModel::uniform_acceleration(0.1);
    CHECK(rel_noise_probability(det, traj, 0, 1) ==
          rel_noise_probability(det, accel_frame(0.1), 0, 1));
    const auto table = geometry::TrajectoryModel::tabulated({accel_frame(0.1)});
    CHECK_THROWS_AS(rel_noise_probability(det, table, 0, 1), std::invalid_argument);
}

TEST_CASE("response report combines both channels") {
    const double a = 2.0 * kPi, T = 20.0;
    const auto frame = accel_frame(a);

    // No coupling anywhere: all zeros and the ratio stays undefined.
    const auto silent = make_detector(1.0, 0.0, T);
    const auto inert = WightmanSpec::inertial(1e-3);
    const auto none = response_report(silent, inert, accel_frame(0.0), 0, 1);
    CHECK(none.p_field == 0.0);
    CHECK(none.p_rel == 0.0);
    CHECK_FALSE(none.noise_ratio_defined);
    CHECK(std::isnan(none.noise_ratio));
    CHECK(none.converged);

    // Vanishing rest mass kills the noise channel: ideal field probe.
    auto light = make_detector(1.0, 0.01, T, 1e-30, 1.0);
    const auto spec = WightmanSpec::rindler(a, default_epsilon(light.switching, a));
    const auto probe = response_report(light, spec, frame, 0, 1);
    CHECK(probe.converged);
    CHECK(probe.p_field > 0.0);
    CHECK(probe.p_rel < 1e-25);
    CHECK(probe.noise_ratio_defined);
    CHECK(probe.probe_valid);

    // Full report against term-by-term recomputation.
    const auto det = make_detector(1.0, 0.01, T);
    const auto rep = response_report(det, spec, frame, 0, 1);
    CHECK(rep.converged);
    CHECK(rep.p_field > 0.0);
    CHECK(rep.p_rel > 0.0);
    CHECK(rep.p_field == field_response(det, spec).probability);
    CHECK(rep.p_rel == rel_noise_probability(det, frame, 0, 1));
    CHECK(rep.noise_ratio_defined);
    CHECK(rep.noise_ratio == doctest::Approx(rep.p_rel / rep.p_field).epsilon(1e-15));
    CHECK(rep.probe_valid);

    CHECK_THROWS_AS(response_report(det, spec, frame, 0, 1, 0.0), std::invalid_argument);
}
