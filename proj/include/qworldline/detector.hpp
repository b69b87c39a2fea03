#pragma once

// Unruh-DeWitt detector response on stationary flat-space worldlines: the
// field-induced excitation probability from a regularized oscillatory
// integral of the pulled-back two-point function, the acceleration and
// curvature induced noise probability from first-order ladder matrix
// elements, and the detailed-balance / probe-validity diagnostics.

#include <complex>
#include <limits>
#include <optional>

#include "qworldline/geometry.hpp"
#include "qworldline/quantum.hpp"

namespace qwl::detector {

// Gaussian switching chi(tau) = exp(-(tau - center)^2 / (2 width^2)).
// Stationary responses depend on it only through the autocorrelation, so the
// center never enters the numbers; it is kept for bookkeeping.
struct GaussianSwitching {
    double width = 1.0;
    double center = 0.0;

    static GaussianSwitching of(double width, double center = 0.0);
};

struct UDWDetector {
    double gap = 1.0;       // energy gap (upper minus lower level)
    double coupling = 1.0;  // linear field coupling
    GaussianSwitching switching{};
    // Internal oscillator carrying the noise-term matrix elements; its omega
    // is the effective (already corrected) internal frequency.
    std::optional<quantum::OscillatorSpec> internal{};
};

enum class FieldTrajectory { InertialMinkowski, RindlerMinkowski };

struct WightmanSpec {
    FieldTrajectory trajectory = FieldTrajectory::InertialMinkowski;
    double a = 0.0;        // proper acceleration (Rindler only)
    double epsilon = 0.0;  // i-epsilon regulator in proper time, > 0

    static WightmanSpec inertial(double epsilon);
    static WightmanSpec rindler(double a, double epsilon);
};

// Regulator scale used by the drivers: 1e-3 * min(T, 1/a), the shorter of
// the switching width and the trajectory curvature time.
double default_epsilon(const GaussianSwitching& sw, double a = 0.0);

// Vacuum two-point function along the worldline as a function of the proper
// time difference u, regulated by the WightmanSpec's i-epsilon prescription.
std::complex<double> pulled_back_wightman(const WightmanSpec& spec, double u);

// K(u) = integral chi(s + u/2) chi(s - u/2) ds = sqrt(pi) T exp(-u^2/4T^2).
double switching_autocorrelation(const GaussianSwitching& chi, double u);

struct FieldResponse {
    double probability = 0.0;
    double error_estimate = 0.0;  // quadrature + imaginary residual + regulator sensitivity
    bool converged = false;
};

// p = lambda^2 * integral_{-U}^{U} K(u) exp(-i omega u) W(u) du with
// U = 10 max(T, 1/|omega|), evaluated at epsilon and epsilon/2 and
// Richardson-extrapolated to epsilon -> 0.
FieldResponse field_response(const UDWDetector& det, const WightmanSpec& spec, double omega);
FieldResponse field_response(const UDWDetector& det, const WightmanSpec& spec);

struct BalanceRatio {
    double measured = 0.0;
    double kms = 0.0;
    bool converged = false;
};

// measured = p(omega)/p(-omega) on the Rindler trajectory versus the KMS
// value exp(-2 pi omega / a). Accurate once omega*T and a*T reach ~5; below
// that the Gaussian window smears the thermal ratio (not rejected, since the
// omega -> 0 limit is itself a valid check).
BalanceRatio detailed_balance_ratio(const UDWDetector& det, double a, double omega);

// First-order excitation probability from the corrected-Hamiltonian coupling
// m a.x + (m/2) R_{0i0j} x^i x^j between internal oscillator levels n -> m,
// reduced along the acceleration axis. Zero unless |m - n| is 1 or 2.
double rel_noise_probability(const UDWDetector& det, const geometry::FermiFrameSample& frame,
                             int n, int m);
// Convenience over a trajectory model; time-varying (tabulated) frames are
// rejected because the stationary reduction does not apply.
double rel_noise_probability(const UDWDetector& det, const geometry::TrajectoryModel& trajectory,
                             int n, int m);

struct ResponseResult {
    double p_field = 0.0;
    double p_rel = 0.0;
    double noise_ratio = std::numeric_limits<double>::quiet_NaN();
    bool noise_ratio_defined = false;
    bool probe_valid = false;  // meaningful only when noise_ratio_defined
    bool converged = false;
    double quadrature_error_estimate = 0.0;
};

// Combines the field and noise channels for the transition n -> m; the
// noise ratio is reported only when p_field clears 10x its error estimate,
// and the probe flag marks noise_ratio < probe_threshold. Only the two
// second-order probabilities are computed; the mixed field x noise term
// drops out at this order for states with vanishing odd moments.
ResponseResult response_report(const UDWDetector& det, const WightmanSpec& spec,
                               const geometry::FermiFrameSample& frame, int n, int m,
                               double probe_threshold = 0.1);

}  // namespace qwl::detector
