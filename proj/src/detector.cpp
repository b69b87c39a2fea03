#include "qworldline/detector.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <variant>
#include <vector>

namespace qwl::detector {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::complex<double> kI{0.0, 1.0};

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// 15-point Kronrod / 7-point Gauss node and weight tables (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gauss_kronrod_15(const F& f, double lo, double hi, std::complex<double>& integral,
                      double& err) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const std::complex<double> fc = f(center);
    std::complex<double> result_k = kWgk[7] * fc;
    std::complex<double> result_g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const std::complex<double> sum = f(center - dx) + f(center + dx);
        result_k += kWgk[j] * sum;
        if (j % 2 == 1) result_g += kWg[j / 2] * sum;
    }
    integral = result_k * half;
    err = std::abs(result_k - result_g) * half;
}

struct Panel {
    double err;
    double lo;
    double hi;
    std::complex<double> integral;
};

struct PanelOrder {
    bool operator()(const Panel& a, const Panel& b) const {
        // Largest error first; ties broken by position for determinism.
        if (a.err != b.err) return a.err < b.err;
        return a.lo > b.lo;
    }
};

struct Quadrature {
    std::complex<double> integral{0.0, 0.0};
    double error = 0.0;
    bool converged = false;
};

// Adaptive bisection over an explicit seed partition, splitting the largest
// error panel first. The refinement order is fully deterministic.
template <class F>
Quadrature adaptive_integrate(const F& f, const std::vector<double>& breakpoints, double abs_tol,
                              double rel_tol, int max_panels) {
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    std::complex<double> total{0.0, 0.0};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Panel p{0.0, breakpoints[i], breakpoints[i + 1], {0.0, 0.0}};
        gauss_kronrod_15(f, p.lo, p.hi, p.integral, p.err);
        total += p.integral;
        total_err += p.err;
        queue.push(p);
    }
    int panels = static_cast<int>(breakpoints.size()) - 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) continue;  // spacing exhausted
        Panel left{0.0, worst.lo, mid, {0.0, 0.0}};
        Panel right{0.0, mid, worst.hi, {0.0, 0.0}};
        gauss_kronrod_15(f, left.lo, left.hi, left.integral, left.err);
        gauss_kronrod_15(f, right.lo, right.hi, right.integral, right.err);
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    Quadrature out;
    out.integral = total;
    out.error = total_err;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

// Seed partition: a finely divided core covering the switching support plus
// geometrically growing outer panels out to the full window [-U, U]. The
// outer panels carry exponentially dead integrand and cost one evaluation
// each, which lets U honor the 10/|omega| low-frequency window exactly.
std::vector<double> seed_breakpoints(double width, double window) {
    const double core = std::min(window, 30.0 * width);
    std::vector<double> right;
    const int n_core = 32;
    for (int i = 0; i <= n_core; ++i) right.push_back(core * i / n_core);
    double edge = core;
    while (edge < window) {
        edge = std::min(2.0 * edge, window);
        right.push_back(edge);
    }
    std::vector<double> pts;
    for (auto it = right.rbegin(); it != right.rend(); ++it)
        if (*it != 0.0) pts.push_back(-*it);
    pts.insert(pts.end(), right.begin(), right.end());
    return pts;
}

Quadrature response_integral(const GaussianSwitching& sw, const WightmanSpec& spec,
                             double omega) {
    const double T = sw.width;
    double window = 10.0 * T;
    if (omega != 0.0) window = std::max(window, 10.0 / std::abs(omega));
    // Beyond ~60 T the Gaussian autocorrelation underflows to exact zero, so
    // extremely low-frequency windows can be truncated at no cost.
    window = std::min(window, 1.0e7 * T);
    const auto f = [&](double u) {
        return switching_autocorrelation(sw, u) * std::exp(-kI * (omega * u)) *
               pulled_back_wightman(spec, u);
    };
    return adaptive_integrate(f, seed_breakpoints(T, window), 1.0e-12, 1.0e-9, 20000);
}

}  // namespace

GaussianSwitching GaussianSwitching::of(double width, double center) {
    require(std::isfinite(width) && width > 0.0, "switching: width must be positive");
    require(std::isfinite(center), "switching: center must be finite");
    return GaussianSwitching{width, center};
}

WightmanSpec WightmanSpec::inertial(double epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0, "wightman: epsilon must be positive");
    return WightmanSpec{FieldTrajectory::InertialMinkowski, 0.0, epsilon};
}

WightmanSpec WightmanSpec::rindler(double a, double epsilon) {
    require(std::isfinite(a) && a > 0.0, "wightman: Rindler acceleration must be positive");
    require(std::isfinite(epsilon) && epsilon > 0.0, "wightman: epsilon must be positive");
    return WightmanSpec{FieldTrajectory::RindlerMinkowski, a, epsilon};
}

double default_epsilon(const GaussianSwitching& sw, double a) {
    require(std::isfinite(sw.width) && sw.width > 0.0, "switching: width must be positive");
    require(std::isfinite(a) && a >= 0.0, "epsilon: acceleration must be nonnegative");
    double scale = sw.width;
    if (a > 0.0) scale = std::min(scale, 1.0 / a);
    return 1.0e-3 * scale;
}

std::complex<double> pulled_back_wightman(const WightmanSpec& spec, double u) {
    require(std::isfinite(u), "wightman: u must be finite");
    require(std::isfinite(spec.epsilon) && spec.epsilon > 0.0, "wightman: epsilon must be positive");
    const std::complex<double> du{u, -spec.epsilon};
    if (spec.trajectory == FieldTrajectory::InertialMinkowski) {
        return -1.0 / (4.0 * kPi * kPi * du * du);
    }
    require(spec.a > 0.0, "wightman: Rindler acceleration must be positive");
    const std::complex<double> z = 0.5 * spec.a * du;
    // 1/sinh^2 underflows long before sinh overflows; cut off explicitly so
    // the tails are exact zeros instead of inf/inf noise.
    if (std::abs(z.real()) > 350.0) return {0.0, 0.0};
    const std::complex<double> r = 1.0 / std::sinh(z);
    return -(spec.a * spec.a) / (16.0 * kPi * kPi) * r * r;
}

double switching_autocorrelation(const GaussianSwitching& chi, double u) {
    require(std::isfinite(chi.width) && chi.width > 0.0, "switching: width must be positive");
    require(std::isfinite(u), "switching: u must be finite");
    const double T = chi.width;
    return std::sqrt(kPi) * T * std::exp(-u * u / (4.0 * T * T));
}

FieldResponse field_response(const UDWDetector& det, const WightmanSpec& spec, double omega) {
    require(std::isfinite(det.coupling), "detector: coupling must be finite");
    require(std::isfinite(omega), "detector: gap must be finite");
    require(std::isfinite(det.switching.width) && det.switching.width > 0.0,
            "detector: switching width must be positive");
    if (det.coupling == 0.0) return FieldResponse{0.0, 0.0, true};

    WightmanSpec half = spec;
    half.epsilon = 0.5 * spec.epsilon;
    const Quadrature at_eps = response_integral(det.switching, spec, omega);
    const Quadrature at_half = response_integral(det.switching, half, omega);

    const std::complex<double> extrapolated = 2.0 * at_half.integral - at_eps.integral;
    const double lambda_sq = det.coupling * det.coupling;
    const double sensitivity = 0.5 * std::abs(at_half.integral - at_eps.integral);

    FieldResponse out;
    out.probability = lambda_sq * extrapolated.real();
    out.error_estimate = lambda_sq * (at_eps.error + 2.0 * at_half.error +
                                      std::abs(extrapolated.imag()) + sensitivity);
    out.converged = at_eps.converged && at_half.converged;
    return out;
}

FieldResponse field_response(const UDWDetector& det, const WightmanSpec& spec) {
    return field_response(det, spec, det.gap);
}

BalanceRatio detailed_balance_ratio(const UDWDetector& det, double a, double omega) {
    require(std::isfinite(a) && a > 0.0, "balance: acceleration must be positive");
    require(std::isfinite(omega), "balance: omega must be finite");
    const WightmanSpec spec = WightmanSpec::rindler(a, default_epsilon(det.switching, a));
    const FieldResponse up = field_response(det, spec, omega);
    const FieldResponse down = field_response(det, spec, -omega);
    BalanceRatio out;
    out.kms = std::exp(-2.0 * kPi * omega / a);
    out.measured = up.probability / down.probability;
    out.converged = up.converged && down.converged;
    return out;
}

double rel_noise_probability(const UDWDetector& det, const geometry::FermiFrameSample& frame,
                             int n, int m) {
    require(det.internal.has_value(), "noise: detector needs an internal oscillator");
    require(n >= 0 && m >= 0, "noise: levels must be nonnegative");
    require(n != m, "noise: need a transition between distinct levels");
    const auto& osc = *det.internal;

    const int delta = m - n;
    if (std::abs(delta) != 1 && std::abs(delta) != 2) return 0.0;

    // Reduce along the acceleration axis; with no acceleration the first
    // frame axis carries the curvature coupling.
    const double a_mag = frame.accel_magnitude();
    geometry::Vec3 axis{1.0, 0.0, 0.0};
    if (a_mag > 0.0)
        for (int i = 0; i < 3; ++i) axis[i] = frame.a[i] / a_mag;
    double r_axis = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r_axis += axis[i] * frame.R0i0j[i][j] * axis[j];

    const double mass = osc.m;
    const double omega_int = osc.omega;
    require(omega_int > 0.0, "noise: internal frequency must be positive");

    double amplitude = 0.0;
    if (std::abs(delta) == 1) {
        const int top = std::max(n, m);
        amplitude = mass * a_mag * std::sqrt(top / (2.0 * mass * omega_int));
    } else {
        const int lo = std::min(n, m);
        amplitude = 0.5 * mass * r_axis *
                    std::sqrt(static_cast<double>(lo + 1) * (lo + 2)) / (2.0 * mass * omega_int);
    }

    const double gap = delta * omega_int;
    const double T = det.switching.width;
    require(std::isfinite(T) && T > 0.0, "noise: switching width must be positive");
    const double chi_sq = 2.0 * kPi * T * T * std::exp(-gap * gap * T * T);
    return chi_sq * amplitude * amplitude;
}

double rel_noise_probability(const UDWDetector& det, const geometry::TrajectoryModel& trajectory,
                             int n, int m) {
    if (std::holds_alternative<geometry::Tabulated>(trajectory.kind()))
        throw std::invalid_argument("noise: time-varying frames are not supported");
    return rel_noise_probability(det, trajectory.frame_at(0.0), n, m);
}

ResponseResult response_report(const UDWDetector& det, const WightmanSpec& spec,
                               const geometry::FermiFrameSample& frame, int n, int m,
                               double probe_threshold) {
    require(std::isfinite(probe_threshold) && probe_threshold > 0.0,
            "report: probe threshold must be positive");
    const FieldResponse field = field_response(det, spec, det.gap);
    const double noise = rel_noise_probability(det, frame, n, m);

    ResponseResult out;
    out.p_field = field.probability;
    out.p_rel = noise;
    out.converged = field.converged;
    out.quadrature_error_estimate = field.error_estimate;
    if (field.probability > 10.0 * field.error_estimate) {
        out.noise_ratio = noise / field.probability;
        out.noise_ratio_defined = true;
        out.probe_valid = out.noise_ratio < probe_threshold;
    }
    return out;
}

}  // namespace qwl::detector
