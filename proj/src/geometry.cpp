#include "qworldline/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwl::geometry {

namespace {

bool finite(double v) { return std::isfinite(v); }

bool finite(const Vec3& v) {
    return finite(v[0]) && finite(v[1]) && finite(v[2]);
}

bool finite(const Mat3& m) {
    for (const auto& row : m)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

Eigen::Matrix3d to_eigen(const Mat3& m) {
    Eigen::Matrix3d out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = m[i][j];
    return out;
}

}  // namespace

FermiFrameSample::FermiFrameSample(double tau_, const Vec3& a_, const Mat3& R0i0j_,
                                   const Ten3& R0jik_, const Ten4& Rikjl_)
    : tau(tau_), a(a_), R0i0j(R0i0j_), R0jik(R0jik_), Rikjl(Rikjl_) {
    if (!finite(tau) || !finite(a) || !finite(R0i0j))
        throw std::invalid_argument("FermiFrameSample: non-finite component");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (R0i0j[i][j] != R0i0j[j][i])
                throw std::invalid_argument("FermiFrameSample: R0i0j not symmetric");
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    double v = Rikjl[i][k][j][l];
                    if (!std::isfinite(v))
                        throw std::invalid_argument("FermiFrameSample: non-finite Rikjl");
                    if (v != Rikjl[j][l][i][k])
                        throw std::invalid_argument("FermiFrameSample: Rikjl pair symmetry violated");
                    if (v != -Rikjl[k][i][j][l])
                        throw std::invalid_argument("FermiFrameSample: Rikjl antisymmetry violated");
                }
    for (const auto& jj : R0jik)
        for (const auto& ii : jj)
            for (double v : ii)
                if (!std::isfinite(v))
                    throw std::invalid_argument("FermiFrameSample: non-finite R0jik");
}

double FermiFrameSample::accel_magnitude() const {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

Ten4 spatial_curvature_from_source(const Mat3& S) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (S[i][j] != S[j][i])
                throw std::invalid_argument("spatial_curvature_from_source: S not symmetric");
    auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    Ten4 R{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l)
                    R[i][k][j][l] = S[i][j] * d(k, l) - S[i][l] * d(k, j) +
                                    d(i, j) * S[k][l] - d(i, l) * S[k][j];
    return R;
}

FermiFrameSample constant_curvature_sample(double tau, double alpha, const Vec3& a) {
    Mat3 R0i0j{};
    Mat3 S{};
    for (int i = 0; i < 3; ++i) {
        R0i0j[i][i] = -alpha;
        S[i][i] = 0.5 * alpha;
    }
    return FermiFrameSample(tau, a, R0i0j, Ten3{}, spatial_curvature_from_source(S));
}

TrajectoryModel TrajectoryModel::inertial() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return TrajectoryModel(Inertial{}, {-inf, inf});
}

TrajectoryModel TrajectoryModel::uniform_acceleration(double a) {
    if (!std::isfinite(a) || a < 0.0)
        throw std::invalid_argument("uniform_acceleration: a must be finite and >= 0");
    constexpr double inf = std::numeric_limits<double>::infinity();
    return TrajectoryModel(UniformAcceleration{a}, {-inf, inf});
}

TrajectoryModel TrajectoryModel::constant_curvature(double alpha, const Vec3& a) {
    if (!std::isfinite(alpha))
        throw std::invalid_argument("constant_curvature: alpha must be finite");
    for (double c : a)
        if (!std::isfinite(c))
            throw std::invalid_argument("constant_curvature: a must be finite");
    constexpr double inf = std::numeric_limits<double>::infinity();
    return TrajectoryModel(ConstantCurvatureStatic{alpha, a}, {-inf, inf});
}

TrajectoryModel TrajectoryModel::tabulated(std::vector<FermiFrameSample> samples) {
    if (samples.empty())
        throw std::invalid_argument("tabulated: at least one sample required");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].tau > samples[i - 1].tau))
            throw std::invalid_argument("tabulated: tau samples must be strictly increasing");
    std::pair<double, double> range{samples.front().tau, samples.back().tau};
    return TrajectoryModel(Tabulated{std::move(samples)}, range);
}

FermiFrameSample TrajectoryModel::frame_at(double tau) const {
    if (!std::isfinite(tau))
        throw std::domain_error("frame_at: non-finite tau");
    struct Visitor {
        double tau;
        FermiFrameSample operator()(const Inertial&) const {
            FermiFrameSample f;
            f.tau = tau;
            return f;
        }
        FermiFrameSample operator()(const UniformAcceleration& u) const {
            FermiFrameSample f;
            f.tau = tau;
            f.a = {u.a, 0.0, 0.0};
            return f;
        }
        FermiFrameSample operator()(const ConstantCurvatureStatic& c) const {
            return constant_curvature_sample(tau, c.alpha, c.a);
        }
        FermiFrameSample operator()(const Tabulated& t) const {
            // Nearest stored sample; ties resolve to the earlier one.
            const auto& s = t.samples;
            auto it = std::lower_bound(s.begin(), s.end(), tau,
                                       [](const FermiFrameSample& f, double v) { return f.tau < v; });
            if (it == s.begin()) return s.front();
            if (it == s.end()) return s.back();
            auto prev = std::prev(it);
            return (tau - prev->tau <= it->tau - tau) ? *prev : *it;
        }
    };
    return std::visit(Visitor{tau}, kind_);
}

MetricComponents eval_fermi_metric(const FermiFrameSample& frame, const Vec3& x) {
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(x[2]))
        throw std::domain_error("eval_fermi_metric: non-finite position");

    double ax = frame.a[0] * x[0] + frame.a[1] * x[1] + frame.a[2] * x[2];
    double Rxx = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Rxx += frame.R0i0j[i][j] * x[i] * x[j];

    MetricComponents g;
    g.g_tt = -(1.0 + ax) * (1.0 + ax) - Rxx;

    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += frame.R0jik[j][i][k] * x[j] * x[k];
        g.g_ti[i] = -(2.0 / 3.0) * s;
    }

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) s += frame.Rikjl[i][k][j][l] * x[k] * x[l];
            g.h[i][j] = (i == j ? 1.0 : 0.0) - s / 3.0;
        }
    return g;
}

double redshift_exact(const MetricComponents& g) {
    Eigen::Matrix3d h = to_eigen(g.h);
    Eigen::Vector3d gt(g.g_ti[0], g.g_ti[1], g.g_ti[2]);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(h);
    if (!lu.isInvertible())
        throw std::domain_error("redshift_exact: singular spatial metric");
    double shift = gt.dot(lu.solve(gt));
    return std::sqrt(std::abs(g.g_tt - shift));
}

double redshift_series(const FermiFrameSample& frame, const Vec3& x) {
    double ax = frame.a[0] * x[0] + frame.a[1] * x[1] + frame.a[2] * x[2];
    double Rxx = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Rxx += frame.R0i0j[i][j] * x[i] * x[j];
    return 1.0 + ax + 0.5 * Rxx;
}

double lambda_R(const Mat3& R0i0j) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (!std::isfinite(R0i0j[i][j]))
                throw std::invalid_argument("lambda_R: non-finite input");
            if (R0i0j[i][j] != R0i0j[j][i])
                throw std::invalid_argument("lambda_R: input not symmetric");
        }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(-to_eigen(R0i0j), Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues().maxCoeff());
}

double fermi_bound(const TrajectoryModel& traj, const std::vector<double>& tau_samples) {
    if (tau_samples.empty())
        throw std::invalid_argument("fermi_bound: empty tau sample grid");
    double inf_bound = std::numeric_limits<double>::infinity();
    for (double tau : tau_samples) {
        FermiFrameSample f = traj.frame_at(tau);
        double denom = f.accel_magnitude() + std::sqrt(lambda_R(f.R0i0j));
        if (denom > 0.0) inf_bound = std::min(inf_bound, 1.0 / denom);
    }
    return inf_bound;
}

VolumeFactors volume_factors(const MetricComponents& g) {
    Eigen::Matrix3d h = to_eigen(g.h);
    Eigen::LLT<Eigen::Matrix3d> llt(h);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("volume_factors: spatial metric not positive definite");
    double det_h = h.determinant();

    Eigen::Matrix4d g4;
    g4(0, 0) = g.g_tt;
    for (int i = 0; i < 3; ++i) {
        g4(0, i + 1) = g.g_ti[i];
        g4(i + 1, 0) = g.g_ti[i];
        for (int j = 0; j < 3; ++j) g4(i + 1, j + 1) = g.h[i][j];
    }
    double det_g = g4.determinant();
    if (det_g >= 0.0)
        throw std::domain_error("volume_factors: metric determinant not negative");

    return VolumeFactors{std::sqrt(det_h), std::sqrt(-det_g)};
}

}  // namespace qwl::geometry
