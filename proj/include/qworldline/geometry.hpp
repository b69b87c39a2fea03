#pragma once

// Local geometry around a timelike worldline: metric components in the
// comoving orthonormal frame to quadratic order in the transverse
// coordinates, redshift factors, volume elements, and the localization
// radius inside which that expansion (and a localized quantum system)
// makes sense. Natural units (c = 1) throughout.

#include <array>
#include <utility>
#include <variant>
#include <vector>

namespace qwl::geometry {

using Vec3 = std::array<double, 3>;
// Mat3[i][j] = R_{0i0j} (electric part of the curvature), or any 3x3 block.
using Mat3 = std::array<std::array<double, 3>, 3>;
// Ten3[j][i][k] = R_{0jik} (mixed part entering the time-space metric block).
using Ten3 = std::array<std::array<std::array<double, 3>, 3>, 3>;
// Ten4[i][k][j][l] = R_{ikjl} (purely spatial part).
using Ten4 = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

// Frame data on one worldline point: proper acceleration and the curvature
// blocks evaluated there. R0i0j must be exactly symmetric as stored; Rikjl
// must satisfy the pair symmetry R_{ikjl} = R_{jlik} and antisymmetry under
// i <-> k. The validating constructor throws std::invalid_argument otherwise.
struct FermiFrameSample {
    double tau = 0.0;
    Vec3 a{0.0, 0.0, 0.0};
    Mat3 R0i0j{};
    Ten3 R0jik{};
    Ten4 Rikjl{};

    FermiFrameSample() = default;
    FermiFrameSample(double tau, const Vec3& a, const Mat3& R0i0j,
                     const Ten3& R0jik = Ten3{}, const Ten4& Rikjl = Ten4{});

    double accel_magnitude() const;
};

// Purely spatial curvature R_{ikjl} = S_ij d_kl - S_il d_kj + d_ij S_kl - d_il S_kj
// from a symmetric source S; satisfies the storage symmetries identically.
// S = (alpha/2) I reproduces the constant-curvature form
// R_{ikjl} = alpha (d_ij d_kl - d_il d_kj).
Ten4 spatial_curvature_from_source(const Mat3& S);

// Frame sample of a static observer in a constant-curvature slice:
// R_{0i0j} = -alpha d_ij, R_{0jik} = 0, R_{ikjl} = alpha (d_ij d_kl - d_il d_kj),
// with alpha = R/12 in terms of the Ricci scalar.
FermiFrameSample constant_curvature_sample(double tau, double alpha, const Vec3& a);

// Metric components in comoving coordinates (tau, x):
//   g_tt = -(1 + a.x)^2 - R_{0i0j} x^i x^j
//   g_ti = -(2/3) R_{0jik} x^j x^k
//   h_ij = d_ij - (1/3) R_{ikjl} x^k x^l
struct MetricComponents {
    double g_tt = -1.0;
    Vec3 g_ti{0.0, 0.0, 0.0};
    Mat3 h{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
};

struct Inertial {};
struct UniformAcceleration {
    double a = 0.0;  // proper acceleration along e1, a >= 0
};
struct ConstantCurvatureStatic {
    double alpha = 0.0;
    Vec3 a{0.0, 0.0, 0.0};
};
struct Tabulated {
    std::vector<FermiFrameSample> samples;  // strictly increasing tau
};

// A worldline-with-frame model able to produce FermiFrameSamples. Tabulated
// trajectories return the stored sample nearest in tau (no interpolation).
class TrajectoryModel {
  public:
    using Kind = std::variant<Inertial, UniformAcceleration, ConstantCurvatureStatic, Tabulated>;

    static TrajectoryModel inertial();
    static TrajectoryModel uniform_acceleration(double a);
    static TrajectoryModel constant_curvature(double alpha, const Vec3& a);
    static TrajectoryModel tabulated(std::vector<FermiFrameSample> samples);

    FermiFrameSample frame_at(double tau) const;
    std::pair<double, double> tau_range() const { return tau_range_; }
    const Kind& kind() const { return kind_; }

  private:
    explicit TrajectoryModel(Kind kind, std::pair<double, double> range)
        : kind_(std::move(kind)), tau_range_(range) {}
    Kind kind_;
    std::pair<double, double> tau_range_;
};

struct VolumeFactors {
    double sqrt_g_sigma = 1.0;  // sqrt(det h)
    double sqrt_minus_g = 1.0;  // sqrt(-det g), from the full 4x4 determinant
};

// Metric at transverse position x for a given frame sample. Pure arithmetic;
// non-finite inputs throw std::domain_error.
MetricComponents eval_fermi_metric(const FermiFrameSample& frame, const Vec3& x);

// Exact redshift gamma = |g_tt - g_ti g_tj h^ij|^(1/2).
// Throws std::domain_error when h is singular.
double redshift_exact(const MetricComponents& g);

// Quadratic expansion gamma = 1 + a.x + (1/2) R_{0i0j} x^i x^j.
double redshift_series(const FermiFrameSample& frame, const Vec3& x);

// lambda_R = max(0, largest eigenvalue of -R0i0j): the tidal rate entering
// the localization bound. Input must be symmetric; asymmetric input throws.
double lambda_R(const Mat3& R0i0j);

// Localization radius ell = inf over the sampled tau of 1/(a + sqrt(lambda_R)).
// Returns +infinity when every sample has a = 0 and lambda_R = 0.
double fermi_bound(const TrajectoryModel& traj, const std::vector<double>& tau_samples);

// Spatial and spacetime volume factors. The spacetime factor is computed from
// the full 4x4 determinant, so sqrt(-g) = gamma * sqrt(g_Sigma) is a genuine
// cross-check rather than a restatement. Throws std::domain_error when h is
// not positive definite.
VolumeFactors volume_factors(const MetricComponents& g);

}  // namespace qwl::geometry
