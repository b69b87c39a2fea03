#include "qworldline/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwl::quantum {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Finite-difference weights for the m-th derivative at x0 = 0 on the given
// nodes (Fornberg's recursion). Used for the one-sided closure rows.
std::vector<double> fd_weights(const std::vector<double>& nodes, int order) {
    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, order + 1);
    c(0, 0) = 1.0;
    double c1 = 1.0;
    double c4 = nodes[0];
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c(i, order);
    return w;
}

// Full-grid first derivative, 4th order: 5-point central stencils inside,
// one-sided 5-point rows at the two points nearest each wall.
Eigen::MatrixXd first_derivative_matrix(int n, double dx) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    const double c1 = 8.0 / (12.0 * dx);
    const double c2 = 1.0 / (12.0 * dx);
    for (int k = 2; k <= n - 3; ++k) {
        d(k, k - 2) = c2;
        d(k, k - 1) = -c1;
        d(k, k + 1) = c1;
        d(k, k + 2) = -c2;
    }
    for (int row : {0, 1}) {
        std::vector<double> nodes(5);
        for (int j = 0; j < 5; ++j) nodes[j] = (j - row) * dx;
        const auto w = fd_weights(nodes, 1);
        for (int j = 0; j < 5; ++j) d(row, j) = w[j];
        // Mirror image for the right wall: x -> -x flips the sign.
        for (int j = 0; j < 5; ++j) d(n - 1 - row, n - 1 - j) = -w[j];
    }
    return d;
}

// Second derivative restricted to the interior nodes 1..n-2 with hard walls:
// psi vanishes at the walls and continues oddly through them, which removes
// the ghost points while keeping the matrix exactly symmetric.
Eigen::MatrixXd dirichlet_second_derivative(int n, double dx) {
    const int m = n - 2;
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(m, m);
    const double s = 1.0 / (12.0 * dx * dx);
    const double coef[5] = {-s, 16.0 * s, -30.0 * s, 16.0 * s, -s};
    for (int j = 0; j < m; ++j) {
        const int k = j + 1;  // grid index
        for (int o = -2; o <= 2; ++o) {
            const int t = k + o;
            const double c = coef[o + 2];
            if (t == 0 || t == n - 1) continue;          // wall sample, zero
            if (t == -1) d2(j, 0) -= c;                  // odd image of node 1
            else if (t == n) d2(j, m - 1) -= c;          // odd image of node n-2
            else d2(j, t - 1) += c;
        }
    }
    return d2;
}

bool is_hermitian_tight(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
}

Eigen::VectorXd weight_vector(const Grid1D& grid) {
    return Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), grid.n_points);
}

void check_grid(const Grid1D& grid) {
    require(grid.n_points >= 8, "grid: need at least 8 points");
    require(std::isfinite(grid.x_min) && std::isfinite(grid.x_max) && grid.x_max > grid.x_min,
            "grid: x_max must exceed x_min");
    require(static_cast<int>(grid.weights.size()) == grid.n_points,
            "grid: weights length must equal n_points");
    for (double w : grid.weights)
        require(std::isfinite(w) && w > 0.0, "grid: weights must be positive");
}

// Shared Hamiltonian assembly once the potential samples are known.
OperatorMatrix assemble_from_potential(const std::vector<double>& potential, double mass,
                                       const geometry::FermiFrameSample& frame,
                                       HamiltonianMode mode, const Grid1D& grid) {
    check_grid(grid);
    require(static_cast<int>(potential.size()) == grid.n_points,
            "hamiltonian: potential sample count must equal n_points");
    for (double v : potential) require(std::isfinite(v), "hamiltonian: potential must be finite");
    require(std::isfinite(mass) && mass > 0.0, "hamiltonian: mass must be positive");
    // Frames normally guarantee this, but the fields are mutable and the
    // corrected modes would silently build a non-Hermitian matrix otherwise.
    if (mode != HamiltonianMode::Bare)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                require(frame.R0i0j[i][j] == frame.R0i0j[j][i],
                        "hamiltonian: R0i0j must be symmetric");

    const int n = grid.n_points;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    h.block(1, 1, n - 2, n - 2) = -dirichlet_second_derivative(n, grid.spacing()) / (2.0 * mass);
    for (int k = 0; k < n; ++k) h(k, k) += mass + potential[k];

    if (mode == HamiltonianMode::Leading) {
        const double a1 = frame.a[0];
        const double r0101 = frame.R0i0j[0][0];
        for (int k = 0; k < n; ++k) {
            const double x = grid.x(k);
            h(k, k) += mass * a1 * x + 0.5 * mass * r0101 * x * x;
        }
    } else if (mode == HamiltonianMode::Symmetrized) {
        Eigen::VectorXd gamma(n);
        for (int k = 0; k < n; ++k) {
            const geometry::Vec3 xv{grid.x(k), 0.0, 0.0};
            const auto metric = geometry::eval_fermi_metric(frame, xv);
            // gamma^2 must come from a timelike lapse; otherwise the grid
            // pokes out of the region where the frame metric makes sense.
            Eigen::Matrix3d hm;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) hm(i, j) = metric.h[i][j];
            Eigen::Vector3d gt(metric.g_ti[0], metric.g_ti[1], metric.g_ti[2]);
            const double lapse_sq = -(metric.g_tt - gt.dot(hm.ldlt().solve(gt)));
            if (!(lapse_sq > 0.0))
                throw std::domain_error("hamiltonian: metric degenerate on the grid");
            gamma(k) = std::sqrt(lapse_sq);
        }
        // (Gamma H + H Gamma)/2 entrywise keeps exact symmetry.
        Eigen::MatrixXd sym(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) sym(r, c) = h(r, c) * 0.5 * (gamma(r) + gamma(c));
        h = sym;
    }

    OperatorMatrix op;
    op.entries = h.cast<std::complex<double>>();
    op.hermitian = is_hermitian_tight(op.entries);
    return op;
}

}  // namespace

Grid1D Grid1D::uniform(int n_points, double x_min, double x_max) {
    return with_weights(n_points, x_min, x_max, std::vector<double>(std::max(n_points, 0), 1.0));
}

Grid1D Grid1D::with_weights(int n_points, double x_min, double x_max,
                            std::vector<double> weights) {
    Grid1D g;
    g.n_points = n_points;
    g.x_min = x_min;
    g.x_max = x_max;
    g.weights = std::move(weights);
    check_grid(g);
    return g;
}

WaveFunction WaveFunction::from_samples(Grid1D grid, Eigen::VectorXcd samples) {
    check_grid(grid);
    require(samples.size() == grid.n_points, "wavefunction: sample count must equal n_points");
    require(samples.allFinite(), "wavefunction: samples must be finite");
    const int n = grid.n_points;
    require(samples(0) == 0.0 && samples(n - 1) == 0.0,
            "wavefunction: wall samples must be exactly zero");
    return WaveFunction{std::move(grid), std::move(samples)};
}

GridOperatorSet build_grid_operators(const Grid1D& grid) {
    check_grid(grid);
    const int n = grid.n_points;

    OperatorMatrix x;
    x.entries = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) x.entries(k, k) = grid.x(k);
    x.hermitian = true;

    // In half-density coordinates the measure factors cancel out of the
    // momentum matrix entirely: P = -i D. The one-sided closure rows leave a
    // small anti-Hermitian defect confined to the 5x5 wall corners; project
    // it out so the stored matrix is Hermitian to the last bit. The defect
    // only couples to samples within two spacings of a wall, where admissible
    // states vanish.
    OperatorMatrix p;
    const Eigen::MatrixXcd raw = -kI * first_derivative_matrix(n, grid.spacing());
    p.entries = 0.5 * (raw + Eigen::MatrixXcd(raw.adjoint()));
    p.hermitian = is_hermitian_tight(p.entries);

    return GridOperatorSet{grid, std::move(x), std::move(p)};
}

std::complex<double> inner_product(const Grid1D& grid, const Eigen::VectorXcd& psi,
                                   const Eigen::VectorXcd& phi) {
    check_grid(grid);
    require(psi.size() == grid.n_points && phi.size() == grid.n_points,
            "inner_product: sample count must equal n_points");
    const Eigen::VectorXd w = weight_vector(grid);
    Eigen::VectorXcd integrand = psi.conjugate().cwiseProduct(phi).cwiseProduct(w.cast<std::complex<double>>());
    const int n = grid.n_points;
    std::complex<double> sum = 0.5 * (integrand(0) + integrand(n - 1));
    for (int k = 1; k < n - 1; ++k) sum += integrand(k);
    return sum * grid.spacing();
}

std::complex<double> inner_product(const WaveFunction& psi, const WaveFunction& phi) {
    require(psi.grid == phi.grid, "inner_product: grids differ");
    return inner_product(psi.grid, psi.samples, phi.samples);
}

Eigen::VectorXcd apply(const OperatorMatrix& op, const WaveFunction& psi) {
    const int n = psi.grid.n_points;
    require(op.entries.rows() == n && op.entries.cols() == n,
            "apply: operator size must match the grid");
    const Eigen::VectorXd root_w = weight_vector(psi.grid).cwiseSqrt();
    Eigen::VectorXcd f = psi.samples.cwiseProduct(root_w.cast<std::complex<double>>());
    Eigen::VectorXcd g = op.entries * f;
    return g.cwiseQuotient(root_w.cast<std::complex<double>>());
}

OperatorMatrix assemble_hamiltonian(const OscillatorSpec& spec,
                                    const geometry::FermiFrameSample& frame,
                                    HamiltonianMode mode, const Grid1D& grid) {
    require(spec.dimension == 1, "hamiltonian: grid assembly needs a 1-D oscillator");
    std::vector<double> v(grid.n_points);
    for (int k = 0; k < grid.n_points; ++k) {
        const double x = grid.x(k);
        v[k] = 0.5 * spec.m * spec.omega * spec.omega * x * x;
    }
    return assemble_from_potential(v, spec.m, frame, mode, grid);
}

OperatorMatrix assemble_hamiltonian(const std::vector<double>& potential,
                                    const geometry::FermiFrameSample& frame,
                                    HamiltonianMode mode, const Grid1D& grid) {
    // Sampled potentials ride on a unit-mass particle unless callers fold the
    // mass into the samples; keeping m = 1 here matches the CLI surface.
    return assemble_from_potential(potential, 1.0, frame, mode, grid);
}

std::vector<EigenPair> diagonalize(const OperatorMatrix& op, const Grid1D& grid, int k) {
    check_grid(grid);
    const int n = grid.n_points;
    require(op.entries.rows() == n && op.entries.cols() == n,
            "diagonalize: operator size must match the grid");
    require(op.hermitian, "diagonalize: operator must be Hermitian");
    const int dim = n - 2;
    require(k >= 1, "diagonalize: need k >= 1");
    require(k <= dim, "diagonalize: k exceeds the interior dimension");

    const Eigen::MatrixXcd interior = op.entries.block(1, 1, dim, dim);
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
    if (interior.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(interior.real());
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        evals = solver.eigenvalues();
        evecs = solver.eigenvectors().cast<std::complex<double>>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(interior);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("diagonalize: eigensolver failed");
        evals = solver.eigenvalues();
        evecs = solver.eigenvectors();
    }

    const Eigen::VectorXd root_w = weight_vector(grid).cwiseSqrt();
    std::vector<EigenPair> out;
    out.reserve(k);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXcd samples = Eigen::VectorXcd::Zero(n);
        for (int i = 0; i < dim; ++i) samples(i + 1) = evecs(i, j) / root_w(i + 1);
        // Unit half-density norm means the measure norm is spacing * 1.
        samples /= std::sqrt(grid.spacing());
        out.push_back(EigenPair{evals(j), WaveFunction::from_samples(grid, std::move(samples))});
    }
    return out;
}

OscillatorSpec::OscillatorSpec(double m_, double omega_, int dimension_)
    : m(m_), omega(omega_), dimension(dimension_) {
    require(std::isfinite(m) && m > 0.0, "oscillator: mass must be positive");
    require(std::isfinite(omega) && omega >= 0.0, "oscillator: omega must be nonnegative");
    require(dimension == 1 || dimension == 3, "oscillator: dimension must be 1 or 3");
}

CorrectedSpectrum oscillator_corrected_spectrum(const OscillatorSpec& spec, double alpha,
                                                const geometry::Vec3& a) {
    require(std::isfinite(alpha), "corrected spectrum: alpha must be finite");
    for (double c : a) require(std::isfinite(c), "corrected spectrum: acceleration must be finite");

    CorrectedSpectrum out;
    const double wp_sq = spec.omega * spec.omega - alpha;
    if (!(wp_sq > 0.0)) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.omega_prime = nan;
        out.displacement = {nan, nan, nan};
        out.ground_shift = nan;
        out.valid = false;
        return out;
    }
    out.omega_prime = std::sqrt(wp_sq);
    const double a_sq = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    for (int i = 0; i < 3; ++i) out.displacement[i] = -a[i] / wp_sq;
    out.ground_shift = -spec.m * a_sq / (2.0 * wp_sq);
    out.valid = true;
    return out;
}

ValidityReport validity_report(double localization, const geometry::FermiFrameSample& frame,
                               double m, double h_nr_expectation, double threshold) {
    require(std::isfinite(localization) && localization > 0.0,
            "validity: localization must be positive");
    require(std::isfinite(m) && m > 0.0, "validity: mass must be positive");
    require(std::isfinite(h_nr_expectation), "validity: energy expectation must be finite");
    require(std::isfinite(threshold) && threshold > 0.0, "validity: threshold must be positive");

    ValidityReport rep;
    rep.localization = localization;
    const double denom = frame.accel_magnitude() + std::sqrt(geometry::lambda_R(frame.R0i0j));
    rep.bound = denom > 0.0 ? 1.0 / denom : std::numeric_limits<double>::infinity();
    rep.energy_ratio = h_nr_expectation / m;
    rep.localized_ok = localization < rep.bound;
    rep.nonrelativistic_ok = std::abs(rep.energy_ratio) < threshold;
    return rep;
}

ValidityReport validity_report(const WaveFunction& state, const geometry::FermiFrameSample& frame,
                               double m, double h_nr_expectation, double threshold) {
    const auto norm_sq = inner_product(state, state);
    require(norm_sq.real() > 0.0, "validity: state has zero norm");
    Eigen::VectorXcd x_psi = state.samples;
    for (int k = 0; k < state.grid.n_points; ++k) x_psi(k) *= state.grid.x(k);
    const double x_sq =
        inner_product(state.grid, x_psi, x_psi).real() / norm_sq.real();
    return validity_report(std::sqrt(x_sq), frame, m, h_nr_expectation, threshold);
}

double hydrogen_threshold_si(int n) {
    require(n >= 1, "hydrogen: principal quantum number must be >= 1");
    constexpr double c = 299792458.0;            // m/s
    constexpr double hbar = 1.054571817e-34;     // J s
    constexpr double m_e = 9.1093837015e-31;     // kg
    constexpr double alpha_fs = 7.2973525693e-3;
    const double nn = static_cast<double>(n);
    const double radius = 2.0 * nn * nn * hbar / (alpha_fs * alpha_fs * m_e * c);
    return c * c / radius;
}

bool hydrogen_validity(int n, double a_si, double lambda_r_si) {
    require(std::isfinite(a_si) && a_si >= 0.0, "hydrogen: acceleration must be nonnegative");
    require(std::isfinite(lambda_r_si) && lambda_r_si >= 0.0,
            "hydrogen: lambda_R must be nonnegative");
    constexpr double c = 299792458.0;
    return a_si + c * c * std::sqrt(lambda_r_si) < hydrogen_threshold_si(n);
}

}  // namespace qwl::quantum
