#pragma once

// One-dimensional grid quantization with a position-dependent integration
// measure: wavefunctions live on a Dirichlet box, the inner product carries
// per-point weights sqrt(g_Sigma), and operators are stored in the
// measure-orthonormal ("half-density") coordinates f_k = sqrt(w_k) psi_k so
// that Hermitian operators are literally Hermitian matrices. Includes the
// corrected-oscillator closed forms and the localization validity checks.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qworldline/geometry.hpp"

namespace qwl::quantum {

struct Grid1D {
    int n_points = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<double> weights;  // sqrt(g_Sigma) samples, all > 0

    // Uniform grid with flat measure (weights = 1).
    static Grid1D uniform(int n_points, double x_min, double x_max);
    // Uniform grid with supplied sqrt(g_Sigma) samples.
    static Grid1D with_weights(int n_points, double x_min, double x_max,
                               std::vector<double> weights);

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double x(int k) const { return x_min + k * spacing(); }
    bool operator==(const Grid1D&) const = default;
};

// Samples of psi on the grid; the first and last entries are exactly zero
// (hard-wall localization inside the Fermi patch).
struct WaveFunction {
    Grid1D grid;
    Eigen::VectorXcd samples;

    static WaveFunction from_samples(Grid1D grid, Eigen::VectorXcd samples);
};

// Dense operator over half-density coordinates. The hermitian flag is only
// set when the stored matrix satisfies ||M - M^dagger||_max < 1e-12.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    bool hermitian = false;
};

struct GridOperatorSet {
    Grid1D grid;
    OperatorMatrix x;  // coordinate multiplication, diagonal
    OperatorMatrix p;  // -i g^(-1/4) d/dx (g^(1/4) .), 4th-order stencils
};

struct OscillatorSpec {
    double m = 1.0;      // rest mass, > 0
    double omega = 1.0;  // trap frequency, >= 0
    int dimension = 1;   // 1 or 3

    OscillatorSpec() = default;
    OscillatorSpec(double m, double omega, int dimension = 1);
};

enum class HamiltonianMode { Bare, Symmetrized, Leading };

struct EigenPair {
    double energy;
    WaveFunction state;
};

// Closed-form corrected oscillator data for constant R_{0i0j} = -alpha d_ij
// and constant acceleration a. Invalid (and NaN-filled) when omega^2 <= alpha.
struct CorrectedSpectrum {
    double omega_prime = 0.0;
    geometry::Vec3 displacement{0.0, 0.0, 0.0};
    double ground_shift = 0.0;
    bool valid = false;
};

struct ValidityReport {
    double localization = 0.0;
    double bound = 0.0;  // 1/(a + sqrt(lambda_R)), +infinity when unbounded
    double energy_ratio = 0.0;
    bool localized_ok = false;
    bool nonrelativistic_ok = false;
};

// Position and momentum matrices plus measure bookkeeping for a grid.
GridOperatorSet build_grid_operators(const Grid1D& grid);

// Trapezoid inner product with the measure weights; grids must compare equal.
std::complex<double> inner_product(const WaveFunction& psi, const WaveFunction& phi);
std::complex<double> inner_product(const Grid1D& grid, const Eigen::VectorXcd& psi,
                                   const Eigen::VectorXcd& phi);

// Apply an operator to psi-samples; the result is returned as raw samples
// (it need not vanish at the walls, e.g. for the momentum of a box state).
Eigen::VectorXcd apply(const OperatorMatrix& op, const WaveFunction& psi);

// Hamiltonian on the grid along the first frame axis.
//   Bare:        m + p^2/2m + V
//   Symmetrized: (gamma H + H gamma)/2 with the exact redshift gamma(x)
//   Leading:     H + m a_1 x + (m/2) R_0101 x^2
// The walls are decoupled (diagonal) rows; diagonalize() solves the interior.
OperatorMatrix assemble_hamiltonian(const OscillatorSpec& spec,
                                    const geometry::FermiFrameSample& frame,
                                    HamiltonianMode mode, const Grid1D& grid);
OperatorMatrix assemble_hamiltonian(const std::vector<double>& potential,
                                    const geometry::FermiFrameSample& frame,
                                    HamiltonianMode mode, const Grid1D& grid);

// Lowest k eigenpairs of a Hermitian operator under Dirichlet walls,
// eigenvectors normalized in the measure inner product, energies ascending.
std::vector<EigenPair> diagonalize(const OperatorMatrix& op, const Grid1D& grid, int k);

CorrectedSpectrum oscillator_corrected_spectrum(const OscillatorSpec& spec, double alpha,
                                                const geometry::Vec3& a);

ValidityReport validity_report(double localization, const geometry::FermiFrameSample& frame,
                               double m, double h_nr_expectation, double threshold = 0.01);
ValidityReport validity_report(const WaveFunction& state, const geometry::FermiFrameSample& frame,
                               double m, double h_nr_expectation, double threshold = 0.01);

// SI acceleration threshold below which a hydrogen level n fits inside its
// localization bound, and the corresponding check for given a and lambda_R.
double hydrogen_threshold_si(int n);
bool hydrogen_validity(int n, double a_si, double lambda_r_si);

}  // namespace qwl::quantum
