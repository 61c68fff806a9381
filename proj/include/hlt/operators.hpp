#pragma once

#include <Eigen/Dense>
#include <optional>

#include "hlt/field.hpp"

namespace hlt::ops {

enum class Basis { scalar, spinor };

// Dense complex Hermitian matrix with basis and grid provenance.  The stored
// matrix is symmetrized at construction.
struct DenseHermitian {
    Eigen::MatrixXcd mat;
    Basis basis = Basis::scalar;
    fields::GridSpec grid;

    DenseHermitian() = default;
    DenseHermitian(Eigen::MatrixXcd m, Basis b, const fields::GridSpec& g);

    int dim() const { return int(mat.rows()); }
    double max_abs() const { return mat.cwiseAbs().maxCoeff(); }
};

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // columns
};

// Full Hermitian eigendecomposition (LAPACK zheevd).
EigenSystem eigensystem(const Eigen::MatrixXcd& h);
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXcd& h);

// ---- spectral building blocks ----------------------------------------------

// Cached N x N unitary synthesis matrix (columns = plane waves).
const Eigen::MatrixXcd& synthesis_matrix(const fields::GridSpec& g);

// Per-spectral-index wavenumber component and |k|^2.
Eigen::VectorXd symbol_axis(const fields::GridSpec& g, int axis);
Eigen::VectorXd symbol_ksq(const fields::GridSpec& g);

// Cached dense momentum component P_axis = F diag(k_axis) F^dagger.
const Eigen::MatrixXcd& momentum_matrix(const fields::GridSpec& g, int axis);

// Orthogonal projector onto modes with |m| <= n/4 per axis (scalar basis).
Eigen::MatrixXcd half_spectrum_projector(const fields::GridSpec& g);

// ---- operators ---------------------------------------------------------------

// Fourier-diagonal operator with symbol (|k|^2 + m^2)^s, scalar basis.
DenseHermitian fractional_laplacian(const fields::GridSpec& g, double s, double mass = 0.0);

// sigma . (p - A) on the spinor basis; A real 3-component.
DenseHermitian dirac_operator(const fields::GridSpec& g, const fields::Field& a);

// (sigma . p_A)^2 = square of the Dirac operator.
DenseHermitian pauli_square(const fields::GridSpec& g, const fields::Field& a);

// sum_j (P_j - A_j)^2 on the requested basis.
DenseHermitian magnetic_schrodinger(const fields::GridSpec& g, const fields::Field& a,
                                    Basis basis = Basis::scalar);

// sigma . B as a multiplication operator on the spinor basis.
DenseHermitian zeeman_term(const fields::GridSpec& g, const fields::Field& b);

// Spectral-calculus power of a numerically PSD operator; eigenvalues below
// zero are clamped before powering.  Inputs with min eigenvalue below
// -1e-8 * scale are rejected as genuinely indefinite.
DenseHermitian fractional_power(const DenseHermitian& h, double s);

// Resolvent-representation power x^a = sin(pi a)/pi int_0^inf x/(x+t) t^{a-1} dt,
// evaluated after the substitution t = e^u with Gauss-Legendre panels covering
// the doubly-infinite line; `nodes` is the per-panel order (>= 8).
DenseHermitian resolvent_power_quadrature(const DenseHermitian& h, double alpha, int nodes);

enum class Kind { free, magnetic, pauli };

// Kinetic part per kind, minus hardy_weight * min(|x|^{-2s}, cap), plus diag(V).
// Scalar potentials act as scalar (x) identity on the spinor basis.
DenseHermitian assemble_hamiltonian(Kind kind, const fields::GridSpec& g, double s,
                                    const fields::Field* a, double hardy_weight,
                                    double cap, const fields::Field* v,
                                    std::optional<Basis> basis = {});

} // namespace hlt::ops
