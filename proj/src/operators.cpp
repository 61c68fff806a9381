#include "hlt/operators.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "hlt/constants.hpp"
#include "hlt/quadrature.hpp"

namespace hlt::ops {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using fields::Complex;
using fields::Field;
using fields::GridSpec;

void check_real_field(const Field& f, const char* what) {
    const double scale = f.data.cwiseAbs().maxCoeff();
    if (scale > 0.0 && f.max_imag() > 1e-13 * scale)
        throw std::invalid_argument(std::string(what) + ": field must be real");
}

void check_grid(const GridSpec& g, const Field& f, const char* what) {
    if (!(f.grid == g)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

struct GridOps {
    MatrixXcd synthesis;
    MatrixXcd momentum[3];
};

const GridOps& grid_ops(const GridSpec& g) {
    static std::map<std::tuple<int, double, bool>, GridOps> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_tuple(g.n, g.box, g.offset);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GridOps ops;
    const int n = g.n, N = g.sites();
    ops.synthesis.resize(N, N);
    for (int jx = 0; jx < n; ++jx)
        for (int jy = 0; jy < n; ++jy)
            for (int jz = 0; jz < n; ++jz) {
                const int row = g.site_index(jx, jy, jz);
                const double x = g.coord(jx), y = g.coord(jy), z = g.coord(jz);
                for (int ix = 0; ix < n; ++ix)
                    for (int iy = 0; iy < n; ++iy)
                        for (int iz = 0; iz < n; ++iz) {
                            const double phase = g.wavenumber(ix) * x +
                                                 g.wavenumber(iy) * y +
                                                 g.wavenumber(iz) * z;
                            ops.synthesis(row, g.site_index(ix, iy, iz)) =
                                Complex(std::cos(phase), std::sin(phase));
                        }
            }
    ops.synthesis /= std::sqrt(double(N));

    for (int axis = 0; axis < 3; ++axis) {
        const VectorXd k = symbol_axis(g, axis);
        ops.momentum[axis].noalias() =
            ops.synthesis * k.asDiagonal() * ops.synthesis.adjoint();
        ops.momentum[axis] = 0.5 * (ops.momentum[axis] + ops.momentum[axis].adjoint()).eval();
    }
    return cache.emplace(key, std::move(ops)).first->second;
}

MatrixXcd spinor_lift(const MatrixXcd& m) {
    const int N = int(m.rows());
    MatrixXcd out = MatrixXcd::Zero(2 * N, 2 * N);
    out.topLeftCorner(N, N) = m;
    out.bottomRightCorner(N, N) = m;
    return out;
}

// sigma . V for a triple of site-diagonal or dense blocks:
// [[V3, V1 - i V2], [V1 + i V2, -V3]]
MatrixXcd sigma_dot(const MatrixXcd& v1, const MatrixXcd& v2, const MatrixXcd& v3) {
    const int N = int(v1.rows());
    MatrixXcd out(2 * N, 2 * N);
    const Complex i_unit(0.0, 1.0);
    out.topLeftCorner(N, N) = v3;
    out.topRightCorner(N, N) = v1 - i_unit * v2;
    out.bottomLeftCorner(N, N) = v1 + i_unit * v2;
    out.bottomRightCorner(N, N) = -v3;
    return out;
}

} // namespace

DenseHermitian::DenseHermitian(Eigen::MatrixXcd m, Basis b, const fields::GridSpec& g)
    : mat(std::move(m)), basis(b), grid(g) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DenseHermitian: square matrix required");
    mat = 0.5 * (mat + mat.adjoint()).eval();
}

EigenSystem eigensystem(const Eigen::MatrixXcd& h) {
    const int n = int(h.rows());
    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors = h;
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(sys.vectors.data()), n,
        sys.values.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return sys;
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXcd& h) {
    const int n = int(h.rows());
    VectorXd vals(n);
    MatrixXcd work = h;
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'N', 'L', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n, vals.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return vals;
}

const Eigen::MatrixXcd& synthesis_matrix(const fields::GridSpec& g) {
    return grid_ops(g).synthesis;
}

Eigen::VectorXd symbol_axis(const fields::GridSpec& g, int axis) {
    VectorXd k(g.sites());
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
                k[g.site_index(ix, iy, iz)] = g.wavenumber(i);
            }
    return k;
}

Eigen::VectorXd symbol_ksq(const fields::GridSpec& g) {
    VectorXd k2 = VectorXd::Zero(g.sites());
    for (int axis = 0; axis < 3; ++axis) k2 += symbol_axis(g, axis).cwiseAbs2();
    return k2;
}

const Eigen::MatrixXcd& momentum_matrix(const fields::GridSpec& g, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("momentum_matrix: axis in {0,1,2}");
    return grid_ops(g).momentum[axis];
}

Eigen::MatrixXcd half_spectrum_projector(const fields::GridSpec& g) {
    const int band = fields::half_spectrum_band(g);
    VectorXd mask(g.sites());
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const bool in = std::abs(g.mode(ix)) <= band && std::abs(g.mode(iy)) <= band &&
                                std::abs(g.mode(iz)) <= band;
                mask[g.site_index(ix, iy, iz)] = in ? 1.0 : 0.0;
            }
    const MatrixXcd& f = synthesis_matrix(g);
    MatrixXcd p = f * mask.asDiagonal() * f.adjoint();
    return 0.5 * (p + p.adjoint()).eval();
}

DenseHermitian fractional_laplacian(const fields::GridSpec& g, double s, double mass) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("fractional_laplacian: s in (0,1]");
    if (mass < 0.0) throw std::domain_error("fractional_laplacian: mass >= 0");
    const VectorXd sym =
        (symbol_ksq(g).array() + mass * mass).pow(s).matrix();
    const MatrixXcd& f = synthesis_matrix(g);
    return DenseHermitian(f * sym.asDiagonal() * f.adjoint(), Basis::scalar, g);
}

DenseHermitian dirac_operator(const fields::GridSpec& g, const fields::Field& a) {
    if (a.components != 3) throw std::invalid_argument("dirac_operator: A must have 3 components");
    check_grid(g, a, "dirac_operator");
    check_real_field(a, "dirac_operator");
    MatrixXcd m[3];
    for (int axis = 0; axis < 3; ++axis) {
        m[axis] = momentum_matrix(g, axis);
        m[axis].diagonal() -= a.comp(axis).real().cast<Complex>();
    }
    return DenseHermitian(sigma_dot(m[0], m[1], m[2]), Basis::spinor, g);
}

DenseHermitian pauli_square(const fields::GridSpec& g, const fields::Field& a) {
    const DenseHermitian d = dirac_operator(g, a);
    return DenseHermitian(d.mat * d.mat, Basis::spinor, g);
}

DenseHermitian magnetic_schrodinger(const fields::GridSpec& g, const fields::Field& a,
                                    Basis basis) {
    if (a.components != 3)
        throw std::invalid_argument("magnetic_schrodinger: A must have 3 components");
    check_grid(g, a, "magnetic_schrodinger");
    check_real_field(a, "magnetic_schrodinger");
    const int N = g.sites();
    MatrixXcd acc = MatrixXcd::Zero(N, N);
    for (int axis = 0; axis < 3; ++axis) {
        MatrixXcd m = momentum_matrix(g, axis);
        m.diagonal() -= a.comp(axis).real().cast<Complex>();
        acc.noalias() += m * m;
    }
    if (basis == Basis::spinor) return DenseHermitian(spinor_lift(acc), Basis::spinor, g);
    return DenseHermitian(std::move(acc), Basis::scalar, g);
}

DenseHermitian zeeman_term(const fields::GridSpec& g, const fields::Field& b) {
    if (b.components != 3) throw std::invalid_argument("zeeman_term: B must have 3 components");
    check_grid(g, b, "zeeman_term");
    check_real_field(b, "zeeman_term");
    const int N = g.sites();
    MatrixXcd d[3];
    for (int axis = 0; axis < 3; ++axis) {
        d[axis] = MatrixXcd::Zero(N, N);
        d[axis].diagonal() = b.comp(axis).real().cast<Complex>();
    }
    return DenseHermitian(sigma_dot(d[0], d[1], d[2]), Basis::spinor, g);
}

DenseHermitian fractional_power(const DenseHermitian& h, double s) {
    if (!(s > 0.0)) throw std::domain_error("fractional_power: s > 0");
    const EigenSystem sys = eigensystem(h.mat);
    const double scale =
        std::max(std::abs(sys.values[0]), std::abs(sys.values[sys.values.size() - 1]));
    if (scale > 0.0 && sys.values[0] < -1e-8 * scale)
        throw std::domain_error("fractional_power: input is not PSD");
    VectorXd powered(sys.values.size());
    for (int i = 0; i < sys.values.size(); ++i)
        powered[i] = std::pow(std::max(sys.values[i], 0.0), s);
    MatrixXcd out = sys.vectors * powered.asDiagonal() * sys.vectors.adjoint();
    return DenseHermitian(std::move(out), h.basis, h.grid);
}

DenseHermitian resolvent_power_quadrature(const DenseHermitian& h, double alpha, int nodes) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("resolvent_power_quadrature: alpha in (0,1)");
    if (nodes < 8) throw std::domain_error("resolvent_power_quadrature: nodes >= 8");
    const int d = h.dim();

    // cheap PSD sanity: Gershgorin lower bound must not be very negative
    double gersh_hi = 0.0, gersh_lo = 0.0;
    for (int i = 0; i < d; ++i) {
        double off = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != i) off += std::abs(h.mat(i, j));
        gersh_hi = std::max(gersh_hi, h.mat(i, i).real() + off);
        gersh_lo = std::min(gersh_lo, h.mat(i, i).real() - off);
    }
    if (gersh_hi <= 0.0) return DenseHermitian(MatrixXcd::Zero(d, d), h.basis, h.grid);

    const double t_center = std::log(gersh_hi);
    const double t_lo = t_center - std::max(30.0, 26.0 / alpha + 4.0);
    const double t_hi = t_center + std::max(30.0, 26.0 / (1.0 - alpha) + 4.0);
    const double panel_width = 2.0;
    const int panels = int(std::ceil((t_hi - t_lo) / panel_width));
    const GaussRule rule = gauss_legendre(nodes);

    MatrixXcd acc = MatrixXcd::Zero(d, d);
    const MatrixXcd eye = MatrixXcd::Identity(d, d);
    for (int p = 0; p < panels; ++p) {
        const double a0 = t_lo + (t_hi - t_lo) * p / panels;
        const double a1 = t_lo + (t_hi - t_lo) * (p + 1) / panels;
        const double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
        for (int k = 0; k < nodes; ++k) {
            const double t = mid + half * rule.nodes[k];
            const double a = std::exp(t);
            // H (H + a)^{-1} = I - a (H + a)^{-1}, via Cholesky of the shifted matrix
            const MatrixXcd shifted = h.mat + a * eye;
            const MatrixXcd resolvent = shifted.llt().solve(eye);
            acc.noalias() +=
                (half * rule.weights[k] * std::exp(alpha * t)) * (eye - a * resolvent);
        }
    }
    acc *= constants::resolvent_prefactor(alpha);
    return DenseHermitian(std::move(acc), h.basis, h.grid);
}

DenseHermitian assemble_hamiltonian(Kind kind, const fields::GridSpec& g, double s,
                                    const fields::Field* a, double hardy_weight,
                                    double cap, const fields::Field* v,
                                    std::optional<Basis> basis) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("assemble_hamiltonian: s in (0,1]");
    if (hardy_weight < 0.0) throw std::domain_error("assemble_hamiltonian: hardy_weight >= 0");
    const Basis want = basis.value_or(kind == Kind::pauli ? Basis::spinor : Basis::scalar);
    if (kind == Kind::pauli && want != Basis::spinor)
        throw std::invalid_argument("assemble_hamiltonian: pauli kind requires the spinor basis");

    DenseHermitian kinetic;
    switch (kind) {
        case Kind::free: {
            kinetic = fractional_laplacian(g, s);
            if (want == Basis::spinor)
                kinetic = DenseHermitian(spinor_lift(kinetic.mat), Basis::spinor, g);
            break;
        }
        case Kind::magnetic: {
            if (!a) throw std::invalid_argument("assemble_hamiltonian: magnetic kind requires A");
            DenseHermitian p2 = magnetic_schrodinger(g, *a, Basis::scalar);
            if (s != 1.0) p2 = fractional_power(p2, s);
            kinetic = want == Basis::spinor
                          ? DenseHermitian(spinor_lift(p2.mat), Basis::spinor, g)
                          : std::move(p2);
            break;
        }
        case Kind::pauli: {
            if (!a) throw std::invalid_argument("assemble_hamiltonian: pauli kind requires A");
            DenseHermitian sq = pauli_square(g, *a);
            kinetic = s != 1.0 ? fractional_power(sq, s) : std::move(sq);
            break;
        }
    }

    const int N = g.sites();
    VectorXd potential = VectorXd::Zero(N);
    if (hardy_weight > 0.0) {
        const Field w = fields::hardy_potential(g, s, cap);
        potential -= hardy_weight * w.comp(0).real();
    }
    if (v) {
        check_grid(g, *v, "assemble_hamiltonian");
        if (v->components != 1)
            throw std::invalid_argument("assemble_hamiltonian: V must be scalar");
        check_real_field(*v, "assemble_hamiltonian");
        potential += v->comp(0).real();
    }

    MatrixXcd m = std::move(kinetic.mat);
    if (kinetic.basis == Basis::spinor) {
        m.diagonal().head(N) += potential.cast<Complex>();
        m.diagonal().tail(N) += potential.cast<Complex>();
    } else {
        m.diagonal() += potential.cast<Complex>();
    }
    return DenseHermitian(std::move(m), kinetic.basis, g);
}

} // namespace hlt::ops
