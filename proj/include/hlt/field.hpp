#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hlt::fields {

using Complex = std::complex<double>;

// Periodic 3D sampling lattice.  Site coordinates are
// x_j = (j + offset/2) * box/n - box/2 per axis; wavenumbers are 2*pi*m/box
// with m in {-n/2, ..., n/2-1}.  Spectral arrays use FFT mode order:
// index i in [0, n) maps to m = i for i < n/2 and m = i - n otherwise.
struct GridSpec {
    int n = 8;
    double box = 6.283185307179586476925286766559;
    bool offset = true;

    int sites() const { return n * n * n; }
    double spacing() const { return box / n; }
    double cell_volume() const { return spacing() * spacing() * spacing(); }
    double coord(int j) const { return (j + (offset ? 0.5 : 0.0)) * spacing() - 0.5 * box; }
    int mode(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int i) const {
        return 2.0 * 3.141592653589793238462643383279503 * mode(i) / box;
    }
    int site_index(int ix, int iy, int iz) const { return (ix * n + iy) * n + iz; }

    bool operator==(const GridSpec& o) const {
        return n == o.n && box == o.box && offset == o.offset;
    }
};

GridSpec make_grid(int n, double box, bool offset);

// Complex samples on a grid; `components` consecutive blocks of n^3 values
// (1 = scalar, 2 = spinor, 3 = vector).
struct Field {
    GridSpec grid;
    int components = 1;
    Eigen::VectorXcd data;

    Field() = default;
    Field(const GridSpec& g, int comps)
        : grid(g), components(comps), data(Eigen::VectorXcd::Zero(comps * g.sites())) {}

    Eigen::VectorBlock<Eigen::VectorXcd> comp(int c) {
        return data.segment(c * grid.sites(), grid.sites());
    }
    Eigen::VectorBlock<const Eigen::VectorXcd> comp(int c) const {
        return data.segment(c * grid.sites(), grid.sites());
    }
    double max_imag() const { return data.imag().cwiseAbs().maxCoeff(); }
};

// Pointwise magnitude over components, one value per site.
Eigen::VectorXd site_magnitude(const Field& f);

// Lattice L^p norm of the pointwise magnitude; p = infinity returns the max.
double lp_norm(const Field& f, double p);

// In-place per-axis unitary transforms between site and spectral samples.
void to_spectral(Field& f);
void to_site(Field& f);

Field spectral_derivative(const Field& f, int axis);
Field curl(const Field& a);
Field divergence(const Field& a);

struct BiotSavartResult {
    Field potential;        // A with curl A = B_solenoidal, div A = 0, mean 0
    bool projected = false; // input had a non-solenoidal part beyond tolerance
    bool mean_dropped = false;
    double div_fraction = 0.0;   // ||div B||_2 / ||B||_2 of the input
    double mean_fraction = 0.0;  // ||mean B|| / ||B||_2 of the input
};

// Torus Biot-Savart: A_hat(k) = i k x B_hat(k) / |k|^2, A_hat(0) = 0.
BiotSavartResult biot_savart(const Field& b);

// ||A||_r / ||B||_{3r/(3+r)} with A reconstructed from B; records the running
// maximum per r as the empirical torus rotor-Sobolev envelope.
double rotor_sobolev_ratio(const Field& b, double r);

namespace rotor_registry {
void record(double r, double ratio);
// Running maximum for this r; runs a seeded 200-field default batch first if
// no samples were recorded yet.
double envelope(double r);
} // namespace rotor_registry

// Samples min(|x|^{-2s}, cap); cap may be infinity only on offset grids.
Field hardy_potential(const GridSpec& g, double s, double cap);

enum class GeneratorKind {
    potential,           // real scalar, sign-indefinite
    negative_potential,  // real scalar, <= 0 everywhere
    vector_potential,    // real 3-vector
    spinor,              // complex 2-spinor, normalized in L^2
};

// Deterministic band-limited random fields: Gaussian spectral amplitudes under
// a smooth envelope, hard-cut at max_mode per axis (default n/4).
Field generate(const GridSpec& g, GeneratorKind kind, std::uint64_t seed,
               int max_mode = -1, double amplitude = 1.0);

// Largest per-axis mode magnitude usable in aliasing-free product tests.
int half_spectrum_band(const GridSpec& g);

// Box rescaling x -> x/lambda realized as box' = box/lambda with data scaled
// by lambda^power; grids and sample arrays keep their indices.
Field rescale_box(const Field& f, double lambda, double power);

} // namespace hlt::fields
