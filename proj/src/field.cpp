#include "hlt/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "hlt/constants.hpp"
#include "hlt/rng.hpp"

namespace hlt::fields {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Per-axis synthesis matrix W[j, i] = exp(i k(m_i) x_j)/sqrt(n).  Unitary for
// both plain and half-cell-offset sampling; depends only on (n, offset).
const MatrixXcd& axis_synthesis(int n, bool offset) {
    static std::map<std::pair<int, bool>, MatrixXcd> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, offset);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    MatrixXcd w(n, n);
    const double norm = 1.0 / std::sqrt(double(n));
    for (int j = 0; j < n; ++j) {
        const double xj = (j + (offset ? 0.5 : 0.0)) / n - 0.5;  // x_j / box
        for (int i = 0; i < n; ++i) {
            const int m = i < n / 2 ? i : i - n;
            const double phase = 2.0 * kPi * m * xj;
            w(j, i) = Complex(std::cos(phase), std::sin(phase)) * norm;
        }
    }
    return cache.emplace(key, std::move(w)).first->second;
}

void apply_axis(VectorXcd& v, const MatrixXcd& m, int axis, int n) {
    const int stride = axis == 0 ? n * n : (axis == 1 ? n : 1);
    VectorXcd line(n), out(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int base;
            if (axis == 0) base = a * n + b;
            else if (axis == 1) base = a * n * n + b;
            else base = (a * n + b) * n;
            for (int t = 0; t < n; ++t) line[t] = v[base + t * stride];
            out.noalias() = m * line;
            for (int t = 0; t < n; ++t) v[base + t * stride] = out[t];
        }
    }
}

void transform(Field& f, bool forward) {
    const int n = f.grid.n;
    const MatrixXcd& w = axis_synthesis(n, f.grid.offset);
    const MatrixXcd wa = w.adjoint();
    for (int c = 0; c < f.components; ++c) {
        VectorXcd block = f.comp(c);
        for (int axis = 0; axis < 3; ++axis)
            apply_axis(block, forward ? wa : w, axis, n);
        f.comp(c) = block;
    }
}

void require_components(const Field& f, int c, const char* what) {
    if (f.components != c)
        throw std::invalid_argument(std::string(what) + ": wrong component count");
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

} // namespace

GridSpec make_grid(int n, double box, bool offset) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("make_grid: n must be even and >= 4");
    if (!(box > 0.0)) throw std::invalid_argument("make_grid: box must be positive");
    return GridSpec{n, box, offset};
}

VectorXd site_magnitude(const Field& f) {
    const int N = f.grid.sites();
    VectorXd mag = VectorXd::Zero(N);
    for (int c = 0; c < f.components; ++c) mag += f.comp(c).cwiseAbs2().real();
    return mag.cwiseSqrt();
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1 required");
    const VectorXd mag = site_magnitude(f);
    if (std::isinf(p)) return mag.maxCoeff();
    const double h3 = f.grid.cell_volume();
    double acc = 0.0;
    for (int i = 0; i < mag.size(); ++i) acc += std::pow(mag[i], p);
    return std::pow(acc * h3, 1.0 / p);
}

void to_spectral(Field& f) { transform(f, true); }
void to_site(Field& f) { transform(f, false); }

Field spectral_derivative(const Field& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("spectral_derivative: axis in {0,1,2}");
    Field out = f;
    to_spectral(out);
    const GridSpec& g = f.grid;
    for (int c = 0; c < out.components; ++c) {
        auto block = out.comp(c);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
                    block[g.site_index(ix, iy, iz)] *= Complex(0.0, g.wavenumber(i));
                }
    }
    to_site(out);
    return out;
}

Field curl(const Field& a) {
    require_components(a, 3, "curl");
    Field spec = a;
    to_spectral(spec);
    Field out(a.grid, 3);
    const GridSpec& g = a.grid;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int idx = g.site_index(ix, iy, iz);
                const Complex i_unit(0.0, 1.0);
                const double kx = g.wavenumber(ix), ky = g.wavenumber(iy), kz = g.wavenumber(iz);
                const Complex ax = spec.comp(0)[idx], ay = spec.comp(1)[idx], az = spec.comp(2)[idx];
                out.comp(0)[idx] = i_unit * (ky * az - kz * ay);
                out.comp(1)[idx] = i_unit * (kz * ax - kx * az);
                out.comp(2)[idx] = i_unit * (kx * ay - ky * ax);
            }
    to_site(out);
    return out;
}

Field divergence(const Field& a) {
    require_components(a, 3, "divergence");
    Field spec = a;
    to_spectral(spec);
    Field out(a.grid, 1);
    const GridSpec& g = a.grid;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int idx = g.site_index(ix, iy, iz);
                out.comp(0)[idx] =
                    Complex(0.0, 1.0) * (g.wavenumber(ix) * spec.comp(0)[idx] +
                                         g.wavenumber(iy) * spec.comp(1)[idx] +
                                         g.wavenumber(iz) * spec.comp(2)[idx]);
            }
    to_site(out);
    return out;
}

BiotSavartResult biot_savart(const Field& b) {
    require_components(b, 3, "biot_savart");
    BiotSavartResult res;
    const GridSpec& g = b.grid;
    const double b_norm = std::sqrt(b.data.squaredNorm());

    Field spec = b;
    to_spectral(spec);

    if (b_norm == 0.0) {
        res.potential = Field(g, 3);
        return res;
    }

    // mean per component lives at the (0,0,0) mode
    double mean_sq = 0.0;
    for (int c = 0; c < 3; ++c) mean_sq += std::norm(spec.comp(c)[0]);
    res.mean_fraction = std::sqrt(mean_sq) / b_norm;
    if (res.mean_fraction > 1e-13) res.mean_dropped = true;

    // solenoidal check and projection
    double div_sq = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int idx = g.site_index(ix, iy, iz);
                const double k[3] = {g.wavenumber(ix), g.wavenumber(iy), g.wavenumber(iz)};
                const Complex kb = k[0] * spec.comp(0)[idx] + k[1] * spec.comp(1)[idx] +
                                   k[2] * spec.comp(2)[idx];
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 > 0.0) div_sq += std::norm(kb);
            }
    res.div_fraction = std::sqrt(div_sq) / b_norm;
    const bool project = res.div_fraction > 1e-8;
    res.projected = project;

    Field pot(g, 3);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int idx = g.site_index(ix, iy, iz);
                const double k[3] = {g.wavenumber(ix), g.wavenumber(iy), g.wavenumber(iz)};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue;  // mean dropped
                Complex bc[3] = {spec.comp(0)[idx], spec.comp(1)[idx], spec.comp(2)[idx]};
                if (project) {
                    const Complex kb = (k[0] * bc[0] + k[1] * bc[1] + k[2] * bc[2]) / k2;
                    for (int c = 0; c < 3; ++c) bc[c] -= k[c] * kb;
                }
                const Complex i_unit(0.0, 1.0);
                pot.comp(0)[idx] = i_unit * (k[1] * bc[2] - k[2] * bc[1]) / k2;
                pot.comp(1)[idx] = i_unit * (k[2] * bc[0] - k[0] * bc[2]) / k2;
                pot.comp(2)[idx] = i_unit * (k[0] * bc[1] - k[1] * bc[0]) / k2;
            }
    to_site(pot);
    res.potential = std::move(pot);
    return res;
}

namespace rotor_registry {

namespace {
std::map<double, double>& table() {
    static std::map<double, double> t;
    return t;
}
std::mutex& table_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

void record(double r, double ratio) {
    std::lock_guard<std::mutex> lock(table_mutex());
    auto& t = table();
    auto it = t.find(r);
    if (it == t.end() || ratio > it->second) t[r] = ratio;
}

double envelope(double r) {
    {
        std::lock_guard<std::mutex> lock(table_mutex());
        auto it = table().find(r);
        if (it != table().end()) return it->second;
    }
    // seed the envelope with the default batch: 200 random solenoidal fields
    const GridSpec g = make_grid(8, 2.0 * kPi, true);
    for (int i = 0; i < 200; ++i) {
        const Field a0 = generate(g, GeneratorKind::vector_potential, 0x524f544f52ull + i);
        const Field b = curl(a0);
        if (lp_norm(b, 2.0) == 0.0) continue;
        rotor_sobolev_ratio(b, r);
    }
    std::lock_guard<std::mutex> lock(table_mutex());
    return table().at(r);
}

} // namespace rotor_registry

double rotor_sobolev_ratio(const Field& b, double r) {
    require_components(b, 3, "rotor_sobolev_ratio");
    if (!(r > 1.5)) throw std::invalid_argument("rotor_sobolev_ratio: r > 3/2 required");
    if (lp_norm(b, 2.0) == 0.0)
        throw std::invalid_argument("rotor_sobolev_ratio: zero field rejected");
    const Field a = biot_savart(b).potential;
    const double ratio = lp_norm(a, r) / lp_norm(b, 3.0 * r / (3.0 + r));
    rotor_registry::record(r, ratio);
    return ratio;
}

Field hardy_potential(const GridSpec& g, double s, double cap) {
    if (!(cap > 0.0)) throw std::invalid_argument("hardy_potential: cap must be positive");
    if (std::isinf(cap) && !g.offset)
        throw std::invalid_argument("hardy_potential: infinite cap on a grid containing the origin");
    Field out(g, 1);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const double x = g.coord(ix), y = g.coord(iy), z = g.coord(iz);
                const double rr = std::sqrt(x * x + y * y + z * z);
                const double w = std::pow(rr, -2.0 * s);
                out.comp(0)[g.site_index(ix, iy, iz)] = std::min(w, cap);
            }
    return out;
}

int half_spectrum_band(const GridSpec& g) { return g.n / 4; }

namespace {

// Band-limited random field with Gaussian spectral amplitudes; `real` imposes
// Hermitian symmetry so the site samples are real.
Field random_band_limited(const GridSpec& g, int comps, int band, Rng& rng, bool real) {
    Field spec(g, comps);
    const double m0 = std::max(1.0, 0.5 * band);
    auto wrap = [&g](int m) { return m >= 0 ? m : m + g.n; };
    for (int c = 0; c < comps; ++c) {
        auto block = spec.comp(c);
        for (int mx = -band; mx <= band; ++mx)
            for (int my = -band; my <= band; ++my)
                for (int mz = -band; mz <= band; ++mz) {
                    const double env =
                        std::exp(-(mx * mx + my * my + mz * mz) / (2.0 * m0 * m0));
                    const Complex v(rng.normal() * env, rng.normal() * env);
                    block[g.site_index(wrap(mx), wrap(my), wrap(mz))] = v;
                }
        if (real) {
            for (int mx = -band; mx <= band; ++mx)
                for (int my = -band; my <= band; ++my)
                    for (int mz = -band; mz <= band; ++mz) {
                        const int i = g.site_index(wrap(mx), wrap(my), wrap(mz));
                        const int j = g.site_index(wrap(-mx), wrap(-my), wrap(-mz));
                        if (i < j) continue;
                        if (i == j) {
                            block[i] = block[i].real();
                        } else {
                            const Complex v = 0.5 * (block[i] + std::conj(block[j]));
                            block[i] = v;
                            block[j] = std::conj(v);
                        }
                    }
        }
    }
    to_site(spec);
    if (real)
        for (int c = 0; c < comps; ++c) {
            const Eigen::VectorXd re = spec.comp(c).real();
            spec.comp(c) = re.cast<Complex>();
        }
    return spec;
}

} // namespace

Field generate(const GridSpec& g, GeneratorKind kind, std::uint64_t seed, int max_mode,
               double amplitude) {
    int band = max_mode >= 0 ? max_mode : half_spectrum_band(g);
    band = std::min(band, g.n / 2 - 1);
    Rng rng(seed);
    switch (kind) {
        case GeneratorKind::potential: {
            Field f = random_band_limited(g, 1, band, rng, true);
            const double m = lp_norm(f, std::numeric_limits<double>::infinity());
            if (m > 0.0) f.data *= amplitude / m;
            return f;
        }
        case GeneratorKind::negative_potential: {
            Field f = random_band_limited(g, 1, band, rng, true);
            const double m = lp_norm(f, std::numeric_limits<double>::infinity());
            if (m > 0.0) f.data /= m;
            for (int i = 0; i < f.data.size(); ++i) {
                const double v = f.data[i].real();
                f.data[i] = -amplitude * v * v;
            }
            return f;
        }
        case GeneratorKind::vector_potential: {
            Field f = random_band_limited(g, 3, band, rng, true);
            for (int c = 0; c < 3; ++c) {  // mean-free components
                f.comp(c).array() -= f.comp(c).mean();
            }
            const double m = site_magnitude(f).maxCoeff();
            if (m > 0.0) f.data *= amplitude / m;
            return f;
        }
        case GeneratorKind::spinor: {
            Field f = random_band_limited(g, 2, band, rng, false);
            const double norm = lp_norm(f, 2.0);
            if (norm > 0.0) f.data /= norm;
            return f;
        }
    }
    throw std::invalid_argument("generate: unknown kind");
}

Field rescale_box(const Field& f, double lambda, double power) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rescale_box: lambda > 0");
    Field out = f;
    out.grid.box = f.grid.box / lambda;
    out.data *= std::pow(lambda, power);
    return out;
}

} // namespace hlt::fields

namespace hlt::constants {

double default_rotor_constant(double r) {
    return hlt::fields::rotor_registry::envelope(r);
}

} // namespace hlt::constants
