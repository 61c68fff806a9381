#include "hlt/constants.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hlt/quadrature.hpp"

namespace hlt::constants {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double gamma_ratio_sq(double a, double b) {
    // (Gamma(a)/Gamma(b))^2 through lgamma, both arguments positive
    return std::exp(2.0 * (std::lgamma(a) - std::lgamma(b)));
}

// Minimize f over a grid, then one coordinate-descent refinement pass.
// Grids are supplied per coordinate; refinement rescans 33 points between the
// neighbors of the current best in each coordinate, in order.
double scan_minimize(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<std::vector<double>>& grids) {
    const size_t dim = grids.size();
    std::vector<size_t> best_idx(dim, 0);
    std::vector<double> x(dim);
    double best = std::numeric_limits<double>::infinity();

    std::vector<size_t> idx(dim, 0);
    for (;;) {
        for (size_t i = 0; i < dim; ++i) x[i] = grids[i][idx[i]];
        const double v = f(x);
        if (std::isfinite(v) && v < best) {
            best = v;
            best_idx = idx;
        }
        size_t a = 0;
        while (a < dim && ++idx[a] == grids[a].size()) idx[a++] = 0;
        if (a == dim) break;
    }
    if (!std::isfinite(best)) return best;

    for (size_t i = 0; i < dim; ++i) x[i] = grids[i][best_idx[i]];
    for (size_t i = 0; i < dim; ++i) {
        const auto& g = grids[i];
        const size_t j = best_idx[i];
        const double lo = g[j > 0 ? j - 1 : j];
        const double hi = g[j + 1 < g.size() ? j + 1 : j];
        for (int k = 0; k <= 32; ++k) {
            x[i] = lo + (hi - lo) * k / 32.0;
            const double v = f(x);
            if (std::isfinite(v) && v < best) best = v;
        }
        // leave x[i] at the best refined value for the next coordinate
        double bx = g[j], bv = best;
        for (int k = 0; k <= 32; ++k) {
            const double xi = lo + (hi - lo) * k / 32.0;
            x[i] = xi;
            const double v = f(x);
            if (std::isfinite(v) && v <= bv) {
                bv = v;
                bx = xi;
            }
        }
        x[i] = bx;
    }
    return best;
}

std::vector<double> beta_grid() {
    std::vector<double> g(61);
    for (int i = 0; i <= 60; ++i) g[i] = std::pow(10.0, -6.0 + 12.0 * i / 60.0);
    return g;
}

std::vector<double> unit_interior_grid() {
    std::vector<double> g(49);
    for (int i = 1; i <= 49; ++i) g[i - 1] = i / 50.0;
    return g;
}

} // namespace

double hardy_constant(double s, int d) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("hardy_constant: s must be in (0,1]");
    if (!(d > 2.0 * s)) throw std::domain_error("hardy_constant: requires d > 2s");
    return std::pow(2.0, 2.0 * s) *
           gamma_ratio_sq((d + 2.0 * s) / 4.0, (d - 2.0 * s) / 4.0);
}

double semiclassical_constant(double gamma, int d) {
    if (gamma < 0.0 || d < 1) throw std::domain_error("semiclassical_constant: gamma >= 0, d >= 1");
    return std::pow(2.0, -d) * std::pow(kPi, -0.5 * d) *
           std::exp(std::lgamma(gamma + 1.0) - std::lgamma(gamma + 1.0 + 0.5 * d));
}

double clr_constant() { return 0.1156; }

double fractional_sobolev_constant(int N, double r) {
    if (N < 1 || r < 2.0) throw std::domain_error("fractional_sobolev_constant: N >= 1, r >= 2");
    const double e = 0.5 - 1.0 / r;
    return std::pow(2.0, -N * e) * std::pow(kPi, -0.5 * N * e) *
           std::exp(0.5 * (std::lgamma(N / r) - std::lgamma(N * (1.0 - 1.0 / r))) +
                    e * (std::lgamma(double(N)) - std::lgamma(0.5 * N)));
}

double classical_sobolev_constant() {
    return std::pow(2.0 / kPi, 2.0 / 3.0) / std::sqrt(3.0);
}

double resolvent_prefactor(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("resolvent_prefactor: alpha in (0,1)");
    return std::sin(kPi * alpha) / kPi;
}

double du_max(double u) {
    if (u < 0.0 || u > 1.0) throw std::domain_error("du_max: u in [0,1]");
    if (u == 1.0) return 1.0;  // sup of 1/(x^2+1), attained at x = 0
    return 0.5 * std::pow(1.0 - u, 0.5 * (1.0 - u)) * std::pow(1.0 + u, 0.5 * (1.0 + u));
}

double pauli_sobolev_remainder(double eps, double r) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("pauli_sobolev_remainder: eps in (0,1)");
    if (!(r > 1.5)) throw std::domain_error("pauli_sobolev_remainder: r > 3/2");
    const double S = classical_sobolev_constant();
    const double q = 2.0 * r - 3.0;
    return std::pow(S, 4.0 * r / q) * std::pow(3.0, 3.0 / q) * q /
           ((1.0 - eps) * std::pow(2.0 * r, 2.0 * r / q) * std::pow(eps, 3.0 / q));
}

// ---- Estimate I -------------------------------------------------------------

double estimate1_i_term(double s, double u, double r, double delta) {
    const double cs = resolvent_prefactor(s);
    const double S = classical_sobolev_constant();
    return cs * std::pow(du_max(u), 3.0 / r) * std::pow(S, 3.0 / r) * 0.5 *
           (2.0 * r * (1.0 - s) - 3.0 * (1.0 - u)) / r *
           std::pow(1.0 - delta, -3.0 / (4.0 * r));
}

double estimate1_j_term(double s, double u, double r, double delta) {
    const double cs = resolvent_prefactor(s);
    const double S = classical_sobolev_constant();
    return cs * std::pow(du_max(u), 1.5 / r) * std::pow(S, 1.5 / r) * 0.25 *
           std::pow(pauli_sobolev_remainder(delta, r), 3.0 / (4.0 * r)) *
           (4.0 * r * (1.0 - s) - 3.0 * (1.0 - u)) / r;
}

double estimate1_theta_objective(double s, double r, double beta, double delta) {
    const double cs = resolvent_prefactor(s);
    return cs / s * std::pow(beta, s) +
           estimate1_i_term(s, 0.0, r, delta) * std::pow(beta, s + 1.5 / r - 1.0) +
           estimate1_j_term(s, 0.0, r, delta) * std::pow(beta, s + 0.75 / r - 1.0);
}

namespace {

double eta_function(double s, double u, double eps, double gamma) {
    const double p = s / u;
    const double denom = std::pow(2.0, p - 1.0) * std::pow(1.0 + gamma, p) +
                         std::pow(1.0 - gamma, p);
    return eps * std::pow(1.0 - gamma, p) / denom;
}

double lambda_function(double s, double u, double r, double beta, double delta,
                       double eps, double gamma) {
    const double cs = resolvent_prefactor(s);
    const double eta = eta_function(s, u, eps, gamma);
    const double I = estimate1_i_term(s, u, r, delta);
    const double J = estimate1_j_term(s, u, r, delta);
    const double a2 = 2.0 * r * s - 3.0 * u;
    const double a4 = 4.0 * r * s - 3.0 * u;
    return cs / s * std::pow(beta, s) +
           a2 / (2.0 * r * s) *
               std::pow(3.0 * u / (8.0 * r * s * eta), 3.0 * u / (2.0 * r * s)) *
               std::pow(I, 2.0 * r * s / a2) *
               std::pow(beta, (-2.0 * r * s * (1.0 - s) + 3.0 * s * (1.0 - u)) / a2) +
           a4 / (4.0 * r * s) *
               std::pow(3.0 * u / (2.0 * r * s * eta), 3.0 * u / a4) *
               std::pow(J, 4.0 * r * s / a4) *
               std::pow(beta, (3.0 * s * (1.0 - u) - 4.0 * r * s * (1.0 - s)) / a4);
}

double upsilon_function(double s, double r, double beta, double delta, double gamma) {
    const double cs = resolvent_prefactor(s);
    const double I = estimate1_i_term(s, s, r, delta);
    const double J = estimate1_j_term(s, s, r, delta);
    return cs / s * std::pow(beta, s) +
           (2.0 * r - 3.0) / (2.0 * r) *
               std::pow(3.0 / (8.0 * r * gamma), 1.5 / r) *
               std::pow(I, 2.0 * r / (2.0 * r - 3.0)) * std::pow(beta, s - 1.0) +
           (4.0 * r - 3.0) / (4.0 * r) *
               std::pow(3.0 / (2.0 * r * gamma), 3.0 / (4.0 * r - 3.0)) *
               std::pow(J, 4.0 * r / (4.0 * r - 3.0)) * std::pow(beta, s - 1.0);
}

} // namespace

double estimate1_omega_objective(double s, double u, double r, double eps,
                                 double beta, double delta, double gamma) {
    const double p = s / u;
    const double ups = upsilon_function(s, r, beta, delta, gamma);
    const double term1 = std::pow(2.0, p - 1.0) * std::pow(ups, p) *
                         eta_function(s, u, eps, gamma);
    return term1 + lambda_function(s, u, r, beta, delta, eps, gamma);
}

double estimate1_t_s1(double u, double r, double eps) {
    if (!(u > 0.0 && u <= 1.0)) throw std::domain_error("estimate1_t_s1: u in (0,1]");
    if (!(r >= 3.0 / (2.0 * u))) throw std::domain_error("estimate1_t_s1: requires r >= 3/(2u)");
    if (!(eps > 0.0)) throw std::domain_error("estimate1_t_s1: eps > 0");
    const double q = 2.0 * r - 3.0;
    const double S = fractional_sobolev_constant(3, 6.0 / (3.0 - 2.0 * u));
    return q / (2.0 * r) * std::pow(3.0 / (2.0 * r * eps), 3.0 / q) *
           std::pow(S, 6.0 / (u * q));
}

Estimate1Constants estimate1_bound_constants(const ConstantQuery& q) {
    Estimate1Constants out;
    if (!(q.r > 1.5)) throw std::domain_error("estimate1: r > 3/2 required");
    if (q.u < 0.0 || q.u > 1.0) throw std::domain_error("estimate1: u in [0,1]");

    if (q.s == 1.0) {
        out.t_s1 = estimate1_t_s1(q.u, q.r, q.eps);
        return out;
    }
    if (!(q.s > 0.0 && q.s < 1.0)) throw std::domain_error("estimate1: s in (0,1]");
    if (!(3.0 * (1.0 - q.u) < 2.0 * q.r * (1.0 - q.s)))
        throw std::domain_error("estimate1: requires 3(1-u) < 2r(1-s)");

    if (q.u == 0.0) {
        const double s = q.s, r = q.r;
        out.theta = scan_minimize(
            [s, r](const std::vector<double>& x) {
                return estimate1_theta_objective(s, r, x[0], x[1]);
            },
            {beta_grid(), unit_interior_grid()});
    } else {
        if (!(q.eps > 0.0)) throw std::domain_error("estimate1: eps > 0");
        const double s = q.s, u = q.u, r = q.r, eps = q.eps;
        out.omega = scan_minimize(
            [s, u, r, eps](const std::vector<double>& x) {
                return estimate1_omega_objective(s, u, r, eps, x[0], x[1], x[2]);
            },
            {beta_grid(), unit_interior_grid(), unit_interior_grid()});
    }
    return out;
}

// ---- Estimate II ------------------------------------------------------------

double estimate2_i_function(double s, double r, double rotor_nr) {
    if (!(s > 0.0 && s < 1.0) || !(r > 1.5 && r < 3.0))
        throw std::domain_error("estimate2_i_function: 0<s<1, 3/2<r<3");
    const double cs = resolvent_prefactor(s);
    const double S = classical_sobolev_constant();
    const double q = 2.0 * r - 3.0;
    return cs * q * std::pow(S, 2.0 * s * (3.0 - r) / q) / (r * (1.0 - s) * s) *
           std::pow(2.0, -(6.0 * s + q) / q) * std::pow(rotor_nr, 2.0 * r * s / q);
}

double estimate2_a_function(double s, double u, double r, double rotor_nr) {
    if (!(s > 0.0 && s < 1.0) || !(r > 1.5 && r < 3.0) || u < 0.0 || u > 1.0)
        throw std::domain_error("estimate2_a_function: 0<s<1, 0<=u<=1, 3/2<r<3");
    const double gap = 2.0 * r * (1.0 - s) - 3.0 * (1.0 - u);
    if (!(gap > 0.0)) throw std::domain_error("estimate2_a_function: requires 3(1-u) < 2r(1-s)");
    const double cs = resolvent_prefactor(s);
    const double S = classical_sobolev_constant();
    const double q = 2.0 * r - 3.0;
    const double e1 = (2.0 * r - 3.0 * (1.0 - u)) / q;
    return std::pow(cs, e1) * std::pow(gap, -e1) *
           std::pow(2.0 * r - 3.0 * (1.0 - u), -3.0 * u / q) * std::pow(s, -e1) *
           std::pow(S, 2.0 * s * (3.0 - r) / q) * std::pow(du_max(u), 6.0 * s / q) *
           std::pow(rotor_nr, 2.0 * r * s / q) * q *
           std::pow(r * (3.0 - r) * u * u, 3.0 * u / q) *
           std::pow(2.0, (6.0 * u + q) / q);
}

double estimate2_j_objective(double s, double u, double r, double eps,
                             double delta, double rotor_nr) {
    const double p = s / u;
    const double q = 2.0 * r - 3.0;
    const double a_su = estimate2_a_function(s, u, r, rotor_nr);
    const double a_uu = estimate2_a_function(u, u, r, rotor_nr);
    const double bracket =
        1.0 + std::pow(2.0, p - 1.0) * std::pow(delta, p) * std::pow(1.0 - delta, -p);
    return a_su * std::pow(eps, -6.0 * u / q) * std::pow(bracket, 6.0 * u / q) +
           std::pow(a_uu, p) * std::pow(2.0, p - 1.0) * std::pow(delta, -6.0 * s / q) *
               eps /
               (std::pow(1.0 - delta, p) + std::pow(2.0, p - 1.0) * std::pow(delta, p));
}

Estimate2Constants estimate2_bound_constants(const ConstantQuery& q,
                                             std::optional<double> rotor_nr) {
    if (!(q.s > 0.0 && q.s < 1.0)) throw std::domain_error("estimate2: s in (0,1)");
    if (q.u < 0.0 || q.u > 1.0) throw std::domain_error("estimate2: u in [0,1]");
    if (!(q.r > 1.5 && q.r < 3.0)) throw std::domain_error("estimate2: 3/2 < r < 3");
    if (!(3.0 * (1.0 - q.u) < 2.0 * q.r * (1.0 - q.s)))
        throw std::domain_error("estimate2: requires 3(1-u) < 2r(1-s)");

    Estimate2Constants out;
    out.rotor_nr_used = rotor_nr ? *rotor_nr : default_rotor_constant(q.r);
    out.a_const = estimate2_a_function(q.s, q.u, q.r, out.rotor_nr_used);
    if (q.u == 0.0) {
        out.i_const = estimate2_i_function(q.s, q.r, out.rotor_nr_used);
    } else if (q.u < 1.0) {
        if (!(q.eps > 0.0)) throw std::domain_error("estimate2: eps > 0");
        const double s = q.s, u = q.u, r = q.r, eps = q.eps, nr = out.rotor_nr_used;
        out.j_const = scan_minimize(
            [s, u, r, eps, nr](const std::vector<double>& x) {
                return estimate2_j_objective(s, u, r, eps, x[0], nr);
            },
            {unit_interior_grid()});
    }
    return out;
}

// ---- Pauli-Lieb-Thirring constants -----------------------------------------

double plt_omega_integral(double s, double r) {
    if (!(s > 0.0) || r < 0.0) throw std::domain_error("plt_omega_integral: s > 0, r >= 0");
    // substitute t = lambda^s: the endpoint singularity lambda^{s-1} disappears
    const double e = (r + 1.0) / s;
    return integrate([e](double t) { return std::pow(1.0 - std::pow(t, e), 1.5); },
                     0.0, 1.0, 1e-12) /
           s;
}

PltConstants plt_field_energy_constants(double s, double gamma_mix) {
    if (!(s >= 0.5 && s <= 1.0)) throw std::domain_error("plt_field_energy_constants: s in [1/2,1]");
    if (!(gamma_mix > 0.0 && gamma_mix < 1.0))
        throw std::domain_error("plt_field_energy_constants: gamma in (0,1)");
    const double L = clr_constant();
    PltConstants out;
    if (s == 0.5) {
        out.u_const = 1.5 * kPi * L;
        out.v_const = 0.5 * kPi * L / std::pow(3.0, 0.25);
        return out;
    }
    const double root2 = std::sqrt(2.0);
    out.u_const = root2 * L * s * std::pow(1.0 - gamma_mix, -s) * plt_omega_integral(s, 0.0);
    out.v_const = 4.0 * std::pow(3.0, -0.75) * root2 * L * s *
                  std::pow(plt_omega_integral(s, 2.0 * s - 1.0), 0.75) *
                  std::pow(plt_omega_integral(4.0 * s - 1.5, 0.0), 0.25) *
                  std::pow(1.0 - gamma_mix, s - 0.375) * std::pow(gamma_mix, -0.375);
    return out;
}

// ---- Localization constants --------------------------------------------------

double localization_error(double s, double b, double l, int n) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("localization_error: s in (0,1]");
    if (!(b > 0.0)) throw std::domain_error("localization_error: b > 0");
    if (!(l > 1.0)) throw std::domain_error("localization_error: l > 1");
    if (n < 0) throw std::domain_error("localization_error: n >= 0");
    return std::pow(kPi, 2.0 * s) * std::pow(l, -2.0 * s * n) /
           (std::pow(2.0, s) * std::pow(b, 2.0 * s) * (std::pow(l, 2.0 * s) - 1.0));
}

double effective_hardy_weight(double s, double l) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("effective_hardy_weight: s in (0,1]");
    if (!(l > 1.0)) throw std::domain_error("effective_hardy_weight: l > 1");
    return hardy_constant(s, 3) +
           std::pow(kPi, 2.0 * s) * std::pow(l, 4.0 * s) /
               (std::pow(2.0, s) * (std::pow(l, 2.0 * s) - 1.0) *
                std::pow(l - 1.0, 2.0 * s));
}

// ---- Table and named dispatch -------------------------------------------------

ConstantsTable default_table() {
    ConstantsTable t;
    auto put = [&t](const std::string& name, double value,
                    std::map<std::string, double> params) {
        t.entries[name] = {value, std::move(params)};
    };
    put("hardy", hardy_constant(0.5, 3), {{"s", 0.5}, {"d", 3}});
    put("hardy_s1", hardy_constant(1.0, 3), {{"s", 1.0}, {"d", 3}});
    put("semiclassical", semiclassical_constant(1.0, 3), {{"gamma", 1.0}, {"d", 3}});
    put("clr", clr_constant(), {});
    put("sobolev", classical_sobolev_constant(), {{"N", 3}, {"r", 6}});
    put("fractional_sobolev", fractional_sobolev_constant(3, 4), {{"N", 3}, {"r", 4}});
    put("du_max", du_max(0.5), {{"u", 0.5}});
    put("pauli_sobolev_omega", pauli_sobolev_remainder(0.5, 3.0), {{"eps", 0.5}, {"r", 3.0}});
    {
        ConstantQuery q;
        q.s = 0.25;
        q.u = 0.0;
        q.r = 2.5;
        put("theta", *estimate1_bound_constants(q).theta, {{"s", q.s}, {"r", q.r}});
        q.s = 0.5;
        q.u = 0.25;
        q.r = 4.0;
        q.eps = 0.5;
        put("omega_est1", *estimate1_bound_constants(q).omega,
            {{"s", q.s}, {"u", q.u}, {"r", q.r}, {"eps", q.eps}});
    }
    put("t_s1", estimate1_t_s1(1.0, 2.0, 1.0), {{"u", 1.0}, {"r", 2.0}, {"eps", 1.0}});
    {
        ConstantQuery q;
        q.s = 0.25;
        q.u = 0.0;
        q.r = 2.0;
        const auto e2 = estimate2_bound_constants(q);
        put("i_est2", *e2.i_const, {{"s", q.s}, {"r", q.r}, {"n_r", e2.rotor_nr_used}});
        put("a_est2", e2.a_const, {{"s", q.s}, {"u", q.u}, {"r", q.r}, {"n_r", e2.rotor_nr_used}});
        q.u = 0.5;
        q.eps = 0.5;
        const auto e2j = estimate2_bound_constants(q);
        put("j_est2", *e2j.j_const,
            {{"s", q.s}, {"u", q.u}, {"r", q.r}, {"eps", q.eps}, {"n_r", e2j.rotor_nr_used}});
    }
    {
        const auto uv = plt_field_energy_constants(0.5, 0.5);
        put("plt_u", uv.u_const, {{"s", 0.5}, {"gamma", 0.5}});
        put("plt_v", uv.v_const, {{"s", 0.5}, {"gamma", 0.5}});
        put("plt_omega", plt_omega_integral(1.0, 0.0), {{"s", 1.0}, {"r", 0.0}});
    }
    put("localization_error", localization_error(0.5, 1.0, 2.0, 0),
        {{"s", 0.5}, {"b", 1.0}, {"l", 2.0}, {"n", 0}});
    put("effective_hardy", effective_hardy_weight(0.5, 2.0), {{"s", 0.5}, {"l", 2.0}});
    put("resolvent_prefactor", resolvent_prefactor(0.5), {{"alpha", 0.5}});
    return t;
}

double evaluate_named(const std::string& name,
                      const std::map<std::string, double>& params) {
    auto get = [&params](const std::string& key, std::optional<double> fallback =
                                                     std::nullopt) -> double {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        if (fallback) return *fallback;
        throw std::invalid_argument("missing parameter '" + key + "'");
    };
    auto query = [&]() {
        ConstantQuery q;
        q.s = get("s", q.s);
        q.u = get("u", q.u);
        q.r = get("r", q.r);
        q.eps = get("eps", q.eps);
        q.gamma_mix = get("gamma", q.gamma_mix);
        return q;
    };

    if (name == "hardy") return hardy_constant(get("s"), int(get("d", 3.0)));
    if (name == "semiclassical")
        return semiclassical_constant(get("gamma"), int(get("d", 3.0)));
    if (name == "clr") return clr_constant();
    if (name == "sobolev") return classical_sobolev_constant();
    if (name == "fractional_sobolev")
        return fractional_sobolev_constant(int(get("N", 3.0)), get("r"));
    if (name == "du_max") return du_max(get("u"));
    if (name == "pauli_sobolev_omega") return pauli_sobolev_remainder(get("eps"), get("r"));
    if (name == "resolvent_prefactor") return resolvent_prefactor(get("alpha"));
    if (name == "theta") {
        auto q = query();
        q.u = 0.0;
        return *estimate1_bound_constants(q).theta;
    }
    if (name == "omega_est1") {
        const auto v = estimate1_bound_constants(query()).omega;
        if (!v) throw std::invalid_argument("omega_est1 requires u > 0 and s < 1");
        return *v;
    }
    if (name == "t_s1") return estimate1_t_s1(get("u"), get("r"), get("eps"));
    if (name == "i_est2") {
        auto q = query();
        q.u = 0.0;
        return *estimate2_bound_constants(q).i_const;
    }
    if (name == "j_est2") {
        const auto v = estimate2_bound_constants(query()).j_const;
        if (!v) throw std::invalid_argument("j_est2 requires 0 < u < 1");
        return *v;
    }
    if (name == "a_est2") return estimate2_bound_constants(query()).a_const;
    if (name == "plt_u") return plt_field_energy_constants(get("s"), get("gamma")).u_const;
    if (name == "plt_v") return plt_field_energy_constants(get("s"), get("gamma")).v_const;
    if (name == "plt_omega") return plt_omega_integral(get("s"), get("r"));
    if (name == "localization_error")
        return localization_error(get("s"), get("b"), get("l"), int(get("n", 0.0)));
    if (name == "effective_hardy") return effective_hardy_weight(get("s"), get("l"));
    throw std::invalid_argument("unknown constant '" + name + "'");
}

} // namespace hlt::constants
