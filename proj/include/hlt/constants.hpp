#pragma once

#include <map>
#include <optional>
#include <string>

namespace hlt::constants {

// Parameter bundle for the constant evaluators.  Individual evaluators only
// read the fields they need; domain checks happen at evaluation time.
struct ConstantQuery {
    double s = 0.5;          // fractional power, (0, 1]
    double u = 0.0;          // auxiliary power, [0, 1]
    double r = 2.0;          // integrability index, > 3/2
    double eps = 0.5;        // slack, > 0
    double gamma_mix = 0.5;  // mixing parameter, (0, 1)
    int d = 3;               // spatial dimension
    double moment_gamma = 1.0;  // eigenvalue-moment order, >= 0
};

// Critical constant in the fractional Hardy inequality |p|^{2s} >= C/|x|^{2s},
// C = 2^{2s} Gamma((d+2s)/4)^2 / Gamma((d-2s)/4)^2.  Requires 0 < 2s < d.
double hardy_constant(double s, int d);

// Semiclassical phase-space constant 2^{-d} pi^{-d/2} Gamma(g+1)/Gamma(g+1+d/2).
double semiclassical_constant(double gamma, int d);

// Constant L in the eigenvalue-counting bound, fixed at 0.1156.
double clr_constant();

// Optimal constant S_{N,r} in ||f||_r <= S ||  |p|^{(1/2-1/r)N} f ||_2.
double fractional_sobolev_constant(int N, double r);

// Classical 3D Sobolev constant S = S_{3,6} = (2/pi)^{2/3}/sqrt(3).
double classical_sobolev_constant();

// Prefactor sin(pi*a)/pi in the resolvent representation of x^a, 0 < a < 1.
double resolvent_prefactor(double alpha);

// max over x >= 0 of x^{1-u}/(x^2+1); the u = 1 endpoint is the limit value 1.
double du_max(double u);

// Remainder coefficient omega(eps, r) in the Pauli-Sobolev inequality.
double pauli_sobolev_remainder(double eps, double r);

// ---- Estimate I coefficient functions -------------------------------------
// The bracketed objectives are exposed so tests can verify that the returned
// infima are upper bounds of the objective at arbitrary feasible points.

double estimate1_i_term(double s, double u, double r, double delta);
double estimate1_j_term(double s, double u, double r, double delta);
double estimate1_theta_objective(double s, double r, double beta, double delta);
double estimate1_omega_objective(double s, double u, double r, double eps,
                                 double beta, double delta, double gamma);
double estimate1_t_s1(double u, double r, double eps);

struct Estimate1Constants {
    std::optional<double> theta;  // u = 0, s < 1
    std::optional<double> omega;  // u > 0, s < 1
    std::optional<double> t_s1;   // s = 1
};

// Dispatches on the query: s < 1 and u = 0 gives Theta(s, r); s < 1 and u > 0
// gives Omega(s, u, r, eps); s = 1 gives the coefficient from the s = 1
// estimate.  Infima are computed by a nested log-grid scan plus one
// coordinate-descent refinement pass, so returned values are upper bounds of
// the true infima.
Estimate1Constants estimate1_bound_constants(const ConstantQuery& q);

// ---- Estimate II coefficient functions ------------------------------------

// Raw formula evaluations (no domain guard beyond finiteness); the rotor
// constant must be supplied explicitly here.
double estimate2_i_function(double s, double r, double rotor_nr);
double estimate2_a_function(double s, double u, double r, double rotor_nr);
double estimate2_j_objective(double s, double u, double r, double eps,
                             double delta, double rotor_nr);

struct Estimate2Constants {
    std::optional<double> i_const;  // u = 0
    std::optional<double> j_const;  // 0 < u < 1
    double a_const = 0.0;
    double rotor_nr_used = 0.0;
};

// Guarded evaluation on the stated domain 0<s<1, 0<=u<=1, 3/2<r<3,
// 3(1-u) < 2r(1-s).  When rotor_nr is not given, the empirical torus envelope
// exported by the fields module is used (and reported in rotor_nr_used).
Estimate2Constants estimate2_bound_constants(const ConstantQuery& q,
                                             std::optional<double> rotor_nr = {});

// ---- Pauli-Lieb-Thirring field-energy constants ----------------------------

// Omega(s, r) = int_0^1 t^{s-1} (1 - t^{r+1})^{3/2} dt by adaptive quadrature.
double plt_omega_integral(double s, double r);

struct PltConstants {
    double u_const = 0.0;
    double v_const = 0.0;
};

// Explicit constants U(s, gamma), V(s, gamma); the s = 1/2 pair is
// gamma-independent.  Domain: 1/2 <= s <= 1, 0 < gamma < 1.
PltConstants plt_field_energy_constants(double s, double gamma_mix);

// ---- Localization constants -------------------------------------------------

// Shell-n localization error D_n^{2s} = pi^{2s} l^{-2sn} / (2^s b^{2s} (l^{2s}-1)).
double localization_error(double s, double b, double l, int n);

// Effective Hardy weight E_s = C_s + pi^{2s} l^{4s} / (2^s (l^{2s}-1)(l-1)^{2s});
// independent of the inner length b.
double effective_hardy_weight(double s, double l);

// ---- Constants table --------------------------------------------------------

struct ConstantsTable {
    struct Entry {
        double value = 0.0;
        std::map<std::string, double> params;
    };
    std::map<std::string, Entry> entries;
};

// Canonical table of every named constant at representative parameters.
ConstantsTable default_table();

// Evaluate one named constant from key/value parameters (CLI entry point).
double evaluate_named(const std::string& name,
                      const std::map<std::string, double>& params);

// Empirical torus rotor-Sobolev envelope; implemented by the fields module.
double default_rotor_constant(double r);

} // namespace hlt::constants
