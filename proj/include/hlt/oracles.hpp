#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hlt/field.hpp"
#include "hlt/rng.hpp"

namespace hlt::oracles {

struct OracleVerdict {
    std::string name;
    std::uint64_t seed = 0;
    double gap = 0.0;        // min eigenvalue of the gap matrix (or scalar gap)
    double tolerance = 0.0;
    bool pass = false;       // gap >= -tolerance
};

// (sum S_n A_n S_n)^s >= sum S_n A_n^s S_n for PSD A_n and a resolution
// sum S_n^2 = 1, 0 < s < 1.
OracleVerdict pullout_check(const std::vector<Eigen::MatrixXcd>& s_list,
                            const std::vector<Eigen::MatrixXcd>& a_list, double s,
                            double tol_scale = 1e-9);

// Tr(A - B)_- <= Tr(A^{1/s} - B^{1/s})_-^s for PSD A, B, 0 < s < 1.
OracleVerdict bks_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double s,
                        double tol_scale = 1e-9);

// A >= B >= 0 implies A^s >= B^s for 0 < s <= 1.  Larger powers are accepted
// so the failure of monotonicity beyond s = 1 can be demonstrated.
OracleVerdict monotonicity_check(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                 double s, double tol_scale = 1e-9);

// Tr(sum T_n)_- <= sum Tr(T_n)_-
OracleVerdict trace_sum_lemma_check(const std::vector<Eigen::MatrixXcd>& t_list,
                                    double tol_scale = 1e-9);

// Tr(sum S_n T S_n)_- <= sum Tr(S_n T S_n)_- <= Tr(T)_- for PSD S_n with
// sum S_n^2 <= 1; the reported gap is the lesser of the two.
OracleVerdict trace_product_lemma_check(const std::vector<Eigen::MatrixXcd>& s_list,
                                        const Eigen::MatrixXcd& t, double tol_scale = 1e-9);

// IMS identity (p-A)^2 = eta (p-A)^2 eta + theta (p-A)^2 theta
//                        - |grad eta|^2 - |grad theta|^2,
// tested as a two-sided residual on the aliasing-free (half-spectrum) subspace.
OracleVerdict ims_identity_check(const fields::GridSpec& g, const fields::Field* a,
                                 const fields::Field& eta, const fields::Field& theta,
                                 double tol_scale = 1e-8);

// ---- random instances ---------------------------------------------------------

// G^dagger G + 1e-6 * scale * I with Gaussian G.
Eigen::MatrixXcd random_psd(Rng& rng, int dim, double scale = 1.0);
Eigen::MatrixXcd random_hermitian(Rng& rng, int dim, double scale = 1.0);

// PSD factors renormalized symmetrically so that sum S_n^2 = 1 exactly.
std::vector<Eigen::MatrixXcd> random_partition(Rng& rng, int dim, int count);

struct SuiteSummary {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst_gap = 0.0;       // most negative normalized gap seen
    std::vector<std::uint64_t> failure_seeds;
    std::vector<OracleVerdict> verdicts;  // filled when keep_verdicts is set
};

// Seeded randomized suites: names are "pullout", "bks", "monotonicity",
// "monotonicity_control" (s = 2), "trace_sum", "trace_product", "ims".
SuiteSummary run_suite(const std::string& name, int trials, std::uint64_t seed,
                       bool keep_verdicts = false);

} // namespace hlt::oracles
