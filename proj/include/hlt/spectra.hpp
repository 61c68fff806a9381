#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "hlt/operators.hpp"

namespace hlt::spectra {

// Full real spectrum, ascending.  Non-Hermitian input (beyond roundoff) is
// rejected rather than silently symmetrized.
Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& h);
Eigen::VectorXd eigenvalues(const ops::DenseHermitian& h);

// sum_i max(0, -lambda_i)^gamma; gamma = 0 counts strictly negative eigenvalues.
double negative_trace_moment(const Eigen::VectorXd& eigs, double gamma);
double negative_trace_moment(const ops::DenseHermitian& h, double gamma);

// #{lambda_i <= alpha}
int count_below(const Eigen::VectorXd& eigs, double alpha);
int count_below(const ops::DenseHermitian& h, double alpha);

struct SpectrumSummary {
    Eigen::VectorXd eigenvalues;
    std::map<double, double> negative_trace_moments;
    std::map<double, int> counts;
};

SpectrumSummary summarize(const ops::DenseHermitian& h, const std::vector<double>& gammas,
                          const std::vector<double>& count_levels);

} // namespace hlt::spectra
