#include "hlt/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace hlt::spectra {

Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& h) {
    const double scale = h.cwiseAbs().maxCoeff();
    if (scale > 0.0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("eigenvalues: non-Hermitian input rejected");
    return ops::eigenvalues_only(h);
}

Eigen::VectorXd eigenvalues(const ops::DenseHermitian& h) {
    return ops::eigenvalues_only(h.mat);
}

double negative_trace_moment(const Eigen::VectorXd& eigs, double gamma) {
    if (gamma < 0.0) throw std::domain_error("negative_trace_moment: gamma >= 0");
    double acc = 0.0;
    for (int i = 0; i < eigs.size(); ++i) {
        if (eigs[i] < 0.0) acc += gamma == 0.0 ? 1.0 : std::pow(-eigs[i], gamma);
    }
    return acc;
}

double negative_trace_moment(const ops::DenseHermitian& h, double gamma) {
    return negative_trace_moment(eigenvalues(h), gamma);
}

int count_below(const Eigen::VectorXd& eigs, double alpha) {
    int count = 0;
    for (int i = 0; i < eigs.size(); ++i)
        if (eigs[i] <= alpha) ++count;
    return count;
}

int count_below(const ops::DenseHermitian& h, double alpha) {
    return count_below(eigenvalues(h), alpha);
}

SpectrumSummary summarize(const ops::DenseHermitian& h, const std::vector<double>& gammas,
                          const std::vector<double>& count_levels) {
    SpectrumSummary out;
    out.eigenvalues = eigenvalues(h);
    for (double g : gammas)
        out.negative_trace_moments[g] = negative_trace_moment(out.eigenvalues, g);
    for (double a : count_levels) out.counts[a] = count_below(out.eigenvalues, a);
    return out;
}

} // namespace hlt::spectra
