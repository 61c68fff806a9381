#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hlt {

// Adaptive quadrature on [a, b] built from the 15-point Gauss-Kronrod rule
// with the embedded 7-point Gauss rule as error estimate.  Panels are
// bisected until the local error estimate falls below the assigned share of
// the absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 60);

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n (nodes via Newton on P_n).
GaussRule gauss_legendre(int n);

} // namespace hlt
