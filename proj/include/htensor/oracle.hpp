#pragma once

// Brute-force H-eigenpair oracles for desk-scale tensors, plus the power
// iteration for the spectral radius of a nonnegative tensor.

#include <cstdint>
#include <vector>

#include "htensor/tensor.hpp"

namespace htensor {

struct EigenPair {
    double lambda = 0.0;
    Vector x;               // max-norm 1
    double residual = 0.0;  // ||A x^{m-1} - lambda x^{[m-1]}||_inf
};

/// Residual of a candidate pair, evaluated after rescaling x to max-norm 1.
double eigen_residual(const DenseTensor& t, double lambda, const Vector& x);

/// Every real H-eigenvalue of a dimension-2 tensor, via the roots of the
/// univariate polynomial obtained by substituting x = (1, s), plus the
/// x = (0, 1) direction. When that polynomial vanishes identically every
/// direction is an eigenvector; the pairs at s = -1, 0, 1 are returned.
std::vector<EigenPair> h_eigen_exact_2d(const DenseTensor& t);

/// Multistart damped Newton on A x^{m-1} = lambda x^{[m-1]}, |x|_2 = 1.
/// Deterministic for a given seed; not guaranteed to find every eigenvalue.
std::vector<EigenPair> h_eigen_newton(const DenseTensor& t, int starts, std::uint64_t seed);

struct SpectralRadius {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Spectral radius of a nonnegative tensor by the normalized power iteration
/// with min/max ratio bounds. Throws NegativeEntry on a negative entry.
SpectralRadius nqz_spectral_radius(const DenseTensor& t);

}  // namespace htensor
