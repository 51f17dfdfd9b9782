#pragma once

// Spin-j states as order-2j, dimension-4 coefficient tensors in the Pauli frame,
// coherent states, and the H-tensor classicality certificate.
//
// Basis convention: row/column k of rho is |j, l> with l = j - k, i.e. the
// Dicke state with k excitations. On a qubit, bit 0 is spin up.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "htensor/dominance.hpp"
#include "htensor/tensor.hpp"

namespace htensor {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxSpinOrder = 8;

struct SpinState {
    int m = 0;          // 2j
    ComplexMatrix rho;  // (m+1) x (m+1)
};

/// Throws InvalidShape, OrderTooLarge, NonHermitian (1e-12) or TraceNotOne (1e-12).
void validate_state(const SpinState& state);

/// 2^m x (m+1); column k is the normalized Dicke state of weight k.
ComplexMatrix dicke_isometry(int m);

/// V^H (sigma_mu1 x ... x sigma_mum) V, mu entries in 0..3.
ComplexMatrix s_operator(std::span<const int> mus);

/// A_mu = tr(rho S_mu), stored with index mu+1 in each slot.
DenseTensor coefficient_tensor(const SpinState& state);

/// rho = 2^-m sum over mu of A_mu S_mu.
ComplexMatrix reconstruct_density(const DenseTensor& coeffs);

/// Pure coherent state along (theta, phi); theta in [0, pi], phi in [0, 2 pi).
SpinState coherent_state(int m, double theta, double phi);

/// (1, sin t cos p, sin t sin p, cos t)
Eigen::Vector4d bloch_direction(double theta, double phi);

struct Direction {
    double theta = 0.0;
    double phi = 0.0;
};

/// Convex mixture of coherent states. Weights must be positive and sum to 1.
SpinState classical_mixture(int m, const std::vector<double>& weights, const std::vector<Direction>& dirs);

enum class ClassicalityRule { SymmetricH, StronglySymmetricH };

const char* to_string(ClassicalityRule rule);

struct ClassicalityVerdict {
    bool certified = false;
    std::vector<ClassicalityRule> rules;
    std::string reason;
    std::optional<DenseTensor> coeffs;
    std::optional<GeneratedMatrix> generated;
    std::optional<Certificate> certificate;
    bool diagonals_nonnegative = false;
    Symmetry symmetry = Symmetry::None;
};

/// Sufficient test only; an uncertified state is not shown to be nonclassical.
ClassicalityVerdict certify_classicality(const SpinState& state);

/// Smallest A x^m over `samples` random unit vectors in R^4.
double min_sampled_form(const DenseTensor& coeffs, int samples, std::uint64_t seed);

}  // namespace htensor
