#include "htensor/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace htensor {

namespace {

using cd = std::complex<double>;

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void check_order(int m) {
    if (m < 1) throw Error(Errc::InvalidShape, "spin order m must be >= 1");
    if (m > kMaxSpinOrder) {
        throw Error(Errc::OrderTooLarge, "m = " + std::to_string(m) + " exceeds " + std::to_string(kMaxSpinOrder));
    }
}

// Nondecreasing tuples over {0..3}; each stands for its permutation class.
void for_each_multiset(int m, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> mu(m, 0);
    while (true) {
        f(mu);
        int k = m - 1;
        while (k >= 0 && mu[k] == 3) --k;
        if (k < 0) return;
        ++mu[k];
        for (int r = k + 1; r < m; ++r) mu[r] = mu[k];
    }
}

}  // namespace

void validate_state(const SpinState& state) {
    check_order(state.m);
    const int d = state.m + 1;
    if (state.rho.rows() != d || state.rho.cols() != d) {
        throw Error(Errc::InvalidShape, "rho must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if (!state.rho.allFinite()) throw Error(Errc::NonFiniteValue, "rho has a non-finite entry");
    const double herm = (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw Error(Errc::NonHermitian, "rho deviates from its adjoint by " + std::to_string(herm));
    const cd tr = state.rho.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw Error(Errc::TraceNotOne, "trace is " + std::to_string(tr.real()) + "+" + std::to_string(tr.imag()) + "i");
    }
}

ComplexMatrix dicke_isometry(int m) {
    check_order(m);
    const std::size_t dim = std::size_t{1} << m;
    ComplexMatrix V = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), m + 1);
    for (std::size_t b = 0; b < dim; ++b) {
        const int k = std::popcount(b);
        V(static_cast<Eigen::Index>(b), k) = 1.0 / std::sqrt(binomial(m, k));
    }
    return V;
}

ComplexMatrix s_operator(std::span<const int> mus) {
    const int m = static_cast<int>(mus.size());
    check_order(m);
    for (int mu : mus) {
        if (mu < 0 || mu > 3) throw Error(Errc::BadIndex, "Pauli index " + std::to_string(mu) + " not in 0..3");
    }
    // The Pauli string maps bitstring y to c |y'>; each column of V is flat
    // over its weight class, so S[w(y')][w(y)] collects c / sqrt(C(m,w') C(m,w)).
    ComplexMatrix S = ComplexMatrix::Zero(m + 1, m + 1);
    const std::size_t dim = std::size_t{1} << m;
    for (std::size_t y = 0; y < dim; ++y) {
        std::size_t out = y;
        cd c = 1.0;
        for (int q = 0; q < m; ++q) {
            const bool up = ((y >> q) & 1U) == 0;
            switch (mus[q]) {
                case 0: break;
                case 1: out ^= std::size_t{1} << q; break;
                case 2:
                    out ^= std::size_t{1} << q;
                    c *= up ? cd(0, 1) : cd(0, -1);
                    break;
                case 3:
                    if (!up) c = -c;
                    break;
            }
        }
        const int w_in = std::popcount(y);
        const int w_out = std::popcount(out);
        S(w_out, w_in) += c / std::sqrt(binomial(m, w_in) * binomial(m, w_out));
    }
    return S;
}

DenseTensor coefficient_tensor(const SpinState& state) {
    validate_state(state);
    const int m = state.m;
    DenseTensor A(m, 4);
    std::vector<int> idx(m);
    for_each_multiset(m, [&](const std::vector<int>& mu) {
        const ComplexMatrix S = s_operator(mu);
        double value = (state.rho * S).trace().real();
        // Rounding dust (cos(pi/2) and friends) would otherwise read as a tiny
        // positive diagonal and pass the strict dominance tests.
        if (std::abs(value) <= 1e-14) value = 0.0;
        std::vector<int> perm = mu;
        do {
            for (int k = 0; k < m; ++k) idx[k] = perm[k] + 1;
            A.set(idx, value);
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    return A;
}

ComplexMatrix reconstruct_density(const DenseTensor& coeffs) {
    if (coeffs.dim() != 4) throw Error(Errc::WrongDimension, "coefficient tensor must have dimension 4");
    const int m = coeffs.order();
    check_order(m);
    ComplexMatrix rho = ComplexMatrix::Zero(m + 1, m + 1);
    std::vector<int> idx(m);
    // Permutations of a multiset share S, so sum the class entries once each.
    for_each_multiset(m, [&](const std::vector<int>& mu) {
        std::vector<int> perm = mu;
        double mass = 0.0;
        do {
            for (int k = 0; k < m; ++k) idx[k] = perm[k] + 1;
            mass += coeffs(idx);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (mass != 0.0) rho += mass * s_operator(mu);
    });
    return rho / std::pow(2.0, m);
}

SpinState coherent_state(int m, double theta, double phi) {
    check_order(m);
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw Error(Errc::BadAngle, "theta " + std::to_string(theta) + " not in [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw Error(Errc::BadAngle, "phi " + std::to_string(phi) + " not in [0, 2pi)");
    }
    const double sn = std::sin(theta / 2);
    const cd up = std::cos(theta / 2) * std::polar(1.0, -phi);
    ComplexVector psi(m + 1);
    for (int k = 0; k <= m; ++k) psi(k) = std::sqrt(binomial(m, k)) * std::pow(sn, k) * std::pow(up, m - k);
    psi.normalize();
    return {m, psi * psi.adjoint()};
}

Eigen::Vector4d bloch_direction(double theta, double phi) {
    return {1.0, std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SpinState classical_mixture(int m, const std::vector<double>& weights, const std::vector<Direction>& dirs) {
    check_order(m);
    if (weights.empty() || weights.size() != dirs.size()) {
        throw Error(Errc::WeightMismatch, std::to_string(weights.size()) + " weights for " +
                                              std::to_string(dirs.size()) + " directions");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw Error(Errc::WeightMismatch, "weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::WeightMismatch, "weights sum to " + std::to_string(total));
    SpinState out{m, ComplexMatrix::Zero(m + 1, m + 1)};
    for (std::size_t k = 0; k < weights.size(); ++k) {
        out.rho += weights[k] * coherent_state(m, dirs[k].theta, dirs[k].phi).rho;
    }
    return out;
}

const char* to_string(ClassicalityRule rule) {
    switch (rule) {
        case ClassicalityRule::SymmetricH: return "symmetric_H";
        case ClassicalityRule::StronglySymmetricH: return "strongly_symmetric_H";
    }
    return "?";
}

ClassicalityVerdict certify_classicality(const SpinState& state) {
    validate_state(state);
    ClassicalityVerdict v;
    if (state.m % 2 != 0) {
        v.reason = "OddOrder: m = " + std::to_string(state.m) + " is odd, j is not an integer";
        return v;
    }
    const DenseTensor A = coefficient_tensor(state);
    v.diagonals_nonnegative = true;
    for (int k = 1; k <= 4; ++k) v.diagonals_nonnegative = v.diagonals_nonnegative && A.diagonal(k) >= -1e-12;
    v.generated = generated_matrix(A);
    v.certificate = certify_h_tensor(A);
    v.symmetry = classify_symmetry(A);
    v.coeffs = A;

    if (!v.diagonals_nonnegative) {
        v.reason = "a diagonal coefficient is negative";
        return v;
    }
    if (v.certificate->verdict != Verdict::CertifiedH) {
        v.reason = "coefficient tensor is not certified as an H-tensor";
        return v;
    }
    v.certified = true;
    v.rules.push_back(ClassicalityRule::SymmetricH);
    if (v.symmetry == Symmetry::StronglySymmetric) {
        bool dominant = true;
        for (int i = 0; i < 4; ++i) dominant = dominant && v.generated->diag_abs(i) >= v.generated->s(i, i);
        if (dominant) v.rules.push_back(ClassicalityRule::StronglySymmetricH);
    }
    v.reason = std::string("H-certified via ") + to_string(v.certificate->rule);
    return v;
}

double min_sampled_form(const DenseTensor& coeffs, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double lowest = std::numeric_limits<double>::infinity();
    Vector x(coeffs.dim());
    for (int s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
        const double nrm = x.norm();
        if (nrm == 0.0) continue;
        x /= nrm;
        lowest = std::min(lowest, poly_value(coeffs, x));
    }
    return lowest;
}

}  // namespace htensor
