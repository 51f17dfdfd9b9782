#include "htensor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace htensor {

namespace {

Vector signed_power(const Vector& x, int p) {
    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = std::pow(x(i), p);
    return out;
}

Vector max_normalized(const Vector& x) {
    const double scale = x.cwiseAbs().maxCoeff();
    Vector y = x / scale;
    // Fix the sign so the largest component is positive.
    Eigen::Index k;
    y.cwiseAbs().maxCoeff(&k);
    if (y(k) < 0.0) y = -y;
    return y;
}

bool acceptable(const EigenPair& p) { return p.residual <= 1e-8 * std::max(1.0, std::abs(p.lambda)); }

// Sort by lambda and keep the best-residual pair from each cluster whose
// consecutive members lie within `tol`.
std::vector<EigenPair> deduplicate(std::vector<EigenPair> pairs, double tol) {
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.residual < b.residual;
    });
    std::vector<EigenPair> out;
    for (auto& p : pairs) {
        if (!out.empty() && std::abs(p.lambda - out.back().lambda) <= tol) {
            if (p.residual < out.back().residual) out.back() = std::move(p);
            continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

double horner(const std::vector<double>& coeffs, double s) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * s + *it;
    return v;
}

double horner_derivative(const std::vector<double>& coeffs, double s) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) v = v * s + static_cast<double>(k) * coeffs[k];
    return v;
}

EigenPair make_pair(const DenseTensor& t, double lambda, const Vector& x) {
    EigenPair p;
    p.lambda = lambda;
    p.x = max_normalized(x);
    p.residual = eigen_residual(t, lambda, p.x);
    return p;
}

}  // namespace

double eigen_residual(const DenseTensor& t, double lambda, const Vector& x) {
    const Vector y = max_normalized(x);
    const Vector r = contract(t, y) - lambda * signed_power(y, t.order() - 1);
    return r.cwiseAbs().maxCoeff();
}

std::vector<EigenPair> h_eigen_exact_2d(const DenseTensor& t) {
    if (t.dim() != 2) {
        throw Error(Errc::WrongDimension, "exact oracle needs dimension 2, got " + std::to_string(t.dim()));
    }
    const int m = t.order();
    // (A (1,s)^{m-1})_row = sum_d c_row[d] s^d, d = number of trailing indices equal to 2.
    std::vector<double> c1(m, 0.0), c2(m, 0.0);
    std::vector<int> idx(m);
    for (std::size_t k = 0; k < t.size(); ++k) {
        t.unravel(k, idx);
        const int d = static_cast<int>(std::count(idx.begin() + 1, idx.end(), 1));
        (idx[0] == 0 ? c1 : c2)[d] += t.flat(k);
    }
    // p(s) = c2(s) - c1(s) s^{m-1}
    std::vector<double> p(2 * m - 1, 0.0);
    for (int d = 0; d < m; ++d) {
        p[d] += c2[d];
        p[d + m - 1] -= c1[d];
    }

    std::vector<EigenPair> found;
    auto try_s = [&](double s) {
        Vector x(2);
        x << 1.0, s;
        EigenPair pair = make_pair(t, horner(c1, s), x);
        if (acceptable(pair)) found.push_back(std::move(pair));
    };

    double scale = 0.0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    double entry_scale = 0.0;
    for (double v : t.data()) entry_scale = std::max(entry_scale, std::abs(v));

    if (scale <= 1e-14 * std::max(1.0, entry_scale)) {
        // Every direction (1, s) is an eigenvector.
        for (double s : {-1.0, 0.0, 1.0}) try_s(s);
    } else {
        int degree = static_cast<int>(p.size()) - 1;
        while (degree > 0 && std::abs(p[degree]) <= 1e-14 * scale) --degree;
        if (degree > 0) {
            Matrix companion = Matrix::Zero(degree, degree);
            for (int k = 0; k < degree; ++k) companion(0, k) = -p[degree - 1 - k] / p[degree];
            for (int k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;
            Eigen::EigenSolver<Matrix> es(companion, false);
            const std::vector<double> poly(p.begin(), p.begin() + degree + 1);
            for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
                const auto root = es.eigenvalues()(k);
                if (std::abs(root.imag()) > 1e-6 * std::max(1.0, std::abs(root.real()))) continue;
                double s = root.real();
                for (int it = 0; it < 20; ++it) {
                    const double dp = horner_derivative(poly, s);
                    if (dp == 0.0) break;
                    const double next = s - horner(poly, s) / dp;
                    if (!std::isfinite(next) || std::abs(horner(poly, next)) >= std::abs(horner(poly, s))) break;
                    s = next;
                }
                try_s(s);
            }
        }
    }

    Vector e2(2);
    e2 << 0.0, 1.0;
    EigenPair vertical = make_pair(t, c2[m - 1], e2);
    if (acceptable(vertical)) found.push_back(std::move(vertical));

    return deduplicate(std::move(found), 1e-7);
}

std::vector<EigenPair> h_eigen_newton(const DenseTensor& t, int starts, std::uint64_t seed) {
    const int n = t.dim();
    const int m = t.order();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    auto system = [&](const Vector& x, double lambda) {
        Vector F(n + 1);
        F.head(n) = contract(t, x) - lambda * signed_power(x, m - 1);
        F(n) = 0.5 * (x.squaredNorm() - 1.0);
        return F;
    };

    std::vector<EigenPair> found;
    for (int start = 0; start < starts; ++start) {
        Vector x(n);
        for (int i = 0; i < n; ++i) x(i) = normal(rng);
        if (x.norm() == 0.0) continue;
        x.normalize();
        double lambda = 0.0;
        const double denom = signed_power(x, m).sum();
        const double quotient = x.dot(contract(t, x)) / denom;
        if (std::abs(denom) > 1e-8 && std::isfinite(quotient)) lambda = quotient;

        Vector F = system(x, lambda);
        double norm = F.cwiseAbs().maxCoeff();
        bool converged = norm <= 1e-10;
        // Keep going past the threshold while the residual still drops: at roots where
        // some x_i = 0 the Jacobian is singular and convergence is only linear, so
        // stopping at 1e-10 would leave lambda off by ~1e-5.
        for (int iter = 0; iter < 80 && norm > 0.0; ++iter) {
            Matrix J = Matrix::Zero(n + 1, n + 1);
            J.topLeftCorner(n, n) = contract_jacobian(t, x);
            for (int i = 0; i < n; ++i) J(i, i) -= lambda * (m - 1) * std::pow(x(i), m - 2);
            J.topRightCorner(n, 1) = -signed_power(x, m - 1);
            J.bottomLeftCorner(1, n) = x.transpose();
            const Vector step = J.fullPivLu().solve(-F);
            if (!step.allFinite()) break;

            double damping = 1.0;
            bool accepted = false;
            for (int halving = 0; halving <= 30; ++halving) {
                const Vector xn = x + damping * step.head(n);
                const double ln = lambda + damping * step(n);
                const Vector Fn = system(xn, ln);
                const double nn = Fn.cwiseAbs().maxCoeff();
                if (nn < norm) {
                    x = xn;
                    lambda = ln;
                    F = Fn;
                    norm = nn;
                    accepted = true;
                    break;
                }
                damping *= 0.5;
            }
            if (!accepted) break;
            converged = converged || norm <= 1e-10;
        }
        if (!converged) continue;
        EigenPair pair = make_pair(t, lambda, x);
        if (acceptable(pair)) found.push_back(std::move(pair));
    }
    return deduplicate(std::move(found), 1e-6);
}

SpectralRadius nqz_spectral_radius(const DenseTensor& t) {
    for (double v : t.data()) {
        if (v < 0.0) throw Error(Errc::NegativeEntry, "power iteration needs a nonnegative tensor");
    }
    constexpr double eps = 1e-9;
    constexpr int max_iter = 10000;
    const int n = t.dim();
    const int m = t.order();
    DenseTensor shifted = t;
    for (int i = 0; i < n; ++i) shifted.set_flat(shifted.diagonal_offset(i), t.diagonal(i + 1) + eps);

    SpectralRadius out;
    Vector x = Vector::Ones(n);
    for (int iter = 1; iter <= max_iter; ++iter) {
        const Vector y = contract(shifted, x);
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ratio = y(i) / std::pow(x(i), m - 1);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        out.lower = lo - eps;
        out.upper = hi - eps;
        out.value = std::sqrt(lo * hi) - eps;
        out.iterations = iter;
        if (hi - lo <= 1e-9 * hi) {
            out.converged = true;
            break;
        }
        x = y.array().pow(1.0 / (m - 1));
        x /= x.maxCoeff();
    }
    out.value = std::max(out.value, 0.0);
    out.lower = std::max(out.lower, 0.0);
    return out;
}

}  // namespace htensor
