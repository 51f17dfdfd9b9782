#include "htensor/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "htensor/oracle.hpp"

namespace htensor {

namespace {

constexpr double kRel = 1e-12;
constexpr double kJacobiThreshold = 1.0 - 1e-10;

bool strictly_greater(double a, double b) { return a - b > kRel * std::max(std::abs(a), std::abs(b)); }
bool at_least(double a, double b) { return a - b >= -kRel * std::max(std::abs(a), std::abs(b)); }

void require_square(const Matrix& M) {
    if (M.rows() != M.cols()) throw Error(Errc::DimensionMismatch, "matrix must be square");
}

Vector abs_diagonal(const Matrix& M) { return M.diagonal().cwiseAbs(); }

std::vector<int> strict_rows(const Vector& d, const Vector& P) {
    std::vector<int> J;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (strictly_greater(d(i), P(i))) J.push_back(static_cast<int>(i) + 1);
    }
    return J;
}

void require_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(Errc::GammaOutOfRange, "gamma must lie in [0,1], got " + std::to_string(gamma));
    }
}

bool gamma_dominant(const Vector& d, const Vector& P, const Vector& Q, double gamma, bool product) {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double rhs = product ? std::pow(P(i), gamma) * std::pow(Q(i), 1.0 - gamma)
                                   : gamma * P(i) + (1.0 - gamma) * Q(i);
        if (!strictly_greater(d(i), rhs)) return false;
    }
    return true;
}

// Digraph of the off-diagonal nonzero pattern.
std::vector<std::vector<int>> adjacency(const Matrix& M) {
    const int n = static_cast<int>(M.rows());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && M(i, j) != 0.0) adj[i].push_back(j);
        }
    }
    return adj;
}

struct Tarjan {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> number, low, stack;
    std::vector<char> on_stack;
    std::vector<std::vector<int>> components;
    int counter = 0;

    explicit Tarjan(const std::vector<std::vector<int>>& g)
        : adj(g), number(g.size(), -1), low(g.size(), -1), on_stack(g.size(), 0) {}

    void visit(int v) {
        number[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (int w : adj[v]) {
            if (number[w] == -1) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], number[w]);
            }
        }
        if (low[v] == number[v]) {
            std::vector<int> scc;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                scc.push_back(w);
            } while (w != v);
            std::sort(scc.begin(), scc.end());
            components.push_back(std::move(scc));
        }
    }
};

}  // namespace

const char* to_string(DominanceKind kind) {
    switch (kind) {
    case DominanceKind::SDD: return "SDD";
    case DominanceKind::DD: return "DD";
    case DominanceKind::DoublySDD: return "DoublySDD";
    case DominanceKind::GammaSDD: return "GammaSDD";
    case DominanceKind::ProductGammaSDD: return "ProductGammaSDD";
    case DominanceKind::GeneralizedH: return "GeneralizedH";
    case DominanceKind::IrreducibleDD: return "IrreducibleDD";
    case DominanceKind::WeaklyChainedDD: return "WeaklyChainedDD";
    case DominanceKind::None: return "None";
    }
    return "None";
}

const char* to_string(Verdict v) { return v == Verdict::CertifiedH ? "certified_H" : "not_certified"; }

const char* to_string(MTensorMethod m) {
    switch (m) {
    case MTensorMethod::None: return "none";
    case MTensorMethod::WCDD: return "WCDD";
    case MTensorMethod::NQZ: return "NQZ";
    }
    return "none";
}

Matrix comparison_matrix(const Matrix& M) {
    require_square(M);
    Matrix C = -M.cwiseAbs();
    C.diagonal() = M.diagonal().cwiseAbs();
    return C;
}

Vector deleted_row_sums(const Matrix& M) {
    require_square(M);
    return M.cwiseAbs().rowwise().sum() - M.diagonal().cwiseAbs();
}

Vector deleted_col_sums(const Matrix& M) {
    require_square(M);
    return M.cwiseAbs().colwise().sum().transpose() - M.diagonal().cwiseAbs();
}

std::optional<double> find_gamma(const Matrix& M, bool product) {
    require_square(M);
    const Vector d = abs_diagonal(M);
    const Vector P = deleted_row_sums(M);
    const Vector Q = deleted_col_sums(M);
    const double inf = std::numeric_limits<double>::infinity();
    // Feasible set is the open interval (lo, hi) intersected with [0,1].
    double lo = -inf;
    double hi = inf;

    // Row constraint: value > base + gamma * slope.
    auto linear = [&](double value, double base, double slope) {
        if (slope > 0.0) {
            hi = std::min(hi, (value - base) / slope);
        } else if (slope < 0.0) {
            lo = std::max(lo, (value - base) / slope);
        } else if (!(value > base)) {
            hi = -inf;
        }
    };

    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!product) {
            linear(d(i), Q(i), P(i) - Q(i));
            continue;
        }
        if (d(i) <= 0.0) return std::nullopt;
        if (P(i) > 0.0 && Q(i) > 0.0) {
            linear(std::log(d(i)), std::log(Q(i)), std::log(P(i)) - std::log(Q(i)));
        } else if (P(i) == 0.0 && Q(i) > 0.0) {
            // 0^gamma vanishes for gamma > 0; gamma = 0 leaves Q_i.
            if (!(d(i) > Q(i))) lo = std::max(lo, 0.0);
        } else if (Q(i) == 0.0 && P(i) > 0.0) {
            if (!(d(i) > P(i))) hi = std::min(hi, 1.0);
        }
    }

    const double L = std::max(lo, 0.0);
    const double H = std::min(hi, 1.0);
    const bool L_closed = lo < 0.0;
    const bool H_closed = hi > 1.0;
    double candidate;
    if (L < H) {
        candidate = 0.5 * (L + H);
    } else if (L == H && L_closed && H_closed) {
        candidate = L;
    } else {
        return std::nullopt;
    }
    if (!gamma_dominant(d, P, Q, candidate, product)) return std::nullopt;
    return candidate;
}

DominanceReport check_dominance(const Matrix& M, DominanceKind kind, std::optional<double> gamma) {
    require_square(M);
    const Vector d = abs_diagonal(M);
    const Vector P = deleted_row_sums(M);
    const Vector Q = deleted_col_sums(M);
    const Eigen::Index n = M.rows();

    DominanceReport rep;
    rep.strict_rows = strict_rows(d, P);

    switch (kind) {
    case DominanceKind::SDD:
        if (static_cast<Eigen::Index>(rep.strict_rows.size()) == n) rep.kind = DominanceKind::SDD;
        break;
    case DominanceKind::DD: {
        bool ok = true;
        for (Eigen::Index i = 0; i < n; ++i) ok = ok && at_least(d(i), P(i));
        if (ok) rep.kind = DominanceKind::DD;
        break;
    }
    case DominanceKind::DoublySDD: {
        bool ok = true;
        if (n == 1) ok = strictly_greater(d(0), P(0));
        for (Eigen::Index i = 0; i < n && ok; ++i) {
            for (Eigen::Index j = i + 1; j < n && ok; ++j) {
                ok = strictly_greater(d(i) * d(j), P(i) * P(j));
            }
        }
        if (ok) rep.kind = DominanceKind::DoublySDD;
        break;
    }
    case DominanceKind::GammaSDD:
    case DominanceKind::ProductGammaSDD: {
        const bool product = kind == DominanceKind::ProductGammaSDD;
        if (gamma) {
            require_gamma(*gamma);
            if (gamma_dominant(d, P, Q, *gamma, product)) {
                rep.kind = kind;
                rep.gamma = gamma;
            }
        } else if (auto g = find_gamma(M, product)) {
            rep.kind = kind;
            rep.gamma = g;
        }
        break;
    }
    default:
        break;
    }
    return rep;
}

HMatrixResult is_h_matrix(const Matrix& M) {
    require_square(M);
    HMatrixResult res;
    const Eigen::Index n = M.rows();
    const Vector d = abs_diagonal(M);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i) == 0.0) {
            res.jacobi_radius = std::numeric_limits<double>::infinity();
            res.diagnostic = "row " + std::to_string(i + 1) + " has a zero diagonal entry";
            return res;
        }
    }

    Matrix jacobi = M.cwiseAbs();
    jacobi.diagonal().setZero();
    jacobi = d.cwiseInverse().asDiagonal() * jacobi;
    Eigen::EigenSolver<Matrix> es(jacobi, false);
    res.jacobi_radius = n == 0 ? 0.0 : es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(res.jacobi_radius < kJacobiThreshold)) {
        res.diagnostic = "Jacobi spectral radius " + std::to_string(res.jacobi_radius) + " is not below 1";
        return res;
    }

    const Matrix C = comparison_matrix(M);
    const Vector x = C.fullPivLu().solve(Vector::Ones(n));
    if ((x.array() <= 0.0).any() || !x.allFinite()) {
        res.diagnostic = "scaling solve produced a non-positive component";
        return res;
    }
    // M diag(x) must be strictly row diagonally dominant.
    const Matrix scaled = M.cwiseAbs() * x.asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double off = scaled.row(i).sum() - scaled(i, i);
        if (!strictly_greater(scaled(i, i), off)) {
            res.diagnostic = "scaled matrix fails strict dominance in row " + std::to_string(i + 1);
            return res;
        }
    }
    res.is_h = true;
    res.scaling = x;
    return res;
}

std::vector<std::vector<int>> strongly_connected_components(const Matrix& M) {
    require_square(M);
    const auto adj = adjacency(M);
    Tarjan tarjan(adj);
    for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
        if (tarjan.number[v] == -1) tarjan.visit(v);
    }
    return tarjan.components;
}

bool is_irreducible(const Matrix& M) {
    require_square(M);
    if (M.rows() <= 1) return true;
    return strongly_connected_components(M).size() == 1;
}

bool is_weakly_irreducible(const DenseTensor& t) { return is_irreducible(representation_matrix(t)); }

DominanceReport tensor_dd(const DenseTensor& t) {
    const int n = t.dim();
    DominanceReport rep;
    bool dd = true;
    for (int i = 1; i <= n; ++i) {
        const double d = std::abs(t.diagonal(i));
        const double r = row_sum(t, i);
        if (strictly_greater(d, r)) {
            rep.strict_rows.push_back(i);
        } else if (!at_least(d, r)) {
            dd = false;
        }
    }
    if (dd) {
        rep.kind = static_cast<int>(rep.strict_rows.size()) == n ? DominanceKind::SDD : DominanceKind::DD;
    }
    return rep;
}

bool is_weakly_chained_dd(const DenseTensor& t) {
    const DominanceReport dd = tensor_dd(t);
    if (dd.kind == DominanceKind::None || dd.strict_rows.empty()) return false;
    const auto adj = adjacency(representation_matrix(t));
    const int n = t.dim();
    std::vector<std::vector<int>> reverse(n);
    for (int i = 0; i < n; ++i) {
        for (int j : adj[i]) reverse[j].push_back(i);
    }
    std::vector<char> reached(n, 0);
    std::deque<int> queue;
    for (int j : dd.strict_rows) {
        reached[j - 1] = 1;
        queue.push_back(j - 1);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : reverse[v]) {
            if (!reached[u]) {
                reached[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
}

Vector h_tensor_residuals(const DenseTensor& t, const Vector& y) {
    DenseTensor off = abs_tensor(t);
    for (int i = 0; i < t.dim(); ++i) off.set_flat(off.diagonal_offset(i), 0.0);
    const Vector weighted = contract(off, y);
    Vector res(t.dim());
    for (int i = 0; i < t.dim(); ++i) {
        res(i) = std::abs(t.diagonal(i + 1)) * std::pow(y(i), t.order() - 1) - weighted(i);
    }
    return res;
}

Certificate certify_h_tensor(const DenseTensor& t) {
    const GeneratedMatrix g = generated_matrix(t);
    const int n = t.dim();
    const int m = t.order();
    Certificate cert;

    for (int i = 0; i < n; ++i) {
        if (!strictly_greater(g.diag_abs(i), g.s(i, i))) cert.offending_rows.push_back(i + 1);
    }

    std::optional<Vector> x;  // matrix scaling, converted to y below
    auto certify = [&](DominanceKind rule) {
        cert.verdict = Verdict::CertifiedH;
        cert.rule = rule;
    };
    auto scaling_from_h_matrix = [&]() {
        HMatrixResult h = is_h_matrix(g.data);
        if (h.is_h) x = h.scaling;
    };

    if (cert.offending_rows.empty()) {
        if (check_dominance(g.data, DominanceKind::SDD).kind == DominanceKind::SDD) {
            certify(DominanceKind::SDD);
            x = Vector::Ones(n);
        } else if (check_dominance(g.data, DominanceKind::DoublySDD).kind == DominanceKind::DoublySDD) {
            certify(DominanceKind::DoublySDD);
            scaling_from_h_matrix();
        } else if (auto rep = check_dominance(g.data, DominanceKind::GammaSDD); rep.kind != DominanceKind::None) {
            certify(DominanceKind::GammaSDD);
            cert.gamma = rep.gamma;
            scaling_from_h_matrix();
        } else if (auto prep = check_dominance(g.data, DominanceKind::ProductGammaSDD);
                   prep.kind != DominanceKind::None) {
            certify(DominanceKind::ProductGammaSDD);
            cert.gamma = prep.gamma;
            scaling_from_h_matrix();
        } else if (HMatrixResult h = is_h_matrix(g.data); h.is_h) {
            certify(DominanceKind::GeneralizedH);
            x = h.scaling;
        } else if (is_irreducible(g.data) &&
                   check_dominance(g.data, DominanceKind::DD).kind == DominanceKind::DD &&
                   !check_dominance(g.data, DominanceKind::DD).strict_rows.empty()) {
            certify(DominanceKind::IrreducibleDD);
        }
    } else {
        cert.note = "generated-matrix rules skipped: |a_i..i| <= s_ii in some row";
    }

    if (cert.verdict == Verdict::NotCertified && is_weakly_chained_dd(t)) {
        certify(DominanceKind::WeaklyChainedDD);
        if (cert.offending_rows.empty()) scaling_from_h_matrix();
    }

    if (cert.verdict == Verdict::CertifiedH && x) {
        const Vector y = x->array().pow(1.0 / (m - 1));
        cert.residuals = h_tensor_residuals(t, y);
        bool strict = true;
        for (int i = 0; i < n; ++i) {
            const double lhs = std::abs(t.diagonal(i + 1)) * std::pow(y(i), m - 1);
            strict = strict && strictly_greater(lhs, lhs - cert.residuals(i));
        }
        if (strict) {
            cert.scaling = y;
        } else {
            cert.note = "scaling vector failed strict re-verification; no certificate vector attached";
        }
    }
    return cert;
}

bool is_z_tensor(const DenseTensor& t) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        bool diag = false;
        for (int i = 0; i < t.dim() && !diag; ++i) diag = k == t.diagonal_offset(i);
        if (!diag && t.flat(k) > 0.0) return false;
    }
    return true;
}

MTensorResult is_m_tensor(const DenseTensor& t) {
    MTensorResult res;
    if (!is_z_tensor(t)) return res;
    const int n = t.dim();

    bool nonneg_diag = true;
    double s = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        nonneg_diag = nonneg_diag && t.diagonal(i) >= 0.0;
        s = std::max(s, t.diagonal(i));
    }
    if (nonneg_diag && is_weakly_chained_dd(t)) {
        res.certified = true;
        res.wcdd = true;
        res.method = MTensorMethod::WCDD;
    }
    if (s > 0.0) {
        // B = sI - A is nonnegative for a Z-tensor with s = max diagonal.
        DenseTensor b(t.order(), n);
        for (std::size_t k = 0; k < t.size(); ++k) b.set_flat(k, -t.flat(k));
        for (int i = 0; i < n; ++i) b.set_flat(b.diagonal_offset(i), s - t.diagonal(i + 1));
        const SpectralRadius rho = nqz_spectral_radius(b);
        res.shift = s;
        res.spectral_radius = rho.value;
        res.nqz = rho.converged && s > rho.value + 1e-9;
        if (res.nqz && !res.certified) {
            res.certified = true;
            res.method = MTensorMethod::NQZ;
        }
    }
    return res;
}

}  // namespace htensor
