#include "htensor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>

namespace htensor {

const char* to_string(Errc code) {
    switch (code) {
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateEntry: return "DuplicateEntry";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::GammaOutOfRange: return "GammaOutOfRange";
    case Errc::ComplexDiagonal: return "ComplexDiagonal";
    case Errc::BadSubset: return "BadSubset";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::BadGrid: return "BadGrid";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::BadIndex: return "BadIndex";
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::TraceNotOne: return "TraceNotOne";
    case Errc::BadAngle: return "BadAngle";
    case Errc::WeightMismatch: return "WeightMismatch";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

void require_row(const DenseTensor& t, int i) {
    if (i < 1 || i > t.dim()) {
        throw Error(Errc::IndexOutOfRange,
                    "row index " + std::to_string(i) + " outside 1.." + std::to_string(t.dim()));
    }
}

void require_length(const DenseTensor& t, const Vector& x) {
    if (x.size() != t.dim()) {
        throw Error(Errc::DimensionMismatch, "vector has length " + std::to_string(x.size()) +
                                                 ", tensor dimension is " + std::to_string(t.dim()));
    }
}

// Visits every entry of the tensor with its 0-based tuple, in row-major order.
template <typename F>
void for_each_entry(const DenseTensor& t, F&& f) {
    const int m = t.order();
    const int n = t.dim();
    std::vector<int> idx(m, 0);
    for (std::size_t k = 0; k < t.size(); ++k) {
        f(k, std::span<const int>(idx));
        for (int p = m - 1; p >= 0; --p) {
            if (++idx[p] < n) break;
            idx[p] = 0;
        }
    }
}

bool is_diagonal_tuple(std::span<const int> idx) {
    return std::all_of(idx.begin(), idx.end(), [&](int v) { return v == idx[0]; });
}

}  // namespace

DenseTensor::DenseTensor(int order, int dim) : order_(order), dim_(dim), row_stride_(1), diag_step_(0) {
    if (order < 2) throw Error(Errc::InvalidShape, "order must be at least 2, got " + std::to_string(order));
    if (dim < 1) throw Error(Errc::InvalidShape, "dimension must be at least 1, got " + std::to_string(dim));
    std::size_t total = 1;
    for (int k = 0; k < order; ++k) {
        total *= static_cast<std::size_t>(dim);
        if (total > kMaxEntries) throw Error(Errc::InvalidShape, "tensor has more than 2^26 entries");
    }
    row_stride_ = total / static_cast<std::size_t>(dim);
    // offset of (i,...,i) is i * (n^{m-1} + n^{m-2} + ... + 1)
    std::size_t step = 0;
    std::size_t power = 1;
    for (int k = 0; k < order; ++k) {
        step += power;
        power *= static_cast<std::size_t>(dim);
    }
    diag_step_ = step;
    data_.assign(total, 0.0);
}

std::size_t DenseTensor::offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != order_) {
        throw Error(Errc::IndexOutOfRange, "index tuple has " + std::to_string(idx.size()) +
                                               " components, tensor order is " + std::to_string(order_));
    }
    std::size_t k = 0;
    for (int v : idx) {
        if (v < 1 || v > dim_) {
            throw Error(Errc::IndexOutOfRange,
                        "index component " + std::to_string(v) + " outside 1.." + std::to_string(dim_));
        }
        k = k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v - 1);
    }
    return k;
}

void DenseTensor::unravel(std::size_t k, std::span<int> idx) const {
    for (int p = order_ - 1; p >= 0; --p) {
        idx[p] = static_cast<int>(k % static_cast<std::size_t>(dim_));
        k /= static_cast<std::size_t>(dim_);
    }
}

void DenseTensor::set(std::span<const int> idx, double value) { set_flat(offset(idx), value); }

void DenseTensor::set_flat(std::size_t k, double value) {
    if (!std::isfinite(value)) throw Error(Errc::NonFiniteValue, "tensor entries must be finite");
    data_.at(k) = value;
}

double DenseTensor::diagonal(int i) const {
    if (i < 1 || i > dim_) throw Error(Errc::IndexOutOfRange, "diagonal index " + std::to_string(i));
    return data_[diagonal_offset(i - 1)];
}

DenseTensor unit_tensor(int order, int dim) {
    DenseTensor t(order, dim);
    for (int i = 0; i < dim; ++i) t.set_flat(t.diagonal_offset(i), 1.0);
    return t;
}

DenseTensor build_tensor(int order, int dim, std::span<const Entry> entries) {
    DenseTensor t(order, dim);
    std::unordered_set<std::size_t> seen;
    for (const Entry& e : entries) {
        const std::size_t k = t.offset(e.idx);
        if (!seen.insert(k).second) {
            std::string tuple;
            for (int v : e.idx) tuple += (tuple.empty() ? "" : ",") + std::to_string(v);
            throw Error(Errc::DuplicateEntry, "tuple (" + tuple + ") listed twice");
        }
        t.set_flat(k, e.value);
    }
    return t;
}

Matrix s_matrix(const DenseTensor& t) {
    const int n = t.dim();
    const int m = t.order();
    // Accumulate the raw position counts first and divide once, so integer
    // inputs with sums divisible by m-1 come out exact.
    Matrix raw = Matrix::Zero(n, n);
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        const double a = std::abs(t.flat(k));
        if (a == 0.0 || is_diagonal_tuple(idx)) return;
        for (int p = 1; p < m; ++p) raw(idx[0], idx[p]) += a;
    });
    return raw / static_cast<double>(m - 1);
}

double s_stat(const DenseTensor& t, int i, int j) {
    require_row(t, i);
    require_row(t, j);
    const int m = t.order();
    const std::size_t base = static_cast<std::size_t>(i - 1) * t.row_stride();
    const std::size_t diag = t.diagonal_offset(i - 1);
    std::vector<int> idx(m);
    double raw = 0.0;
    for (std::size_t k = base; k < base + t.row_stride(); ++k) {
        if (k == diag) continue;
        const double a = std::abs(t.flat(k));
        if (a == 0.0) continue;
        t.unravel(k, idx);
        for (int p = 1; p < m; ++p) {
            if (idx[p] == j - 1) raw += a;
        }
    }
    return raw / static_cast<double>(m - 1);
}

double row_sum(const DenseTensor& t, int i) {
    require_row(t, i);
    const std::size_t base = static_cast<std::size_t>(i - 1) * t.row_stride();
    const std::size_t diag = t.diagonal_offset(i - 1);
    double r = 0.0;
    for (std::size_t k = base; k < base + t.row_stride(); ++k) {
        if (k != diag) r += std::abs(t.flat(k));
    }
    return r;
}

RowStats row_stats(const DenseTensor& t, int i) {
    require_row(t, i);
    RowStats rs;
    rs.i = i;
    rs.s_row = Vector(t.dim());
    for (int j = 1; j <= t.dim(); ++j) rs.s_row(j - 1) = s_stat(t, i, j);
    rs.r = row_sum(t, i);
    rs.P = rs.s_row.sum() - rs.s_row(i - 1);
    rs.diag_abs = std::abs(t.diagonal(i));
    return rs;
}

GeneratedMatrix generated_matrix(const DenseTensor& t) {
    const int n = t.dim();
    GeneratedMatrix g;
    g.dim = n;
    g.s = s_matrix(t);
    g.data = g.s;
    g.diag_abs = Vector(n);
    g.r = Vector(n);
    for (int i = 0; i < n; ++i) {
        g.diag_abs(i) = std::abs(t.flat(t.diagonal_offset(i)));
        g.data(i, i) = g.diag_abs(i) - g.s(i, i);
        g.r(i) = row_sum(t, i + 1);
    }
    g.row_sums = Vector::Zero(n);
    g.col_sums = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            g.row_sums(i) += g.data(i, j);
            g.col_sums(j) += g.data(i, j);
        }
    }
    return g;
}

Matrix representation_matrix(const DenseTensor& t) {
    const int n = t.dim();
    const int m = t.order();
    Matrix R = Matrix::Zero(n, n);
    std::vector<char> present(n);
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        const double a = std::abs(t.flat(k));
        if (a == 0.0) return;
        std::fill(present.begin(), present.end(), 0);
        for (int p = 1; p < m; ++p) present[idx[p]] = 1;
        for (int j = 0; j < n; ++j) {
            if (present[j]) R(idx[0], j) += a;
        }
    });
    return R;
}

const char* to_string(Symmetry s) {
    switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::StronglySymmetric: return "strongly_symmetric";
    }
    return "none";
}

Symmetry classify_symmetry(const DenseTensor& t) {
    const int m = t.order();
    const bool integral = std::all_of(t.data().begin(), t.data().end(),
                                      [](double v) { return v == std::nearbyint(v); });
    const double tol = integral ? 0.0 : 1e-12;
    auto same = [tol](double a, double b) { return std::abs(a - b) <= tol; };

    bool symmetric = true;
    std::vector<int> sorted(m);
    std::vector<int> one_based(m);
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        if (!symmetric) return;
        std::copy(idx.begin(), idx.end(), sorted.begin());
        std::sort(sorted.begin(), sorted.end());
        for (int p = 0; p < m; ++p) one_based[p] = sorted[p] + 1;
        if (!same(t.flat(k), t(one_based))) symmetric = false;
    });
    if (!symmetric) return Symmetry::None;

    // Similarity classes keyed by the sorted set of distinct indices.
    std::map<std::vector<int>, double> representative;
    bool strong = true;
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        if (!strong) return;
        std::vector<int> key(idx.begin(), idx.end());
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        auto [it, inserted] = representative.emplace(std::move(key), t.flat(k));
        if (!inserted && !same(it->second, t.flat(k))) strong = false;
    });
    return strong ? Symmetry::StronglySymmetric : Symmetry::Symmetric;
}

Vector contract(const DenseTensor& t, const Vector& x) {
    require_length(t, x);
    const std::size_t n = static_cast<std::size_t>(t.dim());
    // Contract the trailing index repeatedly: n^m -> n^{m-1} -> ... -> n.
    std::vector<double> cur(t.data().begin(), t.data().end());
    while (cur.size() > n) {
        std::vector<double> next(cur.size() / n, 0.0);
        for (std::size_t r = 0; r < next.size(); ++r) {
            double acc = 0.0;
            const double* row = cur.data() + r * n;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x(static_cast<Eigen::Index>(j));
            next[r] = acc;
        }
        cur.swap(next);
    }
    return Eigen::Map<const Vector>(cur.data(), static_cast<Eigen::Index>(n));
}

Matrix contract_jacobian(const DenseTensor& t, const Vector& x) {
    require_length(t, x);
    const int n = t.dim();
    const int m = t.order();
    Matrix J = Matrix::Zero(n, n);
    std::vector<double> prefix(m), suffix(m);
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        const double a = t.flat(k);
        if (a == 0.0) return;
        // prefix[p] = x_{i2}..x_{i_{p-1}}, suffix[p] = x_{i_{p+1}}..x_{im}
        prefix[1] = 1.0;
        for (int p = 2; p < m; ++p) prefix[p] = prefix[p - 1] * x(idx[p - 1]);
        suffix[m - 1] = 1.0;
        for (int p = m - 2; p >= 1; --p) suffix[p] = suffix[p + 1] * x(idx[p + 1]);
        for (int p = 1; p < m; ++p) J(idx[0], idx[p]) += a * prefix[p] * suffix[p];
    });
    return J;
}

double poly_value(const DenseTensor& t, const Vector& x) { return x.dot(contract(t, x)); }

DenseTensor scale_tensor(const DenseTensor& t, const Vector& d) {
    require_length(t, d);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!(d(i) > 0.0)) throw Error(Errc::NonPositiveScale, "scaling vector entries must be positive");
    }
    DenseTensor out(t.order(), t.dim());
    for_each_entry(t, [&](std::size_t k, std::span<const int> idx) {
        double w = t.flat(k);
        if (w == 0.0) return;
        for (std::size_t p = 1; p < idx.size(); ++p) w *= d(idx[p]);
        out.set_flat(k, w);
    });
    return out;
}

DenseTensor abs_tensor(const DenseTensor& t) {
    DenseTensor out(t.order(), t.dim());
    for (std::size_t k = 0; k < t.size(); ++k) out.set_flat(k, std::abs(t.flat(k)));
    return out;
}

}  // namespace htensor
