#pragma once

// Dense order-m, dimension-n real tensors and the statistics that map a tensor
// onto its n x n generated matrix.
//
// Index convention: every function that takes a row/column index or an index
// tuple uses 1-based indices in 1..n. Returned Eigen matrices and vectors are
// ordinary 0-based containers (row i of the tensor is row i-1 of the matrix).

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "htensor/error.hpp"

namespace htensor {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = std::vector<int>;

struct Entry {
    Index idx;  // 1-based
    double value = 0.0;
};

class DenseTensor {
public:
    /// Zero tensor of the given shape. Requires order >= 2 and dim >= 1.
    DenseTensor(int order, int dim);

    int order() const noexcept { return order_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return data_.size(); }

    /// Entry at a 1-based index tuple.
    double operator()(std::span<const int> idx) const { return data_[offset(idx)]; }
    double operator()(std::initializer_list<int> idx) const {
        return (*this)(std::span<const int>(idx.begin(), idx.size()));
    }
    void set(std::span<const int> idx, double value);

    /// a_{i...i} for 1-based i.
    double diagonal(int i) const;

    std::span<const double> data() const noexcept { return data_; }
    double flat(std::size_t k) const { return data_[k]; }
    void set_flat(std::size_t k, double value);

    /// Row-major flat offset of a 1-based tuple; throws IndexOutOfRange.
    std::size_t offset(std::span<const int> idx) const;
    /// Fills `idx` (length order) with the 0-based tuple at flat offset k.
    void unravel(std::size_t k, std::span<int> idx) const;
    /// Number of entries in one row block a_{i,*,...,*}, i.e. n^(m-1).
    std::size_t row_stride() const noexcept { return row_stride_; }
    /// Flat offset of the diagonal entry of 0-based row i.
    std::size_t diagonal_offset(int i0) const noexcept { return static_cast<std::size_t>(i0) * diag_step_; }

    bool operator==(const DenseTensor& other) const = default;

private:
    int order_;
    int dim_;
    std::size_t row_stride_;
    std::size_t diag_step_;
    std::vector<double> data_;
};

/// The unit tensor: ones on the diagonal, zeros elsewhere.
DenseTensor unit_tensor(int order, int dim);

/// Dense tensor from a sparse entry list. Unlisted entries are zero.
DenseTensor build_tensor(int order, int dim, std::span<const Entry> entries);

/// s_ij: position-weighted absolute mass of row i landing on index j,
/// divided by m-1. The diagonal tuple (i,...,i) never contributes.
double s_stat(const DenseTensor& t, int i, int j);

/// n x n matrix of all s_ij (0-based container).
Matrix s_matrix(const DenseTensor& t);

/// r_i: absolute mass of every non-diagonal entry in row i.
double row_sum(const DenseTensor& t, int i);

struct RowStats {
    int i = 0;  // 1-based
    Vector s_row;
    double r = 0.0;
    double P = 0.0;
    double diag_abs = 0.0;
};

RowStats row_stats(const DenseTensor& t, int i);

struct GeneratedMatrix {
    int dim = 0;
    Matrix data;      // |a_{i..i}| - s_ii on the diagonal, s_ij off it
    Vector col_sums;  // Q_i: deleted column sums of data
    Matrix s;         // the full s_ij matrix, diagonal included
    Vector row_sums;  // P_i: deleted row sums of data
    Vector r;         // r_i of the tensor
    Vector diag_abs;  // |a_{i..i}|
};

GeneratedMatrix generated_matrix(const DenseTensor& t);

/// R(|A|)_ij: absolute mass of row-i tuples whose trailing indices contain j.
Matrix representation_matrix(const DenseTensor& t);

enum class Symmetry { None, Symmetric, StronglySymmetric };

const char* to_string(Symmetry s);

/// Strong symmetry means entries are constant on each class of tuples sharing
/// the same set of distinct indices. Integer-valued tensors are compared
/// exactly, everything else with a 1e-12 absolute tolerance.
Symmetry classify_symmetry(const DenseTensor& t);

/// (A x^{m-1})_i = sum a_{i i2..im} x_{i2} ... x_{im}.
Vector contract(const DenseTensor& t, const Vector& x);

/// Jacobian of x -> A x^{m-1}.
Matrix contract_jacobian(const DenseTensor& t, const Vector& x);

/// A x^m.
double poly_value(const DenseTensor& t, const Vector& x);

/// b_{i1..im} = a_{i1..im} d_{i2} ... d_{im}.
DenseTensor scale_tensor(const DenseTensor& t, const Vector& d);

/// Elementwise |a|.
DenseTensor abs_tensor(const DenseTensor& t);

}  // namespace htensor
