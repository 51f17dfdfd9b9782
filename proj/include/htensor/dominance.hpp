#pragma once

// Diagonal-dominance and H-matrix tests on generated matrices, graph tests
// (irreducibility, weak chains) and the H-tensor / M-tensor certification
// pipeline. Every positive answer is a sufficient condition; a negative answer
// never proves the tensor is not an H-tensor.

#include <optional>
#include <string>
#include <vector>

#include "htensor/tensor.hpp"

namespace htensor {

enum class DominanceKind {
    SDD,
    DD,
    DoublySDD,
    GammaSDD,
    ProductGammaSDD,
    GeneralizedH,
    IrreducibleDD,
    WeaklyChainedDD,
    None,
};

const char* to_string(DominanceKind kind);

struct DominanceReport {
    DominanceKind kind = DominanceKind::None;
    std::vector<int> strict_rows;  // J, 1-based
    std::optional<double> gamma;
};

/// |m_ii| on the diagonal, -|m_ij| off it.
Matrix comparison_matrix(const Matrix& M);

/// Deleted row sums P_i of |M|.
Vector deleted_row_sums(const Matrix& M);
/// Deleted column sums Q_i of |M|.
Vector deleted_col_sums(const Matrix& M);

/// Tests one dominance class. For GammaSDD / ProductGammaSDD a missing gamma
/// triggers the feasibility search. Kinds other than SDD, DD, DoublySDD,
/// GammaSDD and ProductGammaSDD are not matrix row tests and report None.
DominanceReport check_dominance(const Matrix& M, DominanceKind kind, std::optional<double> gamma = std::nullopt);

/// Feasible gamma in [0,1] for the (product) gamma-dominance class, or nullopt.
std::optional<double> find_gamma(const Matrix& M, bool product);

struct HMatrixResult {
    bool is_h = false;
    std::optional<Vector> scaling;  // x > 0 with <M> x = 1
    double jacobi_radius = 0.0;
    std::string diagnostic;
};

HMatrixResult is_h_matrix(const Matrix& M);

/// Strongly connected components of the digraph i -> j (i != j, M_ij != 0),
/// 0-based vertex lists.
std::vector<std::vector<int>> strongly_connected_components(const Matrix& M);

bool is_irreducible(const Matrix& M);
bool is_weakly_irreducible(const DenseTensor& t);

/// DD iff |a_{i..i}| >= r_i for every row; strict_rows is J(A).
DominanceReport tensor_dd(const DenseTensor& t);
bool is_weakly_chained_dd(const DenseTensor& t);

enum class Verdict { CertifiedH, NotCertified };

const char* to_string(Verdict v);

struct Certificate {
    Verdict verdict = Verdict::NotCertified;
    DominanceKind rule = DominanceKind::None;
    std::optional<double> gamma;
    std::optional<Vector> scaling;  // y > 0 for the weighted row inequality
    Vector residuals;               // |a_{i..i}| y_i^{m-1} - sum |a_{i i2..im}| y_{i2}..y_{im}
    std::vector<int> offending_rows;  // rows with |a_{i..i}| <= s_ii (1-based)
    std::string note;
};

/// Per-row slack of the weighted dominance inequality for scaling y.
Vector h_tensor_residuals(const DenseTensor& t, const Vector& y);

Certificate certify_h_tensor(const DenseTensor& t);

bool is_z_tensor(const DenseTensor& t);

enum class MTensorMethod { None, WCDD, NQZ };

const char* to_string(MTensorMethod m);

struct MTensorResult {
    bool certified = false;
    MTensorMethod method = MTensorMethod::None;  // first criterion that holds, WCDD before NQZ
    bool wcdd = false;
    bool nqz = false;
    std::optional<double> shift;            // s = max diagonal
    std::optional<double> spectral_radius;  // rho(sI - A) when computed
};

MTensorResult is_m_tensor(const DenseTensor& t);

}  // namespace htensor
