#pragma once

// H-eigenvalue inclusion regions built from the generated-matrix statistics.
// Each region is a closed subset of the complex plane given by a membership
// predicate; bounds on the real axis are found by scanning and bisection.

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "htensor/tensor.hpp"

namespace htensor {

enum class RegionKind { Gershgorin, Cassini, Ostrowski, GammaMix, SType, SSingleton };

const char* to_string(RegionKind kind);
/// Accepts the to_string spelling, case-insensitive.
std::optional<RegionKind> parse_region_kind(std::string_view name);

bool needs_gamma(RegionKind kind);

struct Region {
    RegionKind kind = RegionKind::Gershgorin;
    std::optional<double> gamma;
    std::vector<int> subset;  // sorted, 1-based; SType only
    Vector centers;
    Vector s_diag;
    Vector P;
    Vector Q;
    Matrix s;
    // Split of P over the subset: r_in[i] sums s_ij over j in S, r_out over j outside.
    Vector r_in;
    Vector r_out;
};

/// gamma is required for Ostrowski and GammaMix and must lie in [0,1]; subset
/// is required for SType and must be nonempty and proper. Pair-based kinds
/// need dim >= 2.
Region build_region(const DenseTensor& t, RegionKind kind, std::optional<double> gamma = std::nullopt,
                    std::vector<int> subset = {});

bool membership(const Region& reg, std::complex<double> z);

struct RealBounds {
    double lower = 0.0;
    double upper = 0.0;
    double tolerance = 0.0;
};

RealBounds real_bounds(const Region& reg);

struct GridSpec {
    double re0 = 0.0, re1 = 0.0;
    double im0 = 0.0, im1 = 0.0;
    int nx = 0, ny = 0;
};

struct GridSample {
    double re = 0.0;
    double im = 0.0;
    bool member = false;
};

/// Row-major over im (outer) then re (inner), endpoints included.
std::vector<GridSample> grid_sample(const Region& reg, const GridSpec& grid);

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples);

/// "kind,gamma,subset,lower,upper" header and rows; subset joined with ';'.
void write_bounds_header(std::ostream& os);
void write_bounds_row(std::ostream& os, const Region& reg, const RealBounds& b);

}  // namespace htensor
