#include "htensor/inclusion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace htensor {

namespace {

constexpr double kSlack = 1e-12;

// a <= b up to a relative slack; every region boundary is closed.
bool le(double a, double b) { return a <= b + kSlack * std::max({1.0, std::abs(a), std::abs(b)}); }
bool positive(double a) { return !le(a, 0.0); }

// Pair (a, b, bound) is excluded only when both brackets are positive and the
// product clears the bound.
bool pair_excluded(double a, double b, double bound) { return positive(a) && positive(b) && !le(a * b, bound); }

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

const char* to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::Gershgorin: return "gershgorin";
        case RegionKind::Cassini: return "cassini";
        case RegionKind::Ostrowski: return "ostrowski";
        case RegionKind::GammaMix: return "gamma-mix";
        case RegionKind::SType: return "s-type";
        case RegionKind::SSingleton: return "s-singleton";
    }
    return "?";
}

std::optional<RegionKind> parse_region_kind(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto k : {RegionKind::Gershgorin, RegionKind::Cassini, RegionKind::Ostrowski, RegionKind::GammaMix,
                   RegionKind::SType, RegionKind::SSingleton}) {
        if (lower == to_string(k)) return k;
    }
    return std::nullopt;
}

bool needs_gamma(RegionKind kind) { return kind == RegionKind::Ostrowski || kind == RegionKind::GammaMix; }

Region build_region(const DenseTensor& t, RegionKind kind, std::optional<double> gamma, std::vector<int> subset) {
    const int n = t.dim();
    Region reg;
    reg.kind = kind;

    if (needs_gamma(kind)) {
        if (!gamma) throw Error(Errc::GammaOutOfRange, std::string(to_string(kind)) + " needs gamma");
        if (!(*gamma >= 0.0 && *gamma <= 1.0)) {
            throw Error(Errc::GammaOutOfRange, "gamma " + std::to_string(*gamma) + " not in [0,1]");
        }
        reg.gamma = gamma;
    }
    if (kind == RegionKind::SType) {
        std::set<int> uniq;
        for (int i : subset) {
            if (i < 1 || i > n) throw Error(Errc::BadSubset, "subset index " + std::to_string(i) + " out of range");
            if (!uniq.insert(i).second) throw Error(Errc::BadSubset, "subset repeats " + std::to_string(i));
        }
        if (uniq.empty()) throw Error(Errc::BadSubset, "subset is empty");
        if (static_cast<int>(uniq.size()) == n) throw Error(Errc::BadSubset, "subset has empty complement");
        reg.subset.assign(uniq.begin(), uniq.end());
    } else if (!subset.empty()) {
        throw Error(Errc::BadSubset, std::string("subset does not apply to ") + to_string(kind));
    }
    if ((kind == RegionKind::Cassini || kind == RegionKind::SSingleton) && n < 2) {
        throw Error(Errc::InvalidShape, std::string(to_string(kind)) + " needs dim >= 2");
    }

    const GeneratedMatrix g = generated_matrix(t);
    reg.centers.resize(n);
    for (int i = 0; i < n; ++i) reg.centers(i) = t.diagonal(i + 1);
    reg.s = g.s;
    reg.s_diag = g.s.diagonal();
    reg.P = g.row_sums;
    reg.Q = g.col_sums;
    reg.r_in = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j : reg.subset) {
            if (j - 1 != i) reg.r_in(i) += g.s(i, j - 1);
        }
    }
    reg.r_out = reg.P - reg.r_in;
    return reg;
}

bool membership(const Region& reg, std::complex<double> z) {
    const int n = static_cast<int>(reg.centers.size());
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::abs(z - reg.centers(i)) - reg.s_diag(i);

    switch (reg.kind) {
        case RegionKind::Gershgorin:
            for (int i = 0; i < n; ++i) {
                if (le(f[i], reg.P(i))) return true;
            }
            return false;
        case RegionKind::Cassini:
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (!pair_excluded(f[i], f[j], reg.P(i) * reg.P(j))) return true;
                }
            }
            return false;
        case RegionKind::Ostrowski: {
            const double gm = *reg.gamma;
            for (int i = 0; i < n; ++i) {
                // 0^0 is taken as 1 so gamma in {0,1} reduces to Q or P exactly.
                const double p = gm == 0.0 ? 1.0 : std::pow(reg.P(i), gm);
                const double q = gm == 1.0 ? 1.0 : std::pow(reg.Q(i), 1.0 - gm);
                if (le(f[i], p * q)) return true;
            }
            return false;
        }
        case RegionKind::GammaMix: {
            const double gm = *reg.gamma;
            for (int i = 0; i < n; ++i) {
                if (le(f[i], gm * reg.P(i) + (1.0 - gm) * reg.Q(i))) return true;
            }
            return false;
        }
        case RegionKind::SType: {
            std::vector<bool> in(n, false);
            for (int i : reg.subset) in[i - 1] = true;
            for (int i = 0; i < n; ++i) {
                if (in[i] && le(f[i], reg.r_in(i))) return true;
            }
            for (int i = 0; i < n; ++i) {
                if (!in[i]) continue;
                for (int j = 0; j < n; ++j) {
                    if (in[j]) continue;
                    const double a = f[i] - reg.r_in(i);
                    const double b = f[j] - reg.r_out(j);
                    if (!pair_excluded(a, b, reg.r_out(i) * reg.r_in(j))) return true;
                }
            }
            return false;
        }
        case RegionKind::SSingleton:
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const double sji = reg.s(j, i);
                    if (!pair_excluded(f[i], f[j] - reg.P(j) + sji, reg.P(i) * sji)) return true;
                }
            }
            return false;
    }
    return false;
}

RealBounds real_bounds(const Region& reg) {
    const int n = static_cast<int>(reg.centers.size());
    // Every branch keeps |z - a_ii| <= s_ii + 2 max(P, Q), the pair products included.
    double reach = 0.0;
    for (int i = 0; i < n; ++i) reach = std::max(reach, reg.s_diag(i));
    const double spread = std::max(reg.P.maxCoeff(), reg.Q.maxCoeff());
    const double R = reach + 2.0 * spread + 1.0;
    const double lo = reg.centers.minCoeff() - R;
    const double hi = reg.centers.maxCoeff() + R;

    constexpr int steps = 4096;
    std::vector<double> xs;
    xs.reserve(steps + 1 + n);
    for (int k = 0; k <= steps; ++k) xs.push_back(lo + (hi - lo) * k / steps);
    for (int i = 0; i < n; ++i) xs.push_back(reg.centers(i));
    std::sort(xs.begin(), xs.end());

    auto member = [&](double x) { return membership(reg, {x, 0.0}); };
    std::size_t first = xs.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (member(xs[k])) {
            first = std::min(first, k);
            last = k;
        }
    }
    if (first == xs.size()) throw Error(Errc::EmptyRegion, std::string(to_string(reg.kind)) + " has no real member");

    // Bisect between an outside point and an inside point; return the inside end.
    auto refine = [&](double out, double in) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (out + in);
            (member(mid) ? in : out) = mid;
        }
        return std::pair{in, std::abs(in - out)};
    };

    RealBounds b;
    auto [lower, tl] = first == 0 ? std::pair{xs[0], 0.0} : refine(xs[first - 1], xs[first]);
    auto [upper, tu] = last + 1 == xs.size() ? std::pair{xs.back(), 0.0} : refine(xs[last + 1], xs[last]);
    b.lower = lower;
    b.upper = upper;
    b.tolerance = std::max(tl, tu);
    return b;
}

std::vector<GridSample> grid_sample(const Region& reg, const GridSpec& grid) {
    if (grid.nx < 2 || grid.ny < 2) throw Error(Errc::BadGrid, "grid needs nx, ny >= 2");
    if (!std::isfinite(grid.re0) || !std::isfinite(grid.re1) || !std::isfinite(grid.im0) || !std::isfinite(grid.im1)) {
        throw Error(Errc::BadGrid, "grid ranges must be finite");
    }
    std::vector<GridSample> out;
    out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double im = grid.im0 + (grid.im1 - grid.im0) * iy / (grid.ny - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double re = grid.re0 + (grid.re1 - grid.re0) * ix / (grid.nx - 1);
            out.push_back({re, im, membership(reg, {re, im})});
        }
    }
    return out;
}

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples) {
    os << "re,im,member\n";
    char buf[96];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%d\n", s.re, s.im, s.member ? 1 : 0);
        os << buf;
    }
}

void write_bounds_header(std::ostream& os) { os << "kind,gamma,subset,lower,upper\n"; }

void write_bounds_row(std::ostream& os, const Region& reg, const RealBounds& b) {
    os << to_string(reg.kind) << ',';
    if (reg.gamma) os << fmt6(*reg.gamma);
    os << ',';
    for (std::size_t k = 0; k < reg.subset.size(); ++k) os << (k ? ";" : "") << reg.subset[k];
    os << ',' << fmt6(b.lower) << ',' << fmt6(b.upper) << '\n';
}

}  // namespace htensor
