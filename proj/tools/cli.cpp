#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htensor/dominance.hpp"
#include "htensor/inclusion.hpp"
#include "htensor/io.hpp"
#include "htensor/oracle.hpp"
#include "htensor/spin.hpp"

namespace htensor::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    // keep "-0.000000" out of golden output
    if (std::string(buf) == "-0.000000") return "0.000000";
    return buf;
}

std::string e6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string join(const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + f6(v(i));
    return s;
}

void print_matrix(std::ostream& os, const Matrix& M) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) os << join(M.row(r).transpose()) << '\n';
}

std::vector<int> parse_subset(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw UsageError("--subset expects a comma list of integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError("--subset is empty");
    return out;
}

GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 6) throw UsageError("--grid expects re0:re1:im0:im1:nx:ny");
    GridSpec g;
    try {
        g.re0 = std::stod(parts[0]);
        g.re1 = std::stod(parts[1]);
        g.im0 = std::stod(parts[2]);
        g.im1 = std::stod(parts[3]);
        g.nx = std::stoi(parts[4]);
        g.ny = std::stoi(parts[5]);
    } catch (const std::logic_error&) {
        throw UsageError("--grid has a non-numeric field: '" + text + "'");
    }
    return g;
}

RegionKind parse_kind(const std::string& name) {
    if (auto k = parse_region_kind(name)) return *k;
    throw UsageError("unknown region kind '" + name + "'");
}

struct Options {
    std::string input;
    std::string output;
    std::vector<std::string> kinds;
    std::vector<double> gammas;
    std::string subset;
    std::string grid;
    int starts = 2000;
    std::uint64_t seed = 1;
    std::string method = "auto";
    int psd_samples = 0;
};

int cmd_gen_matrix(const Options& o, std::ostream& os) {
    const DenseTensor t = load_tensor(o.input);
    const GeneratedMatrix g = generated_matrix(t);
    os << "generated_matrix\n";
    print_matrix(os, g.data);
    os << "s_matrix\n";
    print_matrix(os, g.s);
    os << "row,diag_abs,s_ii,P,Q,r\n";
    for (int i = 0; i < g.dim; ++i) {
        os << i + 1 << ',' << f6(g.diag_abs(i)) << ',' << f6(g.s(i, i)) << ',' << f6(g.row_sums(i)) << ','
           << f6(g.col_sums(i)) << ',' << f6(g.r(i)) << '\n';
    }
    return kOk;
}

int cmd_certify(const Options& o, std::ostream& os) {
    const DenseTensor t = load_tensor(o.input);
    const Certificate c = certify_h_tensor(t);
    os << "verdict: " << to_string(c.verdict) << '\n';
    os << "rule: " << to_string(c.rule) << '\n';
    if (c.gamma) os << "gamma: " << f6(*c.gamma) << '\n';
    if (c.scaling) {
        os << "scaling: " << join(*c.scaling) << '\n';
        os << "residuals: " << join(c.residuals) << '\n';
    }
    if (!c.offending_rows.empty()) {
        os << "offending_rows:";
        for (int r : c.offending_rows) os << ' ' << r;
        os << '\n';
    }
    if (!c.note.empty()) os << "note: " << c.note << '\n';
    const MTensorResult mt = is_m_tensor(t);
    os << "z_tensor: " << (is_z_tensor(t) ? "yes" : "no") << '\n';
    os << "m_tensor: " << (mt.certified ? "certified" : "not_certified");
    if (mt.certified) os << " (" << to_string(mt.method) << ")";
    os << '\n';
    if (c.verdict != Verdict::CertifiedH) {
        os << "no conclusion: failing every sufficient test does not show the tensor is not an H-tensor\n";
        return kInconclusive;
    }
    return kOk;
}

int cmd_bounds(const Options& o, std::ostream& os, std::ostream& err) {
    const DenseTensor t = load_tensor(o.input);
    const bool explicit_kinds = !o.kinds.empty();
    std::vector<RegionKind> kinds;
    if (explicit_kinds) {
        for (const auto& k : o.kinds) kinds.push_back(parse_kind(k));
    } else {
        kinds = {RegionKind::Gershgorin, RegionKind::Cassini, RegionKind::Ostrowski,
                 RegionKind::GammaMix,   RegionKind::SType,   RegionKind::SSingleton};
    }
    const std::vector<double> gammas = o.gammas.empty() ? std::vector<double>{0.5, 0.04} : o.gammas;
    const std::vector<int> subset = o.subset.empty() ? std::vector<int>{1, 2} : parse_subset(o.subset);

    write_bounds_header(os);
    for (RegionKind kind : kinds) {
        std::vector<std::optional<double>> gs{std::nullopt};
        if (needs_gamma(kind)) gs.assign(gammas.begin(), gammas.end());
        for (const auto& gm : gs) {
            try {
                const Region reg = build_region(t, kind, gm, kind == RegionKind::SType ? subset : std::vector<int>{});
                write_bounds_row(os, reg, real_bounds(reg));
            } catch (const Error& e) {
                if (explicit_kinds) throw;
                err << "skipped " << to_string(kind) << ": " << e.what() << '\n';
            }
        }
    }
    return kOk;
}

int cmd_oracle(const Options& o, std::ostream& os) {
    const DenseTensor t = load_tensor(o.input);
    std::string method = o.method;
    if (method == "auto") method = t.dim() == 2 ? "exact" : "newton";
    std::vector<EigenPair> pairs;
    if (method == "exact") {
        pairs = h_eigen_exact_2d(t);
    } else if (method == "newton") {
        pairs = h_eigen_newton(t, o.starts, o.seed);
    } else {
        throw UsageError("--method must be auto, exact or newton");
    }
    os << "lambda,residual\n";
    for (const auto& p : pairs) os << f6(p.lambda) << ',' << e6(p.residual) << '\n';
    return kOk;
}

int cmd_region_grid(const Options& o, std::ostream& os) {
    if (o.kinds.size() != 1) throw UsageError("region-grid needs exactly one --kind");
    if (o.gammas.size() > 1) throw UsageError("region-grid takes at most one --gamma");
    if (o.grid.empty()) throw UsageError("region-grid needs --grid");
    const GridSpec grid = parse_grid(o.grid);
    if (grid.nx < 2 || grid.ny < 2) throw UsageError("--grid needs nx >= 2 and ny >= 2");
    const RegionKind kind = parse_kind(o.kinds[0]);
    const DenseTensor t = load_tensor(o.input);
    std::optional<double> gm;
    if (!o.gammas.empty()) gm = o.gammas[0];
    const Region reg =
        build_region(t, kind, gm, kind == RegionKind::SType ? parse_subset(o.subset.empty() ? "1,2" : o.subset)
                                                            : std::vector<int>{});
    write_grid_csv(os, grid_sample(reg, grid));
    return kOk;
}

int cmd_spin_certify(const Options& o, std::ostream& os) {
    const SpinState state = load_spin_input(o.input);
    const ClassicalityVerdict v = certify_classicality(state);
    os << "m: " << state.m << '\n';
    os << "verdict: " << (v.certified ? "certified_classical" : "inconclusive") << '\n';
    if (!v.rules.empty()) {
        os << "rules:";
        for (auto r : v.rules) os << ' ' << to_string(r);
        os << '\n';
    }
    os << "reason: " << v.reason << '\n';
    if (v.coeffs) {
        os << "diagonals:";
        for (int k = 1; k <= 4; ++k) os << ' ' << f6(v.coeffs->diagonal(k));
        os << '\n';
        os << "symmetry: " << to_string(v.symmetry) << '\n';
        os << "generated_matrix\n";
        print_matrix(os, v.generated->data);
    }
    if (v.certified && o.psd_samples > 0) {
        const double low = min_sampled_form(*v.coeffs, o.psd_samples, o.seed);
        os << "psd_min_sampled: " << e6(low) << (low >= -1e-9 ? " ok" : " VIOLATED") << '\n';
    }
    if (!v.certified) {
        os << "no conclusion: the test is sufficient only; this does not show the state is nonclassical\n";
        return kInconclusive;
    }
    return kOk;
}

int cmd_spin_roundtrip(const Options& o, std::ostream& os) {
    const SpinState state = load_spin_input(o.input);
    const DenseTensor A = coefficient_tensor(state);
    const ComplexMatrix back = reconstruct_density(A);
    const double error = (back - state.rho).cwiseAbs().maxCoeff();
    std::vector<int> zero(state.m, 1);
    os << "m: " << state.m << '\n';
    os << "a_0..0: " << f6(A(zero)) << '\n';
    os << "symmetry: " << to_string(classify_symmetry(A)) << '\n';
    os << "max_abs_error: " << e6(error) << '\n';
    return error <= 1e-10 ? kOk : kInconclusive;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"H-tensor certificates, eigenvalue inclusion regions and spin classicality"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input,-i", o.input, "tensor or state JSON")->required();
        sub->add_option("--output,-o", o.output, "write to this file instead of stdout");
    };

    auto* gen = app.add_subcommand("gen-matrix", "print the generated matrix and row statistics");
    add_input(gen);
    auto* cert = app.add_subcommand("certify", "run the H-tensor certification cascade");
    add_input(cert);
    auto* bounds = app.add_subcommand("bounds", "real lower/upper bounds of inclusion regions");
    add_input(bounds);
    bounds->add_option("--kind", o.kinds, "region kind (repeatable)");
    bounds->add_option("--gamma", o.gammas, "gamma values (repeatable)");
    bounds->add_option("--subset", o.subset, "S-type index set, comma list");
    auto* oracle = app.add_subcommand("oracle", "brute-force H-eigenvalues, CSV lambda,residual");
    add_input(oracle);
    oracle->add_option("--starts", o.starts, "Newton starts")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", o.seed, "random seed");
    oracle->add_option("--method", o.method, "auto, exact or newton");
    auto* grid = app.add_subcommand("region-grid", "sample region membership on a grid, CSV re,im,member");
    add_input(grid);
    grid->add_option("--kind", o.kinds, "region kind");
    grid->add_option("--gamma", o.gammas, "gamma");
    grid->add_option("--subset", o.subset, "S-type index set, comma list");
    grid->add_option("--grid", o.grid, "re0:re1:im0:im1:nx:ny");
    auto* spin = app.add_subcommand("spin-certify", "classicality certificate for a spin state or mixture");
    add_input(spin);
    spin->add_option("--psd-samples", o.psd_samples, "Monte-Carlo check of certified states");
    spin->add_option("--seed", o.seed, "random seed");
    auto* round = app.add_subcommand("spin-roundtrip", "coefficient tensor and reconstruction error");
    add_input(round);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    std::ostringstream buffer;
    int code = kOk;
    try {
        if (*gen) code = cmd_gen_matrix(o, buffer);
        else if (*cert) code = cmd_certify(o, buffer);
        else if (*bounds) code = cmd_bounds(o, buffer, err);
        else if (*oracle) code = cmd_oracle(o, buffer);
        else if (*grid) code = cmd_region_grid(o, buffer);
        else if (*spin) code = cmd_spin_certify(o, buffer);
        else if (*round) code = cmd_spin_roundtrip(o, buffer);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case Errc::BadGrid:
            case Errc::GammaOutOfRange:
            case Errc::BadSubset: return kUsage;
            default: return kDataError;
        }
    }

    if (o.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!(file << buffer.str())) {
            err << "error: cannot write " << o.output << '\n';
            return kDataError;
        }
    }
    return code;
}

}  // namespace htensor::cli
