#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "htensor/inclusion.hpp"

using namespace htensor;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return Errc::ParseError;
}

RealBounds bounds_of(const DenseTensor& t, RegionKind k, std::optional<double> g = std::nullopt,
                     std::vector<int> s = {}) {
    return real_bounds(build_region(t, k, g, std::move(s)));
}

}  // namespace

TEST(BuildRegion, Example2Statistics) {
    const Region reg = build_region(fixtures::example2(), RegionKind::Gershgorin);
    EXPECT_EQ(reg.centers, (Vector(4) << 10, 8, 7, 5).finished());
    const Vector radii = reg.s_diag + reg.P;
    const Vector expect = (Vector(4) << 11, 7, 5, 4).finished();
    EXPECT_LE((radii - expect).cwiseAbs().maxCoeff(), 1e-12);
    const Vector Q = (Vector(4) << 16.0 / 3, 17.0 / 3, 19.0 / 3, 5).finished();
    EXPECT_LE((reg.Q - Q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildRegion, SubsetSplit) {
    const Region reg = build_region(fixtures::example2(), RegionKind::SType, std::nullopt, {2, 1});
    EXPECT_EQ(reg.subset, (std::vector<int>{1, 2}));
    // row 1: s_12 = 8/3 inside, s_13 + s_14 = 3 + 8/3 outside
    EXPECT_NEAR(reg.r_in(0), 8.0 / 3, 1e-12);
    EXPECT_NEAR(reg.r_out(0), 17.0 / 3, 1e-12);
    // row 3: s_31 + s_32 inside
    EXPECT_NEAR(reg.r_in(2), 2 + 5.0 / 3, 1e-12);
    EXPECT_NEAR(reg.r_out(2), 2.0 / 3, 1e-12);
}

TEST(BuildRegion, Errors) {
    const DenseTensor t = fixtures::example2();
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::SType, std::nullopt, {1, 2, 3, 4}); }), Errc::BadSubset);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::SType); }), Errc::BadSubset);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::SType, std::nullopt, {0}); }), Errc::BadSubset);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::SType, std::nullopt, {2, 2}); }), Errc::BadSubset);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::Gershgorin, std::nullopt, {1}); }), Errc::BadSubset);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::Ostrowski, 1.5); }), Errc::GammaOutOfRange);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::GammaMix, -0.1); }), Errc::GammaOutOfRange);
    EXPECT_EQ(code_of([&] { build_region(t, RegionKind::GammaMix); }), Errc::GammaOutOfRange);
    EXPECT_EQ(code_of([] { build_region(unit_tensor(3, 1), RegionKind::Cassini); }), Errc::InvalidShape);
}

TEST(Membership, PaperPoints) {
    const Region cas = build_region(fixtures::example1(), RegionKind::Cassini);
    EXPECT_TRUE(membership(cas, 12.7389));
    EXPECT_FALSE(membership(cas, 13.0));

    const Region unit = build_region(unit_tensor(4, 2), RegionKind::Gershgorin);
    EXPECT_TRUE(membership(unit, 1.0));
    EXPECT_FALSE(membership(unit, 1.1));

    const Region mix = build_region(fixtures::example2(), RegionKind::GammaMix, 0.5);
    EXPECT_TRUE(membership(mix, 19.5));
    EXPECT_FALSE(membership(mix, 19.6));
}

TEST(Membership, OffAxis) {
    const Region g = build_region(unit_tensor(3, 2), RegionKind::Gershgorin);
    EXPECT_TRUE(membership(g, {1.0, 0.0}));
    EXPECT_FALSE(membership(g, {1.0, 1e-3}));
    // Example 1, row 2 disc: center 6, radius s_22 + P_2 = 5
    const Region e = build_region(fixtures::example1(), RegionKind::Gershgorin);
    EXPECT_TRUE(membership(e, {6.0, 5.0}));
    EXPECT_TRUE(membership(e, {7.0, 7.0}));  // row 1 disc, radius 7 around 7
    EXPECT_FALSE(membership(e, {7.0, 7.01}));
}

TEST(RealBounds, Example1CassiniClosedForm) {
    // (z - 11)(z - 8) = 9 upper branch, (3 - z)(4 - z) = 9 lower branch
    const RealBounds b = bounds_of(fixtures::example1(), RegionKind::Cassini);
    EXPECT_NEAR(b.lower, (7 - std::sqrt(37.0)) / 2, 1e-9);
    EXPECT_NEAR(b.upper, (19 + std::sqrt(45.0)) / 2, 1e-9);
    EXPECT_NEAR(b.lower, 0.4586, 1e-3);
    EXPECT_NEAR(b.upper, 12.8541, 1e-3);
    EXPECT_LE(b.tolerance, 1e-9);
}

TEST(RealBounds, Example2Table) {
    const DenseTensor t = fixtures::example2();
    struct Row {
        RegionKind kind;
        std::optional<double> gamma;
        double lower, upper;
    };
    const Row rows[] = {
        {RegionKind::Gershgorin, std::nullopt, -1, 21},
        {RegionKind::Cassini, std::nullopt, 0.0936, 18.1382},
        {RegionKind::Ostrowski, 0.5, 0.3849, 19.3333},
        {RegionKind::Ostrowski, 0.04, -0.2717, 18.0961},
        {RegionKind::GammaMix, 0.5, 0.3333, 19.5},
        {RegionKind::GammaMix, 0.04, -0.28, 18.12},
        {RegionKind::SSingleton, std::nullopt, -0.4741, 19.8130},
    };
    for (const auto& r : rows) {
        const RealBounds b = bounds_of(t, r.kind, r.gamma);
        EXPECT_NEAR(b.lower, r.lower, 1e-3) << to_string(r.kind);
        EXPECT_NEAR(b.upper, r.upper, 1e-3) << to_string(r.kind);
    }
}

TEST(RealBounds, STypeFromPairClosedForms) {
    // Below every center the pair (i, j) boundary is (c_i - z - s_ii - r_i^S)(c_j - z - s_jj - r_j^out) = r_i^out r_j^S.
    // Pair (1,4): (14/3 - z)(4 - z) = 17, pair (1,3): (14/3 - z)(17/3 - z) = 187/9.
    const double pair14 = (26 - std::sqrt(616.0)) / 6;
    const double pair13 = (31 - std::sqrt(757.0)) / 6;
    const RealBounds b = bounds_of(fixtures::example2(), RegionKind::SType, std::nullopt, {1, 2});
    EXPECT_NEAR(b.upper, 17.5803, 1e-3);
    EXPECT_NEAR(b.lower, pair14, 1e-9);
    // the published 0.5811 is the (1,3) pair on its own
    EXPECT_NEAR(pair13, 0.5811, 1e-4);
    const Region reg = build_region(fixtures::example2(), RegionKind::SType, std::nullopt, {1, 2});
    EXPECT_TRUE(membership(reg, 0.4));
    EXPECT_FALSE(membership(reg, 0.19));
}

TEST(RealBounds, UnitIsAPoint) {
    const RealBounds b = bounds_of(unit_tensor(4, 3), RegionKind::Gershgorin);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);
}

TEST(Grid, UnitNode) {
    const Region reg = build_region(unit_tensor(3, 2), RegionKind::Gershgorin);
    const auto samples = grid_sample(reg, {0, 2, -1, 1, 3, 3});
    ASSERT_EQ(samples.size(), 9u);
    int members = 0;
    for (const auto& s : samples) {
        if (s.member) {
            ++members;
            EXPECT_EQ(s.re, 1.0);
            EXPECT_EQ(s.im, 0.0);
        }
    }
    EXPECT_EQ(members, 1);
    // row-major: im is the slow index
    EXPECT_EQ(samples[1].re, 1.0);
    EXPECT_EQ(samples[1].im, -1.0);
}

TEST(Grid, Example1CassiniSelfConsistent) {
    const Region reg = build_region(fixtures::example1(), RegionKind::Cassini);
    const auto samples = grid_sample(reg, {-1, 14, -3, 3, 61, 25});
    int members = 0;
    for (const auto& s : samples) {
        members += s.member;
        EXPECT_EQ(s.member, membership(reg, {s.re, s.im}));
    }
    EXPECT_GT(members, 0);
    EXPECT_LT(members, static_cast<int>(samples.size()));
}

TEST(Grid, BadGrid) {
    const Region reg = build_region(unit_tensor(3, 2), RegionKind::Gershgorin);
    EXPECT_EQ(code_of([&] { grid_sample(reg, {0, 1, 0, 1, 1, 5}); }), Errc::BadGrid);
    EXPECT_EQ(code_of([&] { grid_sample(reg, {0, INFINITY, 0, 1, 3, 3}); }), Errc::BadGrid);
}

TEST(Csv, Formats) {
    std::ostringstream grid;
    write_grid_csv(grid, {{1.0 / 3, -2.5, true}});
    EXPECT_EQ(grid.str(), "re,im,member\n0.333333333,-2.5,1\n");

    std::ostringstream rows;
    write_bounds_header(rows);
    const Region reg = build_region(fixtures::example2(), RegionKind::SType, std::nullopt, {1, 2});
    write_bounds_row(rows, reg, {0.25, 17.5, 0.0});
    EXPECT_EQ(rows.str(), "kind,gamma,subset,lower,upper\ns-type,,1;2,0.250000,17.500000\n");
}

TEST(Kinds, NamesRoundTrip) {
    for (auto k : {RegionKind::Gershgorin, RegionKind::Cassini, RegionKind::Ostrowski, RegionKind::GammaMix,
                   RegionKind::SType, RegionKind::SSingleton}) {
        EXPECT_EQ(parse_region_kind(to_string(k)), k);
    }
    EXPECT_EQ(parse_region_kind("CASSINI"), RegionKind::Cassini);
    EXPECT_FALSE(parse_region_kind("brualdi").has_value());
}
