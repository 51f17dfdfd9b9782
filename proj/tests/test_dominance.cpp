#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "htensor/dominance.hpp"

using namespace htensor;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix M(2, 2);
    M << a, b, c, d;
    return M;
}

}  // namespace

TEST(Comparison, SignsAndSums) {
    const Matrix M = mat2(-3, 2, -1, 4);
    const Matrix C = comparison_matrix(M);
    EXPECT_EQ(C, mat2(3, -2, -1, 4));
    EXPECT_EQ(deleted_row_sums(M)(0), 2.0);
    EXPECT_EQ(deleted_col_sums(M)(0), 1.0);
}

TEST(CheckDominance, Example1Matrix) {
    const Matrix A = generated_matrix(fixtures::example1()).data;
    EXPECT_EQ(check_dominance(A, DominanceKind::SDD).kind, DominanceKind::None);
    const DominanceReport dd = check_dominance(A, DominanceKind::DD);
    EXPECT_EQ(dd.kind, DominanceKind::DD);
    EXPECT_EQ(dd.strict_rows, std::vector<int>{2});
    EXPECT_EQ(check_dominance(A, DominanceKind::DoublySDD).kind, DominanceKind::DoublySDD);
    // row 1 has |a| = P = Q = 3, so no gamma works
    EXPECT_EQ(check_dominance(A, DominanceKind::GammaSDD).kind, DominanceKind::None);
    EXPECT_EQ(check_dominance(A, DominanceKind::GeneralizedH).kind, DominanceKind::None);
}

TEST(CheckDominance, GammaWindow) {
    // row 1 needs gamma < 0.75, row 2 needs gamma > 0.25
    const Matrix M = mat2(2.5, 3, 1, 2.5);
    EXPECT_EQ(check_dominance(M, DominanceKind::SDD).kind, DominanceKind::None);
    const auto g = find_gamma(M, false);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 0.5, 1e-12);
    EXPECT_EQ(check_dominance(M, DominanceKind::GammaSDD, 0.5).kind, DominanceKind::GammaSDD);
    EXPECT_EQ(check_dominance(M, DominanceKind::GammaSDD, 0.1).kind, DominanceKind::None);
    EXPECT_EQ(check_dominance(M, DominanceKind::GammaSDD, 0.9).kind, DominanceKind::None);

    const auto pg = find_gamma(M, true);
    ASSERT_TRUE(pg.has_value());
    EXPECT_GT(*pg, 0.16);
    EXPECT_LT(*pg, 0.84);
    EXPECT_EQ(check_dominance(M, DominanceKind::ProductGammaSDD, *pg).kind, DominanceKind::ProductGammaSDD);

    // the two rows pull in opposite directions with no overlap
    EXPECT_FALSE(find_gamma(mat2(2, 3, 1, 2), false).has_value());
}

TEST(CheckDominance, GammaOutOfRange) {
    try {
        check_dominance(mat2(3, 1, 1, 3), DominanceKind::GammaSDD, 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::GammaOutOfRange);
    }
}

TEST(HMatrix, PositiveAndNegative) {
    const HMatrixResult h = is_h_matrix(generated_matrix(fixtures::example1()).data);
    ASSERT_TRUE(h.is_h);
    ASSERT_TRUE(h.scaling.has_value());
    EXPECT_TRUE((h.scaling->array() > 0).all());
    EXPECT_LT(h.jacobi_radius, 1.0);

    EXPECT_FALSE(is_h_matrix(mat2(1, 2, 2, 1)).is_h);
    EXPECT_FALSE(is_h_matrix(mat2(0, 1, 0, 1)).is_h);
    // singular comparison matrix, radius exactly 1
    EXPECT_FALSE(is_h_matrix(mat2(1, 1, 1, 1)).is_h);
}

TEST(Graph, ComponentsAndIrreducibility) {
    Matrix M = Matrix::Zero(4, 4);
    M(0, 1) = 1;
    M(1, 0) = 1;
    M(2, 3) = 1;
    auto comps = strongly_connected_components(M);
    std::sort(comps.begin(), comps.end());
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[0], (std::vector<int>{0, 1}));
    EXPECT_EQ(comps[1], std::vector<int>{2});
    EXPECT_EQ(comps[2], std::vector<int>{3});
    EXPECT_FALSE(is_irreducible(M));

    Matrix cycle = Matrix::Zero(3, 3);
    cycle(0, 1) = cycle(1, 2) = cycle(2, 0) = 1;
    EXPECT_TRUE(is_irreducible(cycle));
    EXPECT_TRUE(is_irreducible(Matrix::Ones(1, 1)));
    EXPECT_TRUE(is_weakly_irreducible(fixtures::example1()));
    EXPECT_FALSE(is_weakly_irreducible(unit_tensor(3, 2)));
}

TEST(TensorDD, Example1) {
    const DominanceReport rep = tensor_dd(fixtures::example1());
    EXPECT_EQ(rep.kind, DominanceKind::DD);
    EXPECT_EQ(rep.strict_rows, std::vector<int>{2});
    EXPECT_TRUE(is_weakly_chained_dd(fixtures::example1()));
    EXPECT_EQ(tensor_dd(unit_tensor(3, 3)).kind, DominanceKind::SDD);
}

TEST(WeaklyChained, NeedsAWalk) {
    // every row strict, nothing to walk
    const DenseTensor t = fixtures::from_digits(3, 2, {{"111", 2}, {"222", 5}, {"211", 1}});
    EXPECT_TRUE(is_weakly_chained_dd(t));

    const DenseTensor u = fixtures::from_digits(3, 3, {{"111", 1}, {"122", 1}, {"222", 1}, {"211", 1}, {"333", 4}});
    // rows 1 and 2 are tight and only reach each other; row 3 is strict but unreachable
    EXPECT_EQ(tensor_dd(u).kind, DominanceKind::DD);
    EXPECT_FALSE(is_weakly_chained_dd(u));
}

TEST(Certify, Examples) {
    const Certificate c1 = certify_h_tensor(fixtures::example1());
    EXPECT_EQ(c1.verdict, Verdict::CertifiedH);
    EXPECT_EQ(c1.rule, DominanceKind::DoublySDD);
    ASSERT_TRUE(c1.scaling.has_value());
    EXPECT_TRUE((c1.residuals.array() > 0).all());

    const Certificate cu = certify_h_tensor(unit_tensor(4, 3));
    EXPECT_EQ(cu.verdict, Verdict::CertifiedH);
    EXPECT_EQ(cu.rule, DominanceKind::SDD);

    const Certificate cz = certify_h_tensor(DenseTensor(3, 2));
    EXPECT_EQ(cz.verdict, Verdict::NotCertified);
    EXPECT_EQ(cz.offending_rows, (std::vector<int>{1, 2}));

    const Certificate c2 = certify_h_tensor(fixtures::example2());
    EXPECT_EQ(c2.verdict, Verdict::CertifiedH);
    ASSERT_TRUE(c2.scaling.has_value());
    EXPECT_TRUE((c2.residuals.array() > 0).all());
}

TEST(Certify, ResidualsOfUnitScaling) {
    const Vector r = h_tensor_residuals(fixtures::example1(), Vector::Ones(2));
    EXPECT_EQ(r(0), 0.0);  // 7 - 7
    EXPECT_EQ(r(1), 1.0);  // 6 - 5
}

TEST(MTensor, WcddAndPowerIteration) {
    EXPECT_TRUE(is_z_tensor(fixtures::example1()));
    const MTensorResult m1 = is_m_tensor(fixtures::example1());
    EXPECT_TRUE(m1.certified);
    EXPECT_EQ(m1.method, MTensorMethod::WCDD);

    // row 1 is not dominant, but rho(2I - A) = (1 + sqrt 2)/2 < 2
    const DenseTensor z = fixtures::from_digits(2, 2, {{"11", 2}, {"12", -2.5}, {"21", -0.1}, {"22", 1}});
    const MTensorResult m2 = is_m_tensor(z);
    EXPECT_TRUE(m2.certified);
    EXPECT_FALSE(m2.wcdd);
    EXPECT_EQ(m2.method, MTensorMethod::NQZ);
    ASSERT_TRUE(m2.spectral_radius.has_value());
    EXPECT_NEAR(*m2.spectral_radius, (1 + std::sqrt(2.0)) / 2, 1e-7);

    EXPECT_FALSE(is_z_tensor(fixtures::example2()));
    EXPECT_FALSE(is_m_tensor(fixtures::example2()).certified);
}
