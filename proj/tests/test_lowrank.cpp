#include <gtest/gtest.h>

#include "support.hpp"

using namespace rankprofile;

namespace {

LowRankOptions checking_observer(const PrimeField& f, const DenseMatrix& a, std::size_t& steps) {
    LowRankOptions opt;
    opt.observer = [&f, &a, &steps](const IncrementalBasis& b) {
        ++steps;
        EXPECT_EQ(rptest::check_extension(f, a, b), "");
    };
    return opt;
}

} // namespace

TEST(LowRank, MatchesOracleOnPlantedProfiles) {
    const PrimeField f(kMonteCarloPrime);
    std::mt19937_64 rng(401);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = 1 + rng() % 40, n = 1 + rng() % 40, r = rng() % (std::min<std::size_t>({m, n, 8}) + 1);
        const auto planted = oracle::random_with_profile(f, m, n, r, rng(), false);
        std::size_t steps = 0;
        EXPECT_EQ(lowrank_rpm(f, planted.matrix, rng(), checking_observer(f, planted.matrix, steps)), planted.rpm);
        EXPECT_EQ(steps, r);
        EXPECT_EQ(lowrank_rpm_via_profiles(f, planted.matrix, rng()), planted.rpm);
    }
}

TEST(LowRank, SmallFieldStillReturnsAValidSubset) {
    // Over GF(2) sampling can miss; the result is still a sub-permutation with non-singular leading blocks.
    const PrimeField f(2);
    std::mt19937_64 rng(403);
    for (int t = 0; t < 50; ++t) {
        const DenseMatrix a = rptest::random_sparse(f, 6, 6, 0.4, rng);
        const auto [rpm, basis] = lowrank_rpm_with_basis(f, a, rng());
        EXPECT_LE(rpm.rank(), oracle::rank(f, a));
        EXPECT_EQ(multiply(f, basis.l, basis.u), rptest::gather(a, basis.rows, basis.cols));
    }
}

TEST(LowRank, OnlineUpdateRejectsSingularExtension) {
    const PrimeField f(101);
    const DenseMatrix a{{1, 2}, {2, 4}};
    IncrementalBasis b = online_lu_update(f, IncrementalBasis{}, a, 0, 0);
    EXPECT_EQ(b.u(0, 0), 1u);
    EXPECT_THROW(online_lu_update(f, b, a, 1, 1), SingularExtension);
    EXPECT_THROW(online_lu_update(f, b, 1, 1, {}, {2}, 4), DimensionMismatch);
}

TEST(LowRank, ResidualsVanishOnTheSpan) {
    const PrimeField f(kMonteCarloPrime);
    std::mt19937_64 rng(405);
    const DenseMatrix a = rptest::random_low_rank(f, 12, 9, 3, rng);
    const auto [rpm, basis] = lowrank_rpm_with_basis(f, a, 7);
    ASSERT_EQ(basis.size(), 3u);
    const auto c = residual_column(f, basis, a, sample_column_space(f, a, rng));
    EXPECT_TRUE(std::all_of(c.begin(), c.end(), [](Residue x) { return x == 0; }));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto row = residual_row(f, basis, a, i);
        EXPECT_TRUE(std::all_of(row.begin(), row.end(), [](Residue x) { return x == 0; }));
    }
    EXPECT_THROW(residual_row(f, basis, a, 12), IndexOutOfRange);
    EXPECT_THROW(residual_column(f, basis, a, std::vector<Residue>(3)), DimensionMismatch);
}

TEST(LowRank, ZeroMatrixAndDeterminism) {
    const PrimeField f(kMonteCarloPrime);
    EXPECT_EQ(lowrank_rpm(f, DenseMatrix(5, 4), 1).rank(), 0u);
    EXPECT_EQ(lowrank_rpm(f, DenseMatrix(0, 0), 1).rank(), 0u);
    EXPECT_EQ(lowrank_rpm(f, rptest::example4x4(), 3), rptest::example4x4_rpm());
}
