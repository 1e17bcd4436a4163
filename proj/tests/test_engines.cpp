#include <gtest/gtest.h>

#include "support.hpp"

using namespace rankprofile;

namespace {

void expect_same(const PluqDecomposition& x, const PluqDecomposition& y, const char* what) {
    EXPECT_EQ(x.rank, y.rank) << what;
    EXPECT_EQ(x.rows, y.rows) << what;
    EXPECT_EQ(x.cols, y.cols) << what;
    EXPECT_EQ(x.packed, y.packed) << what;
}

/// Packed output is a valid PLUQ: [L\U V; M 0] with non-zero pivots and P L U Q = A.
void expect_valid(const PrimeField& f, const PluqDecomposition& d, const DenseMatrix& a) {
    ASSERT_EQ(d.m(), a.rows());
    ASSERT_EQ(d.n(), a.cols());
    for (std::size_t s = 0; s < d.rank; ++s) EXPECT_NE(d.packed(s, s), 0u);
    for (std::size_t i = d.rank; i < d.m(); ++i)
        for (std::size_t j = d.rank; j < d.n(); ++j) EXPECT_EQ(d.packed(i, j), 0u);
    EXPECT_EQ(d.reconstruct(f), a);
}

} // namespace

TEST(BaseCase, ScheduleNames) {
    for (BaseSchedule s : {BaseSchedule::Crout, BaseSchedule::LeftLooking, BaseSchedule::RightLooking})
        EXPECT_EQ(parse_schedule(to_string(s)), s);
    EXPECT_THROW(parse_schedule("upward"), ParseError);
}

TEST(BaseCase, AllSchedulesComputeIdenticalFactors) {
    const PrimeField f(101);
    std::mt19937_64 rng(101);
    for (int t = 0; t < 300; ++t) {
        const DenseMatrix a = rptest::random_instance(f, rng() % 20, rng() % 20, rng);
        const auto ref = iterative_pluq(f, a, {});
        expect_valid(f, ref, a);
        expect_same(crout_pluq(f, a), ref, "crout");
        expect_same(left_looking_pluq(f, a), ref, "left");
        expect_same(right_looking_pluq(f, a), ref, "right");
    }
}

TEST(BaseCase, RevealsRankProfileMatrix) {
    const PrimeField f(3);
    std::mt19937_64 rng(103);
    for (int t = 0; t < 200; ++t) {
        const DenseMatrix a = rptest::random_instance(f, 1 + rng() % 10, 1 + rng() % 10, rng);
        EXPECT_EQ(crout_pluq(f, a).pivoting_matrix(), oracle::rpm(f, a));
    }
}

TEST(BaseCase, CroutNeedsFewestReductions) {
    const PrimeField f(65521);
    const DenseMatrix a = oracle::random_with_profile(f, 96, 96, 48, 5, false).matrix;
    std::uint64_t counts[3];
    const BaseSchedule order[3] = {BaseSchedule::Crout, BaseSchedule::LeftLooking, BaseSchedule::RightLooking};
    for (int k = 0; k < 3; ++k) {
        f.reset_counters();
        (void)base_case_pluq(f, a, order[k]);
        counts[k] = f.reductions();
    }
    EXPECT_LT(counts[0], counts[1]);
    EXPECT_LT(counts[1], counts[2]);
}

TEST(TileRecursive, MatchesIterativeForEveryThresholdAndBase) {
    const PrimeField f(101);
    std::mt19937_64 rng(107);
    for (int t = 0; t < 120; ++t) {
        const DenseMatrix a = rptest::random_instance(f, rng() % 26, rng() % 26, rng);
        const auto ref = iterative_pluq(f, a, {});
        for (std::size_t th : {1, 2, 3, 5, 8})
            for (BaseSchedule b : {BaseSchedule::Crout, BaseSchedule::LeftLooking, BaseSchedule::RightLooking}) {
                const auto d = tile_recursive_pluq(f, a, BlockConfig{th, b, false});
                expect_valid(f, d, a);
                EXPECT_EQ(d.pivoting_matrix(), ref.pivoting_matrix()) << "threshold " << th;
            }
    }
}

TEST(TileRecursive, ParallelBranchesGiveSameResultAndCounts) {
    const PrimeField f(65521);
    const DenseMatrix a = oracle::random_with_profile(f, 80, 70, 40, 9, false).matrix;
    f.reset_counters();
    const auto seq = tile_recursive_pluq(f, a, BlockConfig{8, BaseSchedule::Crout, false});
    const auto seq_count = f.reductions();
    f.reset_counters();
    const auto par = tile_recursive_pluq(f, a, BlockConfig{8, BaseSchedule::Crout, true});
    expect_same(par, seq, "parallel");
    EXPECT_EQ(f.reductions(), seq_count);
}

TEST(TileRecursive, ExampleAndEdgeCases) {
    const PrimeField f(7);
    const auto d = tile_recursive_pluq(f, rptest::example4x4(), BlockConfig{1, BaseSchedule::Crout, false});
    EXPECT_EQ(d.pivoting_matrix(), rptest::example4x4_rpm());
    EXPECT_THROW(tile_recursive_pluq(f, rptest::example4x4(), BlockConfig{0, BaseSchedule::Crout, false}),
                 PreconditionViolated);
    EXPECT_EQ(tile_recursive_pluq(f, DenseMatrix(0, 5), {}).rank, 0u);
    const auto full = tile_recursive_pluq(f, DenseMatrix::identity(9), BlockConfig{2, BaseSchedule::Crout, false});
    EXPECT_EQ(full.rank, 9u);
    EXPECT_TRUE(full.rows.is_identity());
    EXPECT_TRUE(full.cols.is_identity());
}
