#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace rankprofile;

namespace {

io::MatrixFile parse(const std::string& text, std::uint64_t sms_prime = 65521) {
    std::istringstream in(text);
    return io::read_matrix(in, sms_prime);
}

} // namespace

TEST(MatrixIo, DenseReducesAndRoundTrips) {
    const auto m = parse("2 3 7\n1 -1 9\n# comment\n0 14 3\n");
    EXPECT_EQ(m.prime, 7u);
    EXPECT_EQ(m.format, io::Format::Dense);
    EXPECT_EQ(m.matrix, (DenseMatrix{{1, 6, 2}, {0, 0, 3}}));
    const auto again = parse(io::to_string(m));
    EXPECT_EQ(again.matrix, m.matrix);
    EXPECT_EQ(io::to_string(again), io::to_string(m));
    EXPECT_EQ(parse("0 0 5\n").matrix, DenseMatrix(0, 0));
}

TEST(MatrixIo, SmsReadsOneBasedTriples) {
    const auto m = parse("2 3 M\n1 3 1\n2 1 -2\n2 2 3\n0 0 0\n", 101);
    EXPECT_EQ(m.format, io::Format::Sms);
    EXPECT_EQ(m.prime, 101u);
    EXPECT_EQ(m.matrix, (DenseMatrix{{0, 0, 1}, {99, 3, 0}}));
    EXPECT_EQ(parse(io::to_string(m), 101).matrix, m.matrix);
}

TEST(MatrixIo, RoundTripIsBitExact) {
    const PrimeField f(65521);
    std::mt19937_64 rng(601);
    for (int t = 0; t < 50; ++t) {
        const DenseMatrix a = rptest::random_sparse(f, rng() % 9, rng() % 9, 0.3, rng);
        for (io::Format fmt : {io::Format::Dense, io::Format::Sms}) {
            const io::MatrixFile file{a, 65521, fmt};
            const std::string text = io::to_string(file);
            const auto back = parse(text);
            EXPECT_EQ(back.matrix, a);
            EXPECT_EQ(io::to_string(back), text);
        }
    }
}

TEST(MatrixIo, MalformedInputIsAParseError) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("2 2 7\n1 2 3\n"), ParseError);
    EXPECT_THROW(parse("2 2 7\n1 2 3 4 5\n"), ParseError);
    EXPECT_THROW(parse("2 x 7\n"), ParseError);
    EXPECT_THROW(parse("1 1 1\n0\n"), ParseError);
    EXPECT_THROW(parse("2 2 M\n3 1 1\n0 0 0\n"), ParseError);
    EXPECT_THROW(parse("2 2 M\n1 1 1\n"), ParseError);
    EXPECT_THROW(parse("-1 2 7\n"), ParseError);
    EXPECT_THROW(io::read_matrix_file("/nonexistent/file"), ParseError);
    EXPECT_THROW(parse("1 1 8\n3\n"), NotPrime);
}
