#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <ostream>
#include <string>
#include <vector>

#include "base_case.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "oracle.hpp"

namespace rankprofile::bench {

struct BenchRow {
    std::string variant;
    std::size_t n = 0;
    std::size_t r = 0;
    std::uint64_t reductions = 0;
    double millis = 0;
};

/// One base-case schedule on a private copy; reductions come from a fresh counter, time is the median of `reps`.
inline BenchRow run_variant(std::uint64_t p, BaseSchedule s, const DenseMatrix& a, std::size_t r, std::size_t reps) {
    BenchRow row{to_string(s), a.rows(), r, 0, 0};
    std::vector<double> times;
    for (std::size_t k = 0; k < std::max<std::size_t>(reps, 1); ++k) {
        const PrimeField f(p);
        DenseMatrix w(a);
        const auto t0 = std::chrono::steady_clock::now();
        const LocalPluq out = base_case_inplace(f, w.view(), s);
        const auto t1 = std::chrono::steady_clock::now();
        if (out.rank != r) throw PreconditionViolated("benchmark matrix has rank " + std::to_string(out.rank));
        row.reductions = f.reductions();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2), times.end());
    row.millis = times[times.size() / 2];
    return row;
}

/// n x n matrix of rank r with a random planted profile; variants optionally run concurrently.
inline std::vector<BenchRow> run(std::uint64_t p, const std::vector<BaseSchedule>& variants, std::size_t n, std::size_t r,
                                 std::uint64_t seed, std::size_t reps, bool parallel = false) {
    const PrimeField f(p);
    const DenseMatrix a = oracle::random_with_profile(f, n, n, r, seed, false).matrix;
    std::vector<BenchRow> rows;
    if (parallel) {
        std::vector<std::future<BenchRow>> jobs;
        for (BaseSchedule s : variants)
            jobs.push_back(std::async(std::launch::async, [&, s] { return run_variant(p, s, a, r, reps); }));
        for (auto& j : jobs) rows.push_back(j.get());
    } else {
        for (BaseSchedule s : variants) rows.push_back(run_variant(p, s, a, r, reps));
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "variant,n,r,reductions,millis\n";
    for (const auto& b : rows) out << b.variant << ',' << b.n << ',' << b.r << ',' << b.reductions << ',' << b.millis << '\n';
}

} // namespace rankprofile::bench
