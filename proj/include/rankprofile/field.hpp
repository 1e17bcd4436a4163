#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include "errors.hpp"

namespace rankprofile {

/// Canonical residue in [0, p). Matrices store these directly.
using Residue = std::uint64_t;

/**
 * Arithmetic over Z/pZ for a word-sized prime p < 2^32.
 *
 * Products are accumulated in a 64-bit lane and reduced once every
 * delayed_block() terms. For p < 2^26 the safe block is at least 4096; larger
 * primes get a shorter block (p = 2^31 - 1 gives 4).
 *
 * Every modular reduction (a `%` on an accumulator or product) increments a
 * per-instance counter. Additions and subtractions use a conditional
 * correction and are not counted. The counter is not synchronized: give each
 * concurrent task its own instance (see fork()/absorb()).
 */
class PrimeField {
public:
    static constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 32;
    static constexpr std::uint64_t kDelayedFriendlyLimit = std::uint64_t{1} << 26;

    explicit PrimeField(std::uint64_t p) : PrimeField(p, 0) {}

    /// `block == 0` selects the largest safe block length for p.
    PrimeField(std::uint64_t p, std::size_t block) : p_(p) {
        if (p >= kModulusLimit)
            throw ModulusTooLarge("modulus " + std::to_string(p) + " must be below 2^32");
        if (!is_prime(p))
            throw NotPrime(std::to_string(p) + " is not prime");
        const std::size_t safe = safe_block(p);
        if (block == 0) {
            block_ = safe;
        } else if (block > safe) {
            throw PreconditionViolated("delayed block " + std::to_string(block) +
                                       " overflows the accumulator for p=" + std::to_string(p) +
                                       " (safe bound " + std::to_string(safe) + ")");
        } else {
            block_ = block;
        }
    }

    std::uint64_t modulus() const noexcept { return p_; }
    std::size_t delayed_block() const noexcept { return block_; }

    /// Largest k with (p-1) + k (p-1)^2 < 2^64, capped to keep loops bounded.
    static std::size_t safe_block(std::uint64_t p) noexcept {
        constexpr std::uint64_t cap = std::uint64_t{1} << 30;
        const std::uint64_t q = p - 1;
        if (q <= 1) return cap;
        const std::uint64_t room = std::numeric_limits<std::uint64_t>::max() - q;
        const std::uint64_t k = room / (q * q);
        return static_cast<std::size_t>(k < cap ? k : cap);
    }

    static bool is_prime(std::uint64_t n) noexcept {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    Residue from_integer(std::int64_t v) const noexcept {
        const auto p = static_cast<std::int64_t>(p_);
        std::int64_t r = v % p;
        if (r < 0) r += p;
        return static_cast<Residue>(r);
    }

    bool is_canonical(Residue a) const noexcept { return a < p_; }

    Residue add(Residue a, Residue b) const noexcept {
        const Residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }

    Residue mul(Residue a, Residue b) const noexcept { return reduce(a * b); }

    /// Counted reduction of a raw 64-bit accumulator.
    Residue reduce(std::uint64_t acc) const noexcept {
        ++reductions_;
        return acc % p_;
    }

    /// Extended Euclid; throws ZeroInverse on 0.
    Residue inv(Residue a) const {
        if (a == 0) throw ZeroInverse("0 has no inverse modulo " + std::to_string(p_));
        std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(a);
        std::int64_t t0 = 0, t1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::int64_t tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        return from_integer(t0);
    }

    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

    /// Delayed-reduction dot product over strided sequences.
    Residue dot(const Residue* a, std::ptrdiff_t stride_a, const Residue* b, std::ptrdiff_t stride_b,
                std::size_t len) const noexcept;

    Residue dot(std::span<const Residue> a, std::span<const Residue> b) const noexcept {
        const std::size_t len = a.size() < b.size() ? a.size() : b.size();
        return dot(a.data(), 1, b.data(), 1, len);
    }

    std::uint64_t reductions() const noexcept { return reductions_; }
    void reset_counters() const noexcept { reductions_ = 0; }

    /// Copy with a zeroed counter, for handing to a concurrent task.
    PrimeField fork() const {
        PrimeField f(*this);
        f.reductions_ = 0;
        return f;
    }
    void absorb(const PrimeField& other) const noexcept { reductions_ += other.reductions_; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
    std::size_t block_ = 1;
    mutable std::uint64_t reductions_ = 0;
};

/**
 * Sum of products kept in an unreduced 64-bit lane. Folds back below p every
 * delayed_block() terms so the lane never overflows.
 */
class DelayedAccumulator {
public:
    explicit DelayedAccumulator(const PrimeField& f) noexcept : f_(&f) {}

    void add_product(Residue a, Residue b) noexcept {
        acc_ += a * b;
        if (++pending_ == f_->delayed_block()) {
            acc_ = f_->reduce(acc_);
            pending_ = 0;
        }
    }

    /// Reduced value of the sum; reduces only if terms are pending.
    Residue value() noexcept {
        if (pending_ != 0) {
            acc_ = f_->reduce(acc_);
            pending_ = 0;
        }
        return acc_;
    }

    void clear() noexcept {
        acc_ = 0;
        pending_ = 0;
    }

private:
    const PrimeField* f_;
    std::uint64_t acc_ = 0;
    std::size_t pending_ = 0;
};

inline Residue PrimeField::dot(const Residue* a, std::ptrdiff_t stride_a, const Residue* b,
                               std::ptrdiff_t stride_b, std::size_t len) const noexcept {
    DelayedAccumulator acc(*this);
    for (std::size_t t = 0; t < len; ++t, a += stride_a, b += stride_b) acc.add_product(*a, *b);
    return acc.value();
}

} // namespace rankprofile
