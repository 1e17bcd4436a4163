#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace rankprofile::io {

enum class Format { Dense, Sms };

struct MatrixFile {
    DenseMatrix matrix;
    std::uint64_t prime = 0;
    Format format = Format::Dense;
};

namespace detail {

/// Next whitespace-separated token, skipping '#' comment lines.
inline bool next_token(std::istream& in, std::string& tok) {
    while (in >> tok) {
        if (tok[0] != '#') return true;
        std::string rest;
        std::getline(in, rest);
    }
    return false;
}

inline std::int64_t parse_int(const std::string& tok, const char* what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'");
    return v;
}

inline std::size_t parse_dim(const std::string& tok, const char* what) {
    const std::int64_t v = parse_int(tok, what);
    if (v < 0) throw ParseError(std::string("negative ") + what);
    return static_cast<std::size_t>(v);
}

inline std::string require(std::istream& in, const char* what) {
    std::string tok;
    if (!next_token(in, tok)) throw ParseError(std::string("unexpected end of input reading ") + what);
    return tok;
}

} // namespace detail

/**
 * Reads either format. Dense: "m n p" then m*n integers. SMS: "m n X" with X a
 * letter, then "i j v" lines (1-based) up to "0 0 0"; its prime comes from
 * `sms_prime`. Values are reduced mod p.
 */
inline MatrixFile read_matrix(std::istream& in, std::uint64_t sms_prime = 65521) {
    const std::size_t m = detail::parse_dim(detail::require(in, "row count"), "row count");
    const std::size_t n = detail::parse_dim(detail::require(in, "column count"), "column count");
    const std::string third = detail::require(in, "header");
    MatrixFile out;
    if (std::isalpha(static_cast<unsigned char>(third[0])) && third.size() == 1) {
        out.format = Format::Sms;
        out.prime = sms_prime;
    } else {
        const std::int64_t p = detail::parse_int(third, "modulus");
        if (p < 2) throw ParseError("modulus must be at least 2");
        out.prime = static_cast<std::uint64_t>(p);
    }
    const PrimeField f(out.prime);
    out.matrix = DenseMatrix(m, n);
    if (out.format == Format::Dense) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = f.from_integer(detail::parse_int(detail::require(in, "entry"), "entry"));
        std::string extra;
        if (detail::next_token(in, extra)) throw ParseError("trailing data after " + std::to_string(m) + "x" + std::to_string(n) + " entries");
        return out;
    }
    while (true) {
        const std::int64_t i = detail::parse_int(detail::require(in, "SMS row"), "row index");
        const std::int64_t j = detail::parse_int(detail::require(in, "SMS column"), "column index");
        const std::int64_t v = detail::parse_int(detail::require(in, "SMS value"), "value");
        if (i == 0 && j == 0 && v == 0) break;
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > m || static_cast<std::size_t>(j) > n)
            throw ParseError("SMS entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " + std::to_string(m) + "x" + std::to_string(n));
        out.matrix(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = f.from_integer(v);
    }
    return out;
}

inline MatrixFile read_matrix_file(const std::string& path, std::uint64_t sms_prime = 65521) {
    if (path == "-") return read_matrix(std::cin, sms_prime);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_matrix(in, sms_prime);
}

inline void write_dense(std::ostream& out, ConstMatrixView a, std::uint64_t p) {
    out << a.rows() << ' ' << a.cols() << ' ' << p << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a(i, j);
        out << '\n';
    }
}

/// Row-major order, zeros omitted.
inline void write_sms(std::ostream& out, ConstMatrixView a) {
    out << a.rows() << ' ' << a.cols() << " M\n";
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) out << i + 1 << ' ' << j + 1 << ' ' << a(i, j) << '\n';
    out << "0 0 0\n";
}

inline void write_matrix(std::ostream& out, const MatrixFile& file) {
    if (file.format == Format::Sms)
        write_sms(out, file.matrix);
    else
        write_dense(out, file.matrix, file.prime);
}

inline std::string to_string(const MatrixFile& file) {
    std::ostringstream os;
    write_matrix(os, file);
    return os.str();
}

} // namespace rankprofile::io
