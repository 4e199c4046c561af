#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "metricgroup/errors.hpp"

namespace mg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Dense integer matrix with arbitrary-precision entries. Everything in this
// project is desk scale (rank <= 32ish), so no attempt at sparsity.
struct IntMat {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(long r, long c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    Int& at(long r, long c) { return a[size_t(r) * cols + c]; }
    const Int& at(long r, long c) const { return a[size_t(r) * cols + c]; }

    static IntMat identity(long n);
    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_symmetric() const;
};

// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ... | s_r,
// all diagonal entries nonnegative.
struct SmithForm {
    IntMat S, U, V;
    std::vector<Int> diagonal() const;
};

SmithForm smith_normal_form(const IntMat& A);

// Row-style Hermite normal form of the row span; zero rows dropped, so the
// result's rows are a lattice basis of the integer row span of A.
IntMat hnf_row_basis(const IntMat& A);

// Fraction-free Bareiss determinant (empty matrix has det 1).
Int determinant(const IntMat& A);

// Dense rational matrix, used for dual bases and glue vectors.
struct RatMat {
    long rows = 0, cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(long r, long c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}
    explicit RatMat(const IntMat& m);

    Rat& at(long r, long c) { return a[size_t(r) * cols + c]; }
    const Rat& at(long r, long c) const { return a[size_t(r) * cols + c]; }

    static RatMat identity(long n);
    RatMat operator*(const RatMat& o) const;
    RatMat inverse() const; // throws Error if singular
    bool is_integral() const;
    IntMat to_int() const;  // throws Error if not integral
};

// Inverse of a unimodular integer matrix, returned exactly as integers.
IntMat unimodular_inverse(const IntMat& U);

} // namespace mg
