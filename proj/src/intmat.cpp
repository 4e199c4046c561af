#include "metricgroup/intmat.hpp"

#include <algorithm>

namespace mg {

IntMat IntMat::identity(long n) {
    IntMat m(n, n);
    for (long i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols, rows);
    for (long i = 0; i < rows; i++)
        for (long j = 0; j < cols; j++) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols != o.rows) throw Error("IntMat: dimension mismatch in product");
    IntMat r(rows, o.cols);
    for (long i = 0; i < rows; i++)
        for (long k = 0; k < cols; k++) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (long j = 0; j < o.cols; j++) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

bool IntMat::is_symmetric() const {
    if (rows != cols) return false;
    for (long i = 0; i < rows; i++)
        for (long j = i + 1; j < cols; j++)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

namespace {

// Row/column operations that keep U*A*V = original A as an invariant
// (U tracks row ops, V tracks column ops).
struct SnfWork {
    IntMat A, U, V;

    void swap_rows(long i, long j) {
        if (i == j) return;
        for (long c = 0; c < A.cols; c++) std::swap(A.at(i, c), A.at(j, c));
        for (long c = 0; c < U.cols; c++) std::swap(U.at(i, c), U.at(j, c));
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long r = 0; r < A.rows; r++) std::swap(A.at(r, i), A.at(r, j));
        for (long r = 0; r < V.rows; r++) std::swap(V.at(r, i), V.at(r, j));
    }
    void add_row(long dst, long src, const Int& k) { // row dst += k * row src
        for (long c = 0; c < A.cols; c++) A.at(dst, c) += k * A.at(src, c);
        for (long c = 0; c < U.cols; c++) U.at(dst, c) += k * U.at(src, c);
    }
    void add_col(long dst, long src, const Int& k) {
        for (long r = 0; r < A.rows; r++) A.at(r, dst) += k * A.at(r, src);
        for (long r = 0; r < V.rows; r++) V.at(r, dst) += k * V.at(r, src);
    }
    void negate_row(long i) {
        for (long c = 0; c < A.cols; c++) A.at(i, c) = -A.at(i, c);
        for (long c = 0; c < U.cols; c++) U.at(i, c) = -U.at(i, c);
    }
};

} // namespace

SmithForm smith_normal_form(const IntMat& A0) {
    SnfWork w{A0, IntMat::identity(A0.rows), IntMat::identity(A0.cols)};
    long n = std::min(A0.rows, A0.cols);

    // Row-HNF pass first. Diagonalizing a reduced triangular matrix keeps the
    // later quotients small; eliminating on the raw matrix can square the
    // trailing entries at every pivot and the coefficients explode.
    long r = 0;
    for (long c = 0; c < w.A.cols && r < w.A.rows; c++) {
        for (;;) {
            long p = -1;
            Int best;
            for (long i = r; i < w.A.rows; i++) {
                if (w.A.at(i, c) == 0) continue;
                Int v = abs(w.A.at(i, c));
                if (p < 0 || v < best) { best = v; p = i; }
            }
            if (p < 0) break;
            w.swap_rows(r, p);
            bool done = true;
            for (long i = r + 1; i < w.A.rows; i++) {
                if (w.A.at(i, c) == 0) continue;
                w.add_row(i, r, -(w.A.at(i, c) / w.A.at(r, c)));
                if (w.A.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (w.A.at(r, c) == 0) continue;
        if (w.A.at(r, c) < 0) w.negate_row(r);
        for (long i = 0; i < r; i++) {
            Int q = w.A.at(i, c) / w.A.at(r, c);
            if (w.A.at(i, c) % w.A.at(r, c) < 0) q -= 1;
            if (q != 0) w.add_row(i, r, -q);
        }
        r++;
    }

    for (long t = 0; t < n; t++) {
        // find a nonzero pivot of minimal absolute value in the trailing block
        long pr = -1, pc = -1;
        Int best;
        for (long i = t; i < w.A.rows; i++)
            for (long j = t; j < w.A.cols; j++) {
                if (w.A.at(i, j) == 0) continue;
                Int v = abs(w.A.at(i, j));
                if (pr < 0 || v < best) { best = v; pr = i; pc = j; }
            }
        if (pr < 0) break; // rest of the matrix is zero
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        for (;;) {
            bool clean = true;
            for (long i = t + 1; i < w.A.rows; i++) {
                if (w.A.at(i, t) == 0) continue;
                Int q = w.A.at(i, t) / w.A.at(t, t);
                w.add_row(i, t, -q);
                if (w.A.at(i, t) != 0) { w.swap_rows(t, i); clean = false; }
            }
            for (long j = t + 1; j < w.A.cols; j++) {
                if (w.A.at(t, j) == 0) continue;
                Int q = w.A.at(t, j) / w.A.at(t, t);
                w.add_col(j, t, -q);
                if (w.A.at(t, j) != 0) { w.swap_cols(t, j); clean = false; }
            }
            if (!clean) continue;

            // enforce divisibility: pivot must divide the whole trailing block
            bool fixed = true;
            for (long i = t + 1; i < w.A.rows && fixed; i++)
                for (long j = t + 1; j < w.A.cols && fixed; j++)
                    if (w.A.at(i, j) % w.A.at(t, t) != 0) {
                        w.add_row(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (w.A.at(t, t) < 0) w.negate_row(t);
    }
    return SmithForm{w.A, w.U, w.V};
}

std::vector<Int> SmithForm::diagonal() const {
    std::vector<Int> d;
    long n = std::min(S.rows, S.cols);
    for (long i = 0; i < n; i++) d.push_back(S.at(i, i));
    return d;
}

IntMat hnf_row_basis(const IntMat& A) {
    IntMat m = A;
    long r = 0;
    for (long c = 0; c < m.cols && r < m.rows; c++) {
        // clear column c below row r via euclidean row ops
        for (;;) {
            long p = -1;
            Int best;
            for (long i = r; i < m.rows; i++) {
                if (m.at(i, c) == 0) continue;
                Int v = abs(m.at(i, c));
                if (p < 0 || v < best) { best = v; p = i; }
            }
            if (p < 0) { p = -2; break; } // column is zero from row r down
            for (long i2 = 0; i2 < m.cols; i2++) std::swap(m.at(r, i2), m.at(p, i2));
            bool done = true;
            for (long i = r + 1; i < m.rows; i++) {
                if (m.at(i, c) == 0) continue;
                Int q = m.at(i, c) / m.at(r, c);
                for (long j = 0; j < m.cols; j++) m.at(i, j) -= q * m.at(r, j);
                if (m.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (m.at(r, c) == 0) continue;
        if (m.at(r, c) < 0)
            for (long j = 0; j < m.cols; j++) m.at(r, j) = -m.at(r, j);
        // reduce the rows above so entries sit in [0, pivot)
        for (long i = 0; i < r; i++) {
            Int q = m.at(i, c) / m.at(r, c);
            if (m.at(i, c) % m.at(r, c) < 0) q -= 1;
            if (q != 0)
                for (long j = 0; j < m.cols; j++) m.at(i, j) -= q * m.at(r, j);
        }
        r++;
    }
    IntMat out(r, m.cols);
    for (long i = 0; i < r; i++)
        for (long j = 0; j < m.cols; j++) out.at(i, j) = m.at(i, j);
    return out;
}

Int determinant(const IntMat& A) {
    if (A.rows != A.cols) throw Error("determinant: matrix not square");
    long n = A.rows;
    if (n == 0) return 1;
    IntMat m = A;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; k++) {
        if (m.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; i++)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (long j = 0; j < n; j++) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; i++)
            for (long j = k + 1; j < n; j++)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

RatMat::RatMat(const IntMat& m) : rows(m.rows), cols(m.cols), a(m.a.size()) {
    for (size_t i = 0; i < m.a.size(); i++) a[i] = Rat(m.a[i]);
}

RatMat RatMat::identity(long n) {
    RatMat m(n, n);
    for (long i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols != o.rows) throw Error("RatMat: dimension mismatch in product");
    RatMat r(rows, o.cols);
    for (long i = 0; i < rows; i++)
        for (long k = 0; k < cols; k++) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (long j = 0; j < o.cols; j++) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

RatMat RatMat::inverse() const {
    if (rows != cols) throw Error("RatMat: inverse of non-square matrix");
    long n = rows;
    RatMat m = *this, inv = RatMat::identity(n);
    for (long c = 0; c < n; c++) {
        long p = -1;
        for (long i = c; i < n; i++)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) throw Error("RatMat: singular matrix");
        if (p != c)
            for (long j = 0; j < n; j++) {
                std::swap(m.at(c, j), m.at(p, j));
                std::swap(inv.at(c, j), inv.at(p, j));
            }
        Rat piv = m.at(c, c);
        for (long j = 0; j < n; j++) { m.at(c, j) /= piv; inv.at(c, j) /= piv; }
        for (long i = 0; i < n; i++) {
            if (i == c || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (long j = 0; j < n; j++) {
                m.at(i, j) -= f * m.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

bool RatMat::is_integral() const {
    for (const auto& x : a)
        if (denominator(x) != 1) return false;
    return true;
}

IntMat RatMat::to_int() const {
    if (!is_integral()) throw Error("RatMat: matrix is not integral");
    IntMat m(rows, cols);
    for (size_t i = 0; i < a.size(); i++) m.a[i] = numerator(a[i]);
    return m;
}

IntMat unimodular_inverse(const IntMat& U) {
    return RatMat(U).inverse().to_int();
}

} // namespace mg
