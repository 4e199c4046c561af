#include "metricgroup/moddata.hpp"

#include <cmath>
#include <numeric>

#include "metricgroup/errors.hpp"

namespace mg {

namespace {

using Cplx = std::complex<double>;
using CMat = std::vector<std::vector<Cplx>>;

constexpr double kTol = 1e-9;

Cplx unit_phase(const QmodZ& v) {
    double t = 2.0 * M_PI * double(v.num()) / double(v.den());
    return Cplx(std::cos(t), std::sin(t));
}

CMat mat_mul(const CMat& a, const CMat& b) {
    size_t n = a.size();
    CMat out(n, std::vector<Cplx>(n, Cplx(0, 0)));
    for (size_t i = 0; i < n; i++)
        for (size_t k = 0; k < n; k++) {
            Cplx aik = a[i][k];
            if (aik == Cplx(0, 0)) continue;
            for (size_t j = 0; j < n; j++) out[i][j] += aik * b[k][j];
        }
    return out;
}

double max_entry_diff(const CMat& a, const CMat& b) {
    double worst = 0;
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < a.size(); j++) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

} // namespace

PointedModularData build_modular_data(const QuadraticForm& q) {
    if (!is_nondegenerate(q)) throw DegenerateForm("modular data needs a nondegenerate form");
    const FinAbGroup& g = q.group;
    long long n = g.order();
    long long sigma = gauss_milgram_signature(q);

    std::vector<Vec> elems;
    elems.reserve(size_t(n));
    for (long long i = 0; i < n; i++) elems.push_back(g.element(i));

    PointedModularData d;
    d.group = g;
    d.q = q;
    double root = 1.0 / std::sqrt(double(n));
    d.S.assign(size_t(n), std::vector<Cplx>(size_t(n), Cplx(0, 0)));
    d.T.assign(size_t(n), Cplx(0, 0));
    for (long long a = 0; a < n; a++) {
        d.T[size_t(a)] = unit_phase(q.q(elems[size_t(a)]));
        for (long long b = 0; b < n; b++)
            d.S[size_t(a)][size_t(b)] =
                root * unit_phase(QmodZ(0, 1) - q.b(elems[size_t(a)], elems[size_t(b)]));
    }
    d.charge = unit_phase(QmodZ(sigma, 8));

    // unitarity
    CMat sdag(size_t(n), std::vector<Cplx>(size_t(n), Cplx(0, 0)));
    for (long long a = 0; a < n; a++)
        for (long long b = 0; b < n; b++) sdag[size_t(a)][size_t(b)] = std::conj(d.S[size_t(b)][size_t(a)]);
    CMat ident(size_t(n), std::vector<Cplx>(size_t(n), Cplx(0, 0)));
    for (long long a = 0; a < n; a++) ident[size_t(a)][size_t(a)] = Cplx(1, 0);
    if (max_entry_diff(mat_mul(d.S, sdag), ident) > kTol)
        throw NumericalInconsistency("S matrix failed unitarity");

    // S^2 is the negation permutation, and S^4 the identity
    CMat s2 = mat_mul(d.S, d.S);
    CMat perm(size_t(n), std::vector<Cplx>(size_t(n), Cplx(0, 0)));
    for (long long b = 0; b < n; b++)
        perm[size_t(g.index_of(g.neg(elems[size_t(b)])))][size_t(b)] = Cplx(1, 0);
    if (max_entry_diff(s2, perm) > kTol)
        throw NumericalInconsistency("S^2 is not the negation permutation");
    if (max_entry_diff(mat_mul(s2, s2), ident) > kTol)
        throw NumericalInconsistency("S^4 is not the identity");

    // (ST)^3 = charge * S^2
    CMat st = d.S;
    for (long long a = 0; a < n; a++)
        for (long long b = 0; b < n; b++) st[size_t(a)][size_t(b)] *= d.T[size_t(b)];
    CMat st3 = mat_mul(mat_mul(st, st), st);
    CMat cs2 = s2;
    for (auto& row : cs2)
        for (Cplx& v : row) v *= d.charge;
    if (max_entry_diff(st3, cs2) > kTol)
        throw NumericalInconsistency("(ST)^3 does not match charge * S^2");

    // charge is an 8th root of unity equal to the normalized Gauss sum
    Cplx pow8(1, 0);
    for (int i = 0; i < 8; i++) pow8 *= d.charge;
    if (std::abs(pow8 - Cplx(1, 0)) > kTol)
        throw NumericalInconsistency("charge is not an 8th root of unity");
    Cplx gauss(0, 0);
    for (long long a = 0; a < n; a++) gauss += d.T[size_t(a)];
    gauss *= root;
    if (std::abs(gauss - d.charge) > kTol)
        throw NumericalInconsistency("charge does not match the Gauss sum");

    return d;
}

long long t_order(const PointedModularData& d) {
    return denominator_lcm(value_multiset(d.q));
}

bool verify_conjugate_pair(const QuadraticForm& q) {
    PointedModularData a = build_modular_data(q);
    PointedModularData b = build_modular_data(negate(q));
    long long n = a.group.order();
    for (long long x = 0; x < n; x++) {
        if (std::abs(b.T[size_t(x)] - std::conj(a.T[size_t(x)])) > kTol) return false;
        for (long long y = 0; y < n; y++)
            if (std::abs(b.S[size_t(x)][size_t(y)] - std::conj(a.S[size_t(x)][size_t(y)])) > kTol)
                return false;
    }
    return std::abs(a.charge * b.charge - Cplx(1, 0)) <= kTol;
}

} // namespace mg
