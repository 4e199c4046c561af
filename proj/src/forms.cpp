#include "metricgroup/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>

namespace mg {

QmodZ QuadraticForm::q(const Vec& x) const {
    Vec r = group.reduce(x);
    QmodZ acc;
    for (size_t i = 0; i < r.size(); i++) acc = acc + diag[i].times(r[i] * r[i]);
    for (size_t i = 0; i < r.size(); i++)
        for (size_t j = i + 1; j < r.size(); j++) acc = acc + cross[i][j].times(r[i] * r[j]);
    return acc;
}

QmodZ QuadraticForm::b(const Vec& x, const Vec& y) const {
    Vec rx = group.reduce(x), ry = group.reduce(y);
    QmodZ acc;
    for (size_t i = 0; i < rx.size(); i++) acc = acc + diag[i].times(2 * rx[i] * ry[i]);
    for (size_t i = 0; i < rx.size(); i++)
        for (size_t j = i + 1; j < rx.size(); j++)
            acc = acc + cross[i][j].times(rx[i] * ry[j] + rx[j] * ry[i]);
    return acc;
}

void QuadraticForm::validate() const {
    size_t k = group.ngens();
    if (diag.size() != k || cross.size() != k)
        throw Error("QuadraticForm: wrong data shape");
    for (size_t i = 0; i < k; i++) {
        if (cross[i].size() != k) throw Error("QuadraticForm: wrong data shape");
        if (!cross[i][i].is_zero()) throw Error("QuadraticForm: cross diagonal must vanish");
        long long d = group.factors[i];
        if (!diag[i].times(2 * d).is_zero() || !diag[i].times(d * d).is_zero())
            throw Error("QuadraticForm: q(e_i) incompatible with generator order");
        for (size_t j = 0; j < k; j++) {
            if (cross[i][j] != cross[j][i]) throw Error("QuadraticForm: cross must be symmetric");
            if (!cross[i][j].times(d).is_zero())
                throw Error("QuadraticForm: b(e_i,e_j) incompatible with generator order");
        }
    }
}

QuadraticForm make_form(FinAbGroup g, std::vector<QmodZ> diag,
                        std::vector<std::vector<QmodZ>> cross) {
    QuadraticForm f{std::move(g), std::move(diag), std::move(cross)};
    f.validate();
    return f;
}

QuadraticForm zero_form(const FinAbGroup& g) {
    size_t k = g.ngens();
    return QuadraticForm{g, std::vector<QmodZ>(k),
                         std::vector<std::vector<QmodZ>>(k, std::vector<QmodZ>(k))};
}

QuadraticForm negate(const QuadraticForm& f) {
    QuadraticForm r = f;
    for (auto& v : r.diag) v = -v;
    for (auto& row : r.cross)
        for (auto& v : row) v = -v;
    return r;
}

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
    std::vector<long long> factors = a.group.factors;
    factors.insert(factors.end(), b.group.factors.begin(), b.group.factors.end());
    size_t ka = a.group.ngens(), k = factors.size();
    QuadraticForm raw = zero_form(factors.empty() ? FinAbGroup() : FinAbGroup(factors));
    for (size_t i = 0; i < k; i++) {
        raw.diag[i] = i < ka ? a.diag[i] : b.diag[i - ka];
        for (size_t j = 0; j < k; j++) {
            if (i < ka && j < ka) raw.cross[i][j] = a.cross[i][j];
            if (i >= ka && j >= ka) raw.cross[i][j] = b.cross[i - ka][j - ka];
        }
    }
    if (raw.group.in_invariant_chain()) return raw;
    // regroup into invariant factors; the identity subquotient hands us the
    // canonical group together with lifted generators
    std::vector<Vec> gens;
    for (size_t i = 0; i < k; i++) gens.push_back(raw.group.gen(i));
    Subquotient sq = subquotient(raw.group, gens, {});
    size_t m = sq.group.ngens();
    std::vector<QmodZ> diag(m);
    std::vector<std::vector<QmodZ>> cross(m, std::vector<QmodZ>(m));
    for (size_t i = 0; i < m; i++) {
        diag[i] = raw.q(sq.lifts[i]);
        for (size_t j = 0; j < m; j++)
            if (i != j) cross[i][j] = raw.b(sq.lifts[i], sq.lifts[j]);
    }
    return make_form(sq.group, diag, cross);
}

QuadraticForm standard_u(long long k) {
    long long n = 1LL << k;
    QuadraticForm f = zero_form(FinAbGroup({n, n}));
    f.cross[0][1] = f.cross[1][0] = QmodZ(1, n);
    return f;
}

QuadraticForm standard_v(long long k) {
    long long n = 1LL << k;
    QuadraticForm f = standard_u(k);
    f.diag[0] = f.diag[1] = QmodZ(1, n);
    return f;
}

QuadraticForm cyclic_q(long long n, QmodZ v) {
    return make_form(FinAbGroup({n}), {v}, {{QmodZ()}});
}

namespace {

// rows of the bilinear pairing against the subgroup generators, scaled to a
// per-row integer modulus, ready for the mod-m kernel machinery
void pairing_rows(const QuadraticForm& f, const std::vector<Vec>& against, IntMat& m,
                  std::vector<long long>& moduli) {
    size_t k = f.group.ngens();
    m = IntMat(long(against.size()), long(k));
    moduli.assign(against.size(), 1);
    for (size_t t = 0; t < against.size(); t++) {
        std::vector<QmodZ> row;
        for (size_t i = 0; i < k; i++) row.push_back(f.b(f.group.gen(i), against[t]));
        long long l = denominator_lcm(row);
        for (size_t i = 0; i < k; i++)
            m.at(long(t), long(i)) = Int(row[i].num()) * (l / row[i].den());
        moduli[t] = l;
    }
}

std::vector<Vec> kernel_generators(const FinAbGroup& g, const IntMat& m,
                                   const std::vector<long long>& moduli) {
    IntMat basis = kernel_lattice_mod(m, moduli);
    std::vector<Vec> gens;
    for (long j = 0; j < basis.cols; j++) {
        Vec v(g.ngens(), 0);
        for (size_t i = 0; i < g.ngens(); i++) {
            Int e = basis.at(long(i), j) % g.factors[i];
            if (e < 0) e += g.factors[i];
            v[i] = e.convert_to<long long>();
        }
        gens.push_back(v);
    }
    return gens;
}

} // namespace

Subgroup radical(const QuadraticForm& f) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < f.group.ngens(); i++) gens.push_back(f.group.gen(i));
    IntMat m;
    std::vector<long long> moduli;
    pairing_rows(f, gens, m, moduli);
    return generated_subgroup(f.group, kernel_generators(f.group, m, moduli));
}

bool is_nondegenerate(const QuadraticForm& f) { return radical(f).order() == 1; }

long long gauss_milgram_signature(const QuadraticForm& f) {
    if (!is_nondegenerate(f)) throw DegenerateForm("Gauss-Milgram needs a nondegenerate form");
    long long n = f.group.order();
    std::complex<double> sum = 0;
    for (long long idx = 0; idx < n; idx++) {
        QmodZ v = f.q(f.group.element(idx));
        double ang = 2.0 * M_PI * double(v.num()) / double(v.den());
        sum += std::polar(1.0, ang);
    }
    double mag = std::abs(sum);
    if (std::abs(mag / std::sqrt(double(n)) - 1.0) > 1e-9)
        throw NumericalInconsistency("Gauss-Milgram sum has the wrong modulus");
    double sig = std::arg(sum) * 8.0 / (2.0 * M_PI);
    double snapped = std::round(sig);
    if (std::abs(sig - snapped) > 1e-6)
        throw NumericalInconsistency("Gauss-Milgram phase is not an eighth root of unity");
    long long s = (long long)snapped % 8;
    return s < 0 ? s + 8 : s;
}

bool is_isotropic(const QuadraticForm& f, const Subgroup& h) {
    for (long long idx : h.elems)
        if (!f.q(f.group.element(idx)).is_zero()) return false;
    return true;
}

std::vector<Subgroup> isotropic_subgroups(const QuadraticForm& f) {
    std::vector<Subgroup> out;
    for (auto& s : enumerate_subgroups(f.group))
        if (is_isotropic(f, s)) out.push_back(s);
    return out;
}

std::vector<Subgroup> lagrangian_subgroups(const QuadraticForm& f) {
    std::vector<Subgroup> out;
    long long n = f.group.order();
    for (auto& s : isotropic_subgroups(f))
        if (s.order() * s.order() == n) out.push_back(s);
    return out;
}

Subgroup orthogonal_complement(const QuadraticForm& f, const Subgroup& h) {
    IntMat m;
    std::vector<long long> moduli;
    pairing_rows(f, h.gens, m, moduli);
    if (h.gens.empty()) return full_subgroup(f.group);
    return generated_subgroup(f.group, kernel_generators(f.group, m, moduli));
}

InducedForm induced_form(const QuadraticForm& f, const Subgroup& h) {
    if (!is_isotropic(f, h)) throw NotIsotropic("induced form needs an isotropic subgroup");
    Subgroup perp = orthogonal_complement(f, h);
    Subquotient sq = subquotient(f.group, perp.gens, h.gens);
    size_t m = sq.group.ngens();
    std::vector<QmodZ> diag(m);
    std::vector<std::vector<QmodZ>> cross(m, std::vector<QmodZ>(m));
    for (size_t i = 0; i < m; i++) {
        diag[i] = f.q(sq.lifts[i]);
        for (size_t j = 0; j < m; j++)
            if (i != j) cross[i][j] = f.b(sq.lifts[i], sq.lifts[j]);
    }
    return InducedForm{make_form(sq.group, diag, cross), sq};
}

namespace {

// backtracking over generator images; stops after the first hit unless all
// equivalences are wanted
void equivalence_search(const QuadraticForm& a, const QuadraticForm& b, bool all,
                        std::vector<GroupHom>& out) {
    // different presentations of the same group are fine: generator e_i has
    // exact order d_i in either, so the candidate filter below still applies
    if (a.group.order() != b.group.order()) return;
    size_t k = a.group.ngens();
    long long n = b.group.order();
    std::vector<std::vector<Vec>> cands(k);
    for (size_t i = 0; i < k; i++)
        for (long long idx = 0; idx < n; idx++) {
            Vec y = b.group.element(idx);
            if (b.group.elem_order(y) == a.group.factors[i] && b.q(y) == a.diag[i])
                cands[i].push_back(y);
        }
    std::vector<Vec> images(k);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == k) {
            if ((long long)generated_subgroup(b.group, images).order() != n) return false;
            out.push_back(GroupHom{a.group, b.group, images});
            return !all;
        }
        for (const auto& y : cands[i]) {
            bool ok = true;
            for (size_t l = 0; l < i && ok; l++)
                if (b.b(images[l], y) != a.cross[l][i]) ok = false;
            if (!ok) continue;
            images[i] = y;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    if (k == 0) {
        out.push_back(GroupHom{a.group, b.group, {}});
        return;
    }
    rec(0);
}

} // namespace

std::optional<GroupHom> form_equivalence(const QuadraticForm& a, const QuadraticForm& b) {
    std::vector<GroupHom> out;
    equivalence_search(a, b, false, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

std::vector<GroupHom> form_automorphisms(const QuadraticForm& f) {
    std::vector<GroupHom> out;
    equivalence_search(f, f, true, out);
    return out;
}

std::vector<QuadraticForm> enumerate_forms(const FinAbGroup& g) {
    size_t k = g.ngens();
    // one slot per diagonal entry, then one per unordered generator pair
    std::vector<long long> radix;
    for (size_t i = 0; i < k; i++)
        radix.push_back(g.factors[i] % 2 == 0 ? 2 * g.factors[i] : g.factors[i]);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < k; i++)
        for (size_t j = i + 1; j < k; j++) {
            pairs.push_back({i, j});
            radix.push_back(std::gcd(g.factors[i], g.factors[j]));
        }
    long long total = 1;
    for (long long r : radix) {
        if (__builtin_mul_overflow(total, r, &total) || total > 2'000'000)
            throw TooLarge("enumerate_forms: parameter space too big");
    }
    std::vector<QuadraticForm> out;
    std::vector<long long> idx(radix.size(), 0);
    for (long long t = 0; t < total; t++) {
        QuadraticForm f = zero_form(g);
        for (size_t i = 0; i < k; i++) f.diag[i] = QmodZ(idx[i], radix[i]);
        for (size_t p = 0; p < pairs.size(); p++) {
            auto [i, j] = pairs[p];
            f.cross[i][j] = f.cross[j][i] = QmodZ(idx[k + p], radix[k + p]);
        }
        out.push_back(std::move(f));
        for (size_t s = radix.size(); s-- > 0;) {
            if (++idx[s] < radix[s]) break;
            idx[s] = 0;
        }
    }
    return out;
}

std::vector<QuadraticForm> enumerate_forms_up_to_equivalence(const FinAbGroup& g,
                                                             bool nondegenerate_only) {
    std::vector<QuadraticForm> reps;
    std::map<std::vector<QmodZ>, std::vector<size_t>> by_values;
    for (auto& f : enumerate_forms(g)) {
        if (nondegenerate_only && !is_nondegenerate(f)) continue;
        auto key = value_multiset(f);
        bool fresh = true;
        for (size_t ri : by_values[key])
            if (form_equivalence(f, reps[ri])) {
                fresh = false;
                break;
            }
        if (fresh) {
            by_values[key].push_back(reps.size());
            reps.push_back(f);
        }
    }
    return reps;
}

std::vector<QmodZ> value_multiset(const QuadraticForm& f) {
    long long n = f.group.order();
    std::vector<QmodZ> vals;
    vals.reserve(size_t(n));
    for (long long idx = 0; idx < n; idx++) vals.push_back(f.q(f.group.element(idx)));
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace mg
