#include "metricgroup/cocycles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "metricgroup/errors.hpp"

namespace mg {

namespace {

long long max_table_order() { return order_bound(64); }
long long max_solve_order() { return order_bound(12); }

// addition on element indices, dense n x n
std::vector<long long> add_table(const FinAbGroup& g) {
    long long n = g.order();
    std::vector<long long> t(size_t(n * n), 0);
    std::vector<Vec> elems;
    elems.reserve(size_t(n));
    for (long long i = 0; i < n; i++) elems.push_back(g.element(i));
    for (long long i = 0; i < n; i++)
        for (long long j = 0; j < n; j++)
            t[size_t(i * n + j)] = g.index_of(g.add(elems[size_t(i)], elems[size_t(j)]));
    return t;
}

QmodZ phi_star_idx(const Cocycle3& w, long long a, long long b, long long c) {
    return w.at(a, b, c) - w.at(b, a, c) + w.at(b, c, a) - w.at(a, c, b) +
           w.at(c, a, b) - w.at(c, b, a);
}

} // namespace

Cocycle3::Cocycle3(FinAbGroup g, std::vector<QmodZ> vals)
    : group(std::move(g)), values(std::move(vals)) {
    long long n = group.order();
    if (n > max_table_order())
        throw TooLarge("cocycle table bounded at group order " +
                       std::to_string(max_table_order()));
    if (values.size() != size_t(n * n * n)) throw Error("cocycle table size mismatch");
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++)
            for (long long z = 0; z < n; z++)
                if ((x == 0 || y == 0 || z == 0) && at(x, y, z) != QmodZ(0, 1))
                    throw Error("cocycle table not normalized");
}

QmodZ Cocycle3::operator()(const Vec& x, const Vec& y, const Vec& z) const {
    return at(group.index_of(group.reduce(x)), group.index_of(group.reduce(y)),
              group.index_of(group.reduce(z)));
}

Cocycle3 operator+(const Cocycle3& a, const Cocycle3& b) {
    if (a.group != b.group) throw GroupMismatch("cocycle groups differ");
    std::vector<QmodZ> vals(a.values.size(), QmodZ(0, 1));
    for (size_t i = 0; i < vals.size(); i++) vals[i] = a.values[i] + b.values[i];
    return Cocycle3(a.group, std::move(vals));
}

Cocycle3 operator-(const Cocycle3& a, const Cocycle3& b) {
    if (a.group != b.group) throw GroupMismatch("cocycle groups differ");
    std::vector<QmodZ> vals(a.values.size(), QmodZ(0, 1));
    for (size_t i = 0; i < vals.size(); i++) vals[i] = a.values[i] - b.values[i];
    return Cocycle3(a.group, std::move(vals));
}

Cochain2::Cochain2(FinAbGroup g, std::vector<QmodZ> vals)
    : group(std::move(g)), values(std::move(vals)) {
    long long n = group.order();
    if (n > max_table_order())
        throw TooLarge("cochain table bounded at group order " +
                       std::to_string(max_table_order()));
    if (values.size() != size_t(n * n)) throw Error("cochain table size mismatch");
    for (long long x = 0; x < n; x++)
        if (at(x, 0) != QmodZ(0, 1) || at(0, x) != QmodZ(0, 1))
            throw Error("cochain table not normalized");
}

Cocycle3 zero_cocycle(const FinAbGroup& g) {
    long long n = g.order();
    return Cocycle3(g, std::vector<QmodZ>(size_t(n * n * n), QmodZ(0, 1)));
}

Cocycle3 standard_cyclic_cocycle(long long n, long long a) {
    if (n < 1) throw Error("cyclic cocycle needs n >= 1");
    if (n == 1) return zero_cocycle(FinAbGroup(std::vector<long long>{}));
    FinAbGroup g(std::vector<long long>{n});
    QmodZ base(a, n);
    std::vector<QmodZ> vals(size_t(n * n * n), QmodZ(0, 1));
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++)
            for (long long z = 0; z < n; z++)
                if (y + z >= n) vals[size_t((x * n + y) * n + z)] = base.times(x);
    return Cocycle3(g, std::move(vals));
}

Cocycle3 volume_cocycle_z2cube() {
    FinAbGroup g(std::vector<long long>{2, 2, 2});
    long long n = g.order();
    std::vector<QmodZ> vals(size_t(n * n * n), QmodZ(0, 1));
    for (long long x = 0; x < n; x++) {
        Vec a = g.element(x);
        for (long long y = 0; y < n; y++) {
            Vec b = g.element(y);
            for (long long z = 0; z < n; z++) {
                Vec c = g.element(z);
                vals[size_t((x * n + y) * n + z)] = QmodZ(1, 2).times(a[0] * b[1] * c[2]);
            }
        }
    }
    return Cocycle3(g, std::move(vals));
}

Cocycle3 coboundary(const Cochain2& phi) {
    const FinAbGroup& g = phi.group;
    long long n = g.order();
    std::vector<long long> addt = add_table(g);
    std::vector<QmodZ> vals(size_t(n * n * n), QmodZ(0, 1));
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++) {
            long long xy = addt[size_t(x * n + y)];
            for (long long z = 0; z < n; z++) {
                long long yz = addt[size_t(y * n + z)];
                vals[size_t((x * n + y) * n + z)] =
                    phi.at(y, z) - phi.at(xy, z) + phi.at(x, yz) - phi.at(x, y);
            }
        }
    return Cocycle3(g, std::move(vals));
}

std::optional<std::array<long long, 4>> first_cocycle_violation(const Cocycle3& w) {
    const FinAbGroup& g = w.group;
    long long n = g.order();
    std::vector<long long> addt = add_table(g);
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++) {
            long long xy = addt[size_t(x * n + y)];
            for (long long z = 0; z < n; z++) {
                long long yz = addt[size_t(y * n + z)];
                for (long long v = 0; v < n; v++) {
                    long long zv = addt[size_t(z * n + v)];
                    QmodZ lhs = w.at(y, z, v) - w.at(xy, z, v) + w.at(x, yz, v) -
                                w.at(x, y, zv) + w.at(x, y, z);
                    if (lhs != QmodZ(0, 1)) return std::array<long long, 4>{x, y, z, v};
                }
            }
        }
    return std::nullopt;
}

bool is_cocycle(const Cocycle3& w) { return !first_cocycle_violation(w).has_value(); }

std::optional<Cochain2> is_coboundary(const Cocycle3& w) {
    const FinAbGroup& g = w.group;
    long long n = g.order();
    if (n > max_solve_order())
        throw TooLarge("coboundary solve bounded at group order " +
                       std::to_string(max_solve_order()));
    std::vector<QmodZ> vals(size_t(n * n), QmodZ(0, 1));
    if (n == 1) return Cochain2(g, vals);

    long long m = 1;
    for (const QmodZ& v : w.values) m = std::lcm(m, v.den());
    long long mp = m * n;

    std::vector<long long> addt = add_table(g);
    long long nz = n - 1;
    auto col = [nz](long long a, long long b) { return (a - 1) * nz + (b - 1); };

    // rows repeat heavily across the argument cube, keep one copy of each
    std::set<std::pair<std::vector<std::pair<long long, int>>, long long>> rows;
    for (long long x = 1; x < n; x++)
        for (long long y = 1; y < n; y++)
            for (long long z = 1; z < n; z++) {
                std::map<long long, int> terms;
                terms[col(y, z)] += 1;
                long long xy = addt[size_t(x * n + y)];
                if (xy != 0) terms[col(xy, z)] -= 1;
                long long yz = addt[size_t(y * n + z)];
                if (yz != 0) terms[col(x, yz)] += 1;
                terms[col(x, y)] -= 1;
                std::vector<std::pair<long long, int>> row;
                for (const auto& [c, k] : terms)
                    if (k != 0) row.push_back({c, k});
                const QmodZ& v = w.at(x, y, z);
                long long rhs = v.num() * (mp / v.den()) % mp;
                if (rhs < 0) rhs += mp;
                if (row.empty()) {
                    if (rhs != 0) return std::nullopt;
                    continue;
                }
                rows.insert({std::move(row), rhs});
            }

    IntMat mat(long(rows.size()), long(nz * nz));
    Vec target;
    target.reserve(rows.size());
    long r = 0;
    for (const auto& [row, rhs] : rows) {
        for (const auto& [c, k] : row) mat.at(r, long(c)) = k;
        target.push_back(rhs);
        r++;
    }
    auto sol = solve_mod(mat, std::vector<long long>(rows.size(), mp), target);
    if (!sol) return std::nullopt;
    for (long long a = 1; a < n; a++)
        for (long long b = 1; b < n; b++)
            vals[size_t(a * n + b)] = QmodZ((*sol)[size_t(col(a, b))], mp);
    Cochain2 phi(g, std::move(vals));
    if (coboundary(phi).values != w.values) throw Error("coboundary witness failed verification");
    return phi;
}

QmodZ phi_star(const Cocycle3& w, const Vec& a, const Vec& b, const Vec& c) {
    const FinAbGroup& g = w.group;
    return phi_star_idx(w, g.index_of(g.reduce(a)), g.index_of(g.reduce(b)),
                        g.index_of(g.reduce(c)));
}

bool ExteriorCubeMap::is_zero() const {
    for (const QmodZ& v : values)
        if (v != QmodZ(0, 1)) return false;
    return true;
}

ExteriorCubeMap phi_star_hom(const Cocycle3& w) {
    const FinAbGroup& g = w.group;
    ExteriorCubeMap out;
    std::vector<long long> factors;
    size_t k = g.ngens();
    for (size_t i = 0; i < k; i++)
        for (size_t j = i + 1; j < k; j++)
            for (size_t l = j + 1; l < k; l++) {
                long long d = std::gcd(std::gcd(g.factors[i], g.factors[j]), g.factors[l]);
                if (d <= 1) continue;
                QmodZ v = phi_star(w, g.gen(i), g.gen(j), g.gen(l));
                if (v.times(d) != QmodZ(0, 1))
                    throw Error("phi_star value order exceeds the basis order");
                factors.push_back(d);
                out.basis.push_back({i, j, l});
                out.values.push_back(v);
            }
    out.cube = FinAbGroup(std::move(factors));
    return out;
}

std::vector<QmodZ> phi_star_image(const Cocycle3& w) {
    long long n = w.group.order();
    std::set<QmodZ> seen;
    for (long long a = 0; a < n; a++)
        for (long long b = 0; b < n; b++)
            for (long long c = 0; c < n; c++) seen.insert(phi_star_idx(w, a, b, c));
    return std::vector<QmodZ>(seen.begin(), seen.end());
}

bool is_pointed_class(const Cocycle3& w) {
    long long n = w.group.order();
    for (long long a = 0; a < n; a++)
        for (long long b = 0; b < n; b++)
            for (long long c = 0; c < n; c++)
                if (phi_star_idx(w, a, b, c) != QmodZ(0, 1)) return false;
    return true;
}

bool is_abelian_cocycle(const AbelianCocycle& ac) {
    const FinAbGroup& g = ac.omega.group;
    long long n = g.order();
    if (ac.c.size() != size_t(n * n)) return false;
    if (!is_cocycle(ac.omega)) return false;
    const Cocycle3& w = ac.omega;
    std::vector<long long> addt = add_table(g);
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++) {
            long long xy = addt[size_t(x * n + y)];
            for (long long z = 0; z < n; z++) {
                long long yz = addt[size_t(y * n + z)];
                QmodZ h1 = ac.c_at(x, yz) - ac.c_at(x, y) - ac.c_at(x, z) -
                           (w.at(x, y, z) - w.at(y, x, z) + w.at(y, z, x));
                if (h1 != QmodZ(0, 1)) return false;
                QmodZ h2 = ac.c_at(xy, z) - ac.c_at(x, z) - ac.c_at(y, z) -
                           (w.at(x, z, y) - w.at(x, y, z) - w.at(z, x, y));
                if (h2 != QmodZ(0, 1)) return false;
            }
        }
    return true;
}

AbelianCocycle abelian_cocycle_from_form(const QuadraticForm& q) {
    const FinAbGroup& g = q.group;
    long long n = g.order();
    if (n > max_table_order())
        throw TooLarge("cocycle table bounded at group order " +
                       std::to_string(max_table_order()));
    size_t k = g.ngens();
    std::vector<QmodZ> eta(k, QmodZ(0, 1));
    for (size_t i = 0; i < k; i++) eta[i] = q.diag[i].times(g.factors[i]);

    std::vector<Vec> elems;
    elems.reserve(size_t(n));
    for (long long i = 0; i < n; i++) elems.push_back(g.element(i));

    std::vector<QmodZ> wv(size_t(n * n * n), QmodZ(0, 1));
    std::vector<QmodZ> cv(size_t(n * n), QmodZ(0, 1));
    for (long long x = 0; x < n; x++) {
        const Vec& xv = elems[size_t(x)];
        for (long long y = 0; y < n; y++) {
            const Vec& yv = elems[size_t(y)];
            QmodZ cval(0, 1);
            for (size_t i = 0; i < k; i++) {
                cval = cval + q.diag[i].times(xv[i] * yv[i]);
                for (size_t j = i + 1; j < k; j++) cval = cval + q.cross[i][j].times(xv[i] * yv[j]);
            }
            cv[size_t(x * n + y)] = cval;
            for (long long z = 0; z < n; z++) {
                const Vec& zv = elems[size_t(z)];
                QmodZ wval(0, 1);
                for (size_t i = 0; i < k; i++)
                    if (yv[i] + zv[i] >= g.factors[i]) wval = wval + eta[i].times(xv[i]);
                wv[size_t((x * n + y) * n + z)] = wval;
            }
        }
    }
    AbelianCocycle ac{Cocycle3(g, std::move(wv)), std::move(cv)};
    for (long long a = 0; a < n; a++)
        if (ac.c_at(a, a) != q.q(elems[size_t(a)])) throw Error("abelian cocycle trace mismatch");
    return ac;
}

Cocycle3 restrict_to_cyclic(const Cocycle3& w, const Subgroup& h) {
    if (h.parent != w.group) throw GroupMismatch("subgroup lives over a different group");
    std::vector<Vec> gens = minimal_generators(w.group, h.elems);
    if (gens.size() > 1) throw NotCyclic("subgroup is not cyclic");
    long long m = h.order();
    FinAbGroup zm = m > 1 ? FinAbGroup(std::vector<long long>{m})
                          : FinAbGroup(std::vector<long long>{});
    std::vector<long long> pw(size_t(m), 0);
    Vec cur = w.group.zero();
    for (long long j = 1; j < m; j++) {
        cur = w.group.add(cur, gens[0]);
        pw[size_t(j)] = w.group.index_of(cur);
    }
    std::vector<QmodZ> vals(size_t(m * m * m), QmodZ(0, 1));
    for (long long x = 0; x < m; x++)
        for (long long y = 0; y < m; y++)
            for (long long z = 0; z < m; z++)
                vals[size_t((x * m + y) * m + z)] =
                    w.at(pw[size_t(x)], pw[size_t(y)], pw[size_t(z)]);
    return Cocycle3(zm, std::move(vals));
}

long long cyclic_class_order(const Cocycle3& w) {
    if (w.group.ngens() > 1) throw NotCyclic("class order invariant needs a cyclic group");
    long long n = w.group.order();
    if (n == 1) return 1;
    QmodZ inv(0, 1);
    for (long long j = 0; j < n; j++) inv = inv + w.at(1, j, 1);
    return inv.order();
}

std::vector<Subgroup> maximal_cyclic_subgroups(const FinAbGroup& g) {
    std::vector<Subgroup> cyclic;
    for (Subgroup& h : enumerate_subgroups(g)) {
        bool cyc = h.order() == 1;
        for (long long e : h.elems)
            if (g.elem_order(g.element(e)) == h.order()) {
                cyc = true;
                break;
            }
        if (cyc) cyclic.push_back(std::move(h));
    }
    std::vector<Subgroup> out;
    for (Subgroup& h : cyclic) {
        bool maximal = true;
        for (const Subgroup& h2 : cyclic) {
            if (h2.order() <= h.order()) continue;
            if (std::includes(h2.elems.begin(), h2.elems.end(), h.elems.begin(), h.elems.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(std::move(h));
    }
    return out;
}

long long fsexp_from_cocycle(const Cocycle3& w) {
    long long out = 1;
    for (const Subgroup& h : maximal_cyclic_subgroups(w.group))
        out = std::lcm(out, cyclic_class_order(restrict_to_cyclic(w, h)) * h.order());
    return out;
}

long long fsexp_pointed(const QuadraticForm& q) {
    return denominator_lcm(value_multiset(q));
}

FsexpReport fsexp_consistency(const GlueTriple& t, const Cocycle3& w) {
    if (t.G != w.group) throw GroupMismatch("cocycle group differs from the triple base");
    FsexpReport rep;
    rep.pointed = fsexp_pointed(t.q);
    rep.cocycle = fsexp_from_cocycle(w);
    rep.match = rep.pointed == rep.cocycle;
    return rep;
}

long long dihedral_class_order(long long m) {
    if (m < 3 || m % 2 == 0) throw Error("dihedral order check needs odd m >= 3");
    return std::lcm(m, 2LL);
}

} // namespace mg
