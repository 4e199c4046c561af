#include "metricgroup/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace mg {

namespace {

long long to_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw TooLarge("integer out of 64-bit range");
    return v.convert_to<long long>();
}

long long pos_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

FinAbGroup::FinAbGroup(std::vector<long long> f) : factors(std::move(f)) {
    for (long long d : factors)
        if (d < 2) throw Error("FinAbGroup: factors must be >= 2");
}

long long FinAbGroup::order() const {
    long long n = 1;
    for (long long d : factors) {
        if (__builtin_mul_overflow(n, d, &n)) throw TooLarge("group order overflow");
    }
    return n;
}

long long FinAbGroup::exponent() const {
    long long e = 1;
    for (long long d : factors) e = std::lcm(e, d);
    return e;
}

bool FinAbGroup::in_invariant_chain() const {
    for (size_t i = 0; i + 1 < factors.size(); i++)
        if (factors[i + 1] % factors[i] != 0) return false;
    return true;
}

Vec FinAbGroup::reduce(Vec v) const {
    if (v.size() != factors.size()) throw GroupMismatch("element has wrong number of coordinates");
    for (size_t i = 0; i < v.size(); i++) v[i] = pos_mod(v[i], factors[i]);
    return v;
}

Vec FinAbGroup::add(const Vec& a, const Vec& b) const {
    Vec r(factors.size());
    for (size_t i = 0; i < factors.size(); i++) r[i] = pos_mod(a[i] + b[i], factors[i]);
    return r;
}

Vec FinAbGroup::neg(const Vec& a) const {
    Vec r(factors.size());
    for (size_t i = 0; i < factors.size(); i++) r[i] = pos_mod(-a[i], factors[i]);
    return r;
}

Vec FinAbGroup::smul(long long k, const Vec& a) const {
    Vec r(factors.size());
    for (size_t i = 0; i < factors.size(); i++) r[i] = pos_mod((k % factors[i]) * a[i], factors[i]);
    return r;
}

long long FinAbGroup::elem_order(const Vec& a) const {
    long long o = 1;
    for (size_t i = 0; i < factors.size(); i++) {
        long long v = pos_mod(a[i], factors[i]);
        o = std::lcm(o, factors[i] / std::gcd(factors[i], v == 0 ? factors[i] : v));
    }
    return o;
}

Vec FinAbGroup::gen(size_t i) const {
    Vec r = zero();
    r[i] = 1;
    return r;
}

long long FinAbGroup::index_of(const Vec& a) const {
    long long idx = 0;
    for (size_t i = 0; i < factors.size(); i++) idx = idx * factors[i] + pos_mod(a[i], factors[i]);
    return idx;
}

Vec FinAbGroup::element(long long idx) const {
    Vec r(factors.size());
    for (size_t i = factors.size(); i-- > 0;) {
        r[i] = idx % factors[i];
        idx /= factors[i];
    }
    return r;
}

QmodZ dual_pairing(const FinAbGroup& g, const Vec& chi, const Vec& x) {
    QmodZ v;
    for (size_t i = 0; i < g.factors.size(); i++)
        v = v + QmodZ(chi[i] * x[i], g.factors[i]);
    return v;
}

FinAbGroup product_group(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<long long> f = a.factors;
    f.insert(f.end(), b.factors.begin(), b.factors.end());
    return FinAbGroup(f);
}

Vec pair_elem(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vec proj_left(const FinAbGroup& a, const Vec& ab) {
    return Vec(ab.begin(), ab.begin() + a.ngens());
}

Vec proj_right(const FinAbGroup& a, const Vec& ab) {
    return Vec(ab.begin() + a.ngens(), ab.end());
}

bool Subgroup::contains(const FinAbGroup& g, const Vec& v) const {
    return contains_index(g.index_of(v));
}

bool Subgroup::contains_index(long long idx) const {
    return std::binary_search(elems.begin(), elems.end(), idx);
}

Subgroup generated_subgroup(const FinAbGroup& g, const std::vector<Vec>& gens) {
    long long n = g.order();
    std::vector<char> seen(size_t(n), 0);
    std::vector<long long> queue{0};
    seen[0] = 1;
    std::vector<Vec> rgens;
    for (const auto& v : gens) rgens.push_back(g.reduce(v));
    for (size_t qi = 0; qi < queue.size(); qi++) {
        Vec x = g.element(queue[qi]);
        for (const auto& h : rgens) {
            long long y = g.index_of(g.add(x, h));
            if (!seen[size_t(y)]) {
                seen[size_t(y)] = 1;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return Subgroup{g, rgens, queue};
}

Subgroup trivial_subgroup(const FinAbGroup& g) { return generated_subgroup(g, {}); }

Subgroup full_subgroup(const FinAbGroup& g) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < g.ngens(); i++) gens.push_back(g.gen(i));
    return generated_subgroup(g, gens);
}

std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& g, long long max_order) {
    long long n = g.order();
    if (n > max_order) throw TooLarge("enumerate_subgroups: group order exceeds bound");
    std::set<std::vector<long long>> seen;
    std::vector<Subgroup> out;
    std::vector<size_t> queue;
    Subgroup triv = trivial_subgroup(g);
    seen.insert(triv.elems);
    out.push_back(triv);
    queue.push_back(0);
    for (size_t qi = 0; qi < queue.size(); qi++) {
        Subgroup cur = out[queue[qi]]; // copy: out grows below
        for (long long idx = 1; idx < n; idx++) {
            if (cur.contains_index(idx)) continue;
            std::vector<Vec> gens = cur.gens;
            gens.push_back(g.element(idx));
            Subgroup ext = generated_subgroup(g, gens);
            if (seen.insert(ext.elems).second) {
                out.push_back(ext);
                queue.push_back(out.size() - 1);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.elems < b.elems;
    });
    return out;
}

Vec GroupHom::apply(const Vec& x) const {
    Vec r = dst.zero();
    for (size_t i = 0; i < src.ngens(); i++)
        r = dst.add(r, dst.smul(x[i], images[i]));
    return r;
}

bool GroupHom::well_defined() const {
    if (images.size() != src.ngens()) return false;
    for (size_t i = 0; i < src.ngens(); i++)
        if (src.factors[i] % dst.elem_order(dst.reduce(images[i])) != 0) return false;
    return true;
}

bool GroupHom::is_injective() const {
    long long n = src.order();
    std::vector<char> hit(size_t(dst.order()), 0);
    for (long long i = 0; i < n; i++) {
        long long y = dst.index_of(apply(src.element(i)));
        if (hit[size_t(y)]) return false;
        hit[size_t(y)] = 1;
    }
    return true;
}

bool GroupHom::is_surjective() const {
    return (long long)generated_subgroup(dst, images).elems.size() == dst.order();
}

GroupHom identity_hom(const FinAbGroup& g) {
    std::vector<Vec> im;
    for (size_t i = 0; i < g.ngens(); i++) im.push_back(g.gen(i));
    return GroupHom{g, g, im};
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (outer.src != inner.dst) throw GroupMismatch("compose: middle groups differ");
    std::vector<Vec> im;
    for (const auto& v : inner.images) im.push_back(outer.apply(v));
    return GroupHom{inner.src, outer.dst, im};
}

std::vector<GroupHom> enumerate_isos(const FinAbGroup& g, const FinAbGroup& h,
                                     long long max_order) {
    std::vector<GroupHom> out;
    if (g.order() != h.order()) return out;
    if (g.order() > max_order) throw TooLarge("enumerate_isos: group order exceeds bound");
    size_t k = g.ngens();
    std::vector<Vec> images(k);
    long long n = h.order();
    // candidate images per generator: elements of exactly the right order
    std::vector<std::vector<Vec>> cands(k);
    for (size_t i = 0; i < k; i++)
        for (long long idx = 0; idx < n; idx++) {
            Vec v = h.element(idx);
            if (h.elem_order(v) == g.factors[i]) cands[i].push_back(v);
        }
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == k) {
            GroupHom f{g, h, images};
            if (f.is_surjective()) out.push_back(f);
            return;
        }
        for (const auto& v : cands[i]) {
            images[i] = v;
            rec(i + 1);
        }
    };
    if (k == 0) {
        if (h.ngens() == 0) out.push_back(GroupHom{g, h, {}});
        return out;
    }
    rec(0);
    return out;
}

std::optional<Vec> solve_mod(const IntMat& m, const std::vector<long long>& moduli,
                             const Vec& target) {
    long k = m.rows, r = m.cols;
    Int big = 1;
    for (long i = 0; i < k; i++) big = lcm(big, Int(moduli[i]));
    IntMat ms(k, r);
    std::vector<Int> ts((size_t(k)));
    for (long i = 0; i < k; i++) {
        Int scale = big / moduli[i];
        for (long j = 0; j < r; j++) ms.at(i, j) = scale * m.at(i, j);
        ts[size_t(i)] = scale * target[size_t(i)];
    }
    SmithForm sf = smith_normal_form(ms);
    // S y = U t (mod big)
    std::vector<Int> ut(size_t(k), 0);
    for (long i = 0; i < k; i++)
        for (long j = 0; j < k; j++) ut[size_t(i)] += sf.U.at(i, j) * ts[size_t(j)];
    std::vector<Int> y(size_t(r), 0);
    long dlen = std::min(k, r);
    for (long i = 0; i < k; i++) {
        Int rhs = ut[size_t(i)] % big;
        if (rhs < 0) rhs += big;
        Int si = i < dlen ? sf.S.at(i, i) : Int(0);
        if (si == 0) {
            if (rhs != 0) return std::nullopt;
            continue;
        }
        Int gcd_sb = gcd(si, big);
        if (rhs % gcd_sb != 0) return std::nullopt;
        // solve si * y = rhs (mod big): y = (rhs/g) * inv(si/g) mod big/g
        Int g = gcd_sb, m2 = big / g, s2 = (si / g) % m2, r2 = rhs / g;
        // modular inverse of s2 mod m2 by extended euclid
        Int t0 = 0, t1 = 1, a = m2, b = s2 % m2;
        while (b != 0) {
            Int q = a / b;
            Int tmp = a - q * b; a = b; b = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        if (a != 1 && m2 != 1) throw Error("solve_mod: internal inverse failure");
        Int inv = m2 == 1 ? Int(0) : (t0 % m2 + m2) % m2;
        y[size_t(i)] = (r2 % m2) * inv % (m2 == 0 ? Int(1) : m2);
    }
    Vec v((size_t(r)));
    for (long j = 0; j < r; j++) {
        Int vj = 0;
        for (long i = 0; i < r; i++) vj += sf.V.at(j, i) * y[size_t(i)];
        vj %= big;
        if (vj < 0) vj += big;
        v[size_t(j)] = to_ll(vj);
    }
    return v;
}

IntMat kernel_lattice_mod(const IntMat& m, const std::vector<long long>& moduli) {
    long k = m.rows, r = m.cols;
    Int big = 1;
    for (long i = 0; i < k; i++) big = lcm(big, Int(moduli[i]));
    IntMat ms(k, r);
    for (long i = 0; i < k; i++) {
        Int scale = big / moduli[i];
        for (long j = 0; j < r; j++) ms.at(i, j) = scale * m.at(i, j);
    }
    SmithForm sf = smith_normal_form(ms);
    long dlen = std::min(k, r);
    IntMat basis(r, r);
    for (long j = 0; j < r; j++) {
        Int t = 1;
        if (j < dlen && sf.S.at(j, j) != 0) t = big / gcd(sf.S.at(j, j), big);
        for (long i = 0; i < r; i++) basis.at(i, j) = sf.V.at(i, j) * t;
    }
    return basis;
}

Vec Subquotient::proj(const Vec& x) const {
    IntMat p(long(ambient_.ngens()), long(sub_gens_.size()));
    for (size_t j = 0; j < sub_gens_.size(); j++)
        for (size_t i = 0; i < ambient_.ngens(); i++) p.at(long(i), long(j)) = sub_gens_[j][i];
    auto v = solve_mod(p, ambient_.factors, ambient_.reduce(x));
    if (!v) throw InvalidSubgroup("Subquotient::proj: element not in subgroup");
    Vec c(group.ngens(), 0);
    for (size_t i = 0; i < group.ngens(); i++) {
        Int acc = 0;
        for (long j = 0; j < coord_rows_.cols; j++) acc += coord_rows_.at(long(i), j) * (*v)[size_t(j)];
        acc %= mods_[i];
        if (acc < 0) acc += mods_[i];
        c[i] = to_ll(acc);
    }
    return c;
}

Subquotient subquotient(const FinAbGroup& g, const std::vector<Vec>& sub_gens,
                        const std::vector<Vec>& modout_gens) {
    long k = long(g.ngens());
    long r = long(sub_gens.size());
    IntMat p(k, r);
    for (long j = 0; j < r; j++) {
        Vec sg = g.reduce(sub_gens[size_t(j)]);
        for (long i = 0; i < k; i++) p.at(i, j) = sg[size_t(i)];
    }
    // relation lattice: ker(phi) + one preimage tuple per modout generator
    IntMat l0 = kernel_lattice_mod(p, g.factors);
    std::vector<Vec> extra;
    for (const auto& mg_ : modout_gens) {
        auto v = solve_mod(p, g.factors, g.reduce(mg_));
        if (!v) throw InvalidSubgroup("subquotient: modout generator not inside subgroup");
        extra.push_back(*v);
    }
    IntMat rel(r, l0.cols + long(extra.size()));
    for (long i = 0; i < r; i++) {
        for (long j = 0; j < l0.cols; j++) rel.at(i, j) = l0.at(i, j);
        for (size_t j = 0; j < extra.size(); j++) rel.at(i, l0.cols + long(j)) = extra[j][size_t(i)];
    }
    SmithForm sf = smith_normal_form(rel);
    auto diag = sf.diagonal();
    IntMat uinv = unimodular_inverse(sf.U);

    Subquotient sq;
    sq.ambient_ = g;
    sq.sub_gens_.assign(sub_gens.begin(), sub_gens.end());
    for (auto& v : sq.sub_gens_) v = g.reduce(v);
    std::vector<long long> factors;
    std::vector<long> kept;
    for (long i = 0; i < r; i++) {
        Int d = i < long(diag.size()) ? diag[size_t(i)] : Int(0);
        if (d == 0) throw Error("subquotient: relation lattice not of full rank");
        if (d > 1) {
            factors.push_back(to_ll(d));
            kept.push_back(i);
        }
    }
    sq.group = FinAbGroup(factors);
    sq.mods_ = factors;
    sq.coord_rows_ = IntMat(long(kept.size()), r);
    for (size_t i = 0; i < kept.size(); i++)
        for (long j = 0; j < r; j++) sq.coord_rows_.at(long(i), j) = sf.U.at(kept[i], j);
    for (size_t i = 0; i < kept.size(); i++) {
        Vec rep = g.zero();
        for (long j = 0; j < r; j++) {
            Int c = uinv.at(j, kept[i]);
            Int cm = c % g.exponent();
            rep = g.add(rep, g.smul(to_ll(cm), sq.sub_gens_[size_t(j)]));
        }
        sq.lifts.push_back(rep);
    }
    return sq;
}

Quotient quotient(const FinAbGroup& g, const Subgroup& h) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < g.ngens(); i++) gens.push_back(g.gen(i));
    Subquotient sq = subquotient(g, gens, h.gens);
    return Quotient{sq.group, sq.lifts, sq};
}

std::vector<Vec> minimal_generators(const FinAbGroup& g, const std::vector<long long>& elems) {
    std::vector<long long> cand = elems;
    std::sort(cand.begin(), cand.end(), [&](long long a, long long b) {
        long long oa = g.elem_order(g.element(a)), ob = g.elem_order(g.element(b));
        if (oa != ob) return oa > ob;
        return a < b;
    });
    std::vector<Vec> gens;
    Subgroup cur = trivial_subgroup(g);
    for (long long idx : cand) {
        if ((long long)cur.elems.size() == (long long)elems.size()) break;
        if (cur.contains_index(idx)) continue;
        gens.push_back(g.element(idx));
        cur = generated_subgroup(g, gens);
    }
    return gens;
}

FinAbGroup exterior_cube(const FinAbGroup& g) {
    std::vector<long long> f;
    size_t k = g.ngens();
    for (size_t i = 0; i < k; i++)
        for (size_t j = i + 1; j < k; j++)
            for (size_t l = j + 1; l < k; l++) {
                long long d = std::gcd(std::gcd(g.factors[i], g.factors[j]), g.factors[l]);
                if (d > 1) f.push_back(d);
            }
    std::sort(f.begin(), f.end());
    return FinAbGroup(f);
}

namespace {

// chains with product n, every factor dividing cap, ascending order
void chains_rec(long long n, long long cap, std::vector<long long>& cur,
                std::vector<std::vector<long long>>& out) {
    if (n == 1) {
        std::vector<long long> c(cur.rbegin(), cur.rend());
        out.push_back(c);
        return;
    }
    for (long long e = 2; e <= n && e <= cap; e++) {
        if (n % e != 0 || cap % e != 0) continue;
        cur.push_back(e);
        chains_rec(n / e, e, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<long long>> abelian_group_types(long long order) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    chains_rec(order, order, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

long long order_bound(long long fallback) {
    const char* env = std::getenv("METRICGROUP_MAX_ORDER");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) return fallback;
    return v;
}

} // namespace mg
