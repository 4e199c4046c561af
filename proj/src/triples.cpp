#include "metricgroup/triples.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mg {

std::optional<GroupHom> induced_projection(const GlueTriple& t) {
    const FinAbGroup& gam = t.q.group;
    std::vector<Vec> images;
    for (size_t k = 0; k < gam.ngens(); k++) {
        Vec g(t.G.ngens(), 0);
        for (size_t j = 0; j < t.G.ngens(); j++) {
            QmodZ bv = t.q.b(t.i.images[j], gam.gen(k));
            long long d = t.G.factors[j];
            if (d % bv.den() != 0) return std::nullopt;
            g[j] = (d / bv.den()) * bv.num() % d;
        }
        images.push_back(std::move(g));
    }
    return GroupHom{gam, t.G, std::move(images)};
}

TripleCheck validate(const GlueTriple& t) {
    auto fail = [](std::string why) { return TripleCheck{false, std::move(why)}; };
    try {
        t.q.validate();
    } catch (const Error& e) {
        return fail(std::string("form data invalid: ") + e.what());
    }
    long long n = t.G.order();
    if (t.q.group.order() != n * n) return fail("|Gamma| != |G|^2");
    if (t.i.src != t.G) return fail("i does not start at G");
    if (t.i.dst != t.q.group) return fail("i does not land in Gamma");
    if (t.i.images.size() != t.G.ngens()) return fail("i is missing generator images");
    for (const Vec& im : t.i.images)
        if (im.size() != t.q.group.ngens()) return fail("i image has wrong coordinate count");
    if (!t.i.well_defined()) return fail("i is not a homomorphism");
    if (!t.i.is_injective()) return fail("i is not injective");
    if (!is_nondegenerate(t.q)) return fail("form is degenerate");
    for (long long c = 0; c < n; c++)
        if (!t.q.q(t.i.apply(t.G.element(c))).is_zero())
            return fail("image of i is not isotropic");
    auto p = induced_projection(t);
    if (!p) return fail("pairing against the image does not define a map to G");
    if (!p->is_surjective()) return fail("induced projection is not onto G");
    for (size_t j = 0; j < t.G.ngens(); j++)
        if (p->apply(t.i.images[j]) != t.G.zero())
            return fail("image of i escapes the kernel of the projection");
    return {};
}

GlueTriple identity_triple(const FinAbGroup& g) {
    FinAbGroup gam = product_group(g, g);
    size_t n = g.ngens();
    std::vector<QmodZ> diag(2 * n);
    std::vector<std::vector<QmodZ>> cross(2 * n, std::vector<QmodZ>(2 * n));
    for (size_t j = 0; j < n; j++) {
        cross[j][n + j] = QmodZ(1, g.factors[j]);
        cross[n + j][j] = QmodZ(1, g.factors[j]);
    }
    QuadraticForm q = make_form(gam, std::move(diag), std::move(cross));
    std::vector<Vec> images;
    for (size_t j = 0; j < n; j++) images.push_back(pair_elem(g.gen(j), g.zero()));
    return GlueTriple{g, std::move(q), GroupHom{g, std::move(gam), std::move(images)}};
}

GlueTriple product(const GlueTriple& a, const GlueTriple& b) {
    if (a.G != b.G) throw GroupMismatch("product: triples over different groups");
    const FinAbGroup& ga = a.q.group;
    const FinAbGroup& gb = b.q.group;
    FinAbGroup sum = product_group(ga, gb);
    size_t na = ga.ngens(), nb = gb.ngens();
    std::vector<QmodZ> diag(na + nb);
    std::vector<std::vector<QmodZ>> cross(na + nb, std::vector<QmodZ>(na + nb));
    for (size_t i = 0; i < na; i++) diag[i] = a.q.diag[i];
    for (size_t i = 0; i < nb; i++) diag[na + i] = b.q.diag[i];
    for (size_t i = 0; i < na; i++)
        for (size_t j = 0; j < na; j++) cross[i][j] = a.q.cross[i][j];
    for (size_t i = 0; i < nb; i++)
        for (size_t j = 0; j < nb; j++) cross[na + i][na + j] = b.q.cross[i][j];
    QuadraticForm sumq = make_form(sum, std::move(diag), std::move(cross));

    std::vector<Vec> hgens;
    for (size_t j = 0; j < a.G.ngens(); j++)
        hgens.push_back(pair_elem(a.i.images[j], gb.neg(b.i.images[j])));
    Subgroup h = generated_subgroup(sum, hgens);
    InducedForm ind = induced_form(sumq, h);

    std::vector<Vec> images;
    for (size_t j = 0; j < a.G.ngens(); j++)
        images.push_back(ind.sq.proj(pair_elem(a.i.images[j], gb.zero())));
    FinAbGroup dst = ind.form.group;
    return GlueTriple{a.G, std::move(ind.form), GroupHom{a.G, std::move(dst), std::move(images)}};
}

GlueTriple inverse(const GlueTriple& t) { return GlueTriple{t.G, negate(t.q), t.i}; }

std::optional<GroupHom> equivalent(const GlueTriple& a, const GlueTriple& b,
                                   long long max_order) {
    if (a.G != b.G) throw GroupMismatch("equivalent: triples over different groups");
    if (a.q.group.order() > max_order)
        throw TooLarge("equivalent: triple beyond the isometry search bound");
    auto j0 = form_equivalence(a.q, b.q);
    if (!j0) return std::nullopt;
    for (const GroupHom& aut : form_automorphisms(b.q)) {
        GroupHom j = compose(aut, *j0);
        bool match = true;
        for (size_t k = 0; k < a.G.ngens() && match; k++)
            if (j.apply(a.i.images[k]) != b.q.group.reduce(b.i.images[k])) match = false;
        if (match) return j;
    }
    return std::nullopt;
}

namespace {

// sort key per the canonical order: group type, full q value table, i images
struct ClassKey {
    std::vector<long long> factors;
    std::vector<QmodZ> qtable;
    std::vector<long long> images;

    bool operator<(const ClassKey& o) const {
        if (factors != o.factors) return factors < o.factors;
        if (qtable != o.qtable) return std::lexicographical_compare(
            qtable.begin(), qtable.end(), o.qtable.begin(), o.qtable.end());
        return images < o.images;
    }
};

ClassKey key_of(const GlueTriple& t) {
    ClassKey k;
    k.factors = t.q.group.factors;
    for (long long c = 0; c < t.q.group.order(); c++)
        k.qtable.push_back(t.q.q(t.q.group.element(c)));
    for (const Vec& im : t.i.images) k.images.push_back(t.q.group.index_of(im));
    return k;
}

} // namespace

QGroupTable enumerate_Q(const FinAbGroup& g, long long max_group_order) {
    if (g.order() > max_group_order)
        throw TooLarge("enumerate_Q: group order beyond the requested bound");
    long long n2 = g.order() * g.order();

    std::vector<GlueTriple> classes;
    for (const auto& type : abelian_group_types(n2)) {
        FinAbGroup gam(type);
        for (const QuadraticForm& q : enumerate_forms_up_to_equivalence(gam, true)) {
            // per-generator candidates: isotropic and killed by the generator order
            std::vector<std::vector<Vec>> cand(g.ngens());
            bool viable = true;
            for (size_t j = 0; j < g.ngens() && viable; j++) {
                for (long long c = 0; c < gam.order(); c++) {
                    Vec x = gam.element(c);
                    if (gam.smul(g.factors[j], x) != gam.zero()) continue;
                    if (!q.q(x).is_zero()) continue;
                    cand[j].push_back(std::move(x));
                }
                viable = !cand[j].empty();
            }
            if (!viable) continue;

            std::vector<GroupHom> auts; // filled on the first hit
            std::set<std::vector<long long>> orbit_keys;
            std::vector<size_t> pick(g.ngens(), 0);
            for (;;) {
                std::vector<Vec> images;
                for (size_t j = 0; j < g.ngens(); j++) images.push_back(cand[j][pick[j]]);
                GlueTriple t{g, q, GroupHom{g, gam, images}};
                if (validate(t)) {
                    if (auts.empty()) auts = form_automorphisms(q);
                    std::vector<long long> best;
                    std::vector<Vec> best_images;
                    for (const GroupHom& a : auts) {
                        std::vector<long long> key;
                        std::vector<Vec> moved;
                        for (const Vec& im : images) {
                            Vec y = a.apply(im);
                            key.push_back(gam.index_of(y));
                            moved.push_back(std::move(y));
                        }
                        if (best.empty() || key < best) {
                            best = std::move(key);
                            best_images = std::move(moved);
                        }
                    }
                    if (orbit_keys.insert(best).second)
                        classes.push_back(GlueTriple{g, q, GroupHom{g, gam, best_images}});
                }
                size_t j = 0;
                while (j < g.ngens() && ++pick[j] == cand[j].size()) pick[j++] = 0;
                if (j == g.ngens()) break;
                if (g.ngens() == 0) break;
            }
        }
    }

    std::sort(classes.begin(), classes.end(),
              [](const GlueTriple& a, const GlueTriple& b) { return key_of(a) < key_of(b); });

    QGroupTable out;
    out.classes = std::move(classes);
    int m = int(out.classes.size());

    // cache automorphism groups: the matcher below runs m^2 + m + 1 times
    std::vector<std::vector<GroupHom>> auts(m);
    for (int k = 0; k < m; k++) auts[k] = form_automorphisms(out.classes[k].q);
    auto find_class = [&](const GlueTriple& t) -> int {
        for (int k = 0; k < m; k++) {
            const GlueTriple& c = out.classes[k];
            auto j0 = form_equivalence(t.q, c.q);
            if (!j0) continue;
            for (const GroupHom& a : auts[k]) {
                GroupHom j = compose(a, *j0);
                bool match = true;
                for (size_t x = 0; x < t.G.ngens() && match; x++)
                    if (j.apply(t.i.images[x]) != c.i.images[x]) match = false;
                if (match) return k;
            }
        }
        return -1;
    };

    out.identity = find_class(identity_triple(g));
    if (out.identity < 0) throw Error("enumerate_Q: identity class not found");

    out.table.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= i; j++) {
            int k = find_class(product(out.classes[i], out.classes[j]));
            if (k < 0) throw Error("enumerate_Q: a product escaped the class list");
            out.table[i][j] = out.table[j][i] = k;
        }
    out.inverse_map.assign(m, -1);
    for (int i = 0; i < m; i++) {
        out.inverse_map[i] = find_class(inverse(out.classes[i]));
        if (out.inverse_map[i] < 0) throw Error("enumerate_Q: an inverse escaped the class list");
    }

    // the table must be an abelian group with identity_triple's class as 1
    for (int i = 0; i < m; i++) {
        if (out.table[out.identity][i] != i) throw Error("enumerate_Q: identity law failed");
        if (out.table[i][out.inverse_map[i]] != out.identity)
            throw Error("enumerate_Q: inverse law failed");
    }
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++)
            for (int k = 0; k < m; k++)
                if (out.table[out.table[i][j]][k] != out.table[i][out.table[j][k]])
                    throw Error("enumerate_Q: associativity failed");
    return out;
}

TripleRealization realize_triple(const GlueTriple& t, const RealizeBounds& bounds) {
    TripleCheck chk = validate(t);
    if (!chk) throw Error("realize_triple: invalid triple: " + chk.why);
    EvenLattice L = realize_form(t.q, gauss_milgram_signature(t.q), bounds);
    DiscriminantForm d = discriminant_form(L);
    auto j = form_equivalence(t.q, d.form);
    if (!j) throw Error("realize_triple: realized lattice lost the form");

    std::vector<Vec> glue_gens;
    for (size_t k = 0; k < t.G.ngens(); k++) glue_gens.push_back(j->apply(t.i.images[k]));
    Subgroup h = generated_subgroup(d.form.group, glue_gens);
    OverlatticeResult over = overlattice_glue(L, d, h, L.name + "+glue");
    if (!is_unimodular(over.lattice))
        throw Error("realize_triple: glued lattice is not unimodular");

    // transported triple; its projection labels the cosets of E in the dual
    GlueTriple tl{t.G, d.form, compose(*j, t.i)};
    TripleCheck chk2 = validate(tl);
    if (!chk2) throw Error("realize_triple: transported triple invalid: " + chk2.why);
    auto p = induced_projection(tl);

    long n = L.rank();
    std::vector<std::vector<Rat>> reps;
    for (long long c = 0; c < t.G.order(); c++) {
        Vec target = t.G.element(c);
        bool found = false;
        for (long long x = 0; x < d.form.group.order() && !found; x++) {
            Vec gx = d.form.group.element(x);
            if (p->apply(gx) != target) continue;
            std::vector<Rat> v(size_t(n), Rat(0));
            for (size_t i2 = 0; i2 < d.lifts.size(); i2++)
                for (long j2 = 0; j2 < n; j2++)
                    v[size_t(j2)] += Rat(gx[i2]) * d.lifts[i2][size_t(j2)];
            reps.push_back(std::move(v));
            found = true;
        }
        if (!found) throw Error("realize_triple: a coset of G has no representative");
    }
    return TripleRealization{std::move(over.lattice), std::move(L),
                             std::move(over.basis_in_parent), std::move(reps)};
}

} // namespace mg
