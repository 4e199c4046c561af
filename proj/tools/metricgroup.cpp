#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "metricgroup/moddata.hpp"
#include "metricgroup/serialize.hpp"

using namespace mg;

namespace {

// Input problems (bad files, bad literals, contradictory flags) exit with 2;
// they are distinct from failed checks (exit 1) and size bounds (exit 3).
struct UsageError {
    std::string msg;
};

template <typename F>
auto input_phase(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const TooLarge&) {
        throw;
    } catch (const Error& e) {
        throw UsageError{e.what()};
    } catch (const Json::exception& e) {
        throw UsageError{e.what()};
    }
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError{"cannot open " + path};
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw UsageError{"bad JSON in " + path + ": " + e.what()};
    }
}

EvenLattice resolve_lattice(const std::string& arg) {
    try {
        return catalog_lattice(arg);
    } catch (const Error&) {
    }
    std::ifstream probe(arg);
    if (!probe) {
        std::string names;
        for (const auto& [n, l] : lattice_catalog()) names += (names.empty() ? "" : ", ") + n;
        throw UsageError{"'" + arg + "' is neither a catalog lattice (" + names +
                         ") nor a readable file"};
    }
    return input_phase([&] { return lattice_from_json(load_json(arg)); });
}

struct CheckList {
    Json items = Json::array();
    bool all = true;

    void add(const std::string& name, bool pass, const std::string& details = "") {
        Json c;
        c["name"] = name;
        c["pass"] = pass;
        if (!details.empty()) c["details"] = details;
        items.push_back(std::move(c));
        all = all && pass;
    }
};

struct Ctx {
    bool pretty = false;
    bool timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int finish(Json& report, CheckList& checks) {
        report["checks"] = std::move(checks.items);
        report["ok"] = checks.all;
        if (timing) {
            std::chrono::duration<double, std::milli> ms =
                std::chrono::steady_clock::now() - start;
            report["timing_ms"] = ms.count();
        }
        std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
        return checks.all ? 0 : 1;
    }
};

Json int_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

std::string rat_str(const Rat& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

Json coords_json(const Vec& v) {
    Json j = Json::array();
    for (long long c : v) j.push_back(c);
    return j;
}

Json q_table_json(const QuadraticForm& q) {
    Json t = Json::array();
    long long n = q.group.order();
    for (long long i = 0; i < n; i++) {
        Vec x = q.group.element(i);
        Json row;
        row["element"] = coords_json(x);
        row["q"] = q.q(x).str();
        t.push_back(std::move(row));
    }
    return t;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// exact S/T exponent tables; build_modular_data certifies the relations
Json modular_report(const QuadraticForm& q, CheckList& checks) {
    PointedModularData data = build_modular_data(q);
    checks.add("modular-relations", true,
               "S unitary, S^2 = negation, (ST)^3 = cS^2, c^8 = 1, c = Gauss sum at 1e-9");
    long long sig = gauss_milgram_signature(q);
    long long n = q.group.order();
    Json m;
    m["order"] = n;
    Json te = Json::array();
    for (long long a = 0; a < n; a++) te.push_back(q.q(q.group.element(a)).str());
    m["t_exponents"] = std::move(te);
    Json se = Json::array();
    for (long long a = 0; a < n; a++) {
        Json row = Json::array();
        Vec av = q.group.element(a);
        for (long long b = 0; b < n; b++) row.push_back((-q.b(av, q.group.element(b))).str());
        se.push_back(std::move(row));
    }
    m["s_exponents"] = std::move(se);
    m["charge"] = std::to_string(sig) + "/8";
    m["t_order"] = t_order(data);
    return m;
}

double gauss_sum_modulus(const QuadraticForm& q) {
    double re = 0, im = 0;
    for (long long i = 0; i < q.group.order(); i++) {
        QmodZ v = q.q(q.group.element(i));
        double ang = 2.0 * M_PI * double(v.num()) / double(v.den());
        re += std::cos(ang);
        im += std::sin(ang);
    }
    return std::hypot(re, im);
}

int run_discform(Ctx& ctx, const std::string& lattice_arg, bool modular) {
    Json report;
    report["command"] = "discform";
    Json in;
    in["lattice"] = lattice_arg;
    in["modular"] = modular;
    report["inputs"] = std::move(in);

    EvenLattice l = resolve_lattice(lattice_arg);
    DiscriminantForm d = discriminant_form(l);
    long long sig = gauss_milgram_signature(d.form);

    CheckList checks;
    Json res;
    Json lj;
    lj["name"] = l.name;
    lj["rank"] = l.rank();
    lj["det"] = int_json(l.det());
    res["lattice"] = std::move(lj);
    res["group"] = group_to_json(d.form.group);
    res["form"] = form_to_json(d.form);
    res["q"] = q_table_json(d.form);
    res["signature"] = sig;
    Json lifts = Json::array();
    for (const auto& lift : d.lifts) {
        Json row = Json::array();
        for (const Rat& c : lift) row.push_back(rat_str(c));
        lifts.push_back(std::move(row));
    }
    res["lifts"] = std::move(lifts);

    checks.add("nondegenerate", is_nondegenerate(d.form));
    checks.add("signature-rank-mod-8", ((sig - l.rank()) % 8 + 8) % 8 == 0,
               "sigma = " + std::to_string(sig) + ", rank = " + std::to_string(l.rank()));
    bool lifts_ok = true;
    for (size_t j = 0; j < d.form.group.ngens(); j++)
        lifts_ok = lifts_ok && d.class_of(d.lifts[j]) == d.form.group.gen(j);
    checks.add("lifts-represent-generators", lifts_ok);
    if (modular) res["modular"] = modular_report(d.form, checks);

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

int run_qgroup(Ctx& ctx, const std::string& g_literal, bool with_table, bool with_realize,
               long long max_order) {
    Json report;
    report["command"] = "qgroup";
    Json in;
    in["G"] = g_literal;
    in["table"] = with_table;
    in["realize"] = with_realize;
    in["max_order"] = max_order;
    report["inputs"] = std::move(in);

    FinAbGroup g = input_phase([&] { return parse_group_literal(g_literal); });
    QGroupTable t = enumerate_Q(g, max_order);
    int k = int(t.classes.size());

    CheckList checks;
    Json res;
    res["count"] = k;
    Json classes = Json::array();
    for (int i = 0; i < k; i++) {
        Json c;
        c["index"] = i;
        c["triple"] = triple_to_json(t.classes[size_t(i)]);
        c["signature"] = gauss_milgram_signature(t.classes[size_t(i)].q);
        c["is_identity"] = i == t.identity;
        if (with_realize) {
            TripleRealization r = realize_triple(t.classes[size_t(i)]);
            Json rj;
            rj["L"] = lattice_to_json(r.L);
            rj["E"] = lattice_to_json(r.E);
            Json reps = Json::array();
            for (const auto& rep : r.coset_reps) {
                Json row = Json::array();
                for (const Rat& c2 : rep) row.push_back(rat_str(c2));
                reps.push_back(std::move(row));
            }
            rj["coset_reps"] = std::move(reps);
            c["realization"] = std::move(rj);
            bool ok = is_even(r.E) && is_unimodular(r.E) &&
                      form_equivalence(discriminant_form(r.L).form, t.classes[size_t(i)].q)
                          .has_value() &&
                      r.L.rank() % 8 == gauss_milgram_signature(t.classes[size_t(i)].q);
            checks.add("realize-class-" + std::to_string(i), ok,
                       "L = " + r.L.name + ", E rank " + std::to_string(r.E.rank()));
        }
        classes.push_back(std::move(c));
    }
    res["classes"] = std::move(classes);
    if (with_table) {
        res["identity"] = t.identity;
        Json tab = Json::array();
        for (const auto& row : t.table) {
            Json r = Json::array();
            for (int v : row) r.push_back(v);
            tab.push_back(std::move(r));
        }
        res["table"] = std::move(tab);
        Json invs = Json::array();
        for (int v : t.inverse_map) invs.push_back(v);
        res["inverses"] = std::move(invs);
    }

    bool id_ok = t.identity >= 0;
    for (int i = 0; id_ok && i < k; i++)
        id_ok = t.table[size_t(t.identity)][size_t(i)] == i &&
                t.table[size_t(i)][size_t(t.identity)] == i;
    checks.add("identity", id_ok);
    bool inv_ok = true;
    for (int i = 0; i < k; i++)
        inv_ok = inv_ok && t.table[size_t(i)][size_t(t.inverse_map[size_t(i)])] == t.identity;
    checks.add("inverses", inv_ok);
    bool assoc = true;
    for (int a = 0; a < k && assoc; a++)
        for (int b = 0; b < k && assoc; b++)
            for (int c = 0; c < k && assoc; c++)
                assoc = t.table[size_t(t.table[size_t(a)][size_t(b)])][size_t(c)] ==
                        t.table[size_t(a)][size_t(t.table[size_t(b)][size_t(c)])];
    checks.add("associative", assoc);
    bool comm = true;
    for (int a = 0; a < k && comm; a++)
        for (int b = 0; b < k && comm; b++)
            comm = t.table[size_t(a)][size_t(b)] == t.table[size_t(b)][size_t(a)];
    checks.add("commutative", comm);

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

void bundle_a1_e7(Json& res, CheckList& checks) {
    DiscriminantForm a1 = discriminant_form(catalog_lattice("A1"));
    DiscriminantForm e7 = discriminant_form(catalog_lattice("E7"));
    res["disc_a1"] = form_to_json(a1.form);
    res["disc_e7"] = form_to_json(e7.form);

    bool a1_ok = a1.form.group.factors == std::vector<long long>{2} &&
                 a1.form.q({1}) == QmodZ(1, 4);
    checks.add("disc-a1-is-semion", a1_ok, "q(1) = " + a1.form.q({1}).str());
    bool e7_ok = e7.form.group.factors == std::vector<long long>{2} &&
                 e7.form.q({1}) == QmodZ(3, 4);
    checks.add("disc-e7-is-antisemion", e7_ok, "q(1) = " + e7.form.q({1}).str());

    auto wit = form_equivalence(negate(a1.form), e7.form);
    checks.add("negated-a1-equivalent-e7", wit.has_value());
    if (wit) {
        Json im = Json::array();
        for (const Vec& v : wit->images) im.push_back(coords_json(v));
        res["equivalence_witness"] = std::move(im);
    }

    long long s1 = gauss_milgram_signature(a1.form);
    long long s7 = gauss_milgram_signature(e7.form);
    res["signature_a1"] = s1;
    res["signature_e7"] = s7;
    checks.add("signatures-1-and-7", s1 == 1 && s7 == 7);
    checks.add("modular-conjugate-pair", verify_conjugate_pair(a1.form));
    res["modular_a1"] = modular_report(a1.form, checks);
}

void bundle_milgram(Json& res, CheckList& checks) {
    const std::pair<const char*, long long> cases[] = {
        {"A1", 1}, {"E7", 7}, {"E8", 0}, {"Gamma16", 0}, {"NiemeierA1_24", 0}};
    Json rows = Json::array();
    for (const auto& [name, want] : cases) {
        EvenLattice l = catalog_lattice(name);
        DiscriminantForm d = discriminant_form(l);
        long long sig = gauss_milgram_signature(d.form);
        double mod = gauss_sum_modulus(d.form);
        double target = std::sqrt(double(d.form.group.order()));
        Json row;
        row["lattice"] = name;
        row["rank"] = l.rank();
        row["disc_order"] = d.form.group.order();
        row["signature"] = sig;
        rows.push_back(std::move(row));
        bool ok = sig == want && ((sig - l.rank()) % 8 + 8) % 8 == 0 &&
                  std::abs(mod - target) <= 1e-9;
        checks.add(std::string("milgram-") + name, ok,
                   "sigma = " + std::to_string(sig) + ", rank = " + std::to_string(l.rank()) +
                       ", |gauss sum| = " + fmt(mod) + " vs sqrt|A| = " + fmt(target));
    }
    res["lattices"] = std::move(rows);
}

void bundle_niemeier(Json& res, CheckList& checks, long long n) {
    EvenLattice nl = catalog_lattice("NiemeierA1_24");
    checks.add("rank-24", nl.rank() == 24);
    checks.add("even", is_even(nl));
    checks.add("unimodular", is_unimodular(nl));

    GolayCode gc = build_golay();
    std::vector<long long> we = weight_enumerator(gc);
    Json wej = Json::array();
    for (long long c : we) wej.push_back(c);
    res["golay_weight_enumerator"] = std::move(wej);
    checks.add("golay-759-weight-8", we[8] == 759, std::to_string(we[8]) + " words of weight 8");

    auto sub = kernel_sublattice(nl, {niemeier_character(n)}, "kernel-" + std::to_string(n));
    checks.add("kernel-det-n2", sub.lattice.det() == Int(n * n),
               "det = " + sub.lattice.det().str());
    DiscriminantForm d = discriminant_form(sub.lattice);
    res["disc_group"] = group_to_json(d.form.group);
    res["disc_form"] = form_to_json(d.form);
    checks.add("disc-order-n2", d.form.group.order() == n * n);

    std::vector<QmodZ> values = value_multiset(d.form);
    bool has = std::find(values.begin(), values.end(), QmodZ(1, n * n)) != values.end();
    checks.add("q-value-1-over-n2", has, "looking for " + QmodZ(1, n * n).str());
    long long fs = fsexp_pointed(d.form);
    res["fsexp_pointed"] = fs;
    checks.add("fsexp-multiple-of-n2", fs % (n * n) == 0, "fsexp = " + std::to_string(fs));

    // the glue group: classes of the ambient basis inside K°/K form the
    // Lagrangian that rebuilds the unimodular lattice
    std::vector<Vec> glue_gens;
    for (long i = 0; i < nl.rank(); i++) {
        std::vector<Rat> e(size_t(nl.rank()), Rat(0));
        e[size_t(i)] = 1;
        glue_gens.push_back(d.class_of(in_basis(sub.basis, e)));
    }
    Subgroup glue = generated_subgroup(d.form.group, glue_gens);
    res["glue_order"] = glue.order();
    checks.add("glue-lagrangian", glue.order() == n && is_isotropic(d.form, glue));
}

void bundle_spin16(Json& res, CheckList& checks) {
    EvenLattice g16 = catalog_lattice("Gamma16");
    checks.add("gamma16-unimodular", g16.rank() == 16 && is_unimodular(g16) &&
                                         discriminant_form(g16).form.group.order() == 1);

    auto u = spin16_u(), v = spin16_v();
    auto pair = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        Rat s = 0;
        for (long i = 0; i < 16; i++)
            for (long j = 0; j < 16; j++)
                s += a[size_t(i)] * Rat(g16.gram.at(i, j)) * b[size_t(j)];
        return s;
    };
    Rat uu = pair(u, u), vv = pair(v, v), uv = pair(u, v);
    res["pairings"] = Json::object();
    res["pairings"]["uu"] = rat_str(uu);
    res["pairings"]["vv"] = rat_str(vv);
    res["pairings"]["uv"] = rat_str(uv);
    checks.add("character-pairings", uu == 2 && vv == Rat(1, 2) && uv == Rat(1, 4));

    auto sub = kernel_sublattice(g16, {u, v}, "K");
    checks.add("index-4", sub.lattice.det() == 16, "det K = " + sub.lattice.det().str());
    SmithForm sf = smith_normal_form(sub.basis);
    std::vector<long long> quot;
    for (const Int& dd : sf.diagonal())
        if (dd > 1) quot.push_back(dd.convert_to<long long>());
    checks.add("quotient-z2xz2", quot == std::vector<long long>({2, 2}));

    DiscriminantForm d = discriminant_form(sub.lattice);
    res["disc_group"] = group_to_json(d.form.group);
    res["disc_form"] = form_to_json(d.form);
    checks.add("disc-z4xz4", d.form.group.factors == std::vector<long long>({4, 4}));

    std::vector<Rat> mu = u;
    for (Rat& c : mu) c = -c;
    std::vector<Rat> muv(16);
    for (size_t i = 0; i < 16; i++) muv[i] = v[i] - u[i];
    Vec x = d.class_of(in_basis(sub.basis, u));
    Vec y = d.class_of(in_basis(sub.basis, muv));
    res["x"] = coords_json(x);
    res["y"] = coords_json(y);
    bool st_ok = true;
    for (long long s = 0; s < 4 && st_ok; s++)
        for (long long t = 0; t < 4 && st_ok; t++) {
            Vec z = d.form.group.add(d.form.group.smul(s, x), d.form.group.smul(t, y));
            st_ok = d.form.q(z) == QmodZ(s * t, 4);
        }
    checks.add("q-st-over-4", st_ok);
    checks.add("hyperbolic-u2", form_equivalence(d.form, standard_u(2)).has_value());

    std::vector<GroupHom> auts = form_automorphisms(d.form);
    res["aut_order"] = auts.size();
    checks.add("aut-order-4", auts.size() == 4);
    std::vector<Vec> neg_images;
    for (size_t j = 0; j < d.form.group.ngens(); j++)
        neg_images.push_back(d.form.group.neg(d.form.group.gen(j)));
    bool has_neg = false, has_swap = false, exp2 = true;
    for (const GroupHom& a : auts) {
        if (a.images == neg_images) has_neg = true;
        if (a.apply(x) == y && a.apply(y) == x) has_swap = true;
        for (size_t j = 0; j < d.form.group.ngens(); j++)
            exp2 = exp2 && a.apply(a.apply(d.form.group.gen(j))) == d.form.group.gen(j);
    }
    checks.add("aut-is-plus-minus-id-kappa", has_neg && has_swap && exp2,
               "contains -id and the x<->y swap, exponent 2");
}

void bundle_embeddings(Json& res, CheckList& checks) {
    DiscriminantForm d = discriminant_form(spin16_kernel());
    const FinAbGroup& gam = d.form.group;
    long long n = gam.order();

    // ordered pairs of distinct commuting order-2 images with isotropic span
    std::vector<std::pair<long long, long long>> embeddings;
    for (long long a = 1; a < n; a++) {
        Vec av = gam.element(a);
        if (gam.elem_order(av) != 2) continue;
        for (long long b = 1; b < n; b++) {
            if (b == a) continue;
            Vec bv = gam.element(b);
            if (gam.elem_order(bv) != 2) continue;
            Vec abv = gam.add(av, bv);
            if (d.form.q(av).is_zero() && d.form.q(bv).is_zero() && d.form.q(abv).is_zero())
                embeddings.push_back({a, b});
        }
    }
    res["embedding_count"] = embeddings.size();

    std::vector<GroupHom> auts = form_automorphisms(d.form);
    std::set<std::pair<long long, long long>> seen;
    std::vector<std::pair<long long, long long>> reps;
    for (const auto& e : embeddings) {
        if (seen.count(e)) continue;
        reps.push_back(e);
        for (const GroupHom& a : auts)
            seen.insert({gam.index_of(a.apply(gam.element(e.first))),
                         gam.index_of(a.apply(gam.element(e.second)))});
    }
    Json rj = Json::array();
    for (const auto& r : reps) {
        Json e;
        e["x_image"] = coords_json(gam.element(r.first));
        e["y_image"] = coords_json(gam.element(r.second));
        rj.push_back(std::move(e));
    }
    res["orbit_representatives"] = std::move(rj);
    checks.add("three-embedding-orbits", reps.size() == 3,
               std::to_string(embeddings.size()) + " embeddings in " +
                   std::to_string(reps.size()) + " orbits");

    // the orbit representatives give pairwise inequivalent glue triples
    FinAbGroup g22({2, 2});
    std::vector<GlueTriple> triples;
    for (const auto& r : reps)
        triples.push_back(GlueTriple{
            g22, d.form, GroupHom{g22, gam, {gam.element(r.first), gam.element(r.second)}}});
    bool all_valid = true, pairwise = true;
    for (size_t i = 0; i < triples.size(); i++) {
        all_valid = all_valid && bool(validate(triples[i]));
        for (size_t j = i + 1; j < triples.size(); j++)
            pairwise = pairwise && !equivalent(triples[i], triples[j]).has_value();
    }
    checks.add("triples-valid", all_valid);
    checks.add("triples-pairwise-inequivalent", pairwise);
}

Cochain2 lcg_cochain(const FinAbGroup& g, uint32_t seed) {
    std::minstd_rand rng(seed);
    const long long dens[] = {2, 3, 4, 6, 8};
    long long n = g.order();
    std::vector<QmodZ> vals(size_t(n * n), QmodZ(0, 1));
    for (long long x = 1; x < n; x++)
        for (long long y = 1; y < n; y++) {
            long long den = dens[rng() % 5];
            vals[size_t(x * n + y)] = QmodZ((long long)(rng() % 24), den);
        }
    return Cochain2(g, std::move(vals));
}

void bundle_z2cube(Json& res, CheckList& checks) {
    Cocycle3 w = volume_cocycle_z2cube();
    checks.add("volume-is-cocycle", is_cocycle(w));
    checks.add("volume-not-coboundary", !is_coboundary(w).has_value());

    QmodZ basis_val = phi_star(w, {1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    res["phi_star_e1e2e3"] = basis_val.str();
    checks.add("phi-star-nonzero", !basis_val.is_zero());
    std::vector<QmodZ> img = phi_star_image(w);
    Json ij = Json::array();
    for (const QmodZ& v : img) ij.push_back(v.str());
    res["phi_star_image"] = std::move(ij);
    checks.add("phi-star-image-size-2", img.size() == 2);
    checks.add("exterior-cube-z2",
               exterior_cube(FinAbGroup({2, 2, 2})).factors == std::vector<long long>({2}));

    // restriction orders over the seven order-2 subgroups: the diagonal
    // carries the nontrivial class, the other six restrict trivially
    Json restr = Json::array();
    int nontrivial = 0;
    bool diag_hit = false;
    for (const Subgroup& h : maximal_cyclic_subgroups(w.group)) {
        long long ord = cyclic_class_order(restrict_to_cyclic(w, h));
        Vec gen;
        for (long long e : h.elems)
            if (w.group.elem_order(w.group.element(e)) == h.order()) {
                gen = w.group.element(e);
                break;
            }
        Json r;
        r["generator"] = coords_json(gen);
        r["class_order"] = ord;
        restr.push_back(std::move(r));
        if (ord > 1) {
            nontrivial++;
            if (gen == Vec{1, 1, 1}) diag_hit = true;
        }
    }
    res["cyclic_restrictions"] = std::move(restr);
    checks.add("only-diagonal-restriction-nontrivial", nontrivial == 1 && diag_hit,
               "class order 2 on <(1,1,1)>, trivial on the other six");
    long long fs = fsexp_from_cocycle(w);
    res["fsexp"] = fs;
    checks.add("fsexp-4", fs == 4);

    // two-generated groups only carry pointed classes: the exterior cube
    // dies and phi* vanishes on form cocycles and coboundaries alike
    bool pointed = true;
    std::vector<FinAbGroup> twogen = {FinAbGroup({2, 2}), FinAbGroup({2, 4}), FinAbGroup({3, 9})};
    for (const FinAbGroup& g : twogen) {
        pointed = pointed && exterior_cube(g).order() == 1;
        for (const QuadraticForm& q : enumerate_forms(g))
            pointed = pointed && is_pointed_class(abelian_cocycle_from_form(q).omega);
        for (uint32_t seed = 1; seed <= 5; seed++)
            pointed = pointed && is_pointed_class(coboundary(lcg_cochain(g, seed)));
    }
    checks.add("two-generated-pointed", pointed,
               "form cocycles and coboundaries on 2,2 / 2,4 / 3,9");
}

int run_verify(Ctx& ctx, const std::string& name, long long n) {
    Json report;
    report["command"] = "verify";
    Json in;
    in["example"] = name;
    if (name == "niemeier") in["n"] = n;
    report["inputs"] = std::move(in);

    CheckList checks;
    Json res;
    if (name == "a1-e7") {
        bundle_a1_e7(res, checks);
    } else if (name == "milgram") {
        bundle_milgram(res, checks);
    } else if (name == "niemeier") {
        if (n < 2 || n > 4) throw UsageError{"--n must be 2, 3 or 4"};
        bundle_niemeier(res, checks, n);
    } else if (name == "spin16") {
        bundle_spin16(res, checks);
    } else if (name == "embeddings") {
        bundle_embeddings(res, checks);
    } else if (name == "z2cube") {
        bundle_z2cube(res, checks);
    } else {
        throw UsageError{"unknown example '" + name +
                         "'; pick from a1-e7, milgram, niemeier, spin16, embeddings, z2cube"};
    }
    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

Cocycle3 resolve_cocycle(const FinAbGroup& g, const std::string& spec) {
    if (spec == "zero") return zero_cocycle(g);
    if (spec == "z2cube-volume") {
        if (g.factors != std::vector<long long>({2, 2, 2}))
            throw UsageError{"z2cube-volume lives on the group 2,2,2"};
        return volume_cocycle_z2cube();
    }
    if (spec.rfind("cyclic:", 0) == 0) {
        if (g.ngens() != 1) throw UsageError{"cyclic:<a> needs a cyclic group literal"};
        long long a = 0;
        try {
            size_t used = 0;
            a = std::stoll(spec.substr(7), &used);
            if (used != spec.size() - 7) throw std::invalid_argument(spec);
        } catch (const std::exception&) {
            throw UsageError{"bad cyclic cocycle parameter in '" + spec + "'"};
        }
        return standard_cyclic_cocycle(g.factors[0], a);
    }
    if (spec.rfind("from-form:", 0) == 0) {
        std::string path = spec.substr(10);
        QuadraticForm q = input_phase([&] { return form_from_json(load_json(path)); });
        if (q.group != g) throw UsageError{"form in " + path + " lives on a different group"};
        return abelian_cocycle_from_form(q).omega;
    }
    Cocycle3 w = input_phase([&] { return cocycle_from_json(load_json(spec)); });
    if (w.group != g) throw UsageError{"cocycle in " + spec + " lives on a different group"};
    if (auto bad = first_cocycle_violation(w))
        throw UsageError{"not a cocycle: d(omega)(x,y,z,v) != 0 at x=" +
                         std::to_string((*bad)[0]) + " y=" + std::to_string((*bad)[1]) +
                         " z=" + std::to_string((*bad)[2]) + " v=" + std::to_string((*bad)[3])};
    return w;
}

int run_fsexp(Ctx& ctx, const std::string& g_literal, const std::string& cocycle_spec) {
    Json report;
    report["command"] = "fsexp";
    Json in;
    in["G"] = g_literal;
    in["cocycle"] = cocycle_spec;
    report["inputs"] = std::move(in);

    FinAbGroup g = input_phase([&] { return parse_group_literal(g_literal); });
    Cocycle3 w = resolve_cocycle(g, cocycle_spec);

    CheckList checks;
    Json res;
    res["group"] = group_to_json(g);
    Json breakdown = Json::array();
    long long out = 1;
    for (const Subgroup& h : maximal_cyclic_subgroups(g)) {
        Vec gen;
        for (long long e : h.elems)
            if (g.elem_order(g.element(e)) == h.order()) {
                gen = g.element(e);
                break;
            }
        if (h.order() == 1) gen = Vec(g.ngens(), 0);
        long long ord = cyclic_class_order(restrict_to_cyclic(w, h));
        Json row;
        row["generator"] = coords_json(gen);
        row["subgroup_order"] = h.order();
        row["class_order"] = ord;
        row["contribution"] = ord * h.order();
        breakdown.push_back(std::move(row));
        out = std::lcm(out, ord * h.order());
    }
    res["maximal_cyclic"] = std::move(breakdown);
    res["fsexp"] = out;
    res["pointed"] = is_pointed_class(w);
    checks.add("breakdown-lcm-consistent", out == fsexp_from_cocycle(w),
               "fsexp = " + std::to_string(out));

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

int run_realize(Ctx& ctx, const std::string& form_path, std::optional<long long> sig_opt,
                const RealizeBounds& bounds) {
    Json report;
    report["command"] = "realize";
    Json in;
    in["form"] = form_path;
    report["inputs"] = std::move(in);

    QuadraticForm q = input_phase([&] { return form_from_json(load_json(form_path)); });
    if (!is_nondegenerate(q))
        throw UsageError{"degenerate forms are not discriminant forms of any even lattice"};
    long long sig = sig_opt ? *sig_opt : gauss_milgram_signature(q);
    report["inputs"]["signature"] = sig;

    CheckList checks;
    Json res;
    res["form"] = form_to_json(q);
    res["signature"] = sig;
    std::optional<EvenLattice> l;
    try {
        l = realize_form(q, sig, bounds);
    } catch (const SignatureMismatch& e) {
        throw UsageError{e.what()};
    } catch (const RealizationNotFound& e) {
        checks.add("realized", false, e.what());
        report["results"] = std::move(res);
        return ctx.finish(report, checks);
    }
    res["lattice"] = lattice_to_json(*l);
    res["rank"] = l->rank();
    res["det"] = int_json(l->det());
    checks.add("realized", true, l->name);
    checks.add("disc-equivalent", form_equivalence(discriminant_form(*l).form, q).has_value());
    checks.add("rank-sigma-mod-8", ((l->rank() - sig) % 8 + 8) % 8 == 0,
               "rank = " + std::to_string(l->rank()) + ", sigma = " + std::to_string(sig));

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

GlueTriple load_valid_triple(const std::string& path) {
    GlueTriple t = input_phase([&] { return triple_from_json(load_json(path)); });
    TripleCheck chk = validate(t);
    if (!chk) throw UsageError{path + ": " + chk.why};
    return t;
}

int run_triple_validate(Ctx& ctx, const std::string& path) {
    Json report;
    report["command"] = "triple validate";
    Json in;
    in["file"] = path;
    report["inputs"] = std::move(in);

    GlueTriple t = input_phase([&] { return triple_from_json(load_json(path)); });
    CheckList checks;
    Json res;
    res["triple"] = triple_to_json(t);
    TripleCheck chk = validate(t);
    checks.add("valid", chk.ok, chk.ok ? "" : chk.why);
    if (chk.ok) res["signature"] = gauss_milgram_signature(t.q);

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

int run_triple_product(Ctx& ctx, const std::string& a_path, const std::string& b_path) {
    Json report;
    report["command"] = "triple product";
    Json in;
    in["a"] = a_path;
    in["b"] = b_path;
    report["inputs"] = std::move(in);

    GlueTriple a = load_valid_triple(a_path);
    GlueTriple b = load_valid_triple(b_path);
    GlueTriple p = input_phase([&] { return product(a, b); });

    CheckList checks;
    Json res;
    res["product"] = triple_to_json(p);
    res["signature"] = gauss_milgram_signature(p.q);
    TripleCheck chk = validate(p);
    checks.add("product-valid", chk.ok, chk.ok ? "" : chk.why);

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

int run_triple_invert(Ctx& ctx, const std::string& path) {
    Json report;
    report["command"] = "triple invert";
    Json in;
    in["file"] = path;
    report["inputs"] = std::move(in);

    GlueTriple t = load_valid_triple(path);
    GlueTriple inv = inverse(t);

    CheckList checks;
    Json res;
    res["inverse"] = triple_to_json(inv);
    TripleCheck chk = validate(inv);
    checks.add("inverse-valid", chk.ok, chk.ok ? "" : chk.why);
    bool neutral = equivalent(product(t, inv), identity_triple(t.G)).has_value();
    checks.add("product-with-inverse-is-identity", neutral);

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

int run_triple_equiv(Ctx& ctx, const std::string& a_path, const std::string& b_path) {
    Json report;
    report["command"] = "triple equiv";
    Json in;
    in["a"] = a_path;
    in["b"] = b_path;
    report["inputs"] = std::move(in);

    GlueTriple a = load_valid_triple(a_path);
    GlueTriple b = load_valid_triple(b_path);
    std::optional<GroupHom> wit;
    try {
        wit = equivalent(a, b);
    } catch (const GroupMismatch& e) {
        throw UsageError{e.what()};
    }

    CheckList checks;
    Json res;
    if (wit) {
        Json im = Json::array();
        for (const Vec& v : wit->images) im.push_back(coords_json(v));
        res["witness"] = std::move(im);
    } else {
        res["witness"] = nullptr;
    }
    checks.add("equivalent", wit.has_value(),
               wit ? "isometry intertwining the embeddings found"
                   : "no isometry intertwines the embeddings");

    report["results"] = std::move(res);
    return ctx.finish(report, checks);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with metric groups, glue triples and even lattices"};
    app.require_subcommand(1);
    bool pretty = false, timing = false;
    app.add_flag("--pretty", pretty, "indent the JSON report");
    app.add_flag("--timing", timing, "include timing_ms in the report (breaks byte stability)");

    auto* disc = app.add_subcommand("discform", "discriminant form of an even lattice");
    disc->fallthrough();
    std::string disc_lattice;
    bool disc_modular = false;
    disc->add_option("lattice", disc_lattice, "catalog name or lattice JSON file")->required();
    disc->add_flag("--modular", disc_modular, "append the modular data report");

    auto* qg = app.add_subcommand("qgroup", "classify the glue triples over G");
    qg->fallthrough();
    std::string qg_literal;
    bool qg_table = false, qg_realize = false;
    long long qg_max = order_bound(4);
    qg->add_option("G", qg_literal, "group literal, e.g. 2,2")->required();
    qg->add_flag("--table", qg_table, "include the Cayley table");
    qg->add_flag("--realize", qg_realize, "realize each class by a lattice pair");
    qg->add_option("--max-order", qg_max, "largest |G| to enumerate")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run a named verification bundle");
    ver->fallthrough();
    std::string ver_name;
    long long ver_n = 2;
    ver->add_option("example", ver_name,
                    "one of a1-e7, milgram, niemeier, spin16, embeddings, z2cube")
        ->required();
    ver->add_option("--n", ver_n, "character order for the niemeier bundle")
        ->capture_default_str();

    auto* fs = app.add_subcommand("fsexp", "Frobenius-Schur exponent of a cocycle on G");
    fs->fallthrough();
    std::string fs_literal, fs_cocycle;
    fs->add_option("G", fs_literal, "group literal")->required();
    fs->add_option("cocycle", fs_cocycle,
                   "zero | z2cube-volume | cyclic:<a> | from-form:<file> | cocycle JSON file")
        ->required();

    auto* re = app.add_subcommand("realize", "even lattice with a prescribed discriminant form");
    re->fallthrough();
    std::string re_form;
    long long re_sig = -1;
    RealizeBounds re_bounds;
    re->add_option("form", re_form, "quadratic form JSON file")->required();
    auto* re_sig_opt =
        re->add_option("--signature", re_sig, "target rank mod 8 (default: Gauss-Milgram)");
    re->add_option("--max-k", re_bounds.max_k, "largest rank-1 block <2k>")
        ->capture_default_str();
    re->add_option("--max-rank1", re_bounds.max_rank1, "number of rank-1 blocks")
        ->capture_default_str();
    re->add_option("--max-big", re_bounds.max_big, "copies of each named block")
        ->capture_default_str();
    re->add_option("--max-e8", re_bounds.max_e8, "number of E8 pads")->capture_default_str();

    auto* tr = app.add_subcommand("triple", "operate on glue triple files");
    tr->fallthrough();
    tr->require_subcommand(1);
    std::string tr_a, tr_b;
    auto* trv = tr->add_subcommand("validate", "check the triple invariants");
    trv->fallthrough();
    trv->add_option("file", tr_a, "triple JSON file")->required();
    auto* trp = tr->add_subcommand("product", "glue two triples");
    trp->fallthrough();
    trp->add_option("a", tr_a, "triple JSON file")->required();
    trp->add_option("b", tr_b, "triple JSON file")->required();
    auto* tri = tr->add_subcommand("invert", "negate the form");
    tri->fallthrough();
    tri->add_option("file", tr_a, "triple JSON file")->required();
    auto* tre = tr->add_subcommand("equiv", "search for an intertwining isometry");
    tre->fallthrough();
    tre->add_option("a", tr_a, "triple JSON file")->required();
    tre->add_option("b", tr_b, "triple JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Ctx ctx{pretty, timing};
    try {
        if (disc->parsed()) return run_discform(ctx, disc_lattice, disc_modular);
        if (qg->parsed()) return run_qgroup(ctx, qg_literal, qg_table, qg_realize, qg_max);
        if (ver->parsed()) return run_verify(ctx, ver_name, ver_n);
        if (fs->parsed()) return run_fsexp(ctx, fs_literal, fs_cocycle);
        if (re->parsed())
            return run_realize(ctx, re_form,
                               re_sig_opt->count() ? std::optional<long long>(re_sig)
                                                   : std::nullopt,
                               re_bounds);
        if (tr->parsed()) {
            if (trv->parsed()) return run_triple_validate(ctx, tr_a);
            if (trp->parsed()) return run_triple_product(ctx, tr_a, tr_b);
            if (tri->parsed()) return run_triple_invert(ctx, tr_a);
            if (tre->parsed()) return run_triple_equiv(ctx, tr_a, tr_b);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
