#include "metricgroup/lattices.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace mg {

namespace {

QmodZ qmodz_from_rat(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int m = num % den;
    if (m < 0) m += den;
    return QmodZ(m.convert_to<long long>(), den.convert_to<long long>());
}

std::vector<Rat> mat_vec(const IntMat& a, const std::vector<Rat>& x) {
    std::vector<Rat> y(size_t(a.rows), Rat(0));
    for (long i = 0; i < a.rows; i++)
        for (long j = 0; j < a.cols; j++) y[size_t(i)] += Rat(a.at(i, j)) * x[size_t(j)];
    return y;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    return s;
}

// gram = rows * rows^T / scale, with exact divisibility enforced
IntMat scaled_gram(const IntMat& rows, const Int& scale) {
    IntMat g(rows.rows, rows.rows);
    for (long i = 0; i < rows.rows; i++)
        for (long j = 0; j < rows.rows; j++) {
            Int s = 0;
            for (long k = 0; k < rows.cols; k++) s += rows.at(i, k) * rows.at(j, k);
            if (s % scale != 0) throw Error("scaled_gram: pairing not integral");
            g.at(i, j) = s / scale;
        }
    return g;
}

} // namespace

void EvenLattice::validate() const {
    if (gram.rows != gram.cols || !gram.is_symmetric())
        throw Error("EvenLattice: gram must be square symmetric");
    for (long i = 0; i < gram.rows; i++) {
        if (gram.at(i, i) % 2 != 0) throw Error("EvenLattice: diagonal must be even");
        IntMat lead(i + 1, i + 1);
        for (long r = 0; r <= i; r++)
            for (long c = 0; c <= i; c++) lead.at(r, c) = gram.at(r, c);
        if (determinant(lead) <= 0) throw Error("EvenLattice: gram not positive definite");
    }
}

EvenLattice make_lattice(std::string name, IntMat gram) {
    EvenLattice l{std::move(name), std::move(gram)};
    l.validate();
    return l;
}

bool is_even(const EvenLattice& l) {
    for (long i = 0; i < l.gram.rows; i++)
        if (l.gram.at(i, i) % 2 != 0) return false;
    return true;
}

bool is_unimodular(const EvenLattice& l) { return l.det() == 1; }

EvenLattice direct_sum_lattice(const EvenLattice& a, const EvenLattice& b) {
    IntMat g(a.rank() + b.rank(), a.rank() + b.rank());
    for (long i = 0; i < a.rank(); i++)
        for (long j = 0; j < a.rank(); j++) g.at(i, j) = a.gram.at(i, j);
    for (long i = 0; i < b.rank(); i++)
        for (long j = 0; j < b.rank(); j++) g.at(a.rank() + i, a.rank() + j) = b.gram.at(i, j);
    std::string name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "+" + b.name);
    return make_lattice(std::move(name), std::move(g));
}

DiscriminantForm discriminant_form(const EvenLattice& l) {
    long n = l.rank();
    SmithForm sf = smith_normal_form(l.gram);
    auto diag = sf.diagonal();
    std::vector<long> kept;
    std::vector<long long> factors;
    for (long i = 0; i < n; i++)
        if (diag[size_t(i)] > 1) {
            kept.push_back(i);
            factors.push_back(diag[size_t(i)].convert_to<long long>());
        }
    DiscriminantForm d;
    d.gram_ = l.gram;
    d.mods_ = factors;
    d.proj_rows_ = IntMat(long(kept.size()), n);
    for (size_t i = 0; i < kept.size(); i++)
        for (long j = 0; j < n; j++) d.proj_rows_.at(long(i), j) = sf.U.at(kept[i], j);
    // generator lift = (column i of V) / s_i, a vector of L° in L's basis
    for (size_t i = 0; i < kept.size(); i++) {
        std::vector<Rat> lift(size_t(n), Rat(0));
        for (long j = 0; j < n; j++)
            lift[size_t(j)] = Rat(sf.V.at(j, kept[i]), diag[size_t(kept[i])]);
        d.lifts.push_back(std::move(lift));
    }
    FinAbGroup group(factors);
    size_t k = kept.size();
    std::vector<QmodZ> qdiag(k);
    std::vector<std::vector<QmodZ>> cross(k, std::vector<QmodZ>(k));
    for (size_t i = 0; i < k; i++) {
        std::vector<Rat> gi = mat_vec(l.gram, d.lifts[i]);
        qdiag[i] = qmodz_from_rat(dot(d.lifts[i], gi) / 2);
        for (size_t j = 0; j < k; j++)
            if (i != j) cross[i][j] = qmodz_from_rat(dot(d.lifts[j], gi));
    }
    d.form = make_form(group, qdiag, cross);
    return d;
}

Vec DiscriminantForm::class_of(const std::vector<Rat>& w) const {
    if (long(w.size()) != gram_.cols) throw Error("class_of: wrong coordinate count");
    std::vector<Rat> z = mat_vec(gram_, w);
    std::vector<Int> zi(z.size());
    for (size_t i = 0; i < z.size(); i++) {
        if (denominator(z[i]) != 1) throw Error("class_of: vector does not pair integrally with L");
        zi[i] = numerator(z[i]);
    }
    Vec c(mods_.size(), 0);
    for (size_t i = 0; i < mods_.size(); i++) {
        Int acc = 0;
        for (long j = 0; j < proj_rows_.cols; j++) acc += proj_rows_.at(long(i), j) * zi[size_t(j)];
        acc %= mods_[i];
        if (acc < 0) acc += mods_[i];
        c[i] = acc.convert_to<long long>();
    }
    return c;
}

EvenLattice rank1_lattice(long long k) {
    if (k < 1) throw Error("rank1_lattice: k must be positive");
    IntMat g(1, 1);
    g.at(0, 0) = 2 * k;
    return make_lattice(k == 1 ? "A1" : "<" + std::to_string(2 * k) + ">", std::move(g));
}

EvenLattice root_A1() { return rank1_lattice(1); }

EvenLattice root_A(long n) {
    if (n < 1) throw Error("root_A: rank must be positive");
    if (n == 1) return root_A1();
    IntMat g(n, n);
    for (long i = 0; i < n; i++) g.at(i, i) = 2;
    for (long i = 0; i + 1 < n; i++) g.at(i, i + 1) = g.at(i + 1, i) = -1;
    return make_lattice("A" + std::to_string(n), std::move(g));
}

EvenLattice root_D(long n) {
    if (n < 3) throw Error("root_D: rank must be at least 3");
    IntMat g(n, n);
    for (long i = 0; i < n; i++) g.at(i, i) = 2;
    for (long i = 0; i + 2 < n; i++) g.at(i, i + 1) = g.at(i + 1, i) = -1; // chain 1..n-1
    g.at(n - 3, n - 1) = g.at(n - 1, n - 3) = -1;                         // fork at n-2
    return make_lattice("D" + std::to_string(n), std::move(g));
}

namespace {

IntMat e_series_gram(long n) {
    // Bourbaki numbering: chain 1-3-4-...-n, node 2 attached to node 4
    IntMat g(n, n);
    for (long i = 0; i < n; i++) g.at(i, i) = 2;
    auto link = [&](long a, long b) { g.at(a - 1, b - 1) = g.at(b - 1, a - 1) = -1; };
    link(1, 3);
    for (long i = 3; i < n; i++) link(i, i + 1);
    link(2, 4);
    return g;
}

} // namespace

EvenLattice root_E7() { return make_lattice("E7", e_series_gram(7)); }
EvenLattice root_E8() { return make_lattice("E8", e_series_gram(8)); }

namespace {

// basis of 2 * Gamma16 in epsilon coordinates: HNF of the doubled D16 simple
// roots together with 2w = (1,...,1)
IntMat spin16_doubled_basis() {
    IntMat gens(17, 16);
    for (long i = 0; i < 15; i++) {
        gens.at(i, i) = 2;
        gens.at(i, i + 1) = -2;
    }
    gens.at(15, 14) = 2;
    gens.at(15, 15) = 2;
    for (long j = 0; j < 16; j++) gens.at(16, j) = 1;
    IntMat basis = hnf_row_basis(gens);
    if (basis.rows != 16) throw Error("spin16: generators failed to span");
    return basis;
}

} // namespace

std::vector<Rat> in_basis(const IntMat& basis, const std::vector<Rat>& v) {
    // solve basis^T c = v
    RatMat bt(basis.cols, basis.rows);
    for (long i = 0; i < basis.rows; i++)
        for (long j = 0; j < basis.cols; j++) bt.at(j, i) = Rat(basis.at(i, j));
    RatMat inv = bt.inverse();
    std::vector<Rat> c(size_t(basis.rows), Rat(0));
    for (long i = 0; i < inv.rows; i++)
        for (long j = 0; j < inv.cols; j++) c[size_t(i)] += inv.at(i, j) * v[size_t(j)];
    return c;
}

EvenLattice build_spin16() {
    return make_lattice("Gamma16", scaled_gram(spin16_doubled_basis(), 4));
}

std::vector<Rat> spin16_u() {
    std::vector<Rat> two_u(16, Rat(0));
    for (int i = 0; i < 8; i++) two_u[size_t(i)] = 1; // 2u = e1+...+e8
    return in_basis(spin16_doubled_basis(), two_u);
}

std::vector<Rat> spin16_v() {
    std::vector<Rat> two_v(16, Rat(0));
    two_v[7] = 1;
    two_v[15] = -1; // 2v = e8 - e16
    return in_basis(spin16_doubled_basis(), two_v);
}

EvenLattice spin16_kernel() {
    return kernel_sublattice(build_spin16(), {spin16_u(), spin16_v()}, "K").lattice;
}

EvenLattice e8_quarter_kernel() {
    // adjacent simple roots 1 and 3 halved
    std::vector<Rat> h1(8, Rat(0)), h3(8, Rat(0));
    h1[0] = Rat(1, 2);
    h3[2] = Rat(1, 2);
    return kernel_sublattice(root_E8(), {h1, h3}, "QK8").lattice;
}

bool GolayCode::contains(uint32_t w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

namespace {

GolayCode close_code(const std::vector<uint32_t>& gens, long length) {
    GolayCode c;
    c.generator_matrix = IntMat(long(gens.size()), length);
    for (size_t i = 0; i < gens.size(); i++)
        for (long j = 0; j < length; j++) c.generator_matrix.at(long(i), j) = (gens[i] >> j) & 1;
    size_t n = gens.size();
    c.words.reserve(size_t(1) << n);
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); mask++) {
        uint32_t w = 0;
        for (size_t i = 0; i < n; i++)
            if ((mask >> i) & 1) w ^= gens[i];
        c.words.push_back(w);
    }
    std::sort(c.words.begin(), c.words.end());
    if (std::adjacent_find(c.words.begin(), c.words.end()) != c.words.end())
        throw Error("code generators are linearly dependent");
    return c;
}

} // namespace

GolayCode build_golay() {
    // [I | B] with B the bordered circulant over the quadratic residues of 11
    std::vector<uint32_t> gens(12, 0);
    auto bset = [&](int i, int j) { gens[size_t(i)] |= uint32_t(1) << (12 + j); };
    for (int i = 0; i < 12; i++) gens[size_t(i)] |= uint32_t(1) << i;
    for (int j = 1; j < 12; j++) bset(0, j);
    for (int i = 1; i < 12; i++) bset(i, 0);
    for (int i = 0; i < 11; i++)
        for (int j = 0; j < 11; j++) {
            int d = ((j - i) % 11 + 11) % 11;
            if (d == 0 || d == 1 || d == 3 || d == 4 || d == 5 || d == 9) bset(i + 1, j + 1);
        }
    return close_code(gens, 24);
}

GolayCode build_golay_flm() {
    // two versions of the extended Hamming [8,4] code with C1 ∩ C2 = {0, 1}
    std::vector<uint32_t> c1{0xF0, 0xCC, 0xAA, 0xFF};
    std::vector<uint32_t> c2{0xE8, 0xB4, 0x72, 0xFF};
    std::vector<uint32_t> gens;
    for (uint32_t s : c1) gens.push_back(s | (s << 8));
    for (uint32_t s : c1) gens.push_back(s | (s << 16));
    for (uint32_t t : c2) gens.push_back(t | (t << 8) | (t << 16));
    return close_code(gens, 24);
}

std::vector<long long> weight_enumerator(const GolayCode& c) {
    std::vector<long long> counts(25, 0);
    for (uint32_t w : c.words) counts[size_t(std::popcount(w))]++;
    return counts;
}

namespace {

IntMat niemeier_k_basis() {
    GolayCode g = build_golay();
    IntMat gens(36, 24);
    for (long i = 0; i < 12; i++)
        for (long j = 0; j < 24; j++) gens.at(i, j) = g.generator_matrix.at(i, j);
    for (long i = 0; i < 24; i++) gens.at(12 + i, i) = 2;
    IntMat basis = hnf_row_basis(gens);
    if (basis.rows != 24) throw Error("niemeier: generators failed to span");
    return basis;
}

} // namespace

EvenLattice build_niemeier_a1_24() {
    // coordinates are units of alpha_i/2, so the pairing is x.y/2
    return make_lattice("NiemeierA1_24", scaled_gram(niemeier_k_basis(), 2));
}

std::vector<Rat> niemeier_character(long long n) {
    std::vector<Rat> target(24, Rat(0));
    target[0] = Rat(2, n); // alpha_1/n, with alpha_1 = 2 e_1 in these units
    return in_basis(niemeier_k_basis(), target);
}

SublatticeResult kernel_sublattice(const EvenLattice& l,
                                   const std::vector<std::vector<Rat>>& duals,
                                   std::string name) {
    long n = l.rank();
    IntMat m(long(duals.size()), n);
    std::vector<long long> moduli(duals.size(), 1);
    for (size_t j = 0; j < duals.size(); j++) {
        if (long(duals[j].size()) != n) throw Error("kernel_sublattice: wrong dual length");
        std::vector<Rat> t = mat_vec(l.gram, duals[j]);
        Int den = 1;
        for (const Rat& v : t) den = lcm(den, denominator(v));
        for (long i = 0; i < n; i++)
            m.at(long(j), i) = numerator(t[size_t(i)]) * (den / denominator(t[size_t(i)]));
        moduli[j] = den.convert_to<long long>();
    }
    IntMat kern = kernel_lattice_mod(m, moduli);
    IntMat rows = hnf_row_basis(kern.transposed());
    if (rows.rows != n) throw Error("kernel_sublattice: kernel not of full rank");
    IntMat gram(n, n);
    for (long i = 0; i < n; i++)
        for (long j = 0; j < n; j++) {
            Int s = 0;
            for (long p = 0; p < n; p++)
                for (long q = 0; q < n; q++) s += rows.at(i, p) * l.gram.at(p, q) * rows.at(j, q);
            gram.at(i, j) = s;
        }
    return SublatticeResult{make_lattice(name.empty() ? l.name + "_ker" : std::move(name),
                                         std::move(gram)),
                            rows};
}

OverlatticeResult overlattice_glue(const EvenLattice& l, const DiscriminantForm& d,
                                   const Subgroup& h, std::string name) {
    if (h.parent != d.form.group) throw GroupMismatch("overlattice: subgroup of the wrong group");
    if (!is_isotropic(d.form, h)) throw NotIsotropic("overlattice: glue group must be isotropic");
    long n = l.rank();
    std::vector<std::vector<Rat>> glue;
    for (const auto& g : h.gens) {
        std::vector<Rat> v(size_t(n), Rat(0));
        for (size_t i = 0; i < d.lifts.size(); i++)
            for (long j = 0; j < n; j++) v[size_t(j)] += Rat(g[i]) * d.lifts[i][size_t(j)];
        glue.push_back(std::move(v));
    }
    Int den = 1;
    for (const auto& v : glue)
        for (const Rat& x : v) den = lcm(den, denominator(x));
    IntMat stack(n + long(glue.size()), n);
    for (long i = 0; i < n; i++) stack.at(i, i) = den;
    for (size_t g = 0; g < glue.size(); g++)
        for (long j = 0; j < n; j++)
            stack.at(n + long(g), j) =
                numerator(glue[g][size_t(j)]) * (den / denominator(glue[g][size_t(j)]));
    IntMat rows = hnf_row_basis(stack);
    if (rows.rows != n) throw Error("overlattice: basis collapse");
    // gram = rows * A * rows^T / den^2
    IntMat gram(n, n);
    for (long i = 0; i < n; i++)
        for (long j = 0; j < n; j++) {
            Int s = 0;
            for (long p = 0; p < n; p++)
                for (long q = 0; q < n; q++) s += rows.at(i, p) * l.gram.at(p, q) * rows.at(j, q);
            if (s % (den * den) != 0) throw Error("overlattice: glue is not integral");
            gram.at(i, j) = s / (den * den);
        }
    RatMat basis(n, n);
    for (long i = 0; i < n; i++)
        for (long j = 0; j < n; j++) basis.at(i, j) = Rat(rows.at(i, j), den);
    return OverlatticeResult{
        make_lattice(name.empty() ? l.name + "_over" : std::move(name), std::move(gram)),
        std::move(basis)};
}

EvenLattice overlattice(const EvenLattice& l, const DiscriminantForm& d, const Subgroup& h,
                        std::string name) {
    return overlattice_glue(l, d, h, std::move(name)).lattice;
}

namespace {

struct Block {
    std::string tag;
    long rank;
    Int det;
    QuadraticForm disc;
    std::function<EvenLattice()> build;
};

} // namespace

EvenLattice realize_form(const QuadraticForm& q, long long sig, const RealizeBounds& bounds) {
    q.validate();
    if (!is_nondegenerate(q)) throw DegenerateForm("realize_form needs a nondegenerate form");
    long long want = ((sig % 8) + 8) % 8;
    if (gauss_milgram_signature(q) != want)
        throw SignatureMismatch("requested signature disagrees with Gauss-Milgram");
    Int order(q.group.order());

    std::vector<Block> blocks;
    for (long long k = 1; k <= bounds.max_k; k++)
        blocks.push_back(Block{rank1_lattice(k).name, 1, Int(2 * k),
                               cyclic_q(2 * k, QmodZ(1, 4 * k)),
                               [k] { return rank1_lattice(k); }});
    long nrank1 = long(blocks.size());
    auto add_big = [&](EvenLattice l) {
        DiscriminantForm d = discriminant_form(l);
        std::string tag = l.name;
        blocks.push_back(Block{tag, l.rank(), l.det(), d.form,
                               [l = std::move(l)] { return l; }});
    };
    for (long n = 2; n <= 8; n++) add_big(root_A(n)); // cyclic Z_{n+1} with q = n/(2n+2)
    add_big(root_D(4));
    add_big(root_E7());
    add_big(root_D(16)); // the only catalog source of the hyperbolic Z2xZ2 form
    add_big(e8_quarter_kernel());
    add_big(spin16_kernel());
    add_big(root_E8());
    long ne8 = long(blocks.size()) - 1;

    // selections: counts per block, rank-1 total capped, det must match
    struct Cand {
        long rank;
        std::string name;
        std::vector<long> counts;
    };
    std::vector<Cand> cands;
    std::vector<long> counts(blocks.size(), 0);
    std::function<void(size_t, long, Int)> rec = [&](size_t i, long r1, Int det) {
        if (i == blocks.size()) {
            if (det != order) return;
            Cand c;
            c.counts = counts;
            c.rank = 0;
            for (size_t b = 0; b < blocks.size(); b++) {
                c.rank += counts[b] * blocks[b].rank;
                for (long t = 0; t < counts[b]; t++)
                    c.name += (c.name.empty() ? "" : "+") + blocks[b].tag;
            }
            cands.push_back(std::move(c));
            return;
        }
        long cap;
        if (long(i) < nrank1) cap = bounds.max_rank1 - r1;
        else if (long(i) == ne8) cap = bounds.max_e8;
        else cap = bounds.max_big;
        Int d = det;
        for (long c = 0; c <= cap; c++) {
            counts[i] = c;
            rec(i + 1, r1 + (long(i) < nrank1 ? c : 0), d);
            d *= blocks[i].det;
            if (d > order) {  // no block has det < 1, so further counts only grow
                counts[i] = 0;
                return;
            }
        }
        counts[i] = 0;
    };
    // note: rec multiplies det after recursing, so pass through is det(count c)
    rec(0, 0, Int(1));

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.name < b.name;
    });

    auto values = value_multiset(q);
    for (const Cand& c : cands) {
        QuadraticForm disc = zero_form(FinAbGroup());
        for (size_t b = 0; b < blocks.size(); b++)
            for (long t = 0; t < c.counts[b]; t++) disc = direct_sum(disc, blocks[b].disc);
        if (disc.group != q.group) continue;
        if (value_multiset(disc) != values) continue;
        if (!form_equivalence(q, disc)) continue;
        EvenLattice out = make_lattice("", IntMat(0, 0));
        for (size_t b = 0; b < blocks.size(); b++)
            for (long t = 0; t < c.counts[b]; t++)
                out = direct_sum_lattice(out, blocks[b].build());
        if (out.rank() == 0) out.name = "0";
        return out;
    }
    throw RealizationNotFound("no catalog sum matches within bounds (max_k=" +
                              std::to_string(bounds.max_k) +
                              ", max_rank1=" + std::to_string(bounds.max_rank1) +
                              ", max_big=" + std::to_string(bounds.max_big) +
                              ", max_e8=" + std::to_string(bounds.max_e8) + ")");
}

const std::vector<std::pair<std::string, EvenLattice>>& lattice_catalog() {
    static const std::vector<std::pair<std::string, EvenLattice>> cat = [] {
        std::vector<std::pair<std::string, EvenLattice>> v;
        v.push_back({"A1", root_A1()});
        v.push_back({"D4", root_D(4)});
        v.push_back({"E7", root_E7()});
        v.push_back({"E8", root_E8()});
        v.push_back({"D16", root_D(16)});
        v.push_back({"Gamma16", build_spin16()});
        v.push_back({"NiemeierA1_24", build_niemeier_a1_24()});
        v.push_back({"K", spin16_kernel()});
        v.push_back({"QK8", e8_quarter_kernel()});
        return v;
    }();
    return cat;
}

EvenLattice catalog_lattice(const std::string& name) {
    for (const auto& [n, l] : lattice_catalog())
        if (n == name) return l;
    throw Error("unknown catalog lattice: " + name);
}

} // namespace mg
