#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "metricgroup/forms.hpp"

namespace mg {

// Positive definite even lattice given by its Gram matrix; vectors are
// coordinate tuples in the implicit basis.
struct EvenLattice {
    std::string name;
    IntMat gram;

    long rank() const { return gram.rows; }
    Int det() const { return determinant(gram); }
    void validate() const; // symmetric, even diagonal, positive definite
};

EvenLattice make_lattice(std::string name, IntMat gram);
bool is_even(const EvenLattice& l);
bool is_unimodular(const EvenLattice& l);
EvenLattice direct_sum_lattice(const EvenLattice& a, const EvenLattice& b);

// Discriminant form (L°/L, q) with q(λ+L) = (λ,λ)/2 mod 1. Lift vectors are
// rational coordinates (in L's basis) of a dual vector representing each
// group generator.
class DiscriminantForm {
public:
    QuadraticForm form; // form.group is L°/L in invariant factors
    std::vector<std::vector<Rat>> lifts;

    // class of a dual vector given in L-basis coordinates; throws Error when
    // the vector does not pair integrally with L
    Vec class_of(const std::vector<Rat>& w) const;

private:
    friend DiscriminantForm discriminant_form(const EvenLattice&);
    IntMat gram_, proj_rows_;
    std::vector<long long> mods_;
};

DiscriminantForm discriminant_form(const EvenLattice& l);

// catalog blocks
EvenLattice rank1_lattice(long long k); // <2k>, disc (Z_2k, x^2/4k)
EvenLattice root_A1();
EvenLattice root_A(long n); // n >= 1
EvenLattice root_D(long n); // n >= 3
EvenLattice root_E7();
EvenLattice root_E8();

// Spin lattice of rank 16: D16 extended by the half-sum weight w.
EvenLattice build_spin16();
// The two order-2 glue characters cutting the index-4 kernel below:
// u = (e1+...+e8)/2 and v = (e8-e16)/2, as rational vectors in the basis of
// build_spin16().
std::vector<Rat> spin16_u();
std::vector<Rat> spin16_v();
// K = {a in Gamma16 : (u,a), (v,a) integral}, the rank-16 sublattice with
// K°/K = (Z4 x Z4, st/4).
EvenLattice spin16_kernel();

// Index-4 kernel in E8 cut by halves of two adjacent simple roots; its
// discriminant form is v_2 on Z4 x Z4, which no orthogonal sum of the other
// blocks produces.
EvenLattice e8_quarter_kernel();

// Binary Golay code [24,12,8] as 24-bit masks.
struct GolayCode {
    IntMat generator_matrix; // 12 x 24 over {0,1}
    std::vector<uint32_t> words; // all 4096 codewords, sorted

    bool contains(uint32_t w) const;
};

GolayCode build_golay(); // bordered-circulant systematic generator matrix
// Turyn-style assembly <(S,S,0), (S,0,S), (T,T,T)> from two versions of the
// [8,4] extended Hamming code.
GolayCode build_golay_flm();
std::vector<long long> weight_enumerator(const GolayCode& c); // counts by weight 0..24

// Niemeier lattice of type A1^24: spanned by the A1 frame and half-sums of
// roots over Golay codewords.
EvenLattice build_niemeier_a1_24();
// alpha_1/n in the basis of build_niemeier_a1_24(); its pairing character
// has exact order n
std::vector<Rat> niemeier_character(long long n);

struct SublatticeResult {
    EvenLattice lattice;
    IntMat basis; // rows express the sublattice basis in the parent's basis
};

// Coordinates of v relative to a square integer row basis (v given in the
// ambient coordinates); throws Error if the basis is singular.
std::vector<Rat> in_basis(const IntMat& basis_rows, const std::vector<Rat>& v);
// K = {x in L : (u_j, x) integral for all duals}; duals in L-basis coords.
SublatticeResult kernel_sublattice(const EvenLattice& l,
                                   const std::vector<std::vector<Rat>>& duals,
                                   std::string name = "");

// E with L <= E <= L° and E/L = H; requires H isotropic (else NotIsotropic).
struct OverlatticeResult {
    EvenLattice lattice;
    RatMat basis_in_parent; // rows express the new basis in L's basis
};
OverlatticeResult overlattice_glue(const EvenLattice& l, const DiscriminantForm& d,
                                   const Subgroup& h, std::string name = "");
EvenLattice overlattice(const EvenLattice& l, const DiscriminantForm& d, const Subgroup& h,
                        std::string name = "");

struct RealizeBounds {
    long long max_k = 8;  // rank-1 blocks <2k> up to this k
    long max_rank1 = 3;   // total number of rank-1 blocks
    long max_big = 2;     // copies of each of D4, E7, K, quarter kernel
    long max_e8 = 2;      // E8 pads
};

// Positive definite even lattice whose discriminant form is equivalent to q;
// sig must equal the Gauss-Milgram signature (else SignatureMismatch). The
// smallest-rank, lexicographically-first catalog sum is returned; throws
// RealizationNotFound when the bounds are exhausted.
EvenLattice realize_form(const QuadraticForm& q, long long sig,
                         const RealizeBounds& bounds = {});

// Named lattices accepted by the command line.
const std::vector<std::pair<std::string, EvenLattice>>& lattice_catalog();
// Lookup by catalog name; throws Error for unknown names.
EvenLattice catalog_lattice(const std::string& name);

} // namespace mg
