#pragma once

#include <optional>
#include <vector>

#include "metricgroup/intmat.hpp"
#include "metricgroup/qmodz.hpp"

namespace mg {

// Element coordinates relative to the group's generator list.
using Vec = std::vector<long long>;

// Finite abelian group ⊕ Z_{d_i}, d_i >= 2. Canonical groups keep the
// divisibility chain d_1 | d_2 | ...; raw direct products built internally
// may not, see in_invariant_chain().
struct FinAbGroup {
    std::vector<long long> factors;

    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<long long> f);

    size_t ngens() const { return factors.size(); }
    long long order() const;
    long long exponent() const;
    bool in_invariant_chain() const;

    Vec zero() const { return Vec(factors.size(), 0); }
    Vec reduce(Vec v) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec smul(long long k, const Vec& a) const;
    long long elem_order(const Vec& a) const;
    Vec gen(size_t i) const;

    // mixed-radix indexing with the first coordinate most significant
    long long index_of(const Vec& a) const;
    Vec element(long long idx) const;

    bool operator==(const FinAbGroup& o) const { return factors == o.factors; }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }
};

// Dual pairing <chi, g> = sum chi_i g_i / d_i identifying the character group
// of G with G itself via the standard coordinates.
QmodZ dual_pairing(const FinAbGroup& g, const Vec& chi, const Vec& x);

FinAbGroup product_group(const FinAbGroup& a, const FinAbGroup& b);
Vec pair_elem(const Vec& a, const Vec& b);
Vec proj_left(const FinAbGroup& a, const Vec& ab);
Vec proj_right(const FinAbGroup& a, const Vec& ab);

struct Subgroup {
    FinAbGroup parent;
    std::vector<Vec> gens;
    std::vector<long long> elems; // sorted element indices

    long long order() const { return (long long)elems.size(); }
    bool contains(const FinAbGroup& g, const Vec& v) const;
    bool contains_index(long long idx) const;
};

Subgroup generated_subgroup(const FinAbGroup& g, const std::vector<Vec>& gens);
Subgroup trivial_subgroup(const FinAbGroup& g);
Subgroup full_subgroup(const FinAbGroup& g);

// All subgroups, deterministic order (sorted by size, then element list).
// Throws TooLarge when |G| exceeds the bound.
std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& g, long long max_order = 4096);

struct GroupHom {
    FinAbGroup src, dst;
    std::vector<Vec> images; // image of each source generator

    Vec apply(const Vec& x) const;
    bool well_defined() const;
    bool is_injective() const;
    bool is_surjective() const;
};

GroupHom identity_hom(const FinAbGroup& g);
GroupHom compose(const GroupHom& outer, const GroupHom& inner);

// All isomorphisms G -> H (empty if none). Deterministic order.
std::vector<GroupHom> enumerate_isos(const FinAbGroup& g, const FinAbGroup& h,
                                     long long max_order = 4096);

// Presentation of sub/modout as a canonical invariant-factor group.
//   group:  the canonical quotient
//   lifts:  a representative in the ambient group for each quotient generator
//   proj(x): quotient coordinates of x (x must lie in sub)
class Subquotient {
public:
    FinAbGroup group;
    std::vector<Vec> lifts;

    Vec proj(const Vec& x) const; // throws InvalidSubgroup if x is not in sub

private:
    friend Subquotient subquotient(const FinAbGroup&, const std::vector<Vec>&,
                                   const std::vector<Vec>&);
    FinAbGroup ambient_;
    std::vector<Vec> sub_gens_;
    IntMat coord_rows_;            // rows mapping Z^r tuples to quotient coords
    std::vector<long long> mods_;  // per-row modulus (quotient factors)
};

// sub = <sub_gens> <= G, modout = <modout_gens> must be contained in sub.
Subquotient subquotient(const FinAbGroup& g, const std::vector<Vec>& sub_gens,
                        const std::vector<Vec>& modout_gens);

// Convenience: G/H with projection defined on all of G.
struct Quotient {
    FinAbGroup group;
    std::vector<Vec> lifts;
    Subquotient sq;
};
Quotient quotient(const FinAbGroup& g, const Subgroup& h);

// Greedy small generating set of an element list (indices into g).
std::vector<Vec> minimal_generators(const FinAbGroup& g, const std::vector<long long>& elems);

// Exterior cube of G (invariant-factor form).
FinAbGroup exterior_cube(const FinAbGroup& g);

// All invariant-factor chains with the given order, ascending lexicographic.
std::vector<std::vector<long long>> abelian_group_types(long long order);

// Order cap used by table-building and enumeration code. Returns the value
// of METRICGROUP_MAX_ORDER when that is set to a positive integer, otherwise
// the caller's default.
long long order_bound(long long fallback);

// Solve M v = target (mod per-row moduli) over the integers; M is k x r.
std::optional<Vec> solve_mod(const IntMat& m, const std::vector<long long>& moduli,
                             const Vec& target);

// Basis (columns) of { v in Z^r : M v = 0 mod per-row moduli }.
IntMat kernel_lattice_mod(const IntMat& m, const std::vector<long long>& moduli);

} // namespace mg
