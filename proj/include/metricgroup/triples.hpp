#pragma once

#include <optional>

#include "metricgroup/forms.hpp"
#include "metricgroup/lattices.hpp"

namespace mg {

// Glue triple (Gamma, q, i): a nondegenerate form q on Gamma with
// |Gamma| = |G|^2 and a Lagrangian embedding i of the character group of G.
// Characters are identified with G itself through the standard pairing, so
// i is a hom G -> Gamma and Gamma is carried by q.group.
struct GlueTriple {
    FinAbGroup G;
    QuadraticForm q;
    GroupHom i;

    const FinAbGroup& gamma() const { return q.group; }
};

// validate() names the first broken invariant instead of throwing.
struct TripleCheck {
    bool ok = true;
    std::string why;
    explicit operator bool() const { return ok; }
};

TripleCheck validate(const GlueTriple& t);

// The projection p: Gamma -> G pinned down by <chi, p(x)> = b(i(chi), x).
// Empty when some pairing value does not land in (1/d_j)Z, in which case no
// such projection exists.
std::optional<GroupHom> induced_projection(const GlueTriple& t);

// (G^ x G, evaluation form, chi -> (chi, 0)): the identity class.
GlueTriple identity_triple(const FinAbGroup& g);

// [t]*[t'] glued along H = {(i(chi), i'(-chi))}: the form induced on
// H^perp/H with i''(chi) = [(i(chi), 0)]. Throws GroupMismatch.
GlueTriple product(const GlueTriple& a, const GlueTriple& b);

// (Gamma, -q, i); isotropy is preserved under negation.
GlueTriple inverse(const GlueTriple& t);

// Isometry j with q' o j = q and j o i = i', if one exists. Same G required.
std::optional<GroupHom> equivalent(const GlueTriple& a, const GlueTriple& b,
                                   long long max_order = 4096);

struct QGroupTable {
    std::vector<GlueTriple> classes;
    std::vector<std::vector<int>> table; // indices into classes
    int identity = -1;
    std::vector<int> inverse_map;
};

// Exhaustive classification of Q(G): all Gamma of order |G|^2, all forms up
// to equivalence, all embeddings up to Aut(Gamma, q), with the group axioms
// verified on the product table. Throws TooLarge past the order bound.
QGroupTable enumerate_Q(const FinAbGroup& g, long long max_group_order = 4);

// Unimodular overlattice realizing a triple: L realizes q, E glues in the
// image of i. coset_reps[k] is a vector x in the dual of L (in L's basis
// coordinates) whose class projects to element k of G, so the E-cosets
// E + x enumerate G.
struct TripleRealization {
    EvenLattice E;
    EvenLattice L;
    RatMat e_basis_in_l;
    std::vector<std::vector<Rat>> coset_reps;
};

TripleRealization realize_triple(const GlueTriple& t, const RealizeBounds& bounds = {});

} // namespace mg
