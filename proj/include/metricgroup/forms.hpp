#pragma once

#include <optional>

#include "metricgroup/groups.hpp"

namespace mg {

// Finite quadratic form q: A -> Q/Z with b(x,y) = q(x+y) - q(x) - q(y).
// Stored by generator data: diag[i] = q(e_i), cross[i][j] = b(e_i, e_j) for
// i != j (zero on the diagonal). Well-definedness demands
//   2 d_i diag[i] = 0,  d_i^2 diag[i] = 0,  d_i cross[i][j] = d_j cross[i][j] = 0.
struct QuadraticForm {
    FinAbGroup group;
    std::vector<QmodZ> diag;
    std::vector<std::vector<QmodZ>> cross;

    QmodZ q(const Vec& x) const;
    QmodZ b(const Vec& x, const Vec& y) const;
    void validate() const; // throws Error when the data is not well-defined

    bool operator==(const QuadraticForm& o) const {
        return group == o.group && diag == o.diag && cross == o.cross;
    }
    bool operator!=(const QuadraticForm& o) const { return !(*this == o); }
};

QuadraticForm make_form(FinAbGroup g, std::vector<QmodZ> diag,
                        std::vector<std::vector<QmodZ>> cross);
QuadraticForm zero_form(const FinAbGroup& g);
QuadraticForm negate(const QuadraticForm& f);

// Orthogonal sum, regrouped into invariant-factor form.
QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);

// Standard blocks on (Z_{2^k})^2: u_k(s,t) = st/2^k, v_k(s,t) = (s^2+st+t^2)/2^k.
QuadraticForm standard_u(long long k);
QuadraticForm standard_v(long long k);
// q(x) = v x^2 on Z_n (v = q(1) must satisfy the cyclic constraints).
QuadraticForm cyclic_q(long long n, QmodZ v);

// Radical of the bilinear form; the form is nondegenerate when it vanishes.
Subgroup radical(const QuadraticForm& f);
bool is_nondegenerate(const QuadraticForm& f);

// Gauss-Milgram: sum_x e^{2 pi i q(x)} = sqrt|A| e^{2 pi i sigma/8}; returns
// sigma in {0..7}. Throws DegenerateForm, or NumericalInconsistency when the
// sum fails to have the right modulus (1e-9) or land on an eighth (1e-6).
long long gauss_milgram_signature(const QuadraticForm& f);

bool is_isotropic(const QuadraticForm& f, const Subgroup& h);
std::vector<Subgroup> isotropic_subgroups(const QuadraticForm& f);
// Isotropic subgroups with |H|^2 = |A|.
std::vector<Subgroup> lagrangian_subgroups(const QuadraticForm& f);

Subgroup orthogonal_complement(const QuadraticForm& f, const Subgroup& h);

// Form induced on H^perp / H by an isotropic H (throws NotIsotropic).
struct InducedForm {
    QuadraticForm form;
    Subquotient sq; // projection H^perp -> quotient coordinates
};
InducedForm induced_form(const QuadraticForm& f, const Subgroup& h);

// Isomorphism with q_b(f(x)) = q_a(x), if one exists.
std::optional<GroupHom> form_equivalence(const QuadraticForm& a, const QuadraticForm& b);
std::vector<GroupHom> form_automorphisms(const QuadraticForm& f);

// All forms on g in parameter order; the parameterization is injective.
std::vector<QuadraticForm> enumerate_forms(const FinAbGroup& g);
// Representatives of equivalence classes, nondegenerate ones only when
// nondegenerate_only is set.
std::vector<QuadraticForm> enumerate_forms_up_to_equivalence(const FinAbGroup& g,
                                                             bool nondegenerate_only);

// Sorted multiset of q over all of A: cheap equivalence invariant.
std::vector<QmodZ> value_multiset(const QuadraticForm& f);

} // namespace mg
