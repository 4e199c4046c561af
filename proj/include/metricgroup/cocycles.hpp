#pragma once

#include <array>
#include <optional>
#include <vector>

#include "metricgroup/forms.hpp"
#include "metricgroup/triples.hpp"

namespace mg {

// Normalized 3-cochain on a finite abelian group, values in Q/Z. Dense table
// indexed by element index, slot (x*|G| + y)*|G| + z. Normalized means the
// value is 0 whenever any argument is 0; the constructor enforces this.
struct Cocycle3 {
    FinAbGroup group;
    std::vector<QmodZ> values;

    Cocycle3(FinAbGroup g, std::vector<QmodZ> vals);

    const QmodZ& at(long long xi, long long yi, long long zi) const {
        long long n = group.order();
        return values[size_t((xi * n + yi) * n + zi)];
    }
    QmodZ operator()(const Vec& x, const Vec& y, const Vec& z) const;
};

// Pointwise sum and difference. These preserve the cocycle condition, so
// tests and class arithmetic can form differences before is_coboundary.
Cocycle3 operator+(const Cocycle3& a, const Cocycle3& b);
Cocycle3 operator-(const Cocycle3& a, const Cocycle3& b);

// Normalized 2-cochain, same layout one level down.
struct Cochain2 {
    FinAbGroup group;
    std::vector<QmodZ> values;

    Cochain2(FinAbGroup g, std::vector<QmodZ> vals);

    const QmodZ& at(long long xi, long long yi) const {
        return values[size_t(xi * group.order() + yi)];
    }
};

Cocycle3 zero_cocycle(const FinAbGroup& g);

// The class of order n/gcd(n,a) on Z_n: omega(x,y,z) = (a/n) * x * carry(y,z)
// where carry is 1 exactly when y + z wraps past n.
Cocycle3 standard_cyclic_cocycle(long long n, long long a);

// omega(a,b,c) = 1/2 a_1 b_2 c_3 on Z_2^3. The smallest cocycle whose class
// is not pointed.
Cocycle3 volume_cocycle_z2cube();

// d(phi)(x,y,z) = phi(y,z) - phi(x+y,z) + phi(x,y+z) - phi(x,y).
Cocycle3 coboundary(const Cochain2& phi);

// Exhaustive check of the additive 3-cocycle identity.
bool is_cocycle(const Cocycle3& w);
// First argument tuple (x,y,z,v) whose identity dw(x,y,z,v) = 0 fails, if any.
std::optional<std::array<long long, 4>> first_cocycle_violation(const Cocycle3& w);

// Exact coboundary test over Q/Z. A normalized coboundary always has a
// normalized witness, and any witness can be taken with denominators dividing
// lcm(denominators of w) * |G| (the torsion of the relevant cochain quotient
// is bounded by the group exponent), so one solve over Z_{m'} decides the
// question. The returned witness satisfies coboundary(witness) == w.
std::optional<Cochain2> is_coboundary(const Cocycle3& w);

// Alternating six-term sum over the permutations of (a,b,c); it kills
// coboundaries and is trilinear on cocycles.
QmodZ phi_star(const Cocycle3& w, const Vec& a, const Vec& b, const Vec& c);

// phi_star packaged as a homomorphism out of the exterior cube: one factor
// and one value per generator triple i < j < k with gcd(d_i,d_j,d_k) > 1,
// kept in that lexicographic order.
struct ExteriorCubeMap {
    FinAbGroup cube;
    std::vector<std::array<size_t, 3>> basis;
    std::vector<QmodZ> values;

    bool is_zero() const;
};
ExteriorCubeMap phi_star_hom(const Cocycle3& w);

// Distinct values of phi_star over the whole cube, sorted.
std::vector<QmodZ> phi_star_image(const Cocycle3& w);

// True iff phi_star vanishes identically.
bool is_pointed_class(const Cocycle3& w);

// Eilenberg-MacLane abelian cocycle: a 3-cocycle together with a braiding
// 2-cochain c, dense |G|^2 table in the same index layout as Cochain2.
struct AbelianCocycle {
    Cocycle3 omega;
    std::vector<QmodZ> c;

    const QmodZ& c_at(long long xi, long long yi) const {
        return c[size_t(xi * omega.group.order() + yi)];
    }
};

// Checks the cocycle identity for omega plus both hexagon relations
//   c(x,y+z) = c(x,y) + c(x,z) + w(x,y,z) - w(y,x,z) + w(y,z,x)
//   c(x+y,z) = c(x,z) + c(y,z) - w(x,y,z) + w(x,z,y) - w(z,x,y).
bool is_abelian_cocycle(const AbelianCocycle& ac);

// Abelian cocycle whose trace c(a,a) recovers q. On ⊕ Z_{d_i} with canonical
// coordinates, omega(x,y,z) = sum_i (d_i q(e_i)) x_i carry_i(y,z) and
// c(x,y) = sum_i q(e_i) x_i y_i + sum_{i<j} b(e_i,e_j) x_i y_j.
AbelianCocycle abelian_cocycle_from_form(const QuadraticForm& q);

// Pull back along a generator of a cyclic subgroup; the class of the result
// does not depend on which generator is chosen.
Cocycle3 restrict_to_cyclic(const Cocycle3& w, const Subgroup& h);

// Order in Q/Z of inv(w) = sum_{j=0}^{n-1} w(g, jg, g), the class invariant
// on Z_n. Requires a one-generator group.
long long cyclic_class_order(const Cocycle3& w);

// Cyclic subgroups contained in no larger cyclic subgroup; the trivial group
// counts only when it is everything.
std::vector<Subgroup> maximal_cyclic_subgroups(const FinAbGroup& g);

// lcm of cyclic_class_order(w|_H) * |H| over the maximal cyclic subgroups H.
long long fsexp_from_cocycle(const Cocycle3& w);

// lcm of the denominators of the form's values; the T-order on the pointed
// side.
long long fsexp_pointed(const QuadraticForm& q);

struct FsexpReport {
    long long pointed = 0;
    long long cocycle = 0;
    bool match = false;
};

// Compares fsexp_pointed of the triple's form against fsexp_from_cocycle of
// a cocycle on the same base group.
FsexpReport fsexp_consistency(const GlueTriple& t, const Cocycle3& w);

// Arithmetic consequence for dihedral groups of odd order 2m: restriction
// orders m on the rotation subgroup and 2 on a reflection force class order
// lcm(m, 2) = 2m. No dihedral tables are built.
long long dihedral_class_order(long long m);

} // namespace mg
