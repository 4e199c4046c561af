#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "metricgroup/errors.hpp"
#include "metricgroup/lattices.hpp"
#include "metricgroup/moddata.hpp"

using namespace mg;

namespace {

using Cplx = std::complex<double>;

FinAbGroup grp(std::vector<long long> f) { return FinAbGroup(std::move(f)); }

bool near(Cplx a, Cplx b) { return std::abs(a - b) < 1e-9; }

} // namespace

TEST_CASE("trivial modular data") {
    PointedModularData d = build_modular_data(zero_form(grp({})));
    REQUIRE(d.S.size() == 1);
    CHECK(near(d.S[0][0], Cplx(1, 0)));
    CHECK(near(d.T[0], Cplx(1, 0)));
    CHECK(near(d.charge, Cplx(1, 0)));
    CHECK(t_order(d) == 1);
}

TEST_CASE("semion and its conjugate") {
    PointedModularData d = build_modular_data(cyclic_q(2, QmodZ(1, 4)));
    double r = 1.0 / std::sqrt(2.0);
    CHECK(near(d.T[0], Cplx(1, 0)));
    CHECK(near(d.T[1], Cplx(0, 1)));
    CHECK(near(d.S[0][0], Cplx(r, 0)));
    CHECK(near(d.S[0][1], Cplx(r, 0)));
    CHECK(near(d.S[1][1], Cplx(-r, 0)));
    CHECK(near(d.charge, std::polar(1.0, M_PI / 4)));
    CHECK(t_order(d) == 4);

    // the same data arises from the discriminant of the A1 root lattice
    PointedModularData da1 = build_modular_data(discriminant_form(root_A1()).form);
    CHECK(near(da1.T[1], d.T[1]));
    CHECK(near(da1.charge, d.charge));

    // E7 carries the conjugate: T = diag(1, -i), reciprocal charge
    PointedModularData de7 = build_modular_data(discriminant_form(root_E7()).form);
    CHECK(near(de7.T[1], Cplx(0, -1)));
    CHECK(near(de7.charge, std::polar(1.0, -M_PI / 4)));
    CHECK(near(d.charge * de7.charge, Cplx(1, 0)));

    CHECK(verify_conjugate_pair(cyclic_q(2, QmodZ(1, 4))));
}

TEST_CASE("t order matches the form denominators") {
    PointedModularData du2 = build_modular_data(standard_u(2));
    CHECK(t_order(du2) == 4);
    // theta values are the fourth roots i^{st}
    FinAbGroup g = du2.group;
    CHECK(near(du2.T[size_t(g.index_of({1, 1}))], Cplx(0, 1)));
    CHECK(near(du2.T[size_t(g.index_of({2, 1}))], Cplx(-1, 0)));
    CHECK(near(du2.T[size_t(g.index_of({1, 3}))], Cplx(0, -1)));

    PointedModularData d9 = build_modular_data(cyclic_q(9, QmodZ(1, 9)));
    CHECK(t_order(d9) == 9);

    CHECK_THROWS_AS(build_modular_data(zero_form(grp({2}))), DegenerateForm);
}

TEST_CASE("conjugate pairs across small forms") {
    CHECK(verify_conjugate_pair(standard_u(1)));
    CHECK(verify_conjugate_pair(standard_u(2)));
    CHECK(verify_conjugate_pair(standard_v(1)));

    // the hyperbolic form is even equivalent to its own negative
    CHECK(form_equivalence(standard_u(1), negate(standard_u(1))).has_value());

    for (long long ord = 1; ord <= 9; ord++)
        for (const auto& type : abelian_group_types(ord)) {
            FinAbGroup g = grp(type);
            for (const QuadraticForm& q : enumerate_forms(g)) {
                if (!is_nondegenerate(q)) continue;
                CHECK(verify_conjugate_pair(q));
            }
        }
}

TEST_CASE("modular relations for every nondegenerate form up to order 16") {
    int built = 0;
    for (long long ord = 1; ord <= 16; ord++)
        for (const auto& type : abelian_group_types(ord)) {
            FinAbGroup g = grp(type);
            long long n = g.order();
            for (const QuadraticForm& q : enumerate_forms(g)) {
                if (!is_nondegenerate(q)) continue;
                // the unitarity, permutation, (ST)^3 and charge certificates
                // all run inside the builder
                PointedModularData d = build_modular_data(q);
                built++;

                // row sums certify sum_x e^{-2 pi i b(d,x)} = |A| delta_{d,0},
                // the kernel of the Verlinde computation below
                for (long long a = 0; a < n; a++) {
                    Cplx row(0, 0);
                    for (long long b = 0; b < n; b++) row += d.S[size_t(a)][size_t(b)];
                    Cplx want = a == 0 ? Cplx(std::sqrt(double(n)), 0) : Cplx(0, 0);
                    REQUIRE(std::abs(row - want) < 1e-9 * double(n));
                }
            }
        }
    CHECK(built > 2000);
}

TEST_CASE("verlinde coefficients are the group law") {
    for (long long ord = 1; ord <= 12; ord++)
        for (const auto& type : abelian_group_types(ord)) {
            FinAbGroup g = grp(type);
            long long n = g.order();
            std::vector<long long> addt(size_t(n * n), 0);
            for (long long i = 0; i < n; i++)
                for (long long j = 0; j < n; j++)
                    addt[size_t(i * n + j)] = g.index_of(g.add(g.element(i), g.element(j)));
            for (const QuadraticForm& q : enumerate_forms(g)) {
                if (!is_nondegenerate(q)) continue;
                PointedModularData d = build_modular_data(q);
                double worst = 0;
                for (long long a = 0; a < n; a++)
                    for (long long b = 0; b < n; b++)
                        for (long long c = 0; c < n; c++) {
                            Cplx acc(0, 0);
                            for (long long x = 0; x < n; x++)
                                acc += d.S[size_t(a)][size_t(x)] * d.S[size_t(b)][size_t(x)] *
                                       std::conj(d.S[size_t(c)][size_t(x)]) / d.S[0][size_t(x)];
                            double want = addt[size_t(a * n + b)] == c ? 1.0 : 0.0;
                            worst = std::max(worst, std::abs(acc - Cplx(want, 0)));
                        }
                REQUIRE(worst < 1e-9);
            }
        }
}
