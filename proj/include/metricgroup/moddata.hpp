#pragma once

#include <complex>
#include <vector>

#include "metricgroup/forms.hpp"

namespace mg {

// S and T matrices of the pointed modular category attached to a
// nondegenerate form: S_{a,b} = exp(-2 pi i b(a,b)) / sqrt(|A|) and
// T_{a,a} = exp(2 pi i q(a)), elements in index order.
struct PointedModularData {
    FinAbGroup group;
    QuadraticForm q;
    std::vector<std::vector<std::complex<double>>> S;
    std::vector<std::complex<double>> T; // diagonal
    std::complex<double> charge;         // exp(2 pi i sigma/8)
};

// Builds the matrices and certifies, within 1e-9: S unitary, S^2 the
// negation permutation, (ST)^3 = charge * S^2, charge^8 = 1, and charge
// equal to the normalized Gauss sum. Throws DegenerateForm for degenerate q,
// NumericalInconsistency if a certificate misses tolerance.
PointedModularData build_modular_data(const QuadraticForm& q);

// Order of T as a matrix: lcm of the denominators of the q values.
long long t_order(const PointedModularData& d);

// True when the data of -q is the entrywise conjugate of the data of q and
// the charges are reciprocal.
bool verify_conjugate_pair(const QuadraticForm& q);

} // namespace mg
