#pragma once

#include "adjspec/param_matrix.hpp"
#include "adjspec/real.hpp"

#include <string>
#include <vector>

namespace adjspec {

// Eigendecomposition at a stated working precision. Eigenvalues ascend;
// vectors[k] is the unit eigenvector of values[k], signed so its
// largest-magnitude component is positive (ties broken toward the lowest index).
struct EigenSystem {
    int n = 0;
    unsigned digits = 0;
    std::vector<Real> values;
    std::vector<std::vector<Real>> vectors;
};

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm
// falls below 10^-(digits-5) * ||M||_F, within a 40-sweep budget. Requests of
// up to 16 digits run in hardware doubles (when the entries leave the squared
// norm room in double range); higher requests run in mpfr.
EigenSystem eig_sym(const NumericMatrix& m, unsigned digits);

// Eigenvalue gap value(b) - value(a) for 1-based ascending positions a < b.
Real gap_at(const ParametricMatrix& m, const std::string& parameter, const Real& value,
            int a, int b, unsigned digits, const Assignment& fixed = {});

} // namespace adjspec
