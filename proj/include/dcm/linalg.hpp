// Small dense symmetric eigenproblems via cyclic Jacobi rotations.
#pragma once

#include <cstddef>
#include <vector>

namespace dcm {

struct SymEigen {
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // d x d row-major; row r = eigenvector of values[r]
};

// `a` is a d x d symmetric matrix, row-major. Sweeps until every off-diagonal
// magnitude falls below tol (relative to the Frobenius scale) or the sweep
// budget runs out.
SymEigen jacobi_eigen(std::vector<double> a, std::size_t d, double tol = 1e-12,
                      int max_sweeps = 100);

}  // namespace dcm
