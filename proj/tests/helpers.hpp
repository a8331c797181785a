// Shared test fixtures and independent oracles.

#pragma once

#include "infoframe/haar.hpp"
#include "infoframe/operator_algebra.hpp"

namespace infoframe::testing {

inline Matrix gaussian_matrix(Index rows, Index cols, RngStream& rng) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

// Independent partial-trace oracle: contracts the full 4-index tensor with
// explicit Kronecker deltas instead of the stride bookkeeping the library uses.
inline Matrix brute_force_partial_trace(const Matrix& x, int subsystem, Index d) {
    Matrix out = Matrix::Zero(d, d);
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n)
            for (Index mp = 0; mp < d; ++mp)
                for (Index np = 0; np < d; ++np) {
                    const Complex value = x(m * d + n, mp * d + np);
                    if (subsystem == 1 && m == mp) out(n, np) += value;
                    if (subsystem == 2 && n == np) out(m, mp) += value;
                }
    return out;
}

// Max violation of the four Penrose conditions for a candidate pseudoinverse.
inline double penrose_violation(const Matrix& m, const Matrix& g) {
    const double c1 = max_abs_diff(m * g * m, m);
    const double c2 = max_abs_diff(g * m * g, g);
    const Matrix mg = m * g;
    const Matrix gm = g * m;
    const double c3 = max_abs_diff(mg, mg.adjoint());
    const double c4 = max_abs_diff(gm, gm.adjoint());
    return std::max({c1, c2, c3, c4});
}

}  // namespace infoframe::testing
