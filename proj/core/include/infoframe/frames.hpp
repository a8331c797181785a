// frames.hpp — frame-theoretic machinery for finite operator families: frame
// operator, informational completeness, canonical/alternate/weighted-optimal
// dual frames, reconstruction, and the discrete estimator variance.

#pragma once

#include "infoframe/haar.hpp"
#include "infoframe/operator_algebra.hpp"

#include <vector>

namespace infoframe {

// Ordered family {P_i} of operators on a dim-dimensional space. Positivity is
// not assumed; POVM validity is only enforced where probabilities are needed.
struct OperatorFrame {
    Index dim = 0;
    std::vector<Matrix> elements;
};

OperatorFrame make_frame(std::vector<Matrix> elements);

struct DiscretePovm : OperatorFrame {};

// Validates positivity of every element and sum-to-identity.
DiscretePovm make_povm(std::vector<Matrix> elements, const Tolerance& tol = {});

// F = sum_i |P_i>><<P_i| together with its eigenstructure on operator space.
struct FrameOperator {
    Index dim = 0;            // Hilbert dimension of the frame elements
    Matrix matrix;            // dim^2 x dim^2, Hermitian positive semidefinite
    Index rank = 0;
    Matrix support_projector; // orthogonal projector onto range(F)
    Matrix pseudo_inverse;    // F inverted on its support
    RealVector eigenvalues;   // ascending

    bool infocomplete() const { return rank == dim * dim; }
};

FrameOperator frame_operator(const OperatorFrame& frame, const Tolerance& tol = {});

// Eigenstructure of an externally supplied frame-operator matrix (used for
// families whose F is known in closed form).
FrameOperator frame_operator_from_matrix(Matrix f, Index dim, const Tolerance& tol = {});

enum class DualKind { Canonical, Alternate, Weighted };

// Family {D_i} with sum_i Tr[D_i^dag O] P_i = O on the span of the source
// frame. Carries a copy of the source so expansion needs no extra argument.
struct DualFrame {
    Index dim = 0;
    std::vector<Matrix> elements;
    DualKind kind = DualKind::Canonical;
    OperatorFrame source;
};

// |D_i>> = F_pinv |P_i>>; equals F^-1|P_i>> when the frame is infocomplete.
DualFrame canonical_dual(const OperatorFrame& frame, const Tolerance& tol = {});
DualFrame canonical_dual(const OperatorFrame& frame, const FrameOperator& fop);

// D'_i = D_i + Y_i - sum_j Tr[P_j^dag D_i] Y_j for an arbitrary family {Y_j}.
DualFrame alternate_dual(const OperatorFrame& frame, const DualFrame& dual,
                         const std::vector<Matrix>& y);

// Outcome probabilities pi_i = Tr[P_i rho_bar] under a prior state.
struct OutcomeWeights {
    RealVector entries;
};

OutcomeWeights outcome_weights(const DiscretePovm& povm, const Matrix& rho_bar,
                               const Tolerance& tol = {});

// Dual whose coefficient map Gamma = Pi^-1 Lambda^dag (Lambda Pi^-1 Lambda^dag)^+
// is the reflexive, least-squares, minimum-pi-norm generalized inverse of the
// synthesis map Lambda (column i = |P_i>>). Reduces to the canonical dual for
// uniform weights. Outcomes with zero weight are excluded and get D_i = 0.
DualFrame optimal_dual(const OperatorFrame& frame, const OutcomeWeights& weights,
                       const Tolerance& tol = {});

struct Expansion {
    Vector coefficients;    // c_i = Tr[D_i^dag O]
    Matrix reconstruction;  // sum_i c_i P_i
    double residual = 0.0;  // Hilbert-Schmidt distance to O
};

Expansion expansion_and_reconstruct(const DualFrame& dual, const Matrix& op);

// sum_i |Tr[D_i^dag O]|^2 Tr[P_i rho] - |Tr[O rho]|^2
double noise_discrete(const DiscretePovm& povm, const DualFrame& dual, const Matrix& op,
                      const Matrix& rho, const Tolerance& tol = {});

// N Haar-random rank-one elements symmetrized into a POVM; infocomplete with
// probability 1. Requires n_outcomes >= d^2.
DiscretePovm random_povm(Index d, Index n_outcomes, RngStream& rng);

// Qubit tetrahedron POVM {Pi_i / 2}, first Bloch vertex along +z.
DiscretePovm qubit_sic_povm();

// Max reconstruction residual of the dual against its source over the full
// matrix-unit basis (diagnostic; small iff the dual actually reconstructs).
double reconstruction_residual(const DualFrame& dual);

// ||Gamma O||_pi^2 = sum_i pi_i |Tr[D_i^dag O]|^2
double weighted_coefficient_norm_sq(const DualFrame& dual, const OutcomeWeights& weights,
                                    const Matrix& op);

}  // namespace infoframe
