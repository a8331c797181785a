#include "infoframe/frames.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace infoframe {

namespace {

void check_same_dims(const std::vector<Matrix>& elements) {
    if (elements.empty()) throw std::invalid_argument("frame: needs at least one element");
    const Index d = elements.front().rows();
    if (d < 1) throw std::invalid_argument("frame: dimension must be >= 1");
    for (const Matrix& p : elements) {
        if (p.rows() != d || p.cols() != d) {
            throw std::invalid_argument("frame: elements must share one square dimension");
        }
    }
}

// Hermitian square root of the inverse, used by random_povm.
Matrix inverse_sqrt(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("inverse_sqrt: eigensolver failed");
    RealVector vals = es.eigenvalues();
    for (Index k = 0; k < vals.size(); ++k) {
        if (vals(k) <= 0.0) throw std::runtime_error("inverse_sqrt: matrix not positive definite");
        vals(k) = 1.0 / std::sqrt(vals(k));
    }
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

OperatorFrame make_frame(std::vector<Matrix> elements) {
    check_same_dims(elements);
    OperatorFrame frame;
    frame.dim = elements.front().rows();
    frame.elements = std::move(elements);
    return frame;
}

DiscretePovm make_povm(std::vector<Matrix> elements, const Tolerance& tol) {
    check_same_dims(elements);
    const Index d = elements.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& p : elements) {
        if (!is_positive_semidefinite(p, tol.equality_abs)) {
            throw std::invalid_argument("make_povm: element is not positive semidefinite");
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("make_povm: elements do not sum to the identity");
    }
    DiscretePovm povm;
    povm.dim = d;
    povm.elements = std::move(elements);
    return povm;
}

FrameOperator frame_operator_from_matrix(Matrix f, Index dim, const Tolerance& tol) {
    const Index dd = dim * dim;
    if (f.rows() != dd || f.cols() != dd) {
        throw std::invalid_argument("frame_operator: matrix must be dim^2 x dim^2");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (f + f.adjoint()));
    if (es.info() != Eigen::Success) throw std::runtime_error("frame_operator: eigensolver failed");
    const RealVector& vals = es.eigenvalues();
    const Matrix& vecs = es.eigenvectors();

    const double vmax = vals.size() > 0 ? std::abs(vals(vals.size() - 1)) : 0.0;
    const double cutoff = tol.rank_cutoff_factor * std::numeric_limits<double>::epsilon() *
                          static_cast<double>(dd) * vmax;

    FrameOperator out;
    out.dim = dim;
    out.matrix = std::move(f);
    out.eigenvalues = vals;
    out.support_projector = Matrix::Zero(dd, dd);
    out.pseudo_inverse = Matrix::Zero(dd, dd);
    for (Index k = 0; k < vals.size(); ++k) {
        if (vals(k) > cutoff && vals(k) > 0.0) {
            const Matrix proj = vecs.col(k) * vecs.col(k).adjoint();
            out.support_projector += proj;
            out.pseudo_inverse += proj / vals(k);
            ++out.rank;
        }
    }
    return out;
}

FrameOperator frame_operator(const OperatorFrame& frame, const Tolerance& tol) {
    const Index dd = frame.dim * frame.dim;
    Matrix f = Matrix::Zero(dd, dd);
    for (const Matrix& p : frame.elements) {
        const Vector v = dket(p);
        f.noalias() += v * v.adjoint();
    }
    return frame_operator_from_matrix(std::move(f), frame.dim, tol);
}

DualFrame canonical_dual(const OperatorFrame& frame, const FrameOperator& fop) {
    if (fop.dim != frame.dim) throw std::invalid_argument("canonical_dual: dimension mismatch");
    DualFrame dual;
    dual.dim = frame.dim;
    dual.kind = DualKind::Canonical;
    dual.source = frame;
    dual.elements.reserve(frame.elements.size());
    for (const Matrix& p : frame.elements) {
        dual.elements.push_back(undket(fop.pseudo_inverse * dket(p)));
    }
    return dual;
}

DualFrame canonical_dual(const OperatorFrame& frame, const Tolerance& tol) {
    return canonical_dual(frame, frame_operator(frame, tol));
}

DualFrame alternate_dual(const OperatorFrame& frame, const DualFrame& dual,
                         const std::vector<Matrix>& y) {
    const std::size_t n = frame.elements.size();
    if (dual.elements.size() != n || y.size() != n) {
        throw std::invalid_argument("alternate_dual: family sizes must match");
    }
    for (const Matrix& m : y) {
        if (m.rows() != frame.dim || m.cols() != frame.dim) {
            throw std::invalid_argument("alternate_dual: perturbation dimension mismatch");
        }
    }
    DualFrame out;
    out.dim = frame.dim;
    out.kind = DualKind::Alternate;
    out.source = frame;
    out.elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Matrix di = dual.elements[i] + y[i];
        for (std::size_t j = 0; j < n; ++j) {
            di -= hs_inner(frame.elements[j], dual.elements[i]) * y[j];
        }
        out.elements.push_back(std::move(di));
    }
    return out;
}

OutcomeWeights outcome_weights(const DiscretePovm& povm, const Matrix& rho_bar,
                               const Tolerance& tol) {
    if (!is_density_matrix(rho_bar, 1e-8)) {
        throw std::invalid_argument("outcome_weights: rho_bar is not a density matrix");
    }
    RealVector w(static_cast<Index>(povm.elements.size()));
    for (std::size_t i = 0; i < povm.elements.size(); ++i) {
        w(static_cast<Index>(i)) = (povm.elements[i] * rho_bar).trace().real();
    }
    if (std::abs(w.sum() - 1.0) > 1e-10) {
        throw std::invalid_argument("outcome_weights: probabilities do not sum to 1");
    }
    (void)tol;
    return {std::move(w)};
}

DualFrame optimal_dual(const OperatorFrame& frame, const OutcomeWeights& weights,
                       const Tolerance& tol) {
    const Index n = static_cast<Index>(frame.elements.size());
    if (weights.entries.size() != n) {
        throw std::invalid_argument("optimal_dual: weight count mismatch");
    }
    std::vector<Index> kept;
    for (Index i = 0; i < n; ++i) {
        const double w = weights.entries(i);
        if (w < -tol.equality_abs) throw std::invalid_argument("optimal_dual: negative weight");
        if (w > tol.equality_abs) kept.push_back(i);
    }
    if (kept.empty()) throw std::invalid_argument("optimal_dual: all weights are zero");

    const Index dd = frame.dim * frame.dim;
    const Index m = static_cast<Index>(kept.size());

    // Lambda restricted to positive-weight outcomes; column i is |P_i>>.
    Matrix lambda(dd, m);
    RealVector inv_w(m);
    for (Index c = 0; c < m; ++c) {
        lambda.col(c) = dket(frame.elements[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])]);
        inv_w(c) = 1.0 / weights.entries(kept[static_cast<std::size_t>(c)]);
    }

    const Matrix mid = lambda * inv_w.asDiagonal() * lambda.adjoint();  // Lambda Pi^-1 Lambda^dag
    const Matrix gamma = inv_w.asDiagonal() * lambda.adjoint() * pinv(mid, tol).matrix;

    DualFrame out;
    out.dim = frame.dim;
    out.kind = DualKind::Weighted;
    out.source = frame;
    out.elements.assign(static_cast<std::size_t>(n), Matrix::Zero(frame.dim, frame.dim));
    for (Index c = 0; c < m; ++c) {
        // Gamma_{i,mn} = (D_i^*)_{mn}
        out.elements[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])] =
            undket(gamma.row(c).conjugate().transpose());
    }
    return out;
}

Expansion expansion_and_reconstruct(const DualFrame& dual, const Matrix& op) {
    if (op.rows() != dual.dim || op.cols() != dual.dim) {
        throw std::invalid_argument("expansion: operator dimension mismatch");
    }
    const Index n = static_cast<Index>(dual.elements.size());
    Expansion result;
    result.coefficients.resize(n);
    result.reconstruction = Matrix::Zero(dual.dim, dual.dim);
    for (Index i = 0; i < n; ++i) {
        const Complex c = hs_inner(dual.elements[static_cast<std::size_t>(i)], op);
        result.coefficients(i) = c;
        result.reconstruction += c * dual.source.elements[static_cast<std::size_t>(i)];
    }
    result.residual = hs_norm(result.reconstruction - op);
    return result;
}

double noise_discrete(const DiscretePovm& povm, const DualFrame& dual, const Matrix& op,
                      const Matrix& rho, const Tolerance& tol) {
    (void)tol;
    if (!is_density_matrix(rho, 1e-8)) {
        throw std::invalid_argument("noise_discrete: rho is not a density matrix");
    }
    if (povm.elements.size() != dual.elements.size() || povm.dim != dual.dim) {
        throw std::invalid_argument("noise_discrete: povm/dual mismatch");
    }
    if (op.rows() != povm.dim || op.cols() != povm.dim || rho.rows() != povm.dim) {
        throw std::invalid_argument("noise_discrete: operator dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < povm.elements.size(); ++i) {
        const Complex c = hs_inner(dual.elements[i], op);
        const double prob = (povm.elements[i] * rho).trace().real();
        acc += std::norm(c) * prob;
    }
    return acc - std::norm((op * rho).trace());
}

DiscretePovm random_povm(Index d, Index n_outcomes, RngStream& rng) {
    if (d < 2) throw std::invalid_argument("random_povm: d must be >= 2");
    if (n_outcomes < d * d) {
        throw std::invalid_argument("random_povm: need at least d^2 outcomes for informational completeness");
    }
    std::vector<Matrix> projectors;
    projectors.reserve(static_cast<std::size_t>(n_outcomes));
    Matrix total = Matrix::Zero(d, d);
    for (Index i = 0; i < n_outcomes; ++i) {
        const Vector psi = haar_ket(d, rng);
        projectors.push_back(psi * psi.adjoint());
        total += projectors.back();
    }
    const Matrix w = inverse_sqrt(total);
    std::vector<Matrix> elements;
    elements.reserve(projectors.size());
    for (const Matrix& pr : projectors) elements.push_back(w * pr * w);
    return make_povm(std::move(elements));
}

DiscretePovm qubit_sic_povm() {
    const double s = std::sqrt(2.0) / 3.0;
    const double t = std::sqrt(2.0 / 3.0);
    const double bloch[4][3] = {
        {0.0, 0.0, 1.0},
        {2.0 * s, 0.0, -1.0 / 3.0},
        {-s, t, -1.0 / 3.0},
        {-s, -t, -1.0 / 3.0},
    };
    std::vector<Matrix> elements;
    elements.reserve(4);
    for (const auto& nvec : bloch) {
        const Matrix pi = 0.5 * (Matrix::Identity(2, 2) + nvec[0] * sigma_x() +
                                 nvec[1] * sigma_y() + nvec[2] * sigma_z());
        elements.push_back(0.5 * pi);
    }
    return make_povm(std::move(elements));
}

double reconstruction_residual(const DualFrame& dual) {
    double worst = 0.0;
    for (Index i = 0; i < dual.dim; ++i) {
        for (Index j = 0; j < dual.dim; ++j) {
            const Expansion e = expansion_and_reconstruct(dual, basis_matrix(dual.dim, i, j));
            worst = std::max(worst, e.residual);
        }
    }
    return worst;
}

double weighted_coefficient_norm_sq(const DualFrame& dual, const OutcomeWeights& weights,
                                    const Matrix& op) {
    if (weights.entries.size() != static_cast<Index>(dual.elements.size())) {
        throw std::invalid_argument("weighted_coefficient_norm_sq: weight count mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < dual.elements.size(); ++i) {
        acc += weights.entries(static_cast<Index>(i)) * std::norm(hs_inner(dual.elements[i], op));
    }
    return acc;
}

}  // namespace infoframe
