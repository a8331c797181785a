#include "infoframe/covariant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace infoframe {

namespace {

void check_pure_seed(const Matrix& seed, Index dim, const char* what) {
    if (seed.rows() != dim || seed.cols() != dim) {
        throw std::invalid_argument(std::string(what) + ": seed dimension mismatch");
    }
    if (!is_density_matrix(seed, 1e-10) || std::abs(purity(seed) - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string(what) + ": seed must be a pure state");
    }
}

void check_bipartite_op(const Matrix& op, Index d, const char* what) {
    if (d < 2) throw std::invalid_argument(std::string(what) + ": d must be >= 2");
    if (op.rows() != d * d || op.cols() != d * d) {
        throw std::invalid_argument(std::string(what) + ": operator must act on the d^2-dim bipartite space");
    }
}

struct OperatorInvariants {
    double abs2;      // Tr[O^dag O]
    double tr_abs2;   // |Tr O|^2
    double pt_abs2;   // Tr[|Tr_1 O|^2 + |Tr_2 O|^2]
};

OperatorInvariants invariants_of(const Matrix& op, Index d) {
    const Matrix t1 = partial_trace(op, 1, d);
    const Matrix t2 = partial_trace(op, 2, d);
    OperatorInvariants inv{};
    inv.abs2 = op.squaredNorm();
    inv.tr_abs2 = std::norm(op.trace());
    inv.pt_abs2 = t1.squaredNorm() + t2.squaredNorm();
    return inv;
}

double first_term_of(FamilyTag tag, const OperatorInvariants& inv, Index d) {
    const double dd = static_cast<double>(d);
    switch (tag) {
        case FamilyTag::Local:
            return ((dd + 1.0) * (dd + 1.0) * inv.abs2 + inv.tr_abs2 -
                    (dd + 1.0) * inv.pt_abs2) / (dd * dd);
        case FamilyTag::Global:
            return ((dd * dd + 1.0) * inv.abs2 - inv.tr_abs2) / (dd * dd);
        case FamilyTag::Bell:
            return ((dd * dd - 1.0) * inv.abs2 + inv.tr_abs2) / (dd * dd) -
                   (dd * dd - 1.0) / (dd * dd * dd) * inv.pt_abs2;
    }
    throw std::logic_error("first_term_of: bad tag");
}

Matrix maximally_entangled_projector(Index d) {
    const Vector v = dket(Matrix::Identity(d, d));
    return (v * v.adjoint()) / static_cast<double>(d);
}

}  // namespace

std::string_view family_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Local: return "local";
        case FamilyTag::Global: return "global";
        case FamilyTag::Bell: return "bell";
    }
    throw std::logic_error("family_name: bad tag");
}

CovariantFamily local_family(Index d, Matrix nu, Matrix nu_prime) {
    if (d < 2) throw std::invalid_argument("local_family: d must be >= 2");
    check_pure_seed(nu, d, "local_family");
    check_pure_seed(nu_prime, d, "local_family");
    CovariantFamily fam;
    fam.tag = FamilyTag::Local;
    fam.d = d;
    fam.seed1 = std::move(nu);
    fam.seed2 = std::move(nu_prime);
    fam.total_measure = static_cast<double>(d * d);  // two Haar factors of weight d
    return fam;
}

CovariantFamily local_family(Index d) {
    const Matrix ground = basis_matrix(d, 0, 0);
    return local_family(d, ground, ground);
}

CovariantFamily global_family(Index d, Matrix nu) {
    if (d < 2) throw std::invalid_argument("global_family: d must be >= 2");
    check_pure_seed(nu, d * d, "global_family");
    CovariantFamily fam;
    fam.tag = FamilyTag::Global;
    fam.d = d;
    fam.seed1 = std::move(nu);
    fam.total_measure = static_cast<double>(d * d);
    return fam;
}

CovariantFamily global_family(Index d) {
    return global_family(d, basis_matrix(d * d, 0, 0));
}

CovariantFamily bell_family(Index d) {
    if (d < 2) throw std::invalid_argument("bell_family: d must be >= 2");
    CovariantFamily fam;
    fam.tag = FamilyTag::Bell;
    fam.d = d;
    fam.seed1 = maximally_entangled_projector(d);
    fam.total_measure = static_cast<double>(d);
    return fam;
}

double avg_sq_expectation(EnsembleKind kind, const Matrix& op, Index d) {
    check_bipartite_op(op, d, "avg_sq_expectation");
    const OperatorInvariants inv = invariants_of(op, d);
    const double dd = static_cast<double>(d);
    switch (kind) {
        case EnsembleKind::AllPure:
            return (inv.abs2 + inv.tr_abs2) / (dd * dd * (dd * dd + 1.0));
        case EnsembleKind::Factorized:
            return (inv.abs2 + inv.tr_abs2 + inv.pt_abs2) / (dd * dd * (dd + 1.0) * (dd + 1.0));
        case EnsembleKind::MaxEntangled:
            // Both Schur sectors of the single-sided twirl contribute here: the
            // maximally entangled reference is not supported on the symmetric
            // subspace alone (unlike the a/f references), so the bracket form
            // valid for those ensembles does not carry over.
            return (dd * (inv.abs2 + inv.tr_abs2) - inv.pt_abs2) /
                   (dd * dd * dd * (dd * dd - 1.0));
    }
    throw std::logic_error("avg_sq_expectation: bad ensemble");
}

BellSupport bell_support_contains(const Matrix& op, Index d, const Tolerance& tol) {
    check_bipartite_op(op, d, "bell_support_contains");
    const double dd = static_cast<double>(d);
    const Complex tr = op.trace();
    const Matrix eye = Matrix::Identity(d, d);
    const Matrix t1 = partial_trace(op, 1, d) - (tr / dd) * eye;  // traceless part of Tr_1 O
    const Matrix t2 = partial_trace(op, 2, d) - (tr / dd) * eye;
    // component of O outside the support: I/d (x) t1 + t2 (x) I/d
    const Matrix outside = kron(eye / dd, t1) + kron(t2, eye / dd);
    const double residual = hs_norm(outside);
    // span threshold is relative to ||O||; equality_abs only guards the zero operator
    const bool contained = residual <= kSpanResidualRel * std::max(hs_norm(op), tol.equality_abs);
    return {contained, residual};
}

NoiseBreakdown closed_form_noise(const CovariantFamily& family, const Matrix& op,
                                 EnsembleKind kind) {
    check_bipartite_op(op, family.d, "closed_form_noise");
    if (family.tag == FamilyTag::Bell) {
        const BellSupport support = bell_support_contains(op, family.d);
        if (!support.contained) {
            throw BellSupportError("closed_form_noise: operator not in Bell support", support.residual);
        }
    }
    NoiseBreakdown out;
    out.first_term = first_term_of(family.tag, invariants_of(op, family.d), family.d);
    out.avg_sq = avg_sq_expectation(kind, op, family.d);
    out.total = out.first_term - out.avg_sq;
    return out;
}

PovmDualDensity povm_and_dual_density(const CovariantFamily& family, const Matrix& g,
                                      const Matrix& h) {
    if (family.tag != FamilyTag::Local) {
        throw std::invalid_argument("povm_and_dual_density: only the local family takes a pair (g, h)");
    }
    if (!is_unitary(g, 1e-10) || !is_unitary(h, 1e-10)) {
        throw std::invalid_argument("povm_and_dual_density: group element is not unitary");
    }
    if (g.rows() != family.d || h.rows() != family.d) {
        throw std::invalid_argument("povm_and_dual_density: group element dimension mismatch");
    }
    const double dd = static_cast<double>(family.d);
    const Matrix eye = Matrix::Identity(family.d, family.d);
    const Matrix p1 = g * family.seed1 * g.adjoint();
    const Matrix p2 = h * family.seed2 * h.adjoint();
    PovmDualDensity out;
    out.povm = kron(p1, p2);
    out.dual = kron((dd + 1.0) * p1 - eye, (dd + 1.0) * p2 - eye);
    return out;
}

PovmDualDensity povm_and_dual_density(const CovariantFamily& family, const Matrix& g) {
    const Index d = family.d;
    switch (family.tag) {
        case FamilyTag::Local:
            throw std::invalid_argument("povm_and_dual_density: local family needs a pair (g, h)");
        case FamilyTag::Global: {
            if (!is_unitary(g, 1e-10) || g.rows() != d * d) {
                throw std::invalid_argument("povm_and_dual_density: group element must be unitary on d^2");
            }
            const double D = static_cast<double>(d * d);
            PovmDualDensity out;
            out.povm = g * family.seed1 * g.adjoint();
            out.dual = (D + 1.0) * out.povm - Matrix::Identity(d * d, d * d);
            return out;
        }
        case FamilyTag::Bell: {
            if (!is_unitary(g, 1e-10) || g.rows() != d) {
                throw std::invalid_argument("povm_and_dual_density: group element must be unitary on d");
            }
            const double dd = static_cast<double>(d);
            const Vector v = dket(g);  // (U (x) I)|I>> = |U>>
            PovmDualDensity out;
            out.povm = v * v.adjoint();
            out.dual = ((dd * dd - 1.0) / dd) * out.povm -
                       ((dd * dd - 2.0) / (dd * dd)) * Matrix::Identity(d * d, d * d);
            return out;
        }
    }
    throw std::logic_error("povm_and_dual_density: bad tag");
}

ComparisonReport comparison(const Matrix& op, EnsembleKind kind, Index d) {
    (void)kind;  // the ensemble term cancels in every difference
    check_bipartite_op(op, d, "comparison");
    const OperatorInvariants inv = invariants_of(op, d);
    const double dd = static_cast<double>(d);

    ComparisonReport report;
    report.glob_minus_bell = 2.0 / (dd * dd) * (inv.abs2 - inv.tr_abs2) +
                             (dd * dd - 1.0) / (dd * dd * dd) * inv.pt_abs2;
    report.loc_minus_glob = 2.0 / dd * (inv.abs2 + inv.tr_abs2 / dd) -
                            (dd + 1.0) / (dd * dd) * inv.pt_abs2;
    report.loc_minus_bell = 2.0 * (dd + 1.0) / (dd * dd) * inv.abs2 -
                            (dd + 1.0) / (dd * dd * dd) * inv.pt_abs2;
    report.bell_estimable = bell_support_contains(op, d).contained;

    const double loc = first_term_of(FamilyTag::Local, inv, d);
    const double glob = first_term_of(FamilyTag::Global, inv, d);
    std::array<std::pair<double, std::string_view>, 3> order{{
        {glob, family_name(FamilyTag::Global)},
        {loc, family_name(FamilyTag::Local)},
    }};
    std::size_t count = 2;
    if (report.bell_estimable) {
        order[2] = {first_term_of(FamilyTag::Bell, inv, d), family_name(FamilyTag::Bell)};
        count = 3;
    }
    std::stable_sort(order.begin(), order.begin() + count,
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string chain;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) chain += " <= ";
        chain += order[i].second;
    }
    report.ordering = std::move(chain);
    return report;
}

FrameOperator bell_frame_operator(Index d) {
    if (d < 2) throw std::invalid_argument("bell_frame_operator: d must be >= 2");
    const double dd = static_cast<double>(d);
    const Matrix me = maximally_entangled_projector(d);
    const Matrix eye = Matrix::Identity(d * d, d * d);
    Matrix f = dd * (interleaved_kron(me, me, d) +
                     interleaved_kron(eye - me, eye - me, d) / (dd * dd - 1.0));
    return frame_operator_from_matrix(std::move(f), d * d);
}

}  // namespace infoframe
