// covariant.hpp — the three covariant measurement families on a bipartite
// space (local product, unrestricted global, Bell) with their closed-form
// POVM/dual densities, ensemble-averaged squared expectations, closed-form
// noises, Bell support test, and pairwise comparisons.

#pragma once

#include "infoframe/frames.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace infoframe {

enum class FamilyTag { Local, Global, Bell };

std::string_view family_name(FamilyTag tag);  // "local" / "global" / "bell"

// Descriptor of one covariant family: subsystem dimension, pure seed states,
// and the total group measure used by Monte Carlo estimators (d per Haar
// factor: d*d for Local's two factors, d^2 for Global, d for Bell).
struct CovariantFamily {
    FamilyTag tag = FamilyTag::Local;
    Index d = 0;
    Matrix seed1;  // Local: nu on C^d; Global: nu on C^(d^2); Bell: unused
    Matrix seed2;  // Local: nu' on C^d; otherwise unused
    double total_measure = 0.0;
};

CovariantFamily local_family(Index d);
CovariantFamily local_family(Index d, Matrix nu, Matrix nu_prime);
CovariantFamily global_family(Index d);
CovariantFamily global_family(Index d, Matrix nu);
CovariantFamily bell_family(Index d);

// Ensemble average of |Tr[O rho]|^2 over pure states drawn from the given
// class; depends only on the ensemble, never on the measurement.
double avg_sq_expectation(EnsembleKind kind, const Matrix& op, Index d);

struct NoiseBreakdown {
    double first_term = 0.0;  // measurement-dependent integral
    double avg_sq = 0.0;      // ensemble term
    double total = 0.0;       // first_term - avg_sq
};

class BellSupportError : public std::runtime_error {
public:
    BellSupportError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct BellSupport {
    bool contained = false;
    double residual = 0.0;  // Hilbert-Schmidt distance to the Bell support
};

// True iff both partial traces of O are proportional to the identity; these
// are exactly the operators the Bell family can estimate.
BellSupport bell_support_contains(const Matrix& op, Index d, const Tolerance& tol = {});

// Ensemble-averaged estimation variance of the family's canonical dual.
// Throws BellSupportError for the Bell family when O is outside its support.
NoiseBreakdown closed_form_noise(const CovariantFamily& family, const Matrix& op,
                                 EnsembleKind kind);

struct PovmDualDensity {
    Matrix povm;  // P_g (density w.r.t. the Haar measure)
    Matrix dual;  // canonical dual density D_g
};

// Global and Bell take one group element; Local takes the pair (g, h).
PovmDualDensity povm_and_dual_density(const CovariantFamily& family, const Matrix& g);
PovmDualDensity povm_and_dual_density(const CovariantFamily& family, const Matrix& g,
                                      const Matrix& h);

struct ComparisonReport {
    double glob_minus_bell = 0.0;
    double loc_minus_glob = 0.0;
    double loc_minus_bell = 0.0;
    bool bell_estimable = false;
    std::string ordering;  // e.g. "bell <= global <= local"
};

// Pairwise noise differences (the ensemble term cancels, so these are
// ensemble-independent) plus the resulting ordering chain.
ComparisonReport comparison(const Matrix& op, EnsembleKind kind, Index d);

// Closed-form Bell frame operator d{ I_13 (x) I_24 + (I-I)_13 (x) (I-I)_24 /
// (d^2-1) } with I the maximally entangled projector; rank 1 + (d^2-1)^2.
FrameOperator bell_frame_operator(Index d);

}  // namespace infoframe
