// monte_carlo.hpp — Haar-sampling estimators for the group integrals behind
// the covariant families, plus finite-shot simulation for discrete POVMs.
//
// Samples are partitioned into fixed-size blocks; block b draws from
// RngStream(seed, b) and partial results are reduced in block order, so a
// given seed yields bit-identical estimates for any worker count.

#pragma once

#include "infoframe/covariant.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace infoframe {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n)
    std::int64_t n_samples = 0;
};

struct MatrixEstimate {
    Matrix value;
    Eigen::MatrixXd std_error;  // entrywise
    std::int64_t n_samples = 0;
};

struct McOptions {
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::int64_t block_size = 1024;
};

// First term of the covariant noise. With no ensemble the integrand weight is
// the state-free Tr[P_g]/d^2; with an ensemble a fresh state is drawn per
// sample and the weight is Tr[P_g rho] (same limit, used to verify the
// ensemble-independence claim numerically).
McEstimate mc_first_term(const CovariantFamily& family, const Matrix& op, const McOptions& opts,
                         std::optional<EnsembleKind> kind = std::nullopt);

// mc_first_term minus the closed-form ensemble term.
McEstimate mc_noise(const CovariantFamily& family, const Matrix& op, EnsembleKind kind,
                    const McOptions& opts);

// d * mean of U X U^dag (order 1) or U(x)U X (U(x)U)^dag (order 2).
MatrixEstimate mc_twirl(const Matrix& x, int order, Index d, const McOptions& opts);

// Direct sampling estimate of the ensemble average of |Tr[O rho]|^2.
McEstimate mc_avg_sq(EnsembleKind kind, const Matrix& op, Index d, const McOptions& opts);

struct ShotRecord {
    std::vector<std::int64_t> counts;  // per outcome index
    std::int64_t shots = 0;
};

ShotRecord simulate_shots(const DiscretePovm& povm, const Matrix& rho, std::int64_t shots,
                          RngStream& rng, const Tolerance& tol = {});

struct ExpectationEstimate {
    Complex value;                      // unbiased for Tr[O rho]
    double std_error = 0.0;
    double single_shot_variance = 0.0;  // empirical variance of one outcome's coefficient
    std::int64_t shots = 0;
};

ExpectationEstimate estimate_expectation(const ShotRecord& record, const DualFrame& dual,
                                         const Matrix& op);

}  // namespace infoframe
