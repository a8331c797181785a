#include "infoframe/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace infoframe {

namespace {

struct ScalarStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t n = 0;
};

struct MatrixStats {
    Matrix sum;
    Eigen::ArrayXXd sum_abs2;
    std::int64_t n = 0;
};

// Runs `body(rng, count, stats[b])` for every block b, spreading blocks over
// opts.workers threads; per-block stream ids and in-order reduction keep the
// result independent of scheduling.
template <typename Stats, typename Body>
std::vector<Stats> run_blocks(const McOptions& opts, const Body& body) {
    if (opts.samples < 2) throw std::invalid_argument("monte carlo: need at least 2 samples");
    if (opts.block_size < 1) throw std::invalid_argument("monte carlo: block_size must be >= 1");
    const std::int64_t n_blocks = (opts.samples + opts.block_size - 1) / opts.block_size;
    std::vector<Stats> stats(static_cast<std::size_t>(n_blocks));

    auto run_range = [&](std::atomic<std::int64_t>& next) {
        for (std::int64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            const std::int64_t count =
                std::min(opts.block_size, opts.samples - b * opts.block_size);
            RngStream rng(opts.seed, static_cast<std::uint64_t>(b));
            body(rng, count, stats[static_cast<std::size_t>(b)]);
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1 || n_blocks == 1) {
        std::atomic<std::int64_t> next{0};
        run_range(next);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        const int active = static_cast<int>(std::min<std::int64_t>(workers, n_blocks));
        pool.reserve(static_cast<std::size_t>(active));
        for (int w = 0; w < active; ++w) pool.emplace_back(run_range, std::ref(next));
        for (std::thread& t : pool) t.join();
    }
    return stats;
}

McEstimate reduce_scalar(const std::vector<ScalarStats>& stats, double scale) {
    double sum = 0.0, sum_sq = 0.0;
    std::int64_t n = 0;
    for (const ScalarStats& s : stats) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        n += s.n;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(n - 1));
    McEstimate out;
    out.value = scale * mean;
    out.std_error = scale * std::sqrt(var / static_cast<double>(n));
    out.n_samples = n;
    return out;
}

using Integrand = std::function<double(RngStream&)>;

McEstimate mc_scalar(const McOptions& opts, double scale, const Integrand& integrand) {
    auto stats = run_blocks<ScalarStats>(opts, [&](RngStream& rng, std::int64_t count, ScalarStats& s) {
        for (std::int64_t k = 0; k < count; ++k) {
            const double x = integrand(rng);
            s.sum += x;
            s.sum_sq += x * x;
        }
        s.n += count;
    });
    return reduce_scalar(stats, scale);
}

}  // namespace

McEstimate mc_first_term(const CovariantFamily& family, const Matrix& op, const McOptions& opts,
                         std::optional<EnsembleKind> kind) {
    const Index d = family.d;
    if (op.rows() != d * d || op.cols() != d * d) {
        throw std::invalid_argument("mc_first_term: operator must act on the bipartite space");
    }
    if (family.tag == FamilyTag::Bell) {
        const BellSupport support = bell_support_contains(op, d);
        if (!support.contained) {
            throw BellSupportError("mc_first_term: operator not in Bell support", support.residual);
        }
    }

    // weight Tr[P_g]/d^2 integrated against total_measure, or Tr[P_g rho]
    // with rho drawn per sample; identical limits.
    const double dsq = static_cast<double>(d * d);
    const double scale = kind ? family.total_measure : family.total_measure / dsq;

    Integrand integrand = [&family, &op, kind, d](RngStream& rng) {
        PovmDualDensity pd;
        if (family.tag == FamilyTag::Local) {
            const Matrix g = haar_unitary(d, rng);
            const Matrix h = haar_unitary(d, rng);
            pd = povm_and_dual_density(family, g, h);
        } else if (family.tag == FamilyTag::Global) {
            pd = povm_and_dual_density(family, haar_unitary(d * d, rng));
        } else {
            pd = povm_and_dual_density(family, haar_unitary(d, rng));
        }
        const double csq = std::norm(hs_inner(pd.dual, op));
        if (kind) {
            const Vector psi = sample_ensemble_ket(*kind, d, rng);
            return csq * (psi.adjoint() * pd.povm * psi)(0, 0).real();
        }
        return csq * pd.povm.trace().real();
    };
    return mc_scalar(opts, scale, integrand);
}

McEstimate mc_noise(const CovariantFamily& family, const Matrix& op, EnsembleKind kind,
                    const McOptions& opts) {
    McEstimate estimate = mc_first_term(family, op, opts);
    estimate.value -= avg_sq_expectation(kind, op, family.d);
    return estimate;
}

MatrixEstimate mc_twirl(const Matrix& x, int order, Index d, const McOptions& opts) {
    if (order != 1 && order != 2) throw std::invalid_argument("mc_twirl: order must be 1 or 2");
    const Index dim = order == 1 ? d : d * d;
    if (x.rows() != dim || x.cols() != dim) {
        throw std::invalid_argument("mc_twirl: operator dimension mismatch");
    }

    auto stats = run_blocks<MatrixStats>(opts, [&](RngStream& rng, std::int64_t count, MatrixStats& s) {
        if (s.n == 0) {
            s.sum = Matrix::Zero(dim, dim);
            s.sum_abs2 = Eigen::ArrayXXd::Zero(dim, dim);
        }
        for (std::int64_t k = 0; k < count; ++k) {
            const Matrix u = haar_unitary(d, rng);
            const Matrix big = order == 1 ? u : kron(u, u);
            const Matrix sample = big * x * big.adjoint();
            s.sum += sample;
            s.sum_abs2 += sample.array().abs2();
        }
        s.n += count;
    });

    Matrix sum = Matrix::Zero(dim, dim);
    Eigen::ArrayXXd sum_abs2 = Eigen::ArrayXXd::Zero(dim, dim);
    std::int64_t n = 0;
    for (const MatrixStats& s : stats) {
        sum += s.sum;
        sum_abs2 += s.sum_abs2;
        n += s.n;
    }
    const double nn = static_cast<double>(n);
    const double measure = static_cast<double>(d);

    MatrixEstimate out;
    out.value = measure * sum / nn;
    const Eigen::ArrayXXd var =
        ((sum_abs2 / nn) - (sum / nn).array().abs2()).max(0.0) * nn / (nn - 1.0);
    out.std_error = measure * (var / nn).sqrt();
    out.n_samples = n;
    return out;
}

McEstimate mc_avg_sq(EnsembleKind kind, const Matrix& op, Index d, const McOptions& opts) {
    if (op.rows() != d * d || op.cols() != d * d) {
        throw std::invalid_argument("mc_avg_sq: operator must act on the bipartite space");
    }
    Integrand integrand = [&op, kind, d](RngStream& rng) {
        const Vector psi = sample_ensemble_ket(kind, d, rng);
        return std::norm((psi.adjoint() * op * psi)(0, 0));
    };
    return mc_scalar(opts, 1.0, integrand);
}

ShotRecord simulate_shots(const DiscretePovm& povm, const Matrix& rho, std::int64_t shots,
                          RngStream& rng, const Tolerance& tol) {
    if (shots < 1) throw std::invalid_argument("simulate_shots: shots must be >= 1");
    if (!is_density_matrix(rho, 1e-8)) {
        throw std::invalid_argument("simulate_shots: rho is not a density matrix");
    }
    const std::size_t n = povm.elements.size();
    std::vector<double> cumulative(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::max(0.0, (povm.elements[i] * rho).trace().real());
        acc += p;
        cumulative[i] = acc;
    }
    if (std::abs(acc - 1.0) > std::max(tol.equality_abs, 1e-8)) {
        throw std::runtime_error("simulate_shots: outcome probabilities do not sum to 1");
    }

    ShotRecord record;
    record.counts.assign(n, 0);
    record.shots = shots;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), n - 1);
        ++record.counts[idx];
    }
    return record;
}

ExpectationEstimate estimate_expectation(const ShotRecord& record, const DualFrame& dual,
                                         const Matrix& op) {
    if (record.counts.size() != dual.elements.size()) {
        throw std::invalid_argument("estimate_expectation: outcome count mismatch");
    }
    if (record.shots < 1) throw std::invalid_argument("estimate_expectation: empty record");

    Complex mean = 0.0;
    double second_moment = 0.0;
    for (std::size_t i = 0; i < record.counts.size(); ++i) {
        if (record.counts[i] == 0) continue;
        const Complex c = hs_inner(dual.elements[i], op);
        const double w = static_cast<double>(record.counts[i]);
        mean += w * c;
        second_moment += w * std::norm(c);
    }
    const double shots = static_cast<double>(record.shots);
    mean /= shots;
    second_moment /= shots;

    ExpectationEstimate out;
    out.value = mean;
    out.single_shot_variance = std::max(0.0, second_moment - std::norm(mean));
    out.std_error = std::sqrt(out.single_shot_variance / shots);
    out.shots = record.shots;
    return out;
}

}  // namespace infoframe
