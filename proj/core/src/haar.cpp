#include "infoframe/haar.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace infoframe {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t state = seed ^ (stream_id * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
    const std::uint32_t words[8] = {
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32)};
    std::seed_seq seq(words, words + 8);
    engine_.seed(seq);
}

double RngStream::uniform() {
    // 53 random bits into [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = r * std::sin(theta);
    has_cached_gaussian_ = true;
    return r * std::cos(theta);
}

Matrix haar_unitary(Index d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < d; ++k) {
        const Complex rkk = r(k, k);
        const double mag = std::abs(rkk);
        const Complex phase = mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
        q.col(k) *= phase;
    }
    return q;
}

Vector haar_ket(Index d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("haar_ket: d must be >= 1");
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    const double norm = v.norm();
    if (norm == 0.0) return haar_ket(d, rng);  // probability-zero retry
    return v / norm;
}

char ensemble_code(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::AllPure: return 'a';
        case EnsembleKind::Factorized: return 'f';
        case EnsembleKind::MaxEntangled: return 'e';
    }
    throw std::logic_error("ensemble_code: bad tag");
}

EnsembleKind parse_ensemble(std::string_view text) {
    if (text == "a") return EnsembleKind::AllPure;
    if (text == "f") return EnsembleKind::Factorized;
    if (text == "e") return EnsembleKind::MaxEntangled;
    throw std::invalid_argument("parse_ensemble: expected one of a, f, e");
}

Vector sample_ensemble_ket(EnsembleKind kind, Index d, RngStream& rng) {
    if (d < 2) throw std::invalid_argument("sample_ensemble_ket: d must be >= 2");
    switch (kind) {
        case EnsembleKind::AllPure:
            return haar_ket(d * d, rng);
        case EnsembleKind::Factorized: {
            const Vector v = haar_ket(d, rng);
            const Vector vp = haar_ket(d, rng);
            Vector out(d * d);
            for (Index m = 0; m < d; ++m) out.segment(m * d, d) = v(m) * vp;
            return out;
        }
        case EnsembleKind::MaxEntangled: {
            // (V (x) I)|I>>/sqrt(d) = |V>>/sqrt(d)
            const Matrix v = haar_unitary(d, rng);
            return dket(v) / std::sqrt(static_cast<double>(d));
        }
    }
    throw std::logic_error("sample_ensemble_ket: bad tag");
}

Matrix sample_ensemble_state(EnsembleKind kind, Index d, RngStream& rng) {
    const Vector psi = sample_ensemble_ket(kind, d, rng);
    return psi * psi.adjoint();
}

}  // namespace infoframe
