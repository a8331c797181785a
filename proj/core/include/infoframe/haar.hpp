// haar.hpp — seeded random streams, Haar-distributed unitaries, and the three
// pure-state input ensembles on a bipartite space.

#pragma once

#include "infoframe/operator_algebra.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace infoframe {

// Deterministic random source: equal (seed, stream_id) pairs replay the same
// sequence. Parallel consumers must use disjoint stream_ids; a single stream
// is not safe for concurrent draws.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double uniform();   // [0, 1)
    double gaussian();  // standard normal, Box-Muller (std::normal_distribution
                        // is not reproducible across standard libraries)

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

// Haar-distributed unitary via a complex Ginibre matrix and QR with the
// R-diagonal phases folded back in (plain QR alone is not Haar).
Matrix haar_unitary(Index d, RngStream& rng);

// Haar-random pure state on C^d.
Vector haar_ket(Index d, RngStream& rng);

enum class EnsembleKind { AllPure, Factorized, MaxEntangled };

char ensemble_code(EnsembleKind kind);                   // 'a' / 'f' / 'e'
EnsembleKind parse_ensemble(std::string_view text);      // "a" / "f" / "e"

// Pure bipartite state on C^(d^2) drawn from the requested ensemble:
//   AllPure       U|0>> with U Haar on the full d^2-dim space,
//   Factorized    (V (x) V')|0>|0> with independent Haar V, V' on C^d,
//   MaxEntangled  (V (x) I)|I>>/sqrt(d).
Vector sample_ensemble_ket(EnsembleKind kind, Index d, RngStream& rng);
Matrix sample_ensemble_state(EnsembleKind kind, Index d, RngStream& rng);

}  // namespace infoframe
