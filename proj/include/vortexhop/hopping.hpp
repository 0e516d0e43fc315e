#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vortexhop::hop {

enum class Scheme { MH, FH, MFH };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name); // throws ValidationError

// Hopping resources and the interference population.
struct CollisionModel {
    int modes = 1;       // N vortex modes (1 for pure FH)
    int bands = 1;       // Q frequency bands (1 for pure MH)
    int interferers = 0; // K
    int hops = 1;        // U hops per data symbol

    void validate() const; // throws DomainError
};

// One hop of a pattern; MH hops carry only a mode, FH hops only a band.
struct Hop {
    std::optional<int> mode;
    std::optional<int> band;
};

struct HopPattern {
    std::vector<Hop> hops;
    double hop_duration = 1.0; // t_h [s], bookkeeping only

    // One hop per line: "u,l_u" (MH), "u,q_u" (FH), "u,l_u,q_u" (MFH).
    std::string dump() const;
};

// A realization of which hops collided and how hard:
//   jammed = V hops hit, counts[v] = interferers on hop v (descending),
//   shared_count = L, the most frequent count (ties to the larger value),
//   shared_hops  = a, how many hops carry exactly L interferers;
//   a == 0 (L == 0) when every count is distinct.
// `conforming` flags profiles whose remaining V-a counts are pairwise
// distinct, i.e. the case split the grouped closed form can express
// directly; the pole-merging evaluation handles the rest.
struct JamProfile {
    int jammed = 0;
    std::vector<int> counts;
    int shared_hops = 0;
    int shared_count = 0;
    bool conforming = true;

    static JamProfile from_counts(std::vector<int> counts);
};

// Deterministic PN-driven pattern: hop u's mode (and band) come from the
// counter stream substream(seed, u), uniform over the admissible resources.
HopPattern gen_pattern(std::uint64_t seed, Scheme scheme, const CollisionModel& model,
                       int hops);

// Per-hop probability that one interferer lands on the desired user's
// resource: 1/N for MH, 1/Q for FH, 1/(N*Q) for MFH (mode and band are
// disjoint events).
double collision_prob(const CollisionModel& model, Scheme scheme);

// Probability that all hops stay clear of all interferers: (1-P)^(K*U).
double p_clear(const CollisionModel& model, double collision_p);

// Probability that exactly `jammed` of the U hops are hit:
//   C(U,V) (1-P)^(K(U-V)) [1-(1-P)^K]^V.
double p_jam_given(const CollisionModel& model, int jammed, double collision_p);

// The same quantity evaluated as the literal V-fold nested sum over
// (D_1..D_V) of per-hop binomial factors; kept as an independent route and
// cross-checked against the closed form. Guarded by K^V <= 1e7.
double p_jam_given_literal(const CollisionModel& model, int jammed, double collision_p);

// All jam profiles with exactly `jammed` hops hit, with exact probabilities
// (multiset of counts x multinomial arrangement count x per-hop binomial
// weights). Probabilities sum to p_jam_given(jammed). The guard is on the
// actual number of enumerated profiles.
std::vector<std::pair<JamProfile, double>> enumerate_profiles(const CollisionModel& model,
                                                              int jammed,
                                                              double collision_p);

} // namespace vortexhop::hop
