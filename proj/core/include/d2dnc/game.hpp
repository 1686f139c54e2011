#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "d2dnc/coding.hpp"
#include "d2dnc/delay.hpp"
#include "d2dnc/model.hpp"

namespace d2dnc {

inline constexpr double kTieEpsilon = 1e-6;        // weight of non-critical targets
inline constexpr double kParetoTolerance = 1e-9;   // strictness tolerance
inline constexpr double kSigmaClampLo = 1e-6;      // clamp before log(1/sigma)
inline constexpr double kSigmaClampHi = 1.0 - 1e-6;

/// Vertex weight of a prospective target: every target counts one unit,
/// critical targets add a link-quality bonus of log(1/erasure). Maximizing
/// clique weight therefore never trades coverage away, and equal-coverage
/// combinations break toward critical players over reliable links.
double target_weight(bool critical, double erasure);

/// Disjoint partition of the players.
class CoalitionStructure {
public:
    CoalitionStructure() = default;

    static CoalitionStructure singletons(int players);
    static CoalitionStructure from_groups(int players, std::vector<Bits> groups);

    int players() const { return players_; }
    const std::vector<Bits>& groups() const { return groups_; }
    std::size_t coalition_count() const { return groups_.size(); }
    int coalition_of(int u) const { return membership_[static_cast<std::size_t>(u)]; }

    bool valid_partition() const;

    /// Partition fingerprint independent of group ordering: membership labels
    /// renumbered in first-appearance order.
    std::string canonical_key() const;

    bool same_partition(const CoalitionStructure& o) const {
        return canonical_key() == o.canonical_key();
    }

private:
    int players_ = 0;
    std::vector<Bits> groups_;
    std::vector<int> membership_;

    void rebuild_membership();
};

/// Head election outcome for one coalition. head < 0 means the coalition is
/// silent this round (no eligible candidate can target anyone).
struct HeadChoice {
    int head = -1;
    Bits combination;
    Bits targets;
    double score = 0.0;

    bool silent() const { return head < 0; }
};

/// Immutable per-round inputs of the formation game plus a head-election memo
/// (heads depend only on the coalition's member set, never on how the rest of
/// the players are partitioned, so they can be cached across candidate
/// structures).
class GameContext {
public:
    GameContext(const StateMatrix& state, const Topology& topo, const ErasureModel& erasures,
                const DelayState& delay);

    const StateMatrix& state;
    const Topology& topo;
    const ErasureModel& erasures;
    const DelayState& delay;

    std::vector<double> t_current;  // anticipated completion before this round
    Bits wanting;                   // players with non-empty Wants
    Bits critical;                  // global critical set

    const HeadChoice& head_for(const Bits& coalition) const;

private:
    mutable std::unordered_map<Bits, HeadChoice, BitsHash> head_memo_;

    // Rearrangements already evaluated and rejected, keyed by the gathered
    // set plus the touched groups' contents; sound because the outcome is a
    // pure function of those inputs for a fixed round state.
    friend std::optional<CoalitionStructure> merge_step(const CoalitionStructure&,
                                                        const GameContext&);
    mutable std::unordered_set<std::size_t> rejected_rearrangements_;
};

/// Members whose transmission cannot harm any other coalition: every wanting
/// player in their coverage zone lies inside the coalition. Covering a
/// finished foreign player is harmless -- it cannot be a target and accrues
/// no delay -- so it does not block eligibility.
Bits eligible_transmitters(const Bits& coalition, const Bits& wanting, const Topology& topo);

/// Head election: argmax of
///   |coverage(a) ∩ wanting members| + weight of the best combination
/// over the best non-empty candidate tier: finished members first (they
/// transmit at no cost), then wanting non-critical ones, then -- when every
/// eligible member is critical -- the least-delayed members, which rotates
/// the transmission burden. Score ties break toward the larger Has set, then
/// the lower id. Returns a silent choice when nobody can target at least one
/// player.
HeadChoice select_transmitter(const Bits& coalition, const GameContext& ctx);

/// Payoff of member u given its coalition's head election: minus the
/// anticipated completion time after this round's expected lookahead cost,
/// minus that cost. The lookahead charges a wanting member that nobody
/// serves one full round (unlike the realized decoding delay, which only
/// counts receptions, collisions and transmissions). Larger is better.
double member_payoff(int u, const HeadChoice& head, const GameContext& ctx);

struct StructureEvaluation {
    std::vector<const HeadChoice*> heads;  // aligned with structure groups
    TransmissionPlan plan;                 // non-silent heads only
    std::vector<double> payoffs;           // per player
};

StructureEvaluation evaluate_structure(const CoalitionStructure& s, const GameContext& ctx);

/// Pareto preference over the affected players: the second payoff vector is
/// preferred iff nobody is worse and somebody is strictly better (tolerance
/// kParetoTolerance). Irreflexive by construction.
bool pareto_preferred(const std::vector<double>& before, const std::vector<double>& after,
                      const Bits& affected);

/// Coalition-value preference: the affected players' total payoff strictly
/// increases. A strict relaxation of the Pareto order (anything Pareto
/// preferred is also value preferred); this is the order the merge and split
/// rules apply, and it keeps the no-revisit/termination argument since every
/// applied rule strictly raises the structure's total payoff.
bool coalition_value_preferred(const std::vector<double>& before, const std::vector<double>& after,
                               const Bits& affected);

/// One merge application, or nullopt when no candidate improves. Candidates
/// are each prospective transmitter's wanting-closure gather (itself plus its
/// wanting neighbors, extracted from their coalitions or fully merged with
/// them), then neighbor-coalition pairs in min-member order, then
/// single-player transfers; the first coalition-value improvement with a
/// valid head wins.
std::optional<CoalitionStructure> merge_step(const CoalitionStructure& s, const GameContext& ctx);

/// One split application, or nullopt. Candidates are the 2-partitions with
/// both parts of size >= 2 of coalitions of size 4..8 (smaller coalitions only
/// admit singleton-producing splits, which are rejected); parts may end up
/// silent. First Pareto improvement wins.
std::optional<CoalitionStructure> split_step(const CoalitionStructure& s, const GameContext& ctx);

struct FormationMetrics {
    int merge_rules = 0;
    int split_rules = 0;
    int iterations = 0;  // merge_step/split_step invocations
};

struct FormationResult {
    CoalitionStructure structure;
    StructureEvaluation evaluation;
    FormationMetrics metrics;
};

/// Alternates merge and split until neither applies. Asserts that no structure
/// is ever revisited (throws REVISITED_STRUCTURE, which would indicate a bug
/// in the Pareto comparison).
FormationResult form_coalitions(CoalitionStructure initial, const GameContext& ctx);

}  // namespace d2dnc
