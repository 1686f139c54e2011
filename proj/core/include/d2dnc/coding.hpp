#pragma once

#include <functional>
#include <vector>

#include "d2dnc/bitset.hpp"
#include "d2dnc/model.hpp"

namespace d2dnc {

/// Sentinel transmitter id for the broadcast station: covers every player,
/// holds every packet, is not itself a player.
inline constexpr int kBaseStation = -1;

/// One inducement pair (player, wanted packet) in a coding graph.
struct CodingVertex {
    int player = 0;
    int packet = 0;
    double weight = 0.0;
};

/// IDNC coding graph for one transmitter: vertices are (candidate, wanted
/// packet held by the transmitter) pairs, edges the standard compatibility
/// conditions (same packet, or each packet held by the other player). Every
/// clique's packet union is instantly decodable for all its players.
struct CodingGraph {
    int players = 0;
    int packets = 0;
    std::vector<CodingVertex> vertices;
    std::vector<Bits> adj;  // one row per vertex

    bool edge(std::size_t a, std::size_t b) const { return adj[a].test(b); }
};

using VertexWeightFn = std::function<double(int player, int packet)>;

/// Builds the coding graph of `transmitter` over `candidates` (players,
/// excluding the transmitter itself). For the base station every packet is
/// available; otherwise vertices are limited to Wants(u) ∩ Has(transmitter).
CodingGraph build_coding_graph(int transmitter, const Bits& candidates, const StateMatrix& state,
                               const VertexWeightFn& weight);

struct Combination {
    Bits packets;  // XOR combination
    Bits targets;  // players decoding exactly one packet
    double weight = 0.0;
};

enum class CliqueSearch {
    Auto,    // exact when the graph has <= kExactSearchLimit vertices, else greedy
    Greedy,  // heaviest-first maximal clique, ties by (player, packet)
    Exact,   // maximal-clique enumeration with weight pruning
};

inline constexpr std::size_t kExactSearchLimit = 20;

/// Max-weight instantly decodable combination. Empty graph yields an empty
/// combination (the caller decides whether the transmitter stays silent).
/// Deterministic: identical inputs give identical outputs for every mode.
Combination max_weight_combination(const CodingGraph& g, CliqueSearch mode = CliqueSearch::Auto);

struct TransmissionPlan {
    struct Entry {
        int transmitter = 0;  // player id or kBaseStation
        Bits combination;
    };
    int round = 0;
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }
};

/// Coverage of a plan entry: all players for the base station, the
/// transmitter's neighbors otherwise.
Bits entry_coverage(const TransmissionPlan::Entry& e, const Topology& topo, int players);

/// Per-transmitter targeted sets: u is targeted by entry a iff the combination
/// holds exactly one of u's wanted packets, u hears a and no other
/// transmitter, and u is not itself a transmitter.
std::vector<Bits> targeted_sets(const TransmissionPlan& plan, const Topology& topo,
                                const StateMatrix& state);

struct CollisionSets {
    Bits collided;  // non-transmitters hearing >= 2 transmissions
    Bits orphaned;  // players hearing none
};

CollisionSets collision_and_orphan_sets(const TransmissionPlan& plan, const Topology& topo,
                                        int players);

}  // namespace d2dnc
