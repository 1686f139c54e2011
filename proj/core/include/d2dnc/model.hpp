#pragma once

#include <utility>
#include <vector>

#include "d2dnc/bitset.hpp"
#include "d2dnc/rng.hpp"

namespace d2dnc {

/// A frame of M packets, ids 0..M-1.
struct Frame {
    int packet_count = 0;
};

/// Which packets each player is still missing. Row u is the Wants set of
/// player u; Has(u) is its complement over the frame, so the matrix fully
/// determines the side information. A stored 1 means "missing", i.e. the
/// indicator is inverted relative to a received-flag convention.
class StateMatrix {
public:
    StateMatrix() = default;
    StateMatrix(int players, int packets);

    int players() const { return n_; }
    int packets() const { return m_; }

    bool wants(int u, int p) const { return rows_[u].test(static_cast<std::size_t>(p)); }
    bool has(int u, int p) const { return !wants(u, p); }

    const Bits& wants_row(int u) const { return rows_[u]; }
    Bits has_row(int u) const;

    void set_wants(int u, int p, bool v);

    std::size_t wants_count(int u) const { return rows_[u].count(); }
    std::size_t total_wants() const;
    bool player_finished(int u) const { return rows_[u].none(); }
    bool all_finished() const;

    /// Players with a non-empty Wants set.
    Bits wanting_players() const;

    /// True iff every packet is held by at least one player.
    bool every_packet_held() const;

    /// Decode one packet from an instantly decodable combination: exactly one
    /// element of `combination` must be wanted by `receiver`. Throws
    /// NOT_INSTANTLY_DECODABLE otherwise. Returns the decoded packet id.
    int receive(int receiver, const Bits& combination);

    bool operator==(const StateMatrix& o) const = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Bits> rows_;
};

/// Pure variant of StateMatrix::receive.
StateMatrix apply_reception(const StateMatrix& state, int receiver, const Bits& combination);

/// Symmetric unit-diagonal connectivity over players. `neighbors(u)` excludes
/// u itself; the diagonal is implicit. Positions/radius are only populated for
/// generated topologies (fixture-loaded ones carry an explicit edge list).
class Topology {
public:
    Topology() = default;
    explicit Topology(int n);

    static Topology from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    static Topology from_positions(const std::vector<std::pair<double, double>>& pos, double radius);

    int players() const { return n_; }

    bool adjacent(int u, int v) const { return u == v || nbr_[u].test(static_cast<std::size_t>(v)); }
    const Bits& neighbors(int u) const { return nbr_[u]; }
    Bits closed_neighborhood(int u) const;

    std::size_t degree(int u) const { return nbr_[u].count(); }

    /// Mean neighbor count (excluding self) divided by player count.
    double connectivity_index() const;

    bool is_connected() const;

    const std::vector<std::pair<double, double>>& positions() const { return positions_; }
    double radius() const { return radius_; }

    std::vector<std::pair<int, int>> edge_list() const;

    bool operator==(const Topology& o) const {
        return n_ == o.n_ && nbr_ == o.nbr_;
    }

private:
    int n_ = 0;
    std::vector<Bits> nbr_;
    std::vector<std::pair<double, double>> positions_;
    double radius_ = 0.0;
};

/// Per-directed-link erasure probabilities plus the broadcast-station erasure.
/// sigma(u,v) is the probability that a packet sent by u is lost at v; the
/// diagonal is unused. Asymmetric entries are allowed.
class ErasureModel {
public:
    ErasureModel() = default;
    ErasureModel(int n, double uniform_sigma, double epsilon);

    int players() const { return n_; }
    double epsilon() const { return epsilon_; }

    double sigma(int from, int to) const { return sigma_[static_cast<std::size_t>(from) * n_ + to]; }
    void set_sigma(int from, int to, double v) { sigma_[static_cast<std::size_t>(from) * n_ + to] = v; }

    /// Mean erasure probability of the links serving player u, i.e. the
    /// arithmetic mean of sigma(v,u) over u's in-coverage neighbors. Only
    /// those links can ever carry a packet to u.
    double expected_erasure(int u, const Topology& topo) const;

    bool operator==(const ErasureModel& o) const = default;

private:
    int n_ = 0;
    double epsilon_ = 0.0;
    std::vector<double> sigma_;
};

inline constexpr int kTopologyRetryBudget = 1000;
inline constexpr int kSideInfoRetryBudget = 1000;

/// Drops n players uniformly in a [0,side]^2 square and bisects the coverage
/// radius until the realized connectivity index is within +/-0.05 of the
/// target and the graph is connected; positions are re-sampled on failure.
/// When connectivity forces a denser graph than the target band allows (small
/// n), the sparsest connected radius is accepted. Throws FAILED_AFTER_RETRIES
/// when no connected layout is found within the retry budget.
Topology generate_topology(int n, double side, double target_connectivity, Rng& rng,
                           int retry_budget = kTopologyRetryBudget);

/// Draws every wants-bit i.i.d. Bernoulli(epsilon) and redraws until each
/// packet is held by at least one player. Throws FAILED_AFTER_RETRIES when the
/// coverage condition keeps failing (epsilon too close to 1).
StateMatrix init_side_information(int n, Frame frame, double epsilon, Rng& rng,
                                  int retry_budget = kSideInfoRetryBudget);

}  // namespace d2dnc
