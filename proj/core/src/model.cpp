#include "d2dnc/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "d2dnc/errors.hpp"

namespace d2dnc {

StateMatrix::StateMatrix(int players, int packets) : n_(players), m_(packets) {
    rows_.assign(static_cast<std::size_t>(players), Bits(static_cast<std::size_t>(packets)));
}

Bits StateMatrix::has_row(int u) const {
    Bits b(static_cast<std::size_t>(m_));
    for (int p = 0; p < m_; ++p)
        if (!wants(u, p)) b.set(static_cast<std::size_t>(p));
    return b;
}

void StateMatrix::set_wants(int u, int p, bool v) {
    if (v) rows_[u].set(static_cast<std::size_t>(p));
    else rows_[u].reset(static_cast<std::size_t>(p));
}

std::size_t StateMatrix::total_wants() const {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
}

bool StateMatrix::all_finished() const {
    for (const auto& r : rows_)
        if (r.any()) return false;
    return true;
}

Bits StateMatrix::wanting_players() const {
    Bits b(static_cast<std::size_t>(n_));
    for (int u = 0; u < n_; ++u)
        if (rows_[u].any()) b.set(static_cast<std::size_t>(u));
    return b;
}

bool StateMatrix::every_packet_held() const {
    for (int p = 0; p < m_; ++p) {
        bool held = false;
        for (int u = 0; u < n_ && !held; ++u) held = has(u, p);
        if (!held) return false;
    }
    return true;
}

int StateMatrix::receive(int receiver, const Bits& combination) {
    const Bits decodable = combination & rows_[receiver];
    if (decodable.count() != 1) {
        throw Error(ErrorCode::NotInstantlyDecodable,
                    "combination holds " + std::to_string(decodable.count()) +
                        " wanted packets for player " + std::to_string(receiver));
    }
    const std::size_t p = decodable.first_set();
    rows_[receiver].reset(p);
    return static_cast<int>(p);
}

StateMatrix apply_reception(const StateMatrix& state, int receiver, const Bits& combination) {
    StateMatrix out = state;
    out.receive(receiver, combination);
    return out;
}

Topology::Topology(int n) : n_(n) {
    nbr_.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
}

Topology Topology::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Topology t(n);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        t.nbr_[u].set(static_cast<std::size_t>(v));
        t.nbr_[v].set(static_cast<std::size_t>(u));
    }
    return t;
}

Topology Topology::from_positions(const std::vector<std::pair<double, double>>& pos, double radius) {
    const int n = static_cast<int>(pos.size());
    Topology t(n);
    t.positions_ = pos;
    t.radius_ = radius;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double dx = pos[u].first - pos[v].first;
            const double dy = pos[u].second - pos[v].second;
            if (std::sqrt(dx * dx + dy * dy) <= radius) {
                t.nbr_[u].set(static_cast<std::size_t>(v));
                t.nbr_[v].set(static_cast<std::size_t>(u));
            }
        }
    }
    return t;
}

Bits Topology::closed_neighborhood(int u) const {
    Bits b = nbr_[u];
    b.set(static_cast<std::size_t>(u));
    return b;
}

double Topology::connectivity_index() const {
    if (n_ == 0) return 0.0;
    std::size_t total = 0;
    for (int u = 0; u < n_; ++u) total += degree(u);
    return static_cast<double>(total) / n_ / n_;
}

bool Topology::is_connected() const {
    if (n_ == 0) return true;
    Bits seen(static_cast<std::size_t>(n_));
    std::deque<int> q{0};
    seen.set(0);
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        nbr_[u].for_each([&](std::size_t v) {
            if (!seen.test(v)) {
                seen.set(v);
                q.push_back(static_cast<int>(v));
            }
        });
    }
    return seen.count() == static_cast<std::size_t>(n_);
}

std::vector<std::pair<int, int>> Topology::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n_; ++u)
        nbr_[u].for_each([&](std::size_t v) {
            if (static_cast<int>(v) > u) edges.emplace_back(u, static_cast<int>(v));
        });
    return edges;
}

ErasureModel::ErasureModel(int n, double uniform_sigma, double epsilon)
    : n_(n), epsilon_(epsilon),
      sigma_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), uniform_sigma) {}

double ErasureModel::expected_erasure(int u, const Topology& topo) const {
    const Bits& nbrs = topo.neighbors(u);
    const std::size_t deg = nbrs.count();
    if (deg == 0) return 0.0;
    double sum = 0.0;
    nbrs.for_each([&](std::size_t v) { sum += sigma(static_cast<int>(v), u); });
    return sum / static_cast<double>(deg);
}

namespace {

double realized_connectivity(const std::vector<std::pair<double, double>>& pos, double r) {
    const int n = static_cast<int>(pos.size());
    std::size_t total = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            const double dx = pos[u].first - pos[v].first;
            const double dy = pos[u].second - pos[v].second;
            if (dx * dx + dy * dy <= r * r) ++total;
        }
    return static_cast<double>(total) / n / n;
}

}  // namespace

Topology generate_topology(int n, double side, double target_connectivity, Rng& rng,
                           int retry_budget) {
    constexpr double kTol = 0.05;
    const double max_radius = side * std::sqrt(2.0) + 1.0;

    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
        for (auto& p : pos) {
            p.first = rng.uniform01() * side;
            p.second = rng.uniform01() * side;
        }

        // Bisect the radius on the monotone realized-connectivity curve.
        double lo = 0.0, hi = max_radius;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (realized_connectivity(pos, mid) < target_connectivity) lo = mid;
            else hi = mid;
        }
        double radius = hi;
        Topology t = Topology::from_positions(pos, radius);

        // Connectivity may require a radius past the target band; grow to the
        // sparsest connected radius in that case (forced for very small n).
        while (!t.is_connected() && radius < max_radius) {
            radius *= 1.05;
            t = Topology::from_positions(pos, radius);
        }
        const double realized = t.connectivity_index();
        if (!t.is_connected()) continue;

        const bool within = std::abs(realized - target_connectivity) <= kTol;
        const bool forced_denser = realized > target_connectivity + kTol &&
                                   Topology::from_positions(pos, radius / 1.05).is_connected() == false;
        if (within || forced_denser || radius >= max_radius) return t;
        // Band miss without the connectivity excuse: re-sample positions.
    }
    throw Error(ErrorCode::FailedAfterRetries,
                "no connected topology within tolerance after " + std::to_string(retry_budget) +
                    " attempts (n=" + std::to_string(n) + ")");
}

StateMatrix init_side_information(int n, Frame frame, double epsilon, Rng& rng, int retry_budget) {
    const int m = frame.packet_count;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        StateMatrix s(n, m);
        for (int u = 0; u < n; ++u)
            for (int p = 0; p < m; ++p)
                if (rng.bernoulli(epsilon)) s.set_wants(u, p, true);
        if (s.every_packet_held()) return s;
    }
    throw Error(ErrorCode::FailedAfterRetries,
                "side information never covered every packet after " +
                    std::to_string(retry_budget) + " draws (epsilon=" + std::to_string(epsilon) + ")");
}

}  // namespace d2dnc
