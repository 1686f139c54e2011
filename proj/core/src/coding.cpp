#include "d2dnc/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace d2dnc {

CodingGraph build_coding_graph(int transmitter, const Bits& candidates, const StateMatrix& state,
                               const VertexWeightFn& weight) {
    CodingGraph g;
    g.players = state.players();
    g.packets = state.packets();
    const bool bs = transmitter == kBaseStation;

    candidates.for_each([&](std::size_t u_) {
        const int u = static_cast<int>(u_);
        if (u == transmitter) return;
        state.wants_row(u).for_each([&](std::size_t p_) {
            const int p = static_cast<int>(p_);
            if (bs || state.has(transmitter, p))
                g.vertices.push_back({u, p, weight(u, p)});
        });
    });

    // Vertices come out sorted by (player, packet); the searches rely on it.
    const std::size_t v = g.vertices.size();
    g.adj.assign(v, Bits(v));
    for (std::size_t a = 0; a < v; ++a) {
        for (std::size_t b = a + 1; b < v; ++b) {
            const auto& va = g.vertices[a];
            const auto& vb = g.vertices[b];
            if (va.player == vb.player) continue;
            const bool compatible =
                va.packet == vb.packet ||
                (state.has(vb.player, va.packet) && state.has(va.player, vb.packet));
            if (compatible) {
                g.adj[a].set(b);
                g.adj[b].set(a);
            }
        }
    }
    return g;
}

namespace {

Combination make_combination(const CodingGraph& g, const Bits& clique) {
    Combination c;
    c.packets = Bits(static_cast<std::size_t>(g.packets));
    c.targets = Bits(static_cast<std::size_t>(g.players));
    clique.for_each([&](std::size_t i) {
        c.packets.set(static_cast<std::size_t>(g.vertices[i].packet));
        c.targets.set(static_cast<std::size_t>(g.vertices[i].player));
        c.weight += g.vertices[i].weight;
    });
    return c;
}

std::vector<std::size_t> greedy_order(const CodingGraph& g) {
    std::vector<std::size_t> order(g.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (g.vertices[a].weight != g.vertices[b].weight)
            return g.vertices[a].weight > g.vertices[b].weight;
        if (g.vertices[a].player != g.vertices[b].player)
            return g.vertices[a].player < g.vertices[b].player;
        return g.vertices[a].packet < g.vertices[b].packet;
    });
    return order;
}

double grow_clique(const CodingGraph& g, const std::vector<std::size_t>& order, std::size_t seed,
                   Bits& out) {
    out.clear();
    Bits allowed(g.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i) allowed.set(i);
    double weight = 0.0;
    if (seed != g.vertices.size()) {
        out.set(seed);
        weight += g.vertices[seed].weight;
        allowed &= g.adj[seed];
    }
    for (std::size_t idx : order) {
        if (!allowed.test(idx)) continue;
        out.set(idx);
        weight += g.vertices[idx].weight;
        allowed &= g.adj[idx];
    }
    return weight;
}

/// Heaviest-first maximal clique, restarted once per packet (seeded at that
/// packet's heaviest vertex). Restarts keep the search near the best
/// same-packet clusters without changing the O(V^2) bound; the unseeded pass
/// ties everything deterministically.
Bits greedy_clique(const CodingGraph& g) {
    const std::size_t v = g.vertices.size();
    const auto order = greedy_order(g);

    std::vector<std::size_t> seeds{v};  // v = no seed
    std::vector<bool> packet_seen(static_cast<std::size_t>(g.packets), false);
    for (std::size_t idx : order) {
        const auto p = static_cast<std::size_t>(g.vertices[idx].packet);
        if (!packet_seen[p]) {
            packet_seen[p] = true;
            seeds.push_back(idx);
        }
    }

    Bits best(v), candidate(v);
    double best_weight = -1.0;
    for (std::size_t seed : seeds) {
        const double w = grow_clique(g, order, seed, candidate);
        if (w > best_weight + 1e-12) {
            best = candidate;
            best_weight = w;
        }
    }
    return best;
}

/// Maximal-clique enumeration (Bron–Kerbosch with pivoting) tracking the best
/// weight; ties resolved toward the lexicographically smallest vertex set.
class ExactSearch {
public:
    explicit ExactSearch(const CodingGraph& g) : g_(g), best_(g.vertices.size()) {}

    Bits run() {
        const std::size_t v = g_.vertices.size();
        Bits r(v), p(v), x(v);
        for (std::size_t i = 0; i < v; ++i) p.set(i);
        expand(r, p, x, 0.0);
        return best_;
    }

private:
    void expand(Bits& r, Bits p, Bits x, double weight) {
        if (p.none() && x.none()) {
            consider(r, weight);
            return;
        }
        // Bound: even taking all of p cannot beat the incumbent.
        double bound = weight;
        p.for_each([&](std::size_t i) { bound += g_.vertices[i].weight; });
        if (bound < best_weight_ && !almost_equal(bound, best_weight_)) return;

        // Pivot on the (p|x) vertex covering most of p.
        std::size_t pivot = g_.vertices.size();
        std::size_t pivot_cover = 0;
        Bits px = p | x;
        px.for_each([&](std::size_t i) {
            const std::size_t cover = p.intersection_count(g_.adj[i]);
            if (pivot == g_.vertices.size() || cover > pivot_cover) {
                pivot = i;
                pivot_cover = cover;
            }
        });

        Bits ext = p;
        if (pivot != g_.vertices.size()) ext -= g_.adj[pivot];
        std::vector<std::size_t> verts;
        ext.for_each([&](std::size_t i) { verts.push_back(i); });
        for (std::size_t i : verts) {
            r.set(i);
            expand(r, p & g_.adj[i], x & g_.adj[i], weight + g_.vertices[i].weight);
            r.reset(i);
            p.reset(i);
            x.set(i);
        }
    }

    void consider(const Bits& clique, double weight) {
        if (clique.none()) return;
        if (best_.none() || (weight > best_weight_ && !almost_equal(weight, best_weight_))) {
            best_ = clique;
            best_weight_ = weight;
            return;
        }
        if (almost_equal(weight, best_weight_) && lex_less(clique, best_)) best_ = clique;
    }

    static bool almost_equal(double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    }

    static bool lex_less(const Bits& a, const Bits& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const bool ai = a.test(i), bi = b.test(i);
            if (ai != bi) return ai;  // earliest vertex present wins
        }
        return false;
    }

    const CodingGraph& g_;
    Bits best_;
    double best_weight_ = 0.0;
};

}  // namespace

Combination max_weight_combination(const CodingGraph& g, CliqueSearch mode) {
    if (g.vertices.empty()) {
        Combination c;
        c.packets = Bits(static_cast<std::size_t>(g.packets));
        c.targets = Bits(static_cast<std::size_t>(g.players));
        return c;
    }

    if (mode == CliqueSearch::Auto)
        mode = g.vertices.size() <= kExactSearchLimit ? CliqueSearch::Exact : CliqueSearch::Greedy;

    const Bits clique = mode == CliqueSearch::Exact ? ExactSearch(g).run() : greedy_clique(g);
    return make_combination(g, clique);
}

Bits entry_coverage(const TransmissionPlan::Entry& e, const Topology& topo, int players) {
    if (e.transmitter == kBaseStation) {
        Bits all(static_cast<std::size_t>(players));
        for (int u = 0; u < players; ++u) all.set(static_cast<std::size_t>(u));
        return all;
    }
    return topo.neighbors(e.transmitter);
}

std::vector<Bits> targeted_sets(const TransmissionPlan& plan, const Topology& topo,
                                const StateMatrix& state) {
    const int n = state.players();
    const std::size_t k = plan.entries.size();

    std::vector<Bits> coverage(k);
    for (std::size_t a = 0; a < k; ++a) coverage[a] = entry_coverage(plan.entries[a], topo, n);

    Bits transmitters(static_cast<std::size_t>(n));
    for (const auto& e : plan.entries)
        if (e.transmitter != kBaseStation) transmitters.set(static_cast<std::size_t>(e.transmitter));

    std::vector<Bits> tau(k, Bits(static_cast<std::size_t>(n)));
    for (int u = 0; u < n; ++u) {
        if (transmitters.test(static_cast<std::size_t>(u))) continue;
        int hearer_of = -1;
        int heard = 0;
        for (std::size_t a = 0; a < k; ++a) {
            if (coverage[a].test(static_cast<std::size_t>(u))) {
                ++heard;
                hearer_of = static_cast<int>(a);
            }
        }
        if (heard != 1) continue;  // collided or orphaned
        const auto& e = plan.entries[static_cast<std::size_t>(hearer_of)];
        if (e.combination.intersection_count(state.wants_row(u)) == 1)
            tau[static_cast<std::size_t>(hearer_of)].set(static_cast<std::size_t>(u));
    }
    return tau;
}

CollisionSets collision_and_orphan_sets(const TransmissionPlan& plan, const Topology& topo,
                                        int players) {
    CollisionSets out{Bits(static_cast<std::size_t>(players)), Bits(static_cast<std::size_t>(players))};

    std::vector<Bits> coverage;
    coverage.reserve(plan.entries.size());
    for (const auto& e : plan.entries) coverage.push_back(entry_coverage(e, topo, players));

    Bits transmitters(static_cast<std::size_t>(players));
    for (const auto& e : plan.entries)
        if (e.transmitter != kBaseStation) transmitters.set(static_cast<std::size_t>(e.transmitter));

    for (int u = 0; u < players; ++u) {
        if (transmitters.test(static_cast<std::size_t>(u))) continue;
        int heard = 0;
        for (const auto& c : coverage)
            if (c.test(static_cast<std::size_t>(u))) ++heard;
        if (heard >= 2) out.collided.set(static_cast<std::size_t>(u));
        if (heard == 0) out.orphaned.set(static_cast<std::size_t>(u));
    }
    return out;
}

}  // namespace d2dnc
