#include "d2dnc/game.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "d2dnc/errors.hpp"

namespace d2dnc {

namespace {

bool almost_equal(double a, double b) { return std::abs(a - b) <= kParetoTolerance; }

}  // namespace

double target_weight(bool critical, double erasure) {
    if (!critical) return 1.0;
    const double s = std::clamp(erasure, kSigmaClampLo, kSigmaClampHi);
    return 1.0 + 0.25 * std::log(1.0 / s);
}

CoalitionStructure CoalitionStructure::singletons(int players) {
    std::vector<Bits> groups;
    groups.reserve(static_cast<std::size_t>(players));
    for (int u = 0; u < players; ++u) {
        Bits b(static_cast<std::size_t>(players));
        b.set(static_cast<std::size_t>(u));
        groups.push_back(std::move(b));
    }
    return from_groups(players, std::move(groups));
}

CoalitionStructure CoalitionStructure::from_groups(int players, std::vector<Bits> groups) {
    CoalitionStructure s;
    s.players_ = players;
    s.groups_ = std::move(groups);
    s.rebuild_membership();
    return s;
}

void CoalitionStructure::rebuild_membership() {
    membership_.assign(static_cast<std::size_t>(players_), -1);
    for (std::size_t g = 0; g < groups_.size(); ++g)
        groups_[g].for_each([&](std::size_t u) { membership_[u] = static_cast<int>(g); });
}

bool CoalitionStructure::valid_partition() const {
    Bits seen(static_cast<std::size_t>(players_));
    for (const auto& g : groups_) {
        if (g.none()) return false;
        if (seen.intersects(g)) return false;
        seen |= g;
    }
    return seen.count() == static_cast<std::size_t>(players_);
}

std::string CoalitionStructure::canonical_key() const {
    std::vector<int> label(groups_.size(), -1);
    std::string key;
    key.reserve(static_cast<std::size_t>(players_) * 2);
    int next = 0;
    for (int u = 0; u < players_; ++u) {
        const int g = membership_[static_cast<std::size_t>(u)];
        if (label[static_cast<std::size_t>(g)] < 0) label[static_cast<std::size_t>(g)] = next++;
        const int l = label[static_cast<std::size_t>(g)];
        key.push_back(static_cast<char>(l & 0xff));
        key.push_back(static_cast<char>((l >> 8) & 0xff));
    }
    return key;
}

GameContext::GameContext(const StateMatrix& state_, const Topology& topo_,
                         const ErasureModel& erasures_, const DelayState& delay_)
    : state(state_), topo(topo_), erasures(erasures_), delay(delay_) {
    t_current = anticipated_completion(delay);
    wanting = state.wanting_players();
    Bits all(static_cast<std::size_t>(state.players()));
    for (int u = 0; u < state.players(); ++u) all.set(static_cast<std::size_t>(u));
    critical = critical_set(delay, t_current, state, all);
}

const HeadChoice& GameContext::head_for(const Bits& coalition) const {
    auto it = head_memo_.find(coalition);
    if (it != head_memo_.end()) return it->second;
    return head_memo_.emplace(coalition, select_transmitter(coalition, *this)).first->second;
}

Bits eligible_transmitters(const Bits& coalition, const Bits& wanting, const Topology& topo) {
    // Eligibility must not depend on how the rest of the players are
    // partitioned, or member payoffs would lose their coalition locality (and
    // with it the preference relation's transitivity and the termination
    // argument).
    Bits out(coalition.size());
    coalition.for_each([&](std::size_t a) {
        if ((topo.neighbors(static_cast<int>(a)) & wanting).is_subset_of(coalition)) out.set(a);
    });
    return out;
}

namespace {

/// Election domains, best first: finished members transmit for free (no delay
/// unit, nothing to miss), then the wanting non-critical ones (transmitting
/// pushes them toward the critical threshold, which self-limits how much
/// delay any helper absorbs); only when every eligible member is critical
/// does a critical member transmit.
std::vector<Bits> head_domains(const Bits& eligible, const GameContext& ctx) {
    std::vector<Bits> tiers;
    const Bits finished = eligible - ctx.wanting;
    if (finished.any()) tiers.push_back(finished);
    const Bits uncritical = (eligible & ctx.wanting) - ctx.critical;
    if (uncritical.any()) tiers.push_back(uncritical);
    const Bits rest = (eligible & ctx.wanting) & ctx.critical;
    if (rest.any()) tiers.push_back(rest);
    return tiers;
}

HeadChoice elect_within(const Bits& domain, const Bits& coalition, const Bits& wanting_members,
                        const GameContext& ctx) {
    HeadChoice choice;

    // Candidates by descending score upper bound (coverage term plus the sum
    // of every coverable target's weight); lets the argmax skip most clique
    // searches.
    struct Candidate {
        double upper_bound;
        int id;
    };
    std::vector<Candidate> candidates;
    domain.for_each([&](std::size_t a_) {
        const int a = static_cast<int>(a_);
        double ub = 0.0;
        (ctx.topo.neighbors(a) & wanting_members).for_each([&](std::size_t u) {
            ub += 1.0 + target_weight(ctx.critical.test(u), ctx.erasures.sigma(a, static_cast<int>(u)));
        });
        if (ub > 0.0) candidates.push_back({ub, a});
    });
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        return x.upper_bound > y.upper_bound;
    });

    bool have = false;
    std::size_t best_has = 0;
    for (const Candidate& cand : candidates) {
        if (have && cand.upper_bound < choice.score - kParetoTolerance) break;
        const int a = cand.id;
        const Bits audience = ctx.topo.neighbors(a) & coalition;
        const CodingGraph graph =
            build_coding_graph(a, audience, ctx.state, [&](int u, int) {
                return target_weight(ctx.critical.test(static_cast<std::size_t>(u)),
                                     ctx.erasures.sigma(a, u));
            });
        const Combination combo = max_weight_combination(graph);
        if (combo.targets.none()) continue;  // cannot satisfy the >=1-target constraint

        const double score =
            static_cast<double>(ctx.topo.neighbors(a).intersection_count(wanting_members)) +
            combo.weight;
        const std::size_t has = ctx.state.packets() - ctx.state.wants_count(a);

        bool better = false;
        if (!have) {
            better = true;
        } else if (score > choice.score + kParetoTolerance) {
            better = true;
        } else if (almost_equal(score, choice.score)) {
            if (has > best_has || (has == best_has && a < choice.head)) better = true;
        }
        if (better) {
            have = true;
            choice.head = a;
            choice.combination = combo.packets;
            choice.targets = combo.targets;
            choice.score = score;
            best_has = has;
        }
    }
    return choice;
}

}  // namespace

HeadChoice select_transmitter(const Bits& coalition, const GameContext& ctx) {
    HeadChoice choice;
    const Bits eligible = eligible_transmitters(coalition, ctx.wanting, ctx.topo);
    if (eligible.none()) return choice;

    const Bits wanting_members = coalition & ctx.wanting;

    for (const Bits& domain : head_domains(eligible, ctx)) {
        choice = elect_within(domain, coalition, wanting_members, ctx);
        if (!choice.silent()) return choice;
    }
    return choice;
}

double member_payoff(int u, const HeadChoice& head, const GameContext& ctx) {
    // `inc` is the lookahead cost of this round for u: the expected number of
    // rounds u falls behind. Unlike the realized decoding delay it charges a
    // wanting member that nobody serves, which is what makes joining a serving
    // coalition strictly preferable to staying unserved.
    const auto ui = static_cast<std::size_t>(u);
    double inc = 0.0;
    if (ctx.wanting.test(ui)) {
        if (u == head.head) {
            inc = 1.0;  // transmitting while still wanting
        } else if (!head.silent() && ctx.topo.adjacent(head.head, u)) {
            const bool useful = head.combination.intersection_count(ctx.state.wants_row(u)) == 1;
            if (!useful)
                inc = 1.0 - std::clamp(ctx.erasures.sigma(head.head, u), 0.0, 1.0);
        } else {
            inc = 1.0;  // unserved: expected completion slips a full round
        }
    }
    const double es = ctx.delay.expected_erasure[ui];
    const double t_after = ctx.t_current[ui] + inc / (1.0 - es);
    return -t_after - inc;
}

StructureEvaluation evaluate_structure(const CoalitionStructure& s, const GameContext& ctx) {
    StructureEvaluation ev;
    ev.heads.reserve(s.coalition_count());
    ev.payoffs.assign(static_cast<std::size_t>(s.players()), 0.0);

    for (const auto& group : s.groups()) {
        const HeadChoice& head = ctx.head_for(group);
        ev.heads.push_back(&head);
        if (!head.silent()) ev.plan.entries.push_back({head.head, head.combination});
        group.for_each([&](std::size_t u) {
            ev.payoffs[u] = member_payoff(static_cast<int>(u), head, ctx);
        });
    }
    return ev;
}

bool pareto_preferred(const std::vector<double>& before, const std::vector<double>& after,
                      const Bits& affected) {
    bool strict = false;
    bool ok = true;
    affected.for_each([&](std::size_t u) {
        if (after[u] < before[u] - kParetoTolerance) ok = false;
        if (after[u] > before[u] + kParetoTolerance) strict = true;
    });
    return ok && strict;
}

bool coalition_value_preferred(const std::vector<double>& before, const std::vector<double>& after,
                               const Bits& affected) {
    double before_sum = 0.0, after_sum = 0.0;
    affected.for_each([&](std::size_t u) {
        before_sum += before[u];
        after_sum += after[u];
    });
    return after_sum > before_sum + kParetoTolerance;
}

namespace {

/// Payoffs of `members` when they form one coalition with the given head,
/// everything else unchanged. Valid because a member's delay depends only on
/// its own coalition's head: eligible heads never cover foreign players, so
/// cross-coalition receptions and collisions cannot occur.
void overlay_payoffs(const Bits& members, const HeadChoice& head, const GameContext& ctx,
                     std::vector<double>& payoffs) {
    members.for_each(
        [&](std::size_t u) { payoffs[u] = member_payoff(static_cast<int>(u), head, ctx); });
}

/// Applies one rearrangement: the players of `gathered` form a new coalition;
/// every touched donor keeps its remainder. Covers plain merges (gathered =
/// whole coalitions), single-player transfers, and closure extractions (the
/// merge-after-split compound that pulls one prospective transmitter's whole
/// neighborhood together). Accepted when the gathered coalition admits a head
/// and the affected players Pareto-improve.
std::optional<CoalitionStructure> try_rearrange(const CoalitionStructure& s, const Bits& gathered,
                                                const std::vector<int>& touched,
                                                const std::vector<double>& current_payoffs,
                                                const GameContext& ctx) {
    const HeadChoice& head = ctx.head_for(gathered);
    if (head.silent()) return std::nullopt;  // the new coalition must admit a head

    Bits affected(gathered.size());
    std::vector<Bits> remnants;
    remnants.reserve(touched.size());
    for (int g : touched) {
        const Bits& donor = s.groups()[static_cast<std::size_t>(g)];
        affected |= donor;
        Bits rest = donor - gathered;
        if (rest.any()) remnants.push_back(std::move(rest));
    }
    affected |= gathered;

    std::vector<double> after = current_payoffs;
    overlay_payoffs(gathered, head, ctx, after);
    for (const Bits& rest : remnants) overlay_payoffs(rest, ctx.head_for(rest), ctx, after);
    if (!coalition_value_preferred(current_payoffs, after, affected)) return std::nullopt;

    std::vector<Bits> groups;
    groups.reserve(s.coalition_count() + remnants.size());
    groups.push_back(gathered);
    for (Bits& rest : remnants) groups.push_back(std::move(rest));
    for (std::size_t g = 0; g < s.coalition_count(); ++g)
        if (std::find(touched.begin(), touched.end(), static_cast<int>(g)) == touched.end())
            groups.push_back(s.groups()[g]);
    return CoalitionStructure::from_groups(s.players(), std::move(groups));
}

std::vector<int> touched_groups(const CoalitionStructure& s, const Bits& players) {
    std::vector<int> ids;
    players.for_each([&](std::size_t u) {
        const int g = s.coalition_of(static_cast<int>(u));
        if (std::find(ids.begin(), ids.end(), g) == ids.end()) ids.push_back(g);
    });
    return ids;
}

}  // namespace

std::optional<CoalitionStructure> merge_step(const CoalitionStructure& s, const GameContext& ctx) {
    if (s.coalition_count() < 2) return std::nullopt;

    const StructureEvaluation current = evaluate_structure(s, ctx);
    std::unordered_set<Bits, BitsHash> tried;  // keyed by the gathered player set

    auto attempt = [&](const Bits& gathered,
                       const std::vector<int>& touched) -> std::optional<CoalitionStructure> {
        if (touched.size() < 2) return std::nullopt;
        if (!tried.insert(gathered).second) return std::nullopt;
        std::size_t key = gathered.hash();
        for (int g : touched)
            key = key * 0x9e3779b97f4a7c15ull + s.groups()[static_cast<std::size_t>(g)].hash();
        if (ctx.rejected_rearrangements_.count(key)) return std::nullopt;
        auto next = try_rearrange(s, gathered, touched, current.payoffs, ctx);
        if (!next) ctx.rejected_rearrangements_.insert(key);
        return next;
    };

    // Coverage-closure candidates: gather everything a prospective transmitter
    // can reach so that it becomes eligible in one rule. Visited by
    // member-discovery attractiveness (wanting coverage, then Has size);
    // extraction (donors keep remainders) is tried before the full merge of
    // the touched coalitions.
    Bits served(static_cast<std::size_t>(s.players()));
    for (const auto* head : current.heads)
        if (head && !head->silent()) served |= head->targets;

    std::vector<std::pair<long long, int>> closure_order;
    closure_order.reserve(static_cast<std::size_t>(s.players()));
    for (int a = 0; a < s.players(); ++a) {
        const Bits wanting_coverage = ctx.topo.neighbors(a) & ctx.wanting;
        const long long unserved =
            static_cast<long long>(wanting_coverage.count() - wanting_coverage.intersection_count(served));
        const long long coverage = static_cast<long long>(wanting_coverage.count());
        const long long has =
            static_cast<long long>(ctx.state.packets() - ctx.state.wants_count(a));
        const long long m1 = ctx.state.packets() + 1;
        closure_order.emplace_back(-((unserved * m1 + coverage) * m1 + has), a);
    }
    std::sort(closure_order.begin(), closure_order.end());

    for (auto [neg_score, a] : closure_order) {
        Bits closed = ctx.topo.neighbors(a) & ctx.wanting;
        closed.set(static_cast<std::size_t>(a));
        const std::vector<int> touched = touched_groups(s, closed);
        if (touched.size() < 2) continue;
        Bits full(static_cast<std::size_t>(s.players()));
        for (int g : touched) full |= s.groups()[static_cast<std::size_t>(g)];
        if (auto next = attempt(full, touched)) return next;
        if (!(full == closed))
            if (auto next = attempt(closed, touched)) return next;
    }

    // Neighbor-coalition pairs, smallest min-member first.
    std::vector<std::pair<int, int>> order;  // (min member, group id)
    order.reserve(s.coalition_count());
    for (std::size_t g = 0; g < s.coalition_count(); ++g)
        order.emplace_back(static_cast<int>(s.groups()[g].first_set()), static_cast<int>(g));
    std::sort(order.begin(), order.end());

    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const int gi = order[i].second;
            const int gj = order[j].second;
            const Bits& a = s.groups()[static_cast<std::size_t>(gi)];
            const Bits& b = s.groups()[static_cast<std::size_t>(gj)];

            bool adjacent = false;
            a.for_each([&](std::size_t u) {
                if (!adjacent && ctx.topo.neighbors(static_cast<int>(u)).intersects(b))
                    adjacent = true;
            });
            if (!adjacent) continue;
            if (auto next = attempt(a | b, {gi, gj})) return next;
        }
    }

    // Single-player transfers into an adjacent coalition (the individual
    // join/leave moves of Nash stability).
    for (int x = 0; x < s.players(); ++x) {
        const int home = s.coalition_of(x);
        if (s.groups()[static_cast<std::size_t>(home)].count() == 1) continue;  // pair merge covers it
        std::vector<std::pair<int, int>> hosts;  // (min member, group id)
        ctx.topo.neighbors(x).for_each([&](std::size_t v) {
            const int g = s.coalition_of(static_cast<int>(v));
            if (g == home) return;
            const std::pair<int, int> key{static_cast<int>(s.groups()[static_cast<std::size_t>(g)].first_set()), g};
            if (std::find(hosts.begin(), hosts.end(), key) == hosts.end()) hosts.push_back(key);
        });
        std::sort(hosts.begin(), hosts.end());
        for (auto [min_member, g] : hosts) {
            Bits gathered = s.groups()[static_cast<std::size_t>(g)];
            gathered.set(static_cast<std::size_t>(x));
            if (auto next = attempt(gathered, {home, g})) return next;
        }
    }
    return std::nullopt;
}

std::optional<CoalitionStructure> split_step(const CoalitionStructure& s, const GameContext& ctx) {
    constexpr std::size_t kFullSplitLimit = 8;

    const StructureEvaluation current = evaluate_structure(s, ctx);

    std::vector<std::pair<int, int>> order;
    for (std::size_t g = 0; g < s.coalition_count(); ++g)
        order.emplace_back(static_cast<int>(s.groups()[g].first_set()), static_cast<int>(g));
    std::sort(order.begin(), order.end());

    for (auto [min_member, gid] : order) {
        const Bits& group = s.groups()[static_cast<std::size_t>(gid)];
        const std::size_t size = group.count();
        if (size < 4 || size > kFullSplitLimit) continue;  // singleton parts are rejected

        const std::vector<int> members = group.to_vector();
        const std::size_t k = members.size();
        // Member 0 stays in part A; masks enumerate the rest.
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << (k - 1)); ++mask) {
            Bits part_a(static_cast<std::size_t>(s.players()));
            Bits part_b(static_cast<std::size_t>(s.players()));
            part_a.set(static_cast<std::size_t>(members[0]));
            for (std::size_t i = 1; i < k; ++i) {
                if ((mask >> (i - 1)) & 1) part_b.set(static_cast<std::size_t>(members[i]));
                else part_a.set(static_cast<std::size_t>(members[i]));
            }
            if (part_a.count() < 2 || part_b.count() < 2) continue;

            // SC2 allows silent parts, so only the preference order gates.
            std::vector<double> after = current.payoffs;
            overlay_payoffs(part_a, ctx.head_for(part_a), ctx, after);
            overlay_payoffs(part_b, ctx.head_for(part_b), ctx, after);
            if (!coalition_value_preferred(current.payoffs, after, group)) continue;

            std::vector<Bits> groups;
            groups.reserve(s.coalition_count() + 1);
            groups.push_back(part_a);
            groups.push_back(part_b);
            for (std::size_t g = 0; g < s.coalition_count(); ++g)
                if (static_cast<int>(g) != gid) groups.push_back(s.groups()[g]);
            return CoalitionStructure::from_groups(s.players(), std::move(groups));
        }
    }
    return std::nullopt;
}

FormationResult form_coalitions(CoalitionStructure initial, const GameContext& ctx) {
    FormationResult result;
    FormationMetrics& m = result.metrics;

    std::unordered_set<std::string> visited;
    CoalitionStructure s = std::move(initial);
    visited.insert(s.canonical_key());

    const long long rule_cap =
        10LL * (1LL << std::min(s.players(), 20));  // loud failure, never expected

    bool changed_any = true;
    while (changed_any) {
        changed_any = false;
        for (;;) {
            ++m.iterations;
            auto next = merge_step(s, ctx);
            if (!next) break;
            s = std::move(*next);
            ++m.merge_rules;
            changed_any = true;
            if (!visited.insert(s.canonical_key()).second)
                throw Error(ErrorCode::RevisitedStructure, "merge revisited a coalition structure");
            if (m.merge_rules + m.split_rules > rule_cap)
                throw Error(ErrorCode::RevisitedStructure, "rule cap exceeded");
        }
        for (;;) {
            ++m.iterations;
            auto next = split_step(s, ctx);
            if (!next) break;
            s = std::move(*next);
            ++m.split_rules;
            changed_any = true;
            if (!visited.insert(s.canonical_key()).second)
                throw Error(ErrorCode::RevisitedStructure, "split revisited a coalition structure");
            if (m.merge_rules + m.split_rules > rule_cap)
                throw Error(ErrorCode::RevisitedStructure, "rule cap exceeded");
        }
    }

    result.evaluation = evaluate_structure(s, ctx);
    result.structure = std::move(s);
    return result;
}

}  // namespace d2dnc
