#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "incsyn/abstract_game.hpp"
#include "incsyn/game.hpp"
#include "incsyn/learn.hpp"

namespace incsyn::testutil {

struct FairGameOpts {
    int min_vertices = 3;
    int max_vertices = 10;
    double p0_ratio = 0.4;       // share of P0 vertices
    double fair_prob = 0.6;      // chance a P1 vertex gets fair edges
    double b_prob = 0.3;
    int max_p0_degree = 2;
    int max_p1_degree = 3;
    double max_strategies = 64;  // keeps the oracle enumeration cheap
};

// Random total fair Buchi game; degree products are capped so the brute-force
// oracle stays fast.
inline std::pair<GameGraph, Spec> random_fair_game(std::mt19937_64& rng,
                                                   const FairGameOpts& opts = {}) {
    while (true) {
        std::uniform_int_distribution<int> nv(opts.min_vertices, opts.max_vertices);
        int n = nv(rng);
        GameGraph g(Flavor::Fair);
        std::bernoulli_distribution is_p0(opts.p0_ratio);
        for (int i = 0; i < n; ++i)
            g.add_vertex(is_p0(rng) ? Player::P0 : Player::P1);

        double strategies = 1;
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (vertex_t v = 0; v < n; ++v) {
            int maxd = g.owner(v) == Player::P0 ? opts.max_p0_degree : opts.max_p1_degree;
            std::uniform_int_distribution<int> nd(1, maxd);
            int d = nd(rng);
            std::vector<vertex_t> targets;
            while ((int)targets.size() < d) {
                vertex_t w = pick(rng);
                if (std::find(targets.begin(), targets.end(), w) == targets.end())
                    targets.push_back(w);
            }
            for (vertex_t w : targets) g.add_edge(v, w);
            if (g.owner(v) == Player::P0) strategies *= (double)targets.size();
            if (g.owner(v) == Player::P1 && std::bernoulli_distribution(opts.fair_prob)(rng)) {
                std::shuffle(targets.begin(), targets.end(), rng);
                std::uniform_int_distribution<size_t> nf(1, targets.size());
                size_t f = nf(rng);
                for (size_t i = 0; i < f; ++i) g.add_edge(v, targets[i], true);
            }
        }
        if (strategies > opts.max_strategies) continue;

        Spec spec;
        spec.kind = SpecKind::Buchi;
        spec.member.assign(n, false);
        std::bernoulli_distribution in_b(opts.b_prob);
        for (vertex_t v = 0; v < n; ++v) spec.member[v] = in_b(rng);
        g.validate();
        return {std::move(g), std::move(spec)};
    }
}

// Random cofair coBuchi game, constructed directly (fair edges on P0).
inline std::pair<GameGraph, Spec> random_cofair_game(std::mt19937_64& rng,
                                                     const FairGameOpts& opts = {}) {
    FairGameOpts swapped = opts;
    swapped.p0_ratio = 1.0 - opts.p0_ratio;
    auto [g, spec] = random_fair_game(rng, swapped);
    GameGraph c(Flavor::Cofair);
    for (vertex_t v = 0; v < g.capacity(); ++v)
        c.add_vertex(g.owner(v) == Player::P0 ? Player::P1 : Player::P0);
    for (vertex_t v = 0; v < g.capacity(); ++v) {
        for (vertex_t w : g.succ(v)) c.add_edge(v, w, g.has_fair_edge(v, w));
    }
    spec.kind = SpecKind::CoBuchi;
    c.validate();
    return {std::move(c), std::move(spec)};
}

inline std::pair<GameGraph, Spec> random_normal_game(std::mt19937_64& rng, int max_vertices = 10,
                                                     SpecKind kind = SpecKind::Buchi) {
    FairGameOpts opts;
    opts.max_vertices = max_vertices;
    opts.fair_prob = 0.0;
    opts.max_strategies = 1e9;
    opts.max_p0_degree = 3;
    auto [g, spec] = random_fair_game(rng, opts);
    g.set_flavor(Flavor::Normal);
    spec.kind = kind;
    return {std::move(g), std::move(spec)};
}

// The running-example fixture: cells v0, v1, goal, wall; one input.
// F_over(v1) initially reaches the wall; the refinement drops it.
struct Fig1b {
    static constexpr cell_t v0 = 0, v1 = 1, goal = 2, wall = 3;
    ApproxTable before;
    ApproxTable after;
    std::vector<cell_t> buchi{goal};
};

inline Fig1b fig1b_tables() {
    Fig1b f;
    f.before = ApproxTable(4, 1);
    f.before.set_entry(Fig1b::v0, 0, {Fig1b::v1}, {Fig1b::v0, Fig1b::v1});
    f.before.set_entry(Fig1b::v1, 0, {Fig1b::goal}, {Fig1b::v1, Fig1b::goal, Fig1b::wall});
    f.before.set_entry(Fig1b::goal, 0, {Fig1b::goal}, {Fig1b::goal});
    f.before.set_entry(Fig1b::wall, 0, {Fig1b::wall}, {Fig1b::wall});
    f.after = f.before;
    f.after.set_entry(Fig1b::v1, 0, {Fig1b::goal}, {Fig1b::v1, Fig1b::goal});
    return f;
}

// Random under/over table over a small abstract state space; sink never
// appears in F_under, may appear in F_over.
inline ApproxTable random_table(std::mt19937_64& rng, cell_t cells, int inputs,
                                double density = 0.5) {
    ApproxTable tab(cells, inputs);
    std::bernoulli_distribution in_over(density);
    std::bernoulli_distribution promote(0.4);
    std::uniform_int_distribution<cell_t> pick(0, cells - 1);
    for (cell_t s = 0; s < cells; ++s) {
        for (input_t u = 0; u < inputs; ++u) {
            std::vector<cell_t> over, under;
            for (cell_t c = 0; c < cells; ++c)
                if (in_over(rng)) over.push_back(c);
            if (in_over(rng)) over.push_back(cells); // the sink
            if (over.empty()) over.push_back(pick(rng));
            for (cell_t c : over)
                if (c != cells && promote(rng)) under.push_back(c);
            tab.set_entry(s, u, std::move(under), std::move(over));
        }
    }
    return tab;
}

// Applies one random monotone refinement to the table: either promotes a
// branch target into F_under or removes one from F_over. Returns false when
// the table is already tight everywhere.
inline bool random_refinement(std::mt19937_64& rng, ApproxTable& tab) {
    std::vector<std::pair<cell_t, input_t>> cands;
    for (cell_t s = 0; s < tab.cell_count(); ++s)
        for (input_t u = 0; u < tab.input_count(); ++u)
            if (!tab.entry(s, u).branches.empty()) cands.emplace_back(s, u);
    if (cands.empty()) return false;
    auto [s, u] = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
    ApproxEntry& e = tab.entry(s, u);
    size_t k = std::uniform_int_distribution<size_t>(0, e.branches.size() - 1)(rng);
    cell_t target = e.branches[k];
    bool can_promote = target != tab.sink();
    bool can_remove = e.under.size() + e.branches.size() > 1;
    if (!can_promote && !can_remove) return false;
    bool do_promote = can_promote && (!can_remove || std::bernoulli_distribution(0.5)(rng));
    e.branches.erase(e.branches.begin() + k);
    if (do_promote)
        e.under.insert(std::upper_bound(e.under.begin(), e.under.end(), target), target);
    return true;
}

inline std::vector<vertex_t> sorted(std::vector<vertex_t> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

} // namespace incsyn::testutil
