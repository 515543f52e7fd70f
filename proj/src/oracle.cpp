#include "incsyn/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace incsyn {

namespace {

// Player-j attractor to `target` inside `alive`, classical worklist version.
std::vector<bool> attractor(const GameGraph& g, Player j, const std::vector<bool>& target,
                            const std::vector<bool>& alive) {
    std::vector<bool> in(g.capacity(), false);
    std::vector<int> esc(g.capacity(), 0); // for the opponent: successors not yet attracted
    std::vector<vertex_t> stack;
    for (vertex_t v : g.vertices()) {
        if (!alive[v]) continue;
        if (g.owner(v) != j) {
            int c = 0;
            for (vertex_t w : g.succ(v))
                if (alive[w]) ++c;
            esc[v] = c;
        }
        if (target[v]) {
            in[v] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        vertex_t v = stack.back();
        stack.pop_back();
        for (vertex_t p : g.pred(v)) {
            if (!alive[p] || in[p]) continue;
            bool pull = g.owner(p) == j ? true : (--esc[p] == 0);
            if (pull) {
                in[p] = true;
                stack.push_back(p);
            }
        }
    }
    return in;
}

OracleResult buchi_normal(const GameGraph& g, const Spec& spec) {
    std::vector<bool> alive(g.capacity(), false);
    size_t alive_count = 0;
    for (vertex_t v : g.vertices()) {
        alive[v] = true;
        ++alive_count;
    }
    OracleResult res;
    while (alive_count > 0) {
        std::vector<bool> b(g.capacity(), false);
        for (vertex_t v : g.vertices())
            if (alive[v] && spec.in_b(v)) b[v] = true;
        std::vector<bool> reach = attractor(g, Player::P0, b, alive);
        std::vector<bool> escape(g.capacity(), false);
        bool any_escape = false;
        for (vertex_t v : g.vertices())
            if (alive[v] && !reach[v]) {
                escape[v] = true;
                any_escape = true;
            }
        if (!any_escape) break; // P0 re-reaches B from everywhere left
        std::vector<bool> d = attractor(g, Player::P1, escape, alive);
        for (vertex_t v : g.vertices())
            if (alive[v] && d[v]) {
                res.win1.push_back(v);
                alive[v] = false;
                --alive_count;
            }
    }
    for (vertex_t v : g.vertices())
        if (alive[v]) res.win0.push_back(v);
    std::sort(res.win0.begin(), res.win0.end());
    std::sort(res.win1.begin(), res.win1.end());
    return res;
}

GameGraph owner_swapped(const GameGraph& g) {
    GameGraph out(g.flavor());
    for (vertex_t v = 0; v < g.capacity(); ++v)
        out.add_vertex(!g.alive(v) || g.owner(v) == Player::P0 ? Player::P1 : Player::P0);
    for (vertex_t v = 0; v < g.capacity(); ++v)
        if (!g.alive(v)) out.remove_vertex(v);
    for (vertex_t v : g.vertices()) {
        for (vertex_t w : g.succ(v)) out.add_edge(v, w, false);
        for (vertex_t w : g.fair_succ(v)) out.add_edge(v, w, true);
    }
    return out;
}

// Dense relabeling for the mask-based enumeration.
struct Packed {
    std::vector<vertex_t> verts;            // dense index -> vertex id
    std::vector<int> index;                 // vertex id -> dense index
    std::vector<uint64_t> succ_mask;        // per dense index
    std::vector<uint64_t> fair_mask;
    std::vector<std::vector<int>> p0_opts;  // successor dense indices of P0 vertices
    std::vector<int> p0_verts;              // dense indices owned by P0
    uint64_t b_mask = 0;
    uint64_t all_mask = 0;
};

Packed pack(const GameGraph& g, const Spec& spec) {
    Packed p;
    p.verts = g.vertices();
    if (p.verts.size() > 48) throw too_large("oracle: more than 48 vertices");
    p.index.assign(g.capacity(), -1);
    for (size_t i = 0; i < p.verts.size(); ++i) p.index[p.verts[i]] = (int)i;
    p.succ_mask.assign(p.verts.size(), 0);
    p.fair_mask.assign(p.verts.size(), 0);
    for (size_t i = 0; i < p.verts.size(); ++i) {
        vertex_t v = p.verts[i];
        p.all_mask |= uint64_t(1) << i;
        if (spec.in_b(v)) p.b_mask |= uint64_t(1) << i;
        for (vertex_t w : g.succ(v)) p.succ_mask[i] |= uint64_t(1) << p.index[w];
        for (vertex_t w : g.fair_succ(v)) p.fair_mask[i] |= uint64_t(1) << p.index[w];
        if (g.owner(v) == Player::P0) {
            p.p0_verts.push_back((int)i);
            std::vector<int> opts;
            for (vertex_t w : g.succ(v)) opts.push_back(p.index[w]);
            std::sort(opts.begin(), opts.end());
            p.p0_opts.push_back(std::move(opts));
        }
    }
    return p;
}

bool strongly_connected_with_edge(const std::vector<uint64_t>& smask, uint64_t h) {
    int first = std::countr_zero(h);
    uint64_t fwd = uint64_t(1) << first;
    while (true) {
        uint64_t nxt = fwd;
        uint64_t rest = fwd;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            nxt |= smask[v] & h;
        }
        if (nxt == fwd) break;
        fwd = nxt;
    }
    if (fwd != h) return false;
    // backward closure
    uint64_t bwd = uint64_t(1) << first;
    while (true) {
        uint64_t nxt = bwd;
        uint64_t rest = h & ~bwd;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (smask[v] & bwd) nxt |= uint64_t(1) << v;
        }
        if (nxt == bwd) break;
        bwd = nxt;
    }
    if (bwd != h) return false;
    if (std::popcount(h) == 1) return (smask[first] & h) != 0; // lone vertex needs a self-loop
    return true;
}

uint64_t backward_reach(const Packed& p, const std::vector<uint64_t>& smask, uint64_t target) {
    uint64_t r = target;
    while (true) {
        uint64_t nxt = r;
        uint64_t rest = p.all_mask & ~r;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (smask[v] & r) nxt |= uint64_t(1) << v;
        }
        if (nxt == r) break;
        r = nxt;
    }
    return r;
}

// Union of all B-free, fairness-closed, strongly connected vertex sets in the
// strategy-restricted graph.
uint64_t valid_traps_union(const Packed& p, const std::vector<uint64_t>& smask) {
    uint64_t m = p.all_mask & ~p.b_mask;
    uint64_t found = 0;
    for (uint64_t h = m;; h = (h - 1) & m) {
        if (h) {
            bool fair_ok = true;
            uint64_t rest = h;
            while (rest) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                if (p.fair_mask[v] && (p.fair_mask[v] & ~h)) { fair_ok = false; break; }
            }
            if (fair_ok && (h & ~found) && strongly_connected_with_edge(smask, h)) found |= h;
        }
        if (h == 0) break;
    }
    return found;
}

OracleResult fair_buchi_enumerate(const GameGraph& g, const Spec& spec) {
    Packed p = pack(g, spec);
    const size_t n = p.verts.size();

    double strategies = 1;
    for (auto& opts : p.p0_opts) strategies *= (double)opts.size();
    double subsets = std::pow(2.0, (double)std::popcount(p.all_mask & ~p.b_mask));
    if (strategies * subsets > 5e7)
        throw too_large("oracle: enumeration estimate too large");

    uint64_t win0 = 0;
    std::vector<size_t> choice(p.p0_opts.size(), 0);
    std::vector<uint64_t> smask(n);
    while (true) {
        for (size_t i = 0; i < n; ++i) smask[i] = p.succ_mask[i];
        for (size_t k = 0; k < p.p0_verts.size(); ++k)
            smask[p.p0_verts[k]] = uint64_t(1) << p.p0_opts[k][choice[k]];

        uint64_t traps = valid_traps_union(p, smask);
        uint64_t bad = traps ? backward_reach(p, smask, traps) : 0;
        win0 |= p.all_mask & ~bad;

        // next strategy profile
        size_t k = 0;
        while (k < choice.size() && ++choice[k] == p.p0_opts[k].size()) choice[k++] = 0;
        if (k == choice.size()) break;
        if (choice.empty()) break;
    }

    OracleResult res;
    for (size_t i = 0; i < n; ++i) {
        if (win0 >> i & 1) res.win0.push_back(p.verts[i]);
        else res.win1.push_back(p.verts[i]);
    }
    return res;
}

} // namespace

OracleResult solve_normal(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Normal) throw error("solve_normal: flavor must be normal");
    if (spec.kind == SpecKind::Buchi) return buchi_normal(g, spec);
    // coBuchi: P1 of the swapped game plays Buchi on B.
    GameGraph sw = owner_swapped(g);
    OracleResult r = buchi_normal(sw, Spec{SpecKind::Buchi, spec.member});
    return OracleResult{std::move(r.win1), std::move(r.win0)};
}

OracleResult solve_fair_buchi_bruteforce(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Fair && g.flavor() != Flavor::Normal)
        throw error("solve_fair_buchi_bruteforce: fair (or normal) Buchi game expected");
    if (spec.kind != SpecKind::Buchi) throw error("solve_fair_buchi_bruteforce: Buchi spec expected");
    return fair_buchi_enumerate(g, spec);
}

OracleResult solve_cofair_cobuchi_bruteforce(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Cofair) throw error("solve_cofair_cobuchi_bruteforce: cofair game expected");
    if (spec.kind != SpecKind::CoBuchi) throw error("solve_cofair_cobuchi_bruteforce: coBuchi spec expected");
    GameGraph sw = owner_swapped(g);
    sw.set_flavor(Flavor::Fair);
    OracleResult r = fair_buchi_enumerate(sw, Spec{SpecKind::Buchi, spec.member});
    return OracleResult{std::move(r.win1), std::move(r.win0)};
}

bool check_policy(const GameGraph& g, const Spec& spec, const PositionalStrategy& policy,
                  vertex_t from) {
    Packed p = pack(g, spec);
    const size_t n = p.verts.size();
    std::vector<uint64_t> smask(n);
    for (size_t i = 0; i < n; ++i) {
        vertex_t v = p.verts[i];
        if (g.owner(v) == Player::P0) {
            vertex_t c = v < (vertex_t)policy.choice.size() ? policy.choice[v] : kNoVertex;
            smask[i] = c == kNoVertex ? 0 : uint64_t(1) << p.index[c];
        } else {
            smask[i] = p.succ_mask[i];
        }
    }
    // forward reachability from `from`
    uint64_t reach = uint64_t(1) << p.index[from];
    while (true) {
        uint64_t nxt = reach;
        uint64_t rest = reach;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            nxt |= smask[v];
        }
        if (nxt == reach) break;
        reach = nxt;
    }
    // a reachable P0 vertex without a move loses immediately
    uint64_t rest = reach;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if (g.owner(p.verts[v]) == Player::P0 && smask[v] == 0) return false;
    }

    double subsets = std::pow(2.0, (double)std::popcount(reach));
    if (subsets > 5e7) throw too_large("check_policy: reachable set too large");

    bool want_b_free = spec.kind == SpecKind::Buchi; // violating cycles avoid B; for coBuchi they touch B
    for (uint64_t h = reach;; h = (h - 1) & reach) {
        if (h) {
            bool b_ok = want_b_free ? (h & p.b_mask) == 0 : (h & p.b_mask) != 0;
            if (b_ok) {
                bool fair_ok = true;
                uint64_t r2 = h;
                while (r2) {
                    int v = std::countr_zero(r2);
                    r2 &= r2 - 1;
                    if (p.fair_mask[v] && (p.fair_mask[v] & ~h)) { fair_ok = false; break; }
                }
                if (fair_ok && strongly_connected_with_edge(smask, h)) return false;
            }
        }
        if (h == 0) break;
    }
    return true;
}

} // namespace incsyn
