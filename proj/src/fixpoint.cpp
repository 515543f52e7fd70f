#include "incsyn/fixpoint.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>

namespace incsyn {

size_t VertexSet::count() const {
    size_t c = 0;
    for (uint64_t w : bits_) c += std::popcount(w);
    return c;
}

std::vector<vertex_t> VertexSet::to_list() const {
    std::vector<vertex_t> out;
    for (vertex_t v = 0; v < (vertex_t)n_; ++v)
        if (test(v)) out.push_back(v);
    return out;
}

VertexSet VertexSet::of(size_t n, const std::vector<vertex_t>& xs) {
    VertexSet s(n);
    for (vertex_t v : xs) s.set(v);
    return s;
}

VertexSet pre1_forall(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (g.owner(v) != Player::P1) continue;
        bool all = true;
        for (vertex_t w : g.succ(v))
            if (!h.test(w)) { all = false; break; }
        if (all) out.set(v);
    }
    return out;
}

VertexSet pre0_exists(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (g.owner(v) != Player::P0) continue;
        for (vertex_t w : g.succ(v))
            if (h.test(w)) { out.set(v); break; }
    }
    return out;
}

VertexSet pre0_forall(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (g.owner(v) != Player::P0) continue;
        bool all = true;
        for (vertex_t w : g.succ(v))
            if (!h.test(w)) { all = false; break; }
        if (all) out.set(v);
    }
    return out;
}

VertexSet pre1_exists(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (g.owner(v) != Player::P1) continue;
        for (vertex_t w : g.succ(v))
            if (h.test(w)) { out.set(v); break; }
    }
    return out;
}

VertexSet cpre0(const GameGraph& g, const VertexSet& h) {
    VertexSet out = pre1_forall(g, h);
    VertexSet e = pre0_exists(g, h);
    for (vertex_t v : g.vertices())
        if (e.test(v)) out.set(v);
    return out;
}

VertexSet cpre1(const GameGraph& g, const VertexSet& h) {
    VertexSet out = pre0_forall(g, h);
    VertexSet e = pre1_exists(g, h);
    for (vertex_t v : g.vertices())
        if (e.test(v)) out.set(v);
    return out;
}

VertexSet lpre_exists(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (!g.is_fair_vertex(v)) continue;
        for (vertex_t w : g.fair_succ(v))
            if (h.test(w)) { out.set(v); break; }
    }
    return out;
}

VertexSet lpre_forall(const GameGraph& g, const VertexSet& h) {
    VertexSet out(g.capacity());
    for (vertex_t v : g.vertices()) {
        if (!g.is_fair_vertex(v)) continue;
        bool all = true;
        for (vertex_t w : g.fair_succ(v))
            if (!h.test(w)) { all = false; break; }
        if (all) out.set(v);
    }
    return out;
}

// ---- psi: mu Y. nu X. (!B | Cpre1(Y)) & Cpre1(X) & (Lpre_all(X) | Pre1_ex(Y) | !Vf) ----
//
// The inner greatest fixpoint is evaluated by deletion propagation: X starts
// at the round's Y-independent upper bound and vertices leave when their
// Cpre1 or fairness term fails; counts make each round linear in |E|.

PsiResult solve_psi(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Fair) throw error("solve_psi: flavor must be fair");
    const vertex_t cap = g.capacity();
    PsiResult res;
    res.rho_psi = pm_zero(g, pm_range(g, spec, RangeHint::General), PmFlavor::FairBuchiDirect);
    res.rho_psi.values.assign(cap, kPmTop);

    VertexSet y(cap);
    res.trace.y_sizes.push_back(0);

    std::vector<int> cnt(cap, 0);
    std::vector<int> fair_cnt(cap, 0);
    std::vector<char> in_x(cap, 0);

    uint32_t round = 0;
    while (true) {
        // Round-constant gates: G1 = !B | Cpre1(Y), G2 = Pre1_ex(Y) | !Vf.
        VertexSet c1y = cpre1(g, y);
        VertexSet p1y = pre1_exists(g, y);

        auto in_g1 = [&](vertex_t v) { return !spec.in_b(v) || c1y.test(v); };
        auto in_g2 = [&](vertex_t v) { return !g.is_fair_vertex(v) || p1y.test(v); };

        std::fill(in_x.begin(), in_x.end(), 0);
        for (vertex_t v : g.vertices())
            if (in_g1(v)) in_x[v] = 1;

        // Counters: P0 tracks successors outside X, P1 tracks successors
        // inside X, fair vertices track fair successors outside X.
        std::deque<vertex_t> dead;
        for (vertex_t v : g.vertices()) {
            if (!in_x[v]) { dead.push_back(v); continue; }
            if (g.owner(v) == Player::P0) {
                int out = 0;
                for (vertex_t w : g.succ(v))
                    if (!in_x[w]) ++out;
                cnt[v] = out;
            } else {
                int in = 0;
                for (vertex_t w : g.succ(v))
                    if (in_x[w]) ++in;
                cnt[v] = in;
            }
            if (g.is_fair_vertex(v)) {
                int fout = 0;
                for (vertex_t w : g.fair_succ(v))
                    if (!in_x[w]) ++fout;
                fair_cnt[v] = fout;
            }
        }
        auto violates = [&](vertex_t v) {
            if (g.owner(v) == Player::P0) {
                if (cnt[v] > 0) return true;
            } else {
                if (cnt[v] == 0) return true;
            }
            if (g.is_fair_vertex(v) && fair_cnt[v] > 0 && !in_g2(v)) return true;
            return false;
        };
        std::deque<vertex_t> work;
        for (vertex_t v : g.vertices())
            if (in_x[v] && violates(v)) work.push_back(v);

        auto remove_from_x = [&](vertex_t v) {
            in_x[v] = 0;
            for (vertex_t p : g.pred(v)) {
                if (!in_x[p]) continue;
                bool was_ok = !violates(p);
                if (g.owner(p) == Player::P0) ++cnt[p];
                else --cnt[p];
                if (g.is_fair_vertex(p) && g.has_fair_edge(p, v)) ++fair_cnt[p];
                if (was_ok && violates(p)) work.push_back(p);
            }
        };
        while (!work.empty()) {
            vertex_t v = work.front();
            work.pop_front();
            if (in_x[v]) remove_from_x(v);
        }

        // X stabilized; Y' = X.
        VertexSet ynext(cap);
        for (vertex_t v : g.vertices())
            if (in_x[v]) ynext.set(v);
        bool grew = false;
        for (vertex_t v : g.vertices()) {
            if (ynext.test(v) && !y.test(v)) {
                res.rho_psi.values[v] = round;
                grew = true;
            }
            assert(!(y.test(v) && !ynext.test(v)) && "psi Y-chain must be increasing");
        }
        y = ynext;
        res.trace.y_sizes.push_back(y.count());
        if (!grew) break;
        ++round;
    }
    res.win1 = y;
    return res;
}

// ---- psi-bar: nu Y. mu X. (B & Cpre0(Y)) | Cpre0(X) | (Lpre_ex(X) & Pre1_all(Y)) ----

namespace {

// One inner mu-iteration with Y fixed, by wave propagation; returns X and the
// per-vertex wave index at which it entered (kPmTop outside X).
VertexSet inner_attractor(const GameGraph& g, const Spec& spec, const VertexSet& y,
                          std::vector<uint32_t>* rank_out) {
    const vertex_t cap = g.capacity();
    VertexSet x(cap);
    std::vector<uint32_t> rank(cap, kPmTop);
    VertexSet p1all_y = pre1_forall(g, y);
    VertexSet c0y = cpre0(g, y);

    std::vector<int> remaining(cap, 0);
    for (vertex_t v : g.vertices())
        if (g.owner(v) == Player::P1) remaining[v] = (int)g.succ(v).size();

    std::vector<vertex_t> frontier;
    for (vertex_t v : g.vertices())
        if (spec.in_b(v) && c0y.test(v)) {
            x.set(v);
            rank[v] = 0;
            frontier.push_back(v);
        }

    uint32_t level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<vertex_t> next;
        auto enter = [&](vertex_t v) {
            if (x.test(v)) return;
            x.set(v);
            rank[v] = level;
            next.push_back(v);
        };
        for (vertex_t v : frontier) {
            for (vertex_t p : g.pred(v)) {
                if (!g.alive(p) || x.test(p)) continue;
                if (g.owner(p) == Player::P0) {
                    enter(p); // Cpre0 via some successor in X
                } else {
                    if (--remaining[p] == 0) enter(p);
                    else if (g.is_fair_vertex(p) && p1all_y.test(p) && g.has_fair_edge(p, v))
                        enter(p); // Lpre_ex(X) & Pre1_all(Y)
                }
            }
        }
        frontier = std::move(next);
    }
    if (rank_out) *rank_out = std::move(rank);
    return x;
}

} // namespace

PsiBarResult solve_psi_bar(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Fair) throw error("solve_psi_bar: flavor must be fair");
    PsiBarResult res;
    VertexSet y(g.capacity());
    for (vertex_t v : g.vertices()) y.set(v);
    res.trace.y_sizes.push_back(y.count());
    while (true) {
        VertexSet x = inner_attractor(g, spec, y, nullptr);
        if (x == y) break;
        y = x;
        res.trace.y_sizes.push_back(y.count());
    }
    res.win0 = y;
    return res;
}

ControllerResult synth_controller(const GameGraph& g, const Spec& spec, const VertexSet& win0) {
    for (vertex_t v : g.vertices())
        if (g.owner(v) == Player::P0 && g.is_fair_vertex(v))
            throw error("synth_controller: P0 owns fair vertices");
    ControllerResult res;
    VertexSet x = inner_attractor(g, spec, win0, &res.rank);
    assert(x == win0 && "win0 must be the psi-bar fixpoint");
    (void)x;
    res.strategy = extract_min_strategy(res.rank, g, Player::P0);
    return res;
}

} // namespace incsyn
