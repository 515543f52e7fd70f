#include "incsyn/pm.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <random>

namespace incsyn {

std::vector<vertex_t> ProgressMeasure::top_set(const GameGraph& g) const {
    std::vector<vertex_t> out;
    for (vertex_t v : g.vertices())
        if (values[v] == kPmTop) out.push_back(v);
    return out;
}

ProgressMeasure pm_zero(const GameGraph& g, uint32_t range, PmFlavor flavor) {
    ProgressMeasure rho;
    rho.values.assign(g.capacity(), 0);
    rho.range = range;
    rho.flavor = flavor;
    return rho;
}

uint32_t pm_range(const GameGraph& g, const Spec& spec, RangeHint hint) {
    uint32_t b = 0;
    for (vertex_t v : g.vertices())
        if (spec.in_b(v)) ++b;
    if (hint == RangeHint::General) {
        uint32_t vf = 0;
        for (vertex_t v : g.vertices())
            if (g.is_fair_vertex(v)) ++vf;
        return b + vf;
    }
    // AbstractDual: cells live on the side that owns no fair vertices.
    Player cell_side = g.flavor() == Flavor::Cofair ? Player::P1 : Player::P0;
    uint32_t s = 0;
    for (vertex_t v : g.vertices())
        if (g.owner(v) == cell_side) ++s;
    return s + b;
}

// Case split of the pr function. The fair rule applies to fair non-B
// vertices; everything else follows ownership, with the min/max roles fixed
// by the flavor.
uint32_t pm_pr(vertex_t v, const ProgressMeasure& rho, const GameGraph& g, const Spec& spec) {
    const auto& succ = g.succ(v);
    auto min_all = [&] {
        uint32_t m = kPmTop;
        for (vertex_t w : succ) m = std::min(m, rho.values[w]);
        return m;
    };
    auto max_all = [&] {
        uint32_t m = 0;
        for (vertex_t w : succ) m = std::max(m, rho.values[w]);
        return m;
    };

    bool fair_case = false;
    bool min_player = false;
    switch (rho.flavor) {
        case PmFlavor::CofairCoBuchi:
            fair_case = g.is_fair_vertex(v) && !spec.in_b(v);
            min_player = g.owner(v) == Player::P0;
            break;
        case PmFlavor::FairBuchiDirect:
            fair_case = g.is_fair_vertex(v) && !spec.in_b(v);
            min_player = g.owner(v) == Player::P1;
            break;
        case PmFlavor::PlainCoBuchi:
            min_player = g.owner(v) == Player::P0;
            break;
    }

    if (fair_case) {
        uint32_t fmax = 0;
        for (vertex_t w : g.fair_succ(v)) fmax = std::max(fmax, rho.values[w]);
        return std::min(fmax, pm_plus_one(min_all(), rho.range));
    }
    return min_player ? min_all() : max_all();
}

ProgressMeasure pm_lift(const ProgressMeasure& rho, vertex_t v, const GameGraph& g, const Spec& spec) {
    ProgressMeasure out = rho;
    uint32_t pr = pm_pr(v, rho, g, spec);
    out.values[v] = spec.in_b(v) ? pm_plus_one(pr, rho.range) : pr;
    return out;
}

namespace {

// Deduplicating worklist; pop order is switchable for the order-independence
// tests.
class Worklist {
public:
    Worklist(size_t n, WorklistOrder order, uint64_t seed)
        : queued_(n, false), order_(order), rng_(seed) {}

    void push(vertex_t v) {
        if (queued_[v]) return;
        queued_[v] = true;
        items_.push_back(v);
    }

    bool empty() const { return items_.empty(); }

    vertex_t pop() {
        size_t idx;
        switch (order_) {
            case WorklistOrder::Fifo: idx = 0; break;
            case WorklistOrder::Lifo: idx = items_.size() - 1; break;
            default: idx = std::uniform_int_distribution<size_t>(0, items_.size() - 1)(rng_);
        }
        vertex_t v = items_[idx];
        items_.erase(items_.begin() + idx);
        queued_[v] = false;
        return v;
    }

private:
    std::vector<bool> queued_;
    std::deque<vertex_t> items_;
    WorklistOrder order_;
    std::mt19937_64 rng_;
};

} // namespace

ProgressMeasure solve_by_lifting(const GameGraph& g, const Spec& spec, PmFlavor flavor,
                                 ProgressMeasure init, const std::vector<vertex_t>& seed,
                                 LiftStats* stats, WorklistOrder order, uint64_t shuffle_seed) {
    ProgressMeasure rho = std::move(init);
    rho.flavor = flavor;
    if ((vertex_t)rho.values.size() < g.capacity()) rho.values.resize(g.capacity(), 0);

    Worklist wl(g.capacity(), order, shuffle_seed);
    for (vertex_t v : seed)
        if (g.alive(v)) wl.push(v);

    while (!wl.empty()) {
        vertex_t v = wl.pop();
        if (!g.alive(v)) continue;
        if (stats) ++stats->examined;
        if (rho.values[v] == kPmTop) continue; // top is absorbing
        uint32_t pr = pm_pr(v, rho, g, spec);
        uint32_t target = spec.in_b(v) ? pm_plus_one(pr, rho.range) : pr;
        assert(target == kPmTop || target <= rho.range);
        if (target > rho.values[v]) {
            rho.values[v] = target;
            if (stats) ++stats->lifts;
            for (vertex_t p : g.pred(v))
                if (g.alive(p) && rho.values[p] != kPmTop) wl.push(p);
        }
    }
    return rho;
}

ProgressMeasure solve_from_scratch(const GameGraph& g, const Spec& spec, PmFlavor flavor,
                                   uint32_t range, LiftStats* stats) {
    ProgressMeasure rho = pm_zero(g, range, flavor);
    return solve_by_lifting(g, spec, flavor, std::move(rho), g.vertices(), stats);
}

bool pm_is_valid(const ProgressMeasure& rho, const GameGraph& g, const Spec& spec) {
    for (vertex_t v : g.vertices()) {
        uint32_t pr = pm_pr(v, rho, g, spec);
        uint32_t need = spec.in_b(v) ? pm_plus_one(pr, rho.range) : pr;
        if (rho.values[v] < need) return false;
    }
    return true;
}

GadgetGame gadgetize(const GameGraph& g, const Spec& spec) {
    if (g.flavor() != Flavor::Cofair) throw error("gadgetize: flavor must be cofair");
    GadgetGame out;
    out.graph = GameGraph(Flavor::Normal);
    out.original_count = g.capacity();
    std::vector<bool> member(g.capacity(), false);
    for (vertex_t v = 0; v < g.capacity(); ++v) {
        out.graph.add_vertex(g.alive(v) ? g.owner(v) : Player::P0);
        member[v] = spec.in_b(v);
    }
    for (vertex_t v = 0; v < g.capacity(); ++v)
        if (!g.alive(v)) out.graph.remove_vertex(v);

    for (vertex_t v : g.vertices()) {
        if (g.is_fair_vertex(v) && !spec.in_b(v)) {
            // Left gadget: v keeps its owner, the left child plays the fair
            // successors, the right child is a fresh coBuchi node playing all
            // successors.
            vertex_t vl = out.graph.add_vertex(Player::P1);
            vertex_t vr = out.graph.add_vertex(Player::P0);
            member.resize(out.graph.capacity(), false);
            member[vr] = true;
            out.graph.add_edge(v, vl);
            out.graph.add_edge(v, vr);
            for (vertex_t w : g.fair_succ(v)) out.graph.add_edge(vl, w);
            for (vertex_t w : g.succ(v)) out.graph.add_edge(vr, w);
        } else {
            for (vertex_t w : g.succ(v)) out.graph.add_edge(v, w);
        }
    }
    out.spec.kind = SpecKind::CoBuchi;
    out.spec.member = std::move(member);
    out.spec.member.resize(out.graph.capacity(), false);
    return out;
}

PositionalStrategy extract_min_strategy(const std::vector<uint32_t>& values, const GameGraph& g,
                                        Player player) {
    for (vertex_t v : g.vertices())
        if (g.owner(v) == player && g.is_fair_vertex(v))
            throw error("extract_min_strategy: extracting player owns fair vertices");
    PositionalStrategy st;
    st.choice.assign(g.capacity(), kNoVertex);
    for (vertex_t v : g.vertices()) {
        if (g.owner(v) != player || values[v] == kPmTop) continue;
        vertex_t best = kNoVertex;
        uint32_t best_val = kPmTop;
        for (vertex_t w : g.succ(v)) {
            if (best == kNoVertex || values[w] < best_val ||
                (values[w] == best_val && w < best)) {
                best = w;
                best_val = values[w];
            }
        }
        st.choice[v] = best;
    }
    return st;
}

} // namespace incsyn
