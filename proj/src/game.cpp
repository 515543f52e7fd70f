#include "incsyn/game.hpp"

#include <algorithm>
#include <unordered_set>

namespace incsyn {

std::vector<vertex_t> Spec::b_list() const {
    std::vector<vertex_t> out;
    for (vertex_t v = 0; v < (vertex_t)member.size(); ++v)
        if (member[v]) out.push_back(v);
    return out;
}

vertex_t GameGraph::add_vertex(Player owner) {
    vertex_t id = (vertex_t)owner_.size();
    owner_.push_back(owner);
    alive_.push_back(true);
    succ_.emplace_back();
    fair_.emplace_back();
    pred_.emplace_back();
    ++alive_count_;
    return id;
}

static bool contains(const std::vector<vertex_t>& xs, vertex_t v) {
    return std::find(xs.begin(), xs.end(), v) != xs.end();
}

static void erase_value(std::vector<vertex_t>& xs, vertex_t v) {
    xs.erase(std::remove(xs.begin(), xs.end(), v), xs.end());
}

void GameGraph::add_edge(vertex_t from, vertex_t to, bool fair) {
    if (!alive(from) || !alive(to)) throw error("add_edge: dead endpoint");
    if (!contains(succ_[from], to)) {
        succ_[from].push_back(to);
        pred_[to].push_back(from);
    }
    if (fair && !contains(fair_[from], to)) fair_[from].push_back(to);
}

bool GameGraph::has_edge(vertex_t from, vertex_t to) const {
    return contains(succ_[from], to);
}

bool GameGraph::has_fair_edge(vertex_t from, vertex_t to) const {
    return contains(fair_[from], to);
}

void GameGraph::remove_edge(vertex_t from, vertex_t to) {
    erase_value(succ_[from], to);
    erase_value(fair_[from], to);
    erase_value(pred_[to], from);
}

void GameGraph::remove_vertex(vertex_t v) {
    if (!alive(v)) return;
    for (vertex_t w : succ_[v]) erase_value(pred_[w], v);
    for (vertex_t w : pred_[v]) {
        erase_value(succ_[w], v);
        erase_value(fair_[w], v);
    }
    succ_[v].clear();
    fair_[v].clear();
    pred_[v].clear();
    alive_[v] = false;
    --alive_count_;
}

size_t GameGraph::edge_count() const {
    size_t n = 0;
    for (vertex_t v = 0; v < capacity(); ++v)
        if (alive_[v]) n += succ_[v].size();
    return n;
}

std::vector<vertex_t> GameGraph::vertices() const {
    std::vector<vertex_t> out;
    out.reserve(alive_count_);
    for (vertex_t v = 0; v < capacity(); ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

void GameGraph::validate() const {
    for (vertex_t v = 0; v < capacity(); ++v) {
        if (!alive_[v]) continue;
        if (succ_[v].empty()) throw error("validate: vertex " + std::to_string(v) + " has no successor");
        if (!fair_[v].empty()) {
            if (flavor_ == Flavor::Normal)
                throw error("validate: fair edge in normal graph");
            Player need = flavor_ == Flavor::Fair ? Player::P1 : Player::P0;
            if (owner_[v] != need)
                throw error("validate: fair vertex " + std::to_string(v) + " owned by the wrong player");
            for (vertex_t w : fair_[v])
                if (!contains(succ_[v], w))
                    throw error("validate: fair edge not in E");
        }
        for (vertex_t w : succ_[v])
            if (!alive(w)) throw error("validate: edge to retired vertex");
    }
}

std::pair<GameGraph, Spec> dualize(const GameGraph& g, const Spec& spec) {
    if (g.flavor() == Flavor::Normal) {
        // Normal graphs dualize too (plain owner swap), used by the oracle.
    } else if (g.flavor() == Flavor::Fair && spec.kind != SpecKind::Buchi) {
        throw error("dualize: fair graph expects a Buchi spec");
    } else if (g.flavor() == Flavor::Cofair && spec.kind != SpecKind::CoBuchi) {
        throw error("dualize: cofair graph expects a coBuchi spec");
    }
    Flavor df = g.flavor();
    if (df == Flavor::Fair) df = Flavor::Cofair;
    else if (df == Flavor::Cofair) df = Flavor::Fair;
    // Rebuild with swapped owners; edges and ids are unchanged.
    GameGraph out(df);
    for (vertex_t v = 0; v < g.capacity(); ++v) {
        Player o = g.alive(v) ? g.owner(v) : Player::P0;
        out.add_vertex(o == Player::P0 ? Player::P1 : Player::P0);
    }
    for (vertex_t v = 0; v < g.capacity(); ++v)
        if (!g.alive(v)) out.remove_vertex(v);
    for (vertex_t v = 0; v < g.capacity(); ++v) {
        if (!g.alive(v)) continue;
        for (vertex_t w : g.succ(v)) out.add_edge(v, w, false);
        for (vertex_t w : g.fair_succ(v)) out.add_edge(v, w, true);
    }
    Spec sd = spec;
    sd.kind = spec.kind == SpecKind::Buchi ? SpecKind::CoBuchi : SpecKind::Buchi;
    return {std::move(out), std::move(sd)};
}

RestrictResult restrict(const GameGraph& g, const std::vector<vertex_t>& keep) {
    RestrictResult r;
    r.graph = GameGraph(g.flavor());
    r.from_original.assign(g.capacity(), kNoVertex);
    for (vertex_t v : keep) {
        if (!g.alive(v)) continue;
        if (r.from_original[v] != kNoVertex) continue;
        vertex_t nv = r.graph.add_vertex(g.owner(v));
        r.from_original[v] = nv;
        r.to_original.push_back(v);
    }
    for (vertex_t v : r.to_original) {
        vertex_t nv = r.from_original[v];
        for (vertex_t w : g.succ(v)) {
            vertex_t nw = r.from_original[w];
            if (nw != kNoVertex) r.graph.add_edge(nv, nw, g.has_fair_edge(v, w));
        }
        if (r.graph.succ(nv).empty()) r.edgeless.push_back(nv);
    }
    return r;
}

bool is_fair_play_witness(const GameGraph& g, const Lasso& lasso) {
    if (lasso.cycle.empty()) throw broken_lasso("empty cycle");
    auto check_step = [&](vertex_t a, vertex_t b) {
        if (!g.alive(a) || !g.alive(b) || !g.has_edge(a, b))
            throw broken_lasso("missing edge " + std::to_string(a) + "->" + std::to_string(b));
    };
    for (size_t i = 0; i + 1 < lasso.stem.size(); ++i) check_step(lasso.stem[i], lasso.stem[i + 1]);
    if (!lasso.stem.empty()) check_step(lasso.stem.back(), lasso.cycle.front());
    for (size_t i = 0; i + 1 < lasso.cycle.size(); ++i) check_step(lasso.cycle[i], lasso.cycle[i + 1]);
    check_step(lasso.cycle.back(), lasso.cycle.front());

    std::unordered_set<vertex_t> on_cycle(lasso.cycle.begin(), lasso.cycle.end());
    for (vertex_t v : lasso.cycle) {
        if (!g.is_fair_vertex(v)) continue;
        for (vertex_t w : g.fair_succ(v))
            if (!on_cycle.count(w)) return false;
    }
    return true;
}

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::Normal: return "normal";
        case Flavor::Fair: return "fair";
        case Flavor::Cofair: return "cofair";
    }
    return "?";
}

std::string to_string(SpecKind k) {
    return k == SpecKind::Buchi ? "buchi" : "cobuchi";
}

} // namespace incsyn
