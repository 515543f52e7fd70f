#include "incsyn/abstract_game.hpp"

#include <algorithm>
#include <numeric>

namespace incsyn {

bool ApproxEntry::in_under(cell_t c) const {
    return std::binary_search(under.begin(), under.end(), c);
}

bool ApproxEntry::in_over(cell_t c) const {
    return in_under(c) || std::find(branches.begin(), branches.end(), c) != branches.end();
}

std::vector<cell_t> ApproxEntry::over_sorted() const {
    std::vector<cell_t> over = under;
    over.insert(over.end(), branches.begin(), branches.end());
    std::sort(over.begin(), over.end());
    return over;
}

ApproxTable::ApproxTable(cell_t cell_count, int input_count)
    : cell_count_(cell_count), input_count_(input_count),
      entries_((size_t)cell_count * input_count) {}

void ApproxTable::set_entry(cell_t s, input_t u, std::vector<cell_t> f_under, std::vector<cell_t> f_over) {
    ApproxEntry& e = entry(s, u);
    std::sort(f_under.begin(), f_under.end());
    e.under = std::move(f_under);
    e.branches.clear();
    for (cell_t c : f_over)
        if (!e.in_under(c)) e.branches.push_back(c);
    if (e.under.empty() && e.branches.empty())
        throw error("set_entry: empty F_over");
    e.has_data = true;
}

void ApproxTable::set_unknown(cell_t s, input_t u) {
    ApproxEntry& e = entry(s, u);
    e.under.clear();
    e.branches.resize(cell_count_ + 1);
    std::iota(e.branches.begin(), e.branches.end(), 0); // every cell plus the sink
    e.has_data = false;
}

void ApproxTable::pin_losing(cell_t s) {
    for (input_t u = 0; u < input_count_; ++u) {
        ApproxEntry& e = entry(s, u);
        e.under = {sink()};
        e.branches.clear();
        e.has_data = true;
        e.overridden = true;
    }
}

AbstractReachSets entry_sets_from_cache(const ApproxEntry& e, const LearnerConfig& cfg,
                                        const GridPartition& grid) {
    AbstractReachSets sets;
    if (!e.has_data) {
        sets.f_over.resize(grid.cell_count() + 1);
        std::iota(sets.f_over.begin(), sets.f_over.end(), 0);
        return sets;
    }
    ReachBoxes rb = e.cache.boxes(cfg, grid.domain());
    try {
        sets = abstract_reach_sets(rb.under, rb.over, grid);
    } catch (const out_of_domain&) {
        sets.f_under.clear();
        sets.f_over = {grid.sink()};
    }
    return sets;
}

ApproxTable learn_table(const Dataset& d, const LearnerConfig& cfg, const GridPartition& grid,
                        const std::vector<cell_t>& losing) {
    ApproxTable tab(grid.cell_count(), d.input_count());
    std::vector<bool> is_losing(grid.cell_count(), false);
    for (cell_t s : losing) is_losing[s] = true;

    for (cell_t s = 0; s < grid.cell_count(); ++s) {
        if (is_losing[s]) { tab.pin_losing(s); continue; }
        Box cell = grid.cell_box(s);
        for (input_t u = 0; u < d.input_count(); ++u) {
            ApproxEntry& e = tab.entry(s, u);
            if (u < d.input_count() && !d.for_input(u).empty()) {
                if (cfg.refine_subdiv >= 2) {
                    ReachBoxes rb = cell_reach_boxes(u, d, cfg, cell, grid.domain());
                    e.has_data = true;
                    for (size_t idx : d.for_input(u)) e.cache.absorb(d[idx], cfg, cell);
                    AbstractReachSets sets;
                    try {
                        sets = abstract_reach_sets(rb.under, rb.over, grid);
                    } catch (const out_of_domain&) {
                        sets.f_over = {grid.sink()};
                    }
                    tab.set_entry(s, u, std::move(sets.f_under), std::move(sets.f_over));
                    continue;
                }
                for (size_t idx : d.for_input(u)) e.cache.absorb(d[idx], cfg, cell);
                e.has_data = true;
                AbstractReachSets sets = entry_sets_from_cache(e, cfg, grid);
                tab.set_entry(s, u, std::move(sets.f_under), std::move(sets.f_over));
            } else {
                tab.set_unknown(s, u);
            }
        }
    }
    return tab;
}

std::vector<GraphDelta> diff_entry(const ApproxEntry& e, const std::vector<cell_t>& new_under_sorted,
                                   const std::vector<cell_t>& new_over_sorted, cell_t s, input_t u) {
    auto where = [&] { return " at (" + std::to_string(s) + "," + std::to_string(u) + ")"; };
    for (cell_t c : e.under)
        if (!std::binary_search(new_under_sorted.begin(), new_under_sorted.end(), c))
            throw monotonicity_violation("F_under shrank" + where());
    std::vector<cell_t> old_over = e.over_sorted();
    for (cell_t c : new_over_sorted)
        if (!std::binary_search(old_over.begin(), old_over.end(), c))
            throw monotonicity_violation("F_over grew" + where());

    // Additions to F_under come from the old branch order; removals from
    // F_over delete branch entries. Indices are computed against the working
    // list so each delta is valid when applied in turn.
    std::vector<GraphDelta> deltas;
    std::vector<cell_t> work = e.branches;
    for (cell_t c : new_under_sorted) {
        if (e.in_under(c)) continue;
        auto it = std::find(work.begin(), work.end(), c);
        if (it == work.end())
            throw monotonicity_violation("F_under gained a cell outside old F_over" + where());
        work.erase(it);
        deltas.push_back(GraphDelta{GraphDelta::Kind::AddFairEdges, s, u, -1, c});
    }
    for (cell_t c : old_over) {
        if (std::binary_search(new_over_sorted.begin(), new_over_sorted.end(), c)) continue;
        auto it = std::find(work.begin(), work.end(), c);
        if (it == work.end())
            throw monotonicity_violation("removed cell is not a branch target" + where());
        int j = (int)(it - work.begin());
        work.erase(it);
        deltas.push_back(GraphDelta{GraphDelta::Kind::RemoveBranch, s, u, j, c});
    }
    return deltas;
}

void commit_delta_to_entry(ApproxEntry& e, const GraphDelta& d) {
    auto it = std::find(e.branches.begin(), e.branches.end(), d.target);
    if (it == e.branches.end()) throw error("commit_delta_to_entry: target is not a branch");
    e.branches.erase(it);
    if (d.kind == GraphDelta::Kind::AddFairEdges)
        e.under.insert(std::upper_bound(e.under.begin(), e.under.end(), d.target), d.target);
}

std::vector<GraphDelta> diff_approx(const ApproxTable& oldt, const ApproxTable& newt) {
    if (oldt.cell_count() != newt.cell_count() || oldt.input_count() != newt.input_count())
        throw monotonicity_violation("diff_approx: table shapes differ");
    std::vector<GraphDelta> deltas;
    for (cell_t s = 0; s < oldt.cell_count(); ++s) {
        for (input_t u = 0; u < oldt.input_count(); ++u) {
            const ApproxEntry& ne = newt.entry(s, u);
            std::vector<cell_t> new_over = ne.over_sorted();
            std::vector<GraphDelta> d =
                diff_entry(oldt.entry(s, u), ne.under, new_over, s, u);
            deltas.insert(deltas.end(), d.begin(), d.end());
        }
    }
    return deltas;
}

AbstractGame build_abstract_game(const ApproxTable& tab, const std::vector<cell_t>& buchi_cells) {
    AbstractGame ag;
    ag.cell_count = tab.cell_count();
    ag.input_count = tab.input_count();
    GameGraph& g = ag.graph;

    for (cell_t s = 0; s < tab.cell_count(); ++s) g.add_vertex(Player::P0);
    vertex_t sink = g.add_vertex(Player::P0);
    g.add_edge(sink, sink);

    ag.gadgets.resize((size_t)tab.cell_count() * tab.input_count());
    for (cell_t s = 0; s < tab.cell_count(); ++s) {
        for (input_t u = 0; u < tab.input_count(); ++u) {
            const ApproxEntry& e = tab.entry(s, u);
            GadgetInfo& gad = ag.gadget(s, u);
            gad.action = g.add_vertex(Player::P1);
            g.add_edge(s, gad.action);
            gad.under_count = (int)e.under.size();

            gad.branch0 = g.add_vertex(Player::P1);
            g.add_edge(gad.action, gad.branch0);
            if (e.under.empty()) {
                g.add_edge(gad.branch0, sink, true);
                gad.placeholder = true;
            } else {
                for (cell_t t : e.under) g.add_edge(gad.branch0, t, true);
            }
            for (cell_t x : e.branches) {
                vertex_t b = g.add_vertex(Player::P1);
                g.add_edge(gad.action, b);
                for (cell_t t : e.under) g.add_edge(b, t, true);
                g.add_edge(b, x, true);
                gad.extra_branches.emplace_back(x, b);
            }
        }
    }
    ag.spec.kind = SpecKind::Buchi;
    ag.spec.member.assign(g.capacity(), false);
    for (cell_t b : buchi_cells) ag.spec.member[b] = true;
    return ag;
}

TouchedInfo apply_delta(AbstractGame& ag, const GraphDelta& d) {
    TouchedInfo info;
    GameGraph& g = ag.graph;
    GadgetInfo& gad = ag.gadget(d.s, d.u);

    if (d.kind == GraphDelta::Kind::AddFairEdges) {
        bool changed_any = false;
        if (gad.placeholder) {
            g.remove_edge(gad.branch0, ag.sink());
            gad.placeholder = false;
            changed_any = true;
        }
        auto extend = [&](vertex_t b) {
            if (!g.has_fair_edge(b, d.target)) {
                g.add_edge(b, d.target, true);
                changed_any = true;
            }
        };
        extend(gad.branch0);
        for (auto& [x, b] : gad.extra_branches) extend(b);
        gad.under_count += 1;
        if (!changed_any) return info; // idempotent application, nothing touched

        info.reset.push_back(gad.branch0);
        for (auto& [x, b] : gad.extra_branches) info.reset.push_back(b);
        info.reset.push_back(gad.action);
        info.seed = info.reset;
        info.seed.push_back(d.s);
        return info;
    }

    // RemoveBranch: drop the branch whose extra successor is the target.
    auto it = std::find_if(gad.extra_branches.begin(), gad.extra_branches.end(),
                           [&](const auto& p) { return p.first == d.target; });
    if (it == gad.extra_branches.end())
        throw error("apply_delta: no branch with target " + std::to_string(d.target));
    vertex_t victim = it->second;
    if (g.succ(gad.action).size() <= 1)
        throw dangling_branch("apply_delta: removal would leave the action vertex without successors");
    g.remove_vertex(victim);
    gad.extra_branches.erase(it);
    info.removed.push_back(victim);
    info.seed.push_back(gad.action);
    info.seed.push_back(d.s);
    return info;
}

} // namespace incsyn
