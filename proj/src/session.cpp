#include "incsyn/session.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>

namespace incsyn {

void SynthesisSession::adopt_measure(ProgressMeasure rho) {
    rho_ = std::move(rho);
    rho_.flavor = PmFlavor::FairBuchiDirect;
    uint32_t enhanced = pm_range(game_.graph, game_.spec, RangeHint::AbstractDual);
    for (uint32_t v : rho_.values)
        if (v != kPmTop && v > enhanced)
            throw error("adopt_measure: rank exceeds the enhanced range");
    rho_.range = enhanced;
}

void SynthesisSession::recompute_regions() {
    win0_.clear();
    for (cell_t s = 0; s < tab_.cell_count(); ++s)
        if (rho_.values[s] == kPmTop) win0_.push_back(s);
}

bool SynthesisSession::cell_winning(cell_t s) const {
    return std::binary_search(win0_.begin(), win0_.end(), s);
}

void SynthesisSession::refresh_policy() {
    bool wanted = false;
    for (cell_t s : cfg_.initial)
        if (cell_winning(s)) { wanted = true; break; }
    if (!wanted) return;

    VertexSet win0(game_.graph.capacity());
    for (vertex_t v : game_.graph.vertices())
        if (rho_.values[v] == kPmTop) win0.set(v);
    ControllerResult ctrl = synth_controller(game_.graph, game_.spec, win0);

    Policy pol;
    pol.input_of.assign(tab_.cell_count(), -1);
    for (cell_t s = 0; s < tab_.cell_count(); ++s) {
        if (!cell_winning(s)) continue;
        vertex_t action = ctrl.strategy.choice[s];
        if (action == kNoVertex) continue;
        for (input_t u = 0; u < tab_.input_count(); ++u)
            if (game_.gadget(s, u).action == action) { pol.input_of[s] = u; break; }
    }
    policy_ = std::move(pol);
}

SynthesisSession SynthesisSession::initialise(Dataset dataset, SessionConfig cfg) {
    SynthesisSession s;
    s.cfg_ = std::move(cfg);
    s.dataset_ = std::move(dataset);
    s.tab_ = learn_table(s.dataset_, s.cfg_.learner, s.cfg_.grid, s.cfg_.losing);
    s.game_ = build_abstract_game(s.tab_, s.cfg_.buchi);
    PsiResult psi = solve_psi(s.game_.graph, s.game_.spec);
    s.adopt_measure(std::move(psi.rho_psi));
    s.recompute_regions();
    s.refresh_policy();
    return s;
}

SynthesisSession SynthesisSession::resume(Dataset dataset, SessionConfig cfg, ApproxTable tab,
                                          ProgressMeasure rho) {
    SynthesisSession s;
    s.cfg_ = std::move(cfg);
    s.dataset_ = std::move(dataset);
    s.tab_ = std::move(tab);
    s.game_ = build_abstract_game(s.tab_, s.cfg_.buchi);
    s.adopt_measure(std::move(rho));
    s.recompute_regions();
    s.refresh_policy();
    return s;
}

StepReport SynthesisSession::step(const std::vector<Sample>& new_samples) {
    auto t0 = std::chrono::steady_clock::now();
    StepReport report;
    report.win0_before = win0_.size();

    // Absorb the batch into the running bounds; only entries whose bound
    // scalars actually moved can change their sets.
    std::vector<char> input_touched(tab_.input_count(), 0);
    std::vector<char> had_data(tab_.input_count(), 0);
    for (input_t u = 0; u < tab_.input_count(); ++u)
        had_data[u] = !dataset_.for_input(u).empty();
    for (const Sample& smp : new_samples) {
        input_touched[smp.u] = 1;
        dataset_.append(smp);
    }

    std::vector<std::pair<cell_t, input_t>> dirty;
    const bool streaming = cfg_.learner.refine_subdiv < 2;
    for (cell_t c = 0; c < tab_.cell_count(); ++c) {
        Box cell = cfg_.grid.cell_box(c);
        for (input_t u = 0; u < tab_.input_count(); ++u) {
            if (!input_touched[u]) continue;
            ApproxEntry& e = tab_.entry(c, u);
            if (e.overridden) continue;
            bool changed = !had_data[u];
            for (const Sample& smp : new_samples) {
                if (smp.u != u) continue;
                bool had = e.cache.has_data;
                Vec lb, ub;
                if (had) { lb = e.cache.check_lb; ub = e.cache.hat_ub; }
                e.cache.absorb(smp, cfg_.learner, cell);
                if (!had || (lb.array() != e.cache.check_lb.array()).any() ||
                    (ub.array() != e.cache.hat_ub.array()).any())
                    changed = true;
            }
            e.has_data = e.has_data || e.cache.has_data;
            if (changed || !streaming) dirty.emplace_back(c, u);
        }
    }

    // Diff each dirty entry against its fresh sets, patching table and game in
    // lockstep so every delta is atomic.
    std::vector<vertex_t> seed, reset;
    for (auto [c, u] : dirty) {
        ApproxEntry& e = tab_.entry(c, u);
        AbstractReachSets sets;
        if (streaming) {
            sets = entry_sets_from_cache(e, cfg_.learner, cfg_.grid);
        } else {
            ReachBoxes rb =
                cell_reach_boxes(u, dataset_, cfg_.learner, cfg_.grid.cell_box(c), cfg_.grid.domain());
            try {
                sets = abstract_reach_sets(rb.under, rb.over, cfg_.grid);
            } catch (const out_of_domain&) {
                sets.f_over = {cfg_.grid.sink()};
            }
        }
        std::vector<cell_t> over_sorted = sets.f_over;
        std::sort(over_sorted.begin(), over_sorted.end());
        std::vector<GraphDelta> deltas = diff_entry(e, sets.f_under, over_sorted, c, u);
        for (const GraphDelta& d : deltas) {
            commit_delta_to_entry(e, d);
            TouchedInfo info = apply_delta(game_, d);
            seed.insert(seed.end(), info.seed.begin(), info.seed.end());
            reset.insert(reset.end(), info.reset.begin(), info.reset.end());
            ++report.deltas_applied;
        }
    }

    if (report.deltas_applied > 0) {
        // Gadgets with widened fair-successor sets restart from zero: their
        // internal ranks are the one place where the least fixpoint may
        // decrease under an under-approximation expansion.
        ProgressMeasure init = rho_;
        for (vertex_t v : reset)
            if (game_.graph.alive(v)) init.values[v] = 0;
        LiftStats stats;
        rho_ = solve_by_lifting(game_.graph, game_.spec, PmFlavor::FairBuchiDirect, std::move(init),
                                seed, &stats);
        report.lifts_performed = stats.lifts;
        recompute_regions();
    }

    report.win0_after = win0_.size();
    assert(report.win0_after >= report.win0_before && "cell-level winning region must not shrink");
    refresh_policy();
    report.policy_emitted = policy_.has_value();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

input_t SynthesisSession::controller_lookup(const Vec& x) const {
    cell_t s = cfg_.grid.translate(x);
    if (s >= tab_.cell_count() || !cell_winning(s))
        throw not_winning("state maps to a non-winning cell");
    if (!policy_ || !policy_->defined(s))
        throw not_winning("no policy emitted for this cell");
    return policy_->input_of[s];
}

std::vector<cell_t> batch_win0_cells(const Dataset& d, const SessionConfig& cfg) {
    ApproxTable tab = learn_table(d, cfg.learner, cfg.grid, cfg.losing);
    AbstractGame ag = build_abstract_game(tab, cfg.buchi);
    PsiResult psi = solve_psi(ag.graph, ag.spec);
    std::vector<cell_t> out;
    for (cell_t s = 0; s < tab.cell_count(); ++s)
        if (psi.rho_psi.values[s] == kPmTop) out.push_back(s);
    return out;
}

} // namespace incsyn
