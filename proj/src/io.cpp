#include "incsyn/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace incsyn {

namespace {

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vec vec_from_json(const json& a) {
    Vec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
    return v;
}

} // namespace

json game_to_json(const GameGraph& g, const Spec& spec) {
    json j;
    j["flavor"] = to_string(g.flavor());
    j["spec"] = to_string(spec.kind);
    json verts = json::array();
    for (vertex_t v : g.vertices()) {
        json e;
        e["id"] = v;
        e["owner"] = g.owner(v) == Player::P0 ? 0 : 1;
        json plain = json::array(), fair = json::array();
        for (vertex_t w : g.succ(v))
            if (!g.has_fair_edge(v, w)) plain.push_back(w);
        for (vertex_t w : g.fair_succ(v)) fair.push_back(w);
        e["plain"] = std::move(plain);
        e["fair"] = std::move(fair);
        e["buchi"] = spec.in_b(v);
        verts.push_back(std::move(e));
    }
    j["vertices"] = std::move(verts);
    return j;
}

std::pair<GameGraph, Spec> game_from_json(const json& j) {
    std::string fl = j.at("flavor").get<std::string>();
    Flavor flavor = fl == "fair" ? Flavor::Fair : fl == "cofair" ? Flavor::Cofair : Flavor::Normal;
    GameGraph g(flavor);
    vertex_t max_id = -1;
    for (const auto& e : j.at("vertices")) max_id = std::max(max_id, e.at("id").get<vertex_t>());
    std::vector<bool> present(max_id + 1, false);
    std::vector<int> owner(max_id + 1, 0);
    for (const auto& e : j.at("vertices")) {
        vertex_t id = e.at("id").get<vertex_t>();
        present[id] = true;
        owner[id] = e.at("owner").get<int>();
    }
    for (vertex_t v = 0; v <= max_id; ++v)
        g.add_vertex(owner[v] == 0 ? Player::P0 : Player::P1);
    for (vertex_t v = 0; v <= max_id; ++v)
        if (!present[v]) g.remove_vertex(v);

    Spec spec;
    spec.kind = j.at("spec").get<std::string>() == "buchi" ? SpecKind::Buchi : SpecKind::CoBuchi;
    spec.member.assign(max_id + 1, false);
    for (const auto& e : j.at("vertices")) {
        vertex_t id = e.at("id").get<vertex_t>();
        for (const auto& w : e.at("plain")) g.add_edge(id, w.get<vertex_t>(), false);
        for (const auto& w : e.at("fair")) g.add_edge(id, w.get<vertex_t>(), true);
        if (e.at("buchi").get<bool>()) spec.member[id] = true;
    }
    return {std::move(g), std::move(spec)};
}

json pm_to_json(const ProgressMeasure& rho, const GameGraph& g) {
    json j;
    j["range"] = rho.range;
    switch (rho.flavor) {
        case PmFlavor::CofairCoBuchi: j["flavor"] = "cofair_cobuchi"; break;
        case PmFlavor::PlainCoBuchi: j["flavor"] = "plain_cobuchi"; break;
        case PmFlavor::FairBuchiDirect: j["flavor"] = "fair_buchi_direct"; break;
    }
    json vals = json::object();
    for (vertex_t v : g.vertices()) {
        if (rho.values[v] == kPmTop) vals[std::to_string(v)] = "top";
        else vals[std::to_string(v)] = rho.values[v];
    }
    j["values"] = std::move(vals);
    return j;
}

ProgressMeasure pm_from_json(const json& j, const GameGraph& g) {
    ProgressMeasure rho;
    rho.range = j.at("range").get<uint32_t>();
    std::string fl = j.at("flavor").get<std::string>();
    rho.flavor = fl == "plain_cobuchi" ? PmFlavor::PlainCoBuchi
                 : fl == "fair_buchi_direct" ? PmFlavor::FairBuchiDirect
                                             : PmFlavor::CofairCoBuchi;
    rho.values.assign(g.capacity(), 0);
    for (auto& [k, val] : j.at("values").items()) {
        vertex_t v = (vertex_t)std::stol(k);
        rho.values[v] = val.is_string() ? kPmTop : val.get<uint32_t>();
    }
    return rho;
}

json table_to_json(const ApproxTable& tab) {
    json j;
    j["cells"] = tab.cell_count();
    j["inputs"] = tab.input_count();
    json entries = json::array();
    for (cell_t s = 0; s < tab.cell_count(); ++s) {
        for (input_t u = 0; u < tab.input_count(); ++u) {
            const ApproxEntry& e = tab.entry(s, u);
            json je;
            je["s"] = s;
            je["u"] = u;
            je["under"] = e.under;
            je["branches"] = e.branches;
            je["has_data"] = e.has_data;
            je["overridden"] = e.overridden;
            if (e.cache.has_data) {
                je["check_lb"] = vec_to_json(e.cache.check_lb);
                je["hat_ub"] = vec_to_json(e.cache.hat_ub);
            }
            entries.push_back(std::move(je));
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

ApproxTable table_from_json(const json& j) {
    ApproxTable tab(j.at("cells").get<cell_t>(), j.at("inputs").get<int>());
    for (const auto& je : j.at("entries")) {
        ApproxEntry& e = tab.entry(je.at("s").get<cell_t>(), je.at("u").get<input_t>());
        e.under = je.at("under").get<std::vector<cell_t>>();
        e.branches = je.at("branches").get<std::vector<cell_t>>();
        e.has_data = je.at("has_data").get<bool>();
        e.overridden = je.at("overridden").get<bool>();
        if (je.contains("check_lb")) {
            e.cache.check_lb = vec_from_json(je.at("check_lb"));
            e.cache.hat_ub = vec_from_json(je.at("hat_ub"));
            e.cache.has_data = true;
        }
    }
    return tab;
}

json scenario_to_json(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["domain_lo"] = vec_to_json(sc.domain.lo);
    j["domain_hi"] = vec_to_json(sc.domain.hi);
    j["cells_per_dim"] = sc.cells_per_dim;
    j["obstacles"] = sc.obstacles;
    j["goals"] = sc.goals;
    j["starts"] = sc.starts;
    j["base_budget"] = sc.base_budget;
    j["lipschitz"] = sc.lipschitz;
    j["seed"] = sc.seed;
    json rooms = json::array();
    for (const SampleRegion& r : sc.low_data_regions) {
        json jr;
        jr["lo"] = vec_to_json(r.box.lo);
        jr["hi"] = vec_to_json(r.box.hi);
        jr["budget"] = r.budget;
        rooms.push_back(std::move(jr));
    }
    j["low_data_regions"] = std::move(rooms);
    json m;
    m["delta"] = sc.model.delta;
    m["velocities"] = sc.model.velocities;
    m["angles"] = sc.model.angles;
    m["noise_l"] = vec_to_json(sc.model.noise.l);
    m["noise_h"] = vec_to_json(sc.model.noise.h);
    j["model"] = std::move(m);
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario sc;
    sc.name = j.value("name", "scenario");
    sc.domain.lo = vec_from_json(j.at("domain_lo"));
    sc.domain.hi = vec_from_json(j.at("domain_hi"));
    sc.cells_per_dim = j.at("cells_per_dim").get<std::vector<int>>();
    sc.obstacles = j.at("obstacles").get<std::vector<cell_t>>();
    sc.goals = j.at("goals").get<std::vector<cell_t>>();
    sc.starts = j.at("starts").get<std::vector<cell_t>>();
    sc.base_budget = j.at("base_budget").get<int>();
    sc.lipschitz = j.at("lipschitz").get<double>();
    sc.seed = j.at("seed").get<uint64_t>();
    for (const auto& jr : j.at("low_data_regions")) {
        SampleRegion r;
        r.box.lo = vec_from_json(jr.at("lo"));
        r.box.hi = vec_from_json(jr.at("hi"));
        r.budget = jr.at("budget").get<int>();
        sc.low_data_regions.push_back(std::move(r));
    }
    const json& m = j.at("model");
    sc.model.delta = m.at("delta").get<double>();
    sc.model.velocities = m.at("velocities").get<std::vector<double>>();
    sc.model.angles = m.at("angles").get<std::vector<double>>();
    sc.model.noise.l = vec_from_json(m.at("noise_l"));
    sc.model.noise.h = vec_from_json(m.at("noise_h"));
    sc.validate();
    return sc;
}

json trace_to_json(const FixpointTrace& tr) {
    json j;
    j["y_sizes"] = tr.y_sizes;
    return j;
}

json region_to_json(const std::vector<cell_t>& win0_cells) {
    return json(win0_cells);
}

std::vector<cell_t> region_from_json(const json& j) {
    return j.get<std::vector<cell_t>>();
}

json policy_to_json(const Policy& pol) {
    json j = json::object();
    for (cell_t s = 0; s < (cell_t)pol.input_of.size(); ++s)
        if (pol.input_of[s] >= 0) j[std::to_string(s)] = pol.input_of[s];
    return j;
}

Policy policy_from_json(const json& j) {
    Policy pol;
    cell_t max_cell = -1;
    for (auto& [k, v] : j.items()) max_cell = std::max(max_cell, (cell_t)std::stol(k));
    pol.input_of.assign(max_cell + 1, -1);
    for (auto& [k, v] : j.items()) pol.input_of[std::stol(k)] = v.get<input_t>();
    return pol;
}

namespace {

// The live game accumulates retired ids and retained redundant branches; the
// checkpoint instead stores the measure keyed to the game a fresh build of
// the current table produces. Every fresh vertex has a live counterpart with
// the same least-fixpoint value (cells by id, gadget nodes by role/target).
std::pair<AbstractGame, ProgressMeasure> canonical_state(const SynthesisSession& s) {
    AbstractGame fresh = build_abstract_game(s.table(), s.config().buchi);
    const AbstractGame& live = s.game();
    const ProgressMeasure& rho = s.rho();
    ProgressMeasure out;
    out.range = rho.range;
    out.flavor = rho.flavor;
    out.values.assign(fresh.graph.capacity(), 0);
    for (cell_t c = 0; c <= s.table().cell_count(); ++c) out.values[c] = rho.values[c];
    for (cell_t c = 0; c < s.table().cell_count(); ++c) {
        for (input_t u = 0; u < s.table().input_count(); ++u) {
            const GadgetInfo& lg = live.gadget(c, u);
            const GadgetInfo& fg = fresh.gadget(c, u);
            out.values[fg.action] = rho.values[lg.action];
            out.values[fg.branch0] = rho.values[lg.branch0];
            for (const auto& [x, b] : fg.extra_branches) {
                auto it = std::find_if(lg.extra_branches.begin(), lg.extra_branches.end(),
                                       [x = x](const auto& p) { return p.first == x; });
                if (it == lg.extra_branches.end())
                    throw error("canonical_state: live branch missing for target " + std::to_string(x));
                out.values[b] = rho.values[it->second];
            }
        }
    }
    return {std::move(fresh), std::move(out)};
}

} // namespace

json session_to_json(const SynthesisSession& s, const std::vector<std::string>& dataset_files) {
    const SessionConfig& cfg = s.config();
    json j;
    json jc;
    jc["lipschitz"] = cfg.learner.lipschitz;
    jc["noise_l"] = vec_to_json(cfg.learner.noise.l);
    jc["noise_h"] = vec_to_json(cfg.learner.noise.h);
    jc["refine_subdiv"] = cfg.learner.refine_subdiv;
    jc["domain_lo"] = vec_to_json(cfg.grid.domain().lo);
    jc["domain_hi"] = vec_to_json(cfg.grid.domain().hi);
    jc["cells_per_dim"] = cfg.grid.cells_per_dim();
    jc["buchi"] = cfg.buchi;
    jc["initial"] = cfg.initial;
    jc["losing"] = cfg.losing;
    j["config"] = std::move(jc);
    j["dataset_files"] = dataset_files;
    j["sample_count"] = s.dataset().size();
    j["table"] = table_to_json(s.table());
    auto [fresh, rho] = canonical_state(s);
    j["game"] = game_to_json(fresh.graph, fresh.spec);
    j["pm"] = pm_to_json(rho, fresh.graph);
    j["win0"] = region_to_json(s.win0_cells());
    if (s.policy()) j["policy"] = policy_to_json(*s.policy());
    return j;
}

CheckpointData checkpoint_from_json(const json& j) {
    CheckpointData ck;
    const json& jc = j.at("config");
    ck.cfg.learner.lipschitz = jc.at("lipschitz").get<double>();
    ck.cfg.learner.noise.l = vec_from_json(jc.at("noise_l"));
    ck.cfg.learner.noise.h = vec_from_json(jc.at("noise_h"));
    ck.cfg.learner.refine_subdiv = jc.at("refine_subdiv").get<int>();
    Box dom;
    dom.lo = vec_from_json(jc.at("domain_lo"));
    dom.hi = vec_from_json(jc.at("domain_hi"));
    ck.cfg.grid = GridPartition(dom, jc.at("cells_per_dim").get<std::vector<int>>());
    ck.cfg.buchi = jc.at("buchi").get<std::vector<cell_t>>();
    ck.cfg.initial = jc.at("initial").get<std::vector<cell_t>>();
    ck.cfg.losing = jc.at("losing").get<std::vector<cell_t>>();
    ck.table = table_from_json(j.at("table"));
    ck.dataset_files = j.at("dataset_files").get<std::vector<std::string>>();
    ck.sample_count = j.at("sample_count").get<size_t>();
    // The stored measure is canonical: its ids match what a fresh build of
    // the stored table produces, so resume can rebuild and adopt directly.
    auto [g, spec] = game_from_json(j.at("game"));
    ck.rho = pm_from_json(j.at("pm"), g);
    return ck;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << j.dump(1, '\t') << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "step";
    if (!tr.states.empty())
        for (int i = 0; i < tr.states[0].size(); ++i) out << ",x" << i;
    out << "\n";
    out.precision(17);
    for (size_t k = 0; k < tr.states.size(); ++k) {
        out << k;
        for (int i = 0; i < tr.states[k].size(); ++i) out << ',' << tr.states[k](i);
        out << "\n";
    }
}

} // namespace incsyn
