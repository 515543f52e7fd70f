#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incsyn/errors.hpp"

namespace incsyn {

using vertex_t = int32_t;
inline constexpr vertex_t kNoVertex = -1;

enum class Player : uint8_t { P0 = 0, P1 = 1 };

// Fair edges belong to P1 in fair graphs and to P0 in cofair graphs.
enum class Flavor : uint8_t { Normal = 0, Fair = 1, Cofair = 2 };

enum class SpecKind : uint8_t { Buchi = 0, CoBuchi = 1 };

struct Spec {
    SpecKind kind = SpecKind::Buchi;
    std::vector<bool> member; // indexed by vertex id, true iff in B

    bool in_b(vertex_t v) const { return v >= 0 && v < (vertex_t)member.size() && member[v]; }
    std::vector<vertex_t> b_list() const;
};

struct WinningPartition {
    std::vector<vertex_t> win0, win1;
};

// Explicit two-player game graph with a fair-edge subset. Vertex ids are
// dense indices assigned at construction; removing a vertex retires its id
// (never reissued) so progress-measure arrays survive graph edits.
class GameGraph {
public:
    GameGraph() = default;
    explicit GameGraph(Flavor flavor) : flavor_(flavor) {}

    vertex_t add_vertex(Player owner);
    void add_edge(vertex_t from, vertex_t to, bool fair = false);
    bool has_edge(vertex_t from, vertex_t to) const;
    bool has_fair_edge(vertex_t from, vertex_t to) const;
    // Removes (from,to) from both the plain and fair successor lists.
    void remove_edge(vertex_t from, vertex_t to);
    // Retires the vertex and all incident edges.
    void remove_vertex(vertex_t v);

    Flavor flavor() const { return flavor_; }
    void set_flavor(Flavor f) { flavor_ = f; }

    // Capacity of the id space, including retired ids.
    vertex_t capacity() const { return (vertex_t)owner_.size(); }
    bool alive(vertex_t v) const { return v >= 0 && v < capacity() && alive_[v]; }
    size_t vertex_count() const { return alive_count_; }
    size_t edge_count() const;
    Player owner(vertex_t v) const { return owner_[v]; }

    const std::vector<vertex_t>& succ(vertex_t v) const { return succ_[v]; }
    const std::vector<vertex_t>& fair_succ(vertex_t v) const { return fair_[v]; }
    const std::vector<vertex_t>& pred(vertex_t v) const { return pred_[v]; }
    bool is_fair_vertex(vertex_t v) const { return !fair_[v].empty(); }

    std::vector<vertex_t> vertices() const;

    // Checks totality and the flavor/ownership invariant; throws on violation.
    void validate() const;

private:
    Flavor flavor_ = Flavor::Normal;
    std::vector<Player> owner_;
    std::vector<bool> alive_;
    std::vector<std::vector<vertex_t>> succ_;
    std::vector<std::vector<vertex_t>> fair_;
    std::vector<std::vector<vertex_t>> pred_;
    size_t alive_count_ = 0;
};

// Ownership-swapped copy: fair <-> cofair, Buchi <-> coBuchi on the same B.
// Involution: dualize(dualize(g, s)) == (g, s).
std::pair<GameGraph, Spec> dualize(const GameGraph& g, const Spec& spec);

struct RestrictResult {
    GameGraph graph;
    std::vector<vertex_t> edgeless;          // kept vertices that lost all successors
    std::vector<vertex_t> to_original;       // new id -> original id
    std::vector<vertex_t> from_original;     // original id -> new id or kNoVertex
};

// Induced subgraph on `keep`. Vertices left without successors are reported;
// the caller decides whether that is acceptable.
RestrictResult restrict(const GameGraph& g, const std::vector<vertex_t>& keep);

struct Lasso {
    std::vector<vertex_t> stem;  // may be empty; ends where the cycle starts
    std::vector<vertex_t> cycle; // nonempty; cycle.back() -> cycle.front() closes it
};

// True iff every fair vertex on the cycle has all its fair successors on the
// cycle. Throws broken_lasso when a claimed step is not an edge of g.
bool is_fair_play_witness(const GameGraph& g, const Lasso& lasso);

std::string to_string(Flavor f);
std::string to_string(SpecKind k);

} // namespace incsyn
