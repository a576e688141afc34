#include "cmag/gauge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "cmag/error.hpp"

namespace cmag {

namespace {

struct adjacency
{
    // neighbours sorted by id: (neighbour index, edge index)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> links;
};

adjacency make_adjacency(const coupling_graph& graph)
{
    const auto& modes = graph.modes();
    adjacency adj;
    adj.links.resize(modes.size());
    for (std::size_t e = 0; e < graph.couplings().size(); ++e) {
        const auto& c = graph.couplings()[e];
        auto u = *graph.find_mode(c.from);
        auto v = *graph.find_mode(c.to);
        adj.links[u].emplace_back(v, e);
        adj.links[v].emplace_back(u, e);
    }
    for (auto& l : adj.links) {
        std::sort(l.begin(), l.end(), [&](const auto& a, const auto& b) {
            return modes[a.first].id < modes[b.first].id;
        });
    }
    return adj;
}

/// Modes in lexicographic id order.
std::vector<std::size_t> sorted_by_id(const coupling_graph& graph)
{
    std::vector<std::size_t> order(graph.modes().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return graph.modes()[a].id < graph.modes()[b].id;
    });
    return order;
}

/// Phase contribution of walking edge e from mode index `at`.
double signed_phase(const coupling_graph& graph, std::size_t e, std::size_t at)
{
    const auto& c = graph.couplings()[e];
    return graph.modes()[at].id == c.from ? c.phase : -c.phase;
}

struct spanning_forest
{
    std::vector<std::size_t> parent;      // parent mode, self for roots
    std::vector<std::size_t> parent_edge; // edge to parent
    std::vector<std::size_t> depth;
    std::vector<bool> tree_edge;
    std::vector<std::size_t> bfs_order;
};

spanning_forest build_forest(const coupling_graph& graph, const adjacency& adj)
{
    const auto n = graph.modes().size();
    constexpr auto none = static_cast<std::size_t>(-1);
    spanning_forest f;
    f.parent.assign(n, none);
    f.parent_edge.assign(n, none);
    f.depth.assign(n, 0);
    f.tree_edge.assign(graph.couplings().size(), false);

    for (std::size_t root : sorted_by_id(graph)) {
        if (f.parent[root] != none) {
            continue;
        }
        f.parent[root] = root;
        std::queue<std::size_t> queue;
        queue.push(root);
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop();
            f.bfs_order.push_back(u);
            for (auto [v, e] : adj.links[u]) {
                if (f.parent[v] != none) {
                    continue;
                }
                f.parent[v] = u;
                f.parent_edge[v] = e;
                f.depth[v] = f.depth[u] + 1;
                f.tree_edge[e] = true;
                queue.push(v);
            }
        }
    }
    return f;
}

/// Tree path u -> ... -> lca -> ... -> v (inclusive).
std::vector<std::size_t> tree_path(const spanning_forest& f, std::size_t u,
                                   std::size_t v)
{
    std::vector<std::size_t> up, down;
    while (f.depth[u] > f.depth[v]) {
        up.push_back(u);
        u = f.parent[u];
    }
    while (f.depth[v] > f.depth[u]) {
        down.push_back(v);
        v = f.parent[v];
    }
    while (u != v) {
        up.push_back(u);
        down.push_back(v);
        u = f.parent[u];
        v = f.parent[v];
    }
    up.push_back(u);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

std::size_t edge_between(const adjacency& adj, std::size_t u, std::size_t v)
{
    for (auto [w, e] : adj.links[u]) {
        if (w == v) {
            return e;
        }
    }
    throw compute_error("internal: loop walks a missing edge");
}

phase_loop make_loop(const coupling_graph& graph, const adjacency& adj,
                     const spanning_forest& f, std::size_t chord)
{
    const auto& c = graph.couplings()[chord];
    const auto u = *graph.find_mode(c.from);
    const auto v = *graph.find_mode(c.to);
    // Cycle: v -> (tree) -> u, then chord u -> v.
    auto ring = tree_path(f, v, u);
    const auto& modes = graph.modes();

    auto start = std::min_element(ring.begin(), ring.end(), [&](auto a, auto b) {
        return modes[a].id < modes[b].id;
    });
    std::rotate(ring.begin(), start, ring.end());
    // ring[1] and ring.back() are the two loop neighbours of the start.
    if (modes[ring.back()].id < modes[ring[1]].id) {
        std::reverse(ring.begin() + 1, ring.end());
    }

    phase_loop loop;
    double theta = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto a = ring[i];
        const auto b = ring[(i + 1) % ring.size()];
        const auto e = edge_between(adj, a, b);
        theta += signed_phase(graph, e, a);
        if (e == chord) {
            loop.chord_aligned = modes[a].id == c.from;
        }
        loop.modes.push_back(modes[a].id);
    }
    loop.theta = normalize_phase(theta);
    loop.chord = chord;
    return loop;
}

} // namespace

coupling_graph rotate_mode(const coupling_graph& graph, std::string_view id,
                           double phase)
{
    if (!graph.find_mode(id)) {
        throw input_error("cannot rotate unknown mode '" + std::string(id) + "'");
    }
    coupling_graph out = graph;
    for (std::size_t e = 0; e < graph.couplings().size(); ++e) {
        const auto& c = graph.couplings()[e];
        if (c.from == id) {
            out.set_phase(e, c.phase - phase);
        } else if (c.to == id) {
            out.set_phase(e, c.phase + phase);
        }
    }
    return out;
}

std::size_t cycle_rank(const coupling_graph& graph)
{
    const auto adj = make_adjacency(graph);
    const auto forest = build_forest(graph, adj);
    return static_cast<std::size_t>(
        std::count(forest.tree_edge.begin(), forest.tree_edge.end(), false));
}

gauge_report reduce_phases(const coupling_graph& graph)
{
    const auto adj = make_adjacency(graph);
    const auto forest = build_forest(graph, adj);
    const auto& modes = graph.modes();

    // Rotation that zeroes each tree edge, propagated root-outwards.
    std::vector<double> rotation(modes.size(), 0.0);
    for (auto v : forest.bfs_order) {
        if (forest.parent[v] == v) {
            continue;
        }
        const auto p = forest.parent[v];
        const auto& c = graph.couplings()[forest.parent_edge[v]];
        // phase - r_from + r_to = 0
        rotation[v] = c.from == modes[p].id ? rotation[p] - c.phase
                                            : rotation[p] + c.phase;
        rotation[v] = normalize_phase(rotation[v]);
    }

    gauge_report report;
    report.canonical_graph = graph;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        report.mode_rotations.emplace_back(modes[i].id, rotation[i]);
        if (rotation[i] != 0.0) {
            report.canonical_graph =
                rotate_mode(report.canonical_graph, modes[i].id, rotation[i]);
        }
    }

    std::vector<std::size_t> chords;
    for (std::size_t e = 0; e < graph.couplings().size(); ++e) {
        if (!forest.tree_edge[e]) {
            chords.push_back(e);
        }
    }
    auto key = [&](std::size_t e) {
        const auto& c = graph.couplings()[e];
        return std::minmax(c.from, c.to);
    };
    std::sort(chords.begin(), chords.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    for (auto e : chords) {
        report.cycles.push_back(make_loop(graph, adj, forest, e));
    }
    return report;
}

std::vector<phase_loop> loop_phases(const coupling_graph& graph)
{
    return reduce_phases(graph).cycles;
}

} // namespace cmag
