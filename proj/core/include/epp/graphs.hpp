#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace epp {

// Simple undirected graph on vertices 0..n-1, optionally with a proper
// vertex coloring (classes V_0 .. V_{k-1}).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0ULL) {
        if (n < 0 || n > 20) throw_bad_size(n);
    }

    int num_vertices() const { return n_; }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1ULL; }

    // Bitmask of the neighborhood of v (bit i <-> vertex i).
    std::uint64_t neighborhood(int v) const { return adj_[v]; }

    std::vector<std::pair<int, int>> edges() const;

    // Coloring access. Classes are vertex index lists; set_coloring validates
    // properness.
    bool has_coloring() const { return !coloring_.empty(); }
    const std::vector<std::vector<int>>& coloring() const { return coloring_; }
    void set_coloring(std::vector<std::vector<int>> classes);

    // Canonical graphs.
    static Graph line(int n);
    static Graph cycle(int n);
    static Graph complete(int n);
    static Graph star(int n);  // GHZ graph: vertex 0 is the center

    // Edge-list text format: one "u v" line per edge, optional "color u c"
    // lines assigning vertex u to color class c.
    static Graph parse_edge_list(const std::string& text);

private:
    [[noreturn]] static void throw_bad_size(int n);
    int n_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::vector<int>> coloring_;
};

// Correlation operator K_j as a Pauli string: 'X' on j, 'Z' on neighbors,
// 'I' elsewhere. Returned as a length-n string over {I,X,Z}.
std::string correlation_operator(const Graph& g, int j);

// BFS bipartition (V_A, V_B). Empty result if the graph has an odd cycle.
std::optional<std::pair<std::vector<int>, std::vector<int>>> two_color(const Graph& g);

// Greedy largest-degree-first proper coloring.
std::vector<std::vector<int>> greedy_coloring(const Graph& g);

// Two-colorable subgraph g_j of a k-colored graph: keeps only edges incident
// to color class j.
Graph subgraph_gj(const Graph& g, int j);

}  // namespace epp
