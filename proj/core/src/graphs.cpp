#include "epp/graphs.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace epp {

void Graph::throw_bad_size(int n) {
    throw std::invalid_argument("Graph: vertex count " + std::to_string(n) +
                                " outside supported range [0,20]");
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::out_of_range("Graph::add_edge: vertex out of range");
    if (u == v) throw std::invalid_argument("Graph::add_edge: self-loop");
    adj_[u] |= 1ULL << v;
    adj_[v] |= 1ULL << u;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) e.emplace_back(u, v);
    return e;
}

void Graph::set_coloring(std::vector<std::vector<int>> classes) {
    std::vector<int> color_of(static_cast<std::size_t>(n_), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int v : classes[c]) {
            if (v < 0 || v >= n_) throw std::out_of_range("set_coloring: vertex out of range");
            if (color_of[v] != -1) throw std::invalid_argument("set_coloring: vertex colored twice");
            color_of[v] = static_cast<int>(c);
        }
    for (int v = 0; v < n_; ++v)
        if (color_of[v] == -1) throw std::invalid_argument("set_coloring: uncolored vertex");
    for (auto [u, v] : edges())
        if (color_of[u] == color_of[v])
            throw std::invalid_argument("set_coloring: edge inside a color class");
    coloring_ = std::move(classes);
}

Graph Graph::line(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::cycle(int n) {
    Graph g = line(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::star(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

Graph Graph::parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> colors;  // (vertex, class)
    int max_v = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "color") {
            int u, c;
            if (!(ls >> u >> c) || c < 0) throw std::invalid_argument("bad color line: " + line);
            colors.emplace_back(u, c);
            max_v = std::max(max_v, u);
        } else {
            int u, v;
            try {
                u = std::stoi(first);
            } catch (...) {
                throw std::invalid_argument("bad edge line: " + line);
            }
            if (!(ls >> v)) throw std::invalid_argument("bad edge line: " + line);
            edges.emplace_back(u, v);
            max_v = std::max({max_v, u, v});
        }
    }
    Graph g(max_v + 1);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (!colors.empty()) {
        int k = 0;
        for (auto [u, c] : colors) k = std::max(k, c + 1);
        std::vector<std::vector<int>> classes(static_cast<std::size_t>(k));
        for (auto [u, c] : colors) classes[c].push_back(u);
        g.set_coloring(std::move(classes));
    }
    return g;
}

std::string correlation_operator(const Graph& g, int j) {
    if (j < 0 || j >= g.num_vertices()) throw std::out_of_range("correlation_operator");
    std::string s(static_cast<std::size_t>(g.num_vertices()), 'I');
    s[j] = 'X';
    for (int k = 0; k < g.num_vertices(); ++k)
        if (g.has_edge(j, k)) s[k] = 'Z';
    return s;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> two_color(const Graph& g) {
    int n = g.num_vertices();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (side[start] != -1) continue;
        side[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v) {
                if (!g.has_edge(u, v)) continue;
                if (side[v] == -1) {
                    side[v] = 1 - side[u];
                    queue.push_back(v);
                } else if (side[v] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> parts;
    for (int v = 0; v < n; ++v) (side[v] == 0 ? parts.first : parts.second).push_back(v);
    return parts;
}

std::vector<std::vector<int>> greedy_coloring(const Graph& g) {
    int n = g.num_vertices();
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::popcount(g.neighborhood(a)) > std::popcount(g.neighborhood(b));
    });
    std::vector<int> color_of(static_cast<std::size_t>(n), -1);
    int k = 0;
    for (int v : order) {
        std::uint64_t used = 0;
        for (int u = 0; u < n; ++u)
            if (g.has_edge(v, u) && color_of[u] >= 0) used |= 1ULL << color_of[u];
        int c = 0;
        while ((used >> c) & 1ULL) ++c;
        color_of[v] = c;
        k = std::max(k, c + 1);
    }
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v) classes[color_of[v]].push_back(v);
    return classes;
}

Graph subgraph_gj(const Graph& g, int j) {
    if (!g.has_coloring() || j < 0 || j >= static_cast<int>(g.coloring().size()))
        throw std::out_of_range("subgraph_gj: color class out of range");
    std::vector<char> in_class(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int v : g.coloring()[j]) in_class[v] = 1;
    Graph out(g.num_vertices());
    for (auto [u, v] : g.edges())
        if (in_class[u] || in_class[v]) out.add_edge(u, v);
    std::vector<int> rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!in_class[v]) rest.push_back(v);
    out.set_coloring({g.coloring()[j], rest});
    return out;
}

}  // namespace epp
