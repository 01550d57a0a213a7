#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "mayer/errors.hpp"

namespace mayer {

/// Labeled tree on vertices {0, ..., n} rooted at 0, stored as a parent map.
/// Vertex i in {1..n} has parent parent_of(i) in {0..n}.
class RootedTree {
public:
    /// parents[i-1] is the parent of vertex i; validates connectivity.
    static RootedTree from_parent_map(std::vector<int> parents);

    int n() const { return static_cast<int>(parents_.size()); }
    int vertex_count() const { return n() + 1; }
    int parent_of(int i) const { return parents_[static_cast<size_t>(i - 1)]; }
    const std::vector<int>& parents() const { return parents_; }

    /// Generation d(i) = tree distance to the root, for i = 0..n.
    std::vector<int> depths() const;
    std::vector<std::vector<int>> children() const;
    /// s_i = number of children of vertex i, for i = 0..n.
    std::vector<int> sibling_counts() const;
    /// d_i = s_i + [i != 0], for i = 0..n.
    std::vector<int> degrees() const;
    int depth() const;
    /// Largest label among the vertices at maximal distance from the root.
    int j_max() const;

    /// Compact canonical encoding (base 8; valid for n <= 7).
    std::uint64_t key() const;

    bool operator==(const RootedTree&) const = default;

private:
    explicit RootedTree(std::vector<int> parents) : parents_(std::move(parents)) {}
    std::vector<int> parents_;
};

/// Simple graph on vertices {0, ..., vertices-1} held as an edge bitmask.
/// Edge {i, j} with i < j maps to bit j(j-1)/2 + i; supports up to 8 vertices.
struct LabeledGraph {
    int vertices = 0;
    std::uint32_t edges = 0;

    static int edge_bit(int i, int j);
    bool has_edge(int i, int j) const { return edges >> edge_bit(i, j) & 1u; }
    void add_edge(int i, int j);
    int edge_count() const;
    bool connected() const;
    /// True if this graph's edges contain g's edges.
    bool contains(const LabeledGraph& g) const { return (g.edges & ~edges) == 0; }
};

LabeledGraph tree_as_graph(const RootedTree& t);

/// All trees on {0..n} rooted at 0; exactly (n+1)^(n-1) of them.
/// Uses parent-map filtering for n <= 5 and Pruefer sequences above.
std::vector<RootedTree> enumerate_rooted_trees(int n, int n_max = 7);
std::vector<RootedTree> enumerate_trees_parent_maps(int n);
std::vector<RootedTree> enumerate_trees_pruefer(int n);

/// The Penrose scheme graph R_Pen(t): t plus every non-tree edge {i,j} with
/// d(i) = d(j), and every non-tree edge with d(j) = d(i)-1 and parent(i) < j.
LabeledGraph penrose_graph(const RootedTree& t);

/// Exhaustively checks that every connected graph on {0..n} lies in exactly
/// one interval [tau, R_Pen(tau)].  Double-exponential: n <= 5.
bool verify_partition_scheme(int n);
/// Same check against an arbitrary scheme map (used to reject broken schemes).
bool verify_partition_scheme_with(int n, LabeledGraph (*scheme)(const RootedTree&));

/// A rooted tree over an explicit non-root label set (labels ascending);
/// vertex i of `shape` carries labels[i-1].
struct LabeledTree {
    RootedTree shape;
    std::vector<int> labels;
    int label_of(int vertex) const { return labels[static_cast<size_t>(vertex - 1)]; }
    int j_max_label() const { return label_of(shape.j_max()); }
};

/// Penrose concatenation: the root of the first tree is 0 and each later
/// tree is re-rooted at the deepest-largest label of its predecessor.
/// Label sets must partition {1..n} (throws LabelCollision).
RootedTree penrose_concatenate(const std::vector<LabeledTree>& parts);

/// Number of ordered k-tuples of trees over a label-set partition whose
/// Penrose concatenation equals t.  Exhaustive; n <= 7.
std::uint64_t count_splittings(const RootedTree& t, int k);

/// Maximal splitting multiplicity of a tree.
struct SplitClass {
    RootedTree tree;
    int ell;
};
SplitClass split_class(const RootedTree& t);

/// Counts trees on {0..n} by maximal splitting multiplicity.
std::map<int, long long> classify_splittable(int n);

/// Exhaustive splitting data for all trees on {0..n}.
class SplittingTable {
public:
    explicit SplittingTable(int n);
    int n() const { return n_; }
    std::uint64_t count(const RootedTree& t, int k) const;
    int max_split(const RootedTree& t) const;
    std::map<int, long long> classify() const;

private:
    int n_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> counts_;
};

/// Number of trees on {0..n} with the given degree sequence d_0..d_n,
/// by Cayley's formula (n-1)! / prod (d_i - 1)!.
unsigned long long cayley_degree_count(std::span<const int> degrees);

/// omega_T over `n` vertices by direct summation over connected spanning
/// subgraphs of the complete graph, with edge factor (w[i][j] - 1).  n <= 6.
template <typename F>
F truncated_weight_direct(int n, const std::vector<std::vector<F>>& w) {
    if (n < 1 || n > 6) throw TooLarge("truncated_weight_direct supports 1 <= n <= 6");
    if (n == 1) return F(1);
    const int nedges = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
    F total(0);
    for (std::uint32_t mask = 0; mask < (1u << nedges); ++mask) {
        LabeledGraph g{n, mask};
        if (!g.connected()) continue;
        F prod(1);
        for (int e = 0; e < nedges; ++e)
            if (mask >> e & 1u) prod *= w[pairs[e].first][pairs[e].second] - F(1);
        total += prod;
    }
    return total;
}

/// omega_T via the Penrose partition scheme: sum over trees rooted at 0 of
/// prod over tree edges (w-1) times prod over added scheme edges w.
template <typename F>
F truncated_weight_scheme(int n, const std::vector<std::vector<F>>& w) {
    if (n < 1 || n > 6) throw TooLarge("truncated_weight_scheme supports 1 <= n <= 6");
    if (n == 1) return F(1);
    F total(0);
    for (const RootedTree& t : enumerate_rooted_trees(n - 1)) {
        F prod(1);
        for (int i = 1; i <= t.n(); ++i) {
            const int p = t.parent_of(i);
            prod *= w[p][i] - F(1);
        }
        const LabeledGraph pen = penrose_graph(t);
        const LabeledGraph tg = tree_as_graph(t);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if (pen.has_edge(i, j) && !tg.has_edge(i, j)) prod *= w[i][j];
        total += prod;
    }
    return total;
}

}  // namespace mayer
