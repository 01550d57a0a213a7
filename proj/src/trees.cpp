#include "mayer/trees.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "mayer/rational.hpp"

namespace mayer {

RootedTree RootedTree::from_parent_map(std::vector<int> parents) {
    const int n = static_cast<int>(parents.size());
    if (n < 1) throw Error("RootedTree needs at least one non-root vertex");
    for (int i = 1; i <= n; ++i) {
        const int p = parents[static_cast<size_t>(i - 1)];
        if (p < 0 || p > n || p == i) throw Error("RootedTree: parent label out of range");
    }
    // every vertex must reach the root in <= n steps
    for (int i = 1; i <= n; ++i) {
        int v = i;
        int steps = 0;
        while (v != 0) {
            v = parents[static_cast<size_t>(v - 1)];
            if (++steps > n) throw Error("RootedTree: parent map contains a cycle");
        }
    }
    return RootedTree(std::move(parents));
}

std::vector<int> RootedTree::depths() const {
    std::vector<int> d(static_cast<size_t>(n()) + 1, -1);
    d[0] = 0;
    for (int i = 1; i <= n(); ++i) {
        // walk to the first vertex with a known depth
        int v = i;
        int steps = 0;
        while (d[static_cast<size_t>(v)] < 0) {
            v = parent_of(v);
            ++steps;
        }
        int depth = d[static_cast<size_t>(v)] + steps;
        v = i;
        while (d[static_cast<size_t>(v)] < 0) {
            d[static_cast<size_t>(v)] = depth--;
            v = parent_of(v);
        }
    }
    return d;
}

std::vector<std::vector<int>> RootedTree::children() const {
    std::vector<std::vector<int>> ch(static_cast<size_t>(n()) + 1);
    for (int i = 1; i <= n(); ++i) ch[static_cast<size_t>(parent_of(i))].push_back(i);
    return ch;
}

std::vector<int> RootedTree::sibling_counts() const {
    std::vector<int> s(static_cast<size_t>(n()) + 1, 0);
    for (int i = 1; i <= n(); ++i) ++s[static_cast<size_t>(parent_of(i))];
    return s;
}

std::vector<int> RootedTree::degrees() const {
    std::vector<int> d = sibling_counts();
    for (int i = 1; i <= n(); ++i) ++d[static_cast<size_t>(i)];
    return d;
}

int RootedTree::depth() const {
    const std::vector<int> d = depths();
    return *std::max_element(d.begin(), d.end());
}

int RootedTree::j_max() const {
    const std::vector<int> d = depths();
    const int dmax = *std::max_element(d.begin(), d.end());
    for (int i = n(); i >= 0; --i)
        if (d[static_cast<size_t>(i)] == dmax) return i;
    return 0;
}

std::uint64_t RootedTree::key() const {
    std::uint64_t k = static_cast<std::uint64_t>(n());
    for (int i = 1; i <= n(); ++i) k = k << 3 | static_cast<std::uint64_t>(parent_of(i));
    return k;
}

int LabeledGraph::edge_bit(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

void LabeledGraph::add_edge(int i, int j) { edges |= 1u << edge_bit(i, j); }

int LabeledGraph::edge_count() const { return __builtin_popcount(edges); }

bool LabeledGraph::connected() const {
    if (vertices <= 1) return true;
    std::uint32_t seen = 1u;
    std::uint32_t frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        for (int v = 0; v < vertices; ++v) {
            if (!(frontier >> v & 1u)) continue;
            for (int u = 0; u < vertices; ++u)
                if (u != v && has_edge(u, v)) next |= 1u << u;
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << vertices) - 1u;
}

LabeledGraph tree_as_graph(const RootedTree& t) {
    LabeledGraph g{t.vertex_count(), 0};
    for (int i = 1; i <= t.n(); ++i) g.add_edge(i, t.parent_of(i));
    return g;
}

std::vector<RootedTree> enumerate_trees_parent_maps(int n) {
    std::vector<RootedTree> out;
    std::vector<int> p(static_cast<size_t>(n), 0);
    while (true) {
        bool valid = true;
        for (int i = 1; i <= n && valid; ++i)
            if (p[static_cast<size_t>(i - 1)] == i) valid = false;
        if (valid) {
            // acyclicity
            for (int i = 1; i <= n && valid; ++i) {
                int v = i, steps = 0;
                while (v != 0 && steps <= n) {
                    v = p[static_cast<size_t>(v - 1)];
                    ++steps;
                }
                if (v != 0) valid = false;
            }
            if (valid) out.push_back(RootedTree::from_parent_map(p));
        }
        int i = 0;
        while (i < n && p[static_cast<size_t>(i)] == n) p[static_cast<size_t>(i++)] = 0;
        if (i == n) break;
        ++p[static_cast<size_t>(i)];
    }
    return out;
}

namespace {

RootedTree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n) + 1);
    for (auto [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<int> stack{0};
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    seen[0] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<size_t>(v)]) {
            if (seen[static_cast<size_t>(u)]) continue;
            seen[static_cast<size_t>(u)] = true;
            parent[static_cast<size_t>(u - 1)] = v;
            stack.push_back(u);
        }
    }
    return RootedTree::from_parent_map(std::move(parent));
}

}  // namespace

std::vector<RootedTree> enumerate_trees_pruefer(int n) {
    std::vector<RootedTree> out;
    if (n == 1) {
        out.push_back(RootedTree::from_parent_map({0}));
        return out;
    }
    const int m = n + 1;        // vertex count, labels 0..n
    const int len = m - 2;      // sequence length
    std::vector<int> seq(static_cast<size_t>(len), 0);
    while (true) {
        // decode
        std::vector<int> degree(static_cast<size_t>(m), 1);
        for (int s : seq) ++degree[static_cast<size_t>(s)];
        std::vector<bool> used(static_cast<size_t>(m), false);
        std::vector<std::pair<int, int>> edges;
        for (int idx = 0; idx < len; ++idx) {
            int leaf = -1;
            for (int v = 0; v < m; ++v)
                if (degree[static_cast<size_t>(v)] == 1 && !used[static_cast<size_t>(v)]) {
                    leaf = v;
                    break;
                }
            used[static_cast<size_t>(leaf)] = true;
            edges.emplace_back(leaf, seq[static_cast<size_t>(idx)]);
            --degree[static_cast<size_t>(seq[static_cast<size_t>(idx)])];
        }
        int a = -1, b = -1;
        for (int v = 0; v < m; ++v)
            if (!used[static_cast<size_t>(v)] && degree[static_cast<size_t>(v)] == 1) (a < 0 ? a : b) = v;
        edges.emplace_back(a, b);
        out.push_back(tree_from_edges(n, edges));

        int i = 0;
        while (i < len && seq[static_cast<size_t>(i)] == m - 1) seq[static_cast<size_t>(i++)] = 0;
        if (i == len) break;
        ++seq[static_cast<size_t>(i)];
    }
    return out;
}

std::vector<RootedTree> enumerate_rooted_trees(int n, int n_max) {
    if (n < 1 || n > n_max || n > 7)
        throw TooLarge("enumerate_rooted_trees: n must be in [1, min(n_max, 7)]");
    return n <= 5 ? enumerate_trees_parent_maps(n) : enumerate_trees_pruefer(n);
}

LabeledGraph penrose_graph(const RootedTree& t) {
    LabeledGraph g = tree_as_graph(t);
    const std::vector<int> d = t.depths();
    for (int i = 0; i <= t.n(); ++i) {
        for (int j = 0; j <= t.n(); ++j) {
            if (i == j || g.has_edge(i, j)) continue;
            if (d[static_cast<size_t>(i)] == d[static_cast<size_t>(j)]) {
                g.add_edge(i, j);
            } else if (i >= 1 && d[static_cast<size_t>(j)] == d[static_cast<size_t>(i)] - 1 &&
                       t.parent_of(i) < j) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

bool verify_partition_scheme_with(int n, LabeledGraph (*scheme)(const RootedTree&)) {
    if (n < 1 || n > 5) throw TooLarge("verify_partition_scheme supports n <= 5");
    const int m = n + 1;
    const int nedges = m * (m - 1) / 2;
    struct Interval {
        std::uint32_t tree, super;
    };
    std::vector<Interval> intervals;
    for (const RootedTree& t : enumerate_rooted_trees(n))
        intervals.push_back({tree_as_graph(t).edges, scheme(t).edges});
    for (std::uint32_t mask = 0; mask < (1u << nedges); ++mask) {
        LabeledGraph g{m, mask};
        if (!g.connected()) continue;
        int hits = 0;
        for (const Interval& iv : intervals)
            if ((iv.tree & ~mask) == 0 && (mask & ~iv.super) == 0) ++hits;
        if (hits != 1) return false;
    }
    return true;
}

bool verify_partition_scheme(int n) { return verify_partition_scheme_with(n, &penrose_graph); }

RootedTree penrose_concatenate(const std::vector<LabeledTree>& parts) {
    if (parts.empty()) throw LabelCollision("penrose_concatenate: no parts");
    int total = 0;
    std::uint32_t seen = 0;
    for (const LabeledTree& p : parts) {
        if (static_cast<int>(p.labels.size()) != p.shape.n())
            throw LabelCollision("penrose_concatenate: label/shape size mismatch");
        for (int lab : p.labels) {
            if (lab < 1 || lab > 31 || (seen >> lab & 1u))
                throw LabelCollision("penrose_concatenate: duplicate or invalid label");
            seen |= 1u << lab;
            ++total;
        }
    }
    if (seen != ((1u << (total + 1)) - 2u))
        throw LabelCollision("penrose_concatenate: labels must partition {1..n}");

    std::vector<int> parent(static_cast<size_t>(total), 0);
    int attach = 0;  // root of the current part, as a global label
    for (const LabeledTree& p : parts) {
        for (int v = 1; v <= p.shape.n(); ++v) {
            const int pv = p.shape.parent_of(v);
            parent[static_cast<size_t>(p.label_of(v) - 1)] = pv == 0 ? attach : p.label_of(pv);
        }
        attach = p.j_max_label();
    }
    return RootedTree::from_parent_map(std::move(parent));
}

namespace {

struct ShapeInfo {
    std::vector<int> parents;
    int jmax;  // canonical vertex index
};

const std::vector<ShapeInfo>& shapes_of_size(int m) {
    static std::vector<std::vector<ShapeInfo>> cache(8);
    static std::mutex mu;
    std::scoped_lock lock(mu);
    auto& slot = cache[static_cast<size_t>(m)];
    if (slot.empty()) {
        for (const RootedTree& t : enumerate_rooted_trees(m))
            slot.push_back({t.parents(), t.j_max()});
    }
    return slot;
}

}  // namespace

SplittingTable::SplittingTable(int n) : n_(n) {
    if (n < 1 || n > 7) throw TooLarge("SplittingTable supports n <= 7");
    std::vector<int> parent(static_cast<size_t>(n), 0);

    // Recurse over ordered set partitions of {1..n}; each block carries every
    // tree shape over its labels.  The running parent map holds the partial
    // Penrose concatenation.
    auto rec = [&](auto&& self, std::uint32_t remaining, int attach, int k) -> void {
        if (remaining == 0) {
            std::uint64_t key = static_cast<std::uint64_t>(n);
            for (int i = 1; i <= n; ++i)
                key = key << 3 | static_cast<std::uint64_t>(parent[static_cast<size_t>(i - 1)]);
            auto& row = counts_[key];
            if (row.size() < static_cast<size_t>(k)) row.resize(static_cast<size_t>(k), 0);
            ++row[static_cast<size_t>(k - 1)];
            return;
        }
        for (std::uint32_t sub = remaining;; sub = (sub - 1) & remaining) {
            if (sub != 0) {
                std::vector<int> labels;
                for (int b = 0; b < n; ++b)
                    if (sub >> b & 1u) labels.push_back(b + 1);
                const int m = static_cast<int>(labels.size());
                for (const ShapeInfo& sh : shapes_of_size(m)) {
                    for (int v = 1; v <= m; ++v) {
                        const int pv = sh.parents[static_cast<size_t>(v - 1)];
                        parent[static_cast<size_t>(labels[static_cast<size_t>(v - 1)] - 1)] =
                            pv == 0 ? attach : labels[static_cast<size_t>(pv - 1)];
                    }
                    self(self, remaining & ~sub, labels[static_cast<size_t>(sh.jmax - 1)], k + 1);
                }
            }
            if (sub == 0) break;
        }
    };
    rec(rec, (1u << n) - 1u, 0, 0);
}

std::uint64_t SplittingTable::count(const RootedTree& t, int k) const {
    if (t.n() != n_) throw Error("SplittingTable: tree size mismatch");
    const auto it = counts_.find(t.key());
    if (it == counts_.end() || k < 1 || k > static_cast<int>(it->second.size())) return 0;
    return it->second[static_cast<size_t>(k - 1)];
}

int SplittingTable::max_split(const RootedTree& t) const {
    const auto it = counts_.find(t.key());
    if (it == counts_.end()) return 0;
    for (int k = static_cast<int>(it->second.size()); k >= 1; --k)
        if (it->second[static_cast<size_t>(k - 1)] > 0) return k;
    return 0;
}

std::map<int, long long> SplittingTable::classify() const {
    std::map<int, long long> out;
    for (const auto& [key, row] : counts_) {
        (void)key;
        for (int k = static_cast<int>(row.size()); k >= 1; --k)
            if (row[static_cast<size_t>(k - 1)] > 0) {
                ++out[k];
                break;
            }
    }
    return out;
}

namespace {

const SplittingTable& splitting_table(int n) {
    static std::map<int, SplittingTable> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, SplittingTable(n)).first;
    return it->second;
}

}  // namespace

std::uint64_t count_splittings(const RootedTree& t, int k) {
    return splitting_table(t.n()).count(t, k);
}

SplitClass split_class(const RootedTree& t) {
    return SplitClass{t, splitting_table(t.n()).max_split(t)};
}

std::map<int, long long> classify_splittable(int n) { return splitting_table(n).classify(); }

unsigned long long cayley_degree_count(std::span<const int> degrees) {
    const int n = static_cast<int>(degrees.size()) - 1;
    if (n < 1) throw InvalidDegreeSequence("cayley_degree_count: need at least two vertices");
    if (n > 20) throw TooLarge("cayley_degree_count: n > 20 overflows the result type");
    long long sum = 0;
    for (int d : degrees) {
        if (d < 1) throw InvalidDegreeSequence("cayley_degree_count: degrees must be >= 1");
        sum += d;
    }
    if (sum != 2ll * n) throw InvalidDegreeSequence("cayley_degree_count: degrees must sum to 2n");
    Integer r = factorial(static_cast<unsigned>(n - 1));
    for (int d : degrees) r /= factorial(static_cast<unsigned>(d - 1));
    return r.get_ui();
}

}  // namespace mayer
