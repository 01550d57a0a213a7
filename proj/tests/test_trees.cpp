#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "mayer/rational.hpp"
#include "mayer/trees.hpp"

using namespace mayer;

namespace {

std::mt19937 rng(424242);

Rational random_weight() {
    // rationals with |w| <= 1
    std::uniform_int_distribution<int> num(-5, 5);
    return rat(num(rng), 5);
}

std::vector<std::vector<Rational>> random_symmetric_matrix(int n) {
    std::vector<std::vector<Rational>> w(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n), rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = random_weight();
    return w;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// All subsets of {1..n} as sorted label vectors, excluding the empty one.
std::vector<std::vector<int>> nonempty_subsets(const std::vector<int>& labels) {
    std::vector<std::vector<int>> out;
    const int m = static_cast<int>(labels.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> s;
        for (int b = 0; b < m; ++b)
            if (mask >> b & 1) s.push_back(labels[static_cast<size_t>(b)]);
        out.push_back(std::move(s));
    }
    return out;
}

// Test-local exhaustive splitting enumeration built directly on
// penrose_concatenate, independent of SplittingTable's bookkeeping.
void enumerate_splittings(const std::vector<int>& remaining, std::vector<LabeledTree>& acc,
                          const std::function<void(const std::vector<LabeledTree>&)>& visit) {
    if (remaining.empty()) {
        visit(acc);
        return;
    }
    for (const std::vector<int>& block : nonempty_subsets(remaining)) {
        std::vector<int> rest;
        std::set<int> in_block(block.begin(), block.end());
        for (int v : remaining)
            if (!in_block.count(v)) rest.push_back(v);
        for (const RootedTree& shape : enumerate_rooted_trees(static_cast<int>(block.size()))) {
            acc.push_back(LabeledTree{shape, block});
            enumerate_splittings(rest, acc, visit);
            acc.pop_back();
        }
    }
}

}  // namespace

TEST_CASE("rooted tree invariants") {
    // 0 -> 1 -> {2, 3}, 0 -> 4
    RootedTree t = RootedTree::from_parent_map({0, 1, 1, 0});
    CHECK(t.n() == 4);
    CHECK(t.depths() == std::vector<int>{0, 1, 2, 2, 1});
    CHECK(t.sibling_counts() == std::vector<int>{2, 2, 0, 0, 0});
    CHECK(t.degrees() == std::vector<int>{2, 3, 1, 1, 1});
    CHECK(t.depth() == 2);
    CHECK(t.j_max() == 3);
    CHECK_THROWS_AS(RootedTree::from_parent_map({2, 1}), Error);   // cycle
    CHECK_THROWS_AS(RootedTree::from_parent_map({0, 9}), Error);   // out of range
}

TEST_CASE("enumeration counts match Cayley's formula") {
    for (int n = 1; n <= 5; ++n)
        CHECK(static_cast<long long>(enumerate_rooted_trees(n).size()) == ipow(n + 1, n - 1));
    CHECK(enumerate_rooted_trees(6).size() == 16807);
    CHECK_THROWS_AS(enumerate_rooted_trees(8), TooLarge);
    CHECK_THROWS_AS(enumerate_rooted_trees(0), TooLarge);
    CHECK_THROWS_AS(enumerate_rooted_trees(6, 5), TooLarge);
}

TEST_CASE("parent-map and Pruefer enumerations generate the same trees") {
    for (int n = 1; n <= 5; ++n) {
        std::set<std::uint64_t> a, b;
        for (const RootedTree& t : enumerate_trees_parent_maps(n)) a.insert(t.key());
        for (const RootedTree& t : enumerate_trees_pruefer(n)) b.insert(t.key());
        CHECK(a == b);
        CHECK(a.size() == static_cast<size_t>(ipow(n + 1, n - 1)));
    }
}

TEST_CASE("penrose graph") {
    // star: all children of the root sit at generation 1
    RootedTree star = RootedTree::from_parent_map({0, 0, 0, 0});
    LabeledGraph pen = penrose_graph(star);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) CHECK(pen.has_edge(i, j));
    CHECK(pen.edge_count() == 4 + 6);

    // path 0-1-2: nothing is added
    RootedTree path = RootedTree::from_parent_map({0, 1});
    CHECK(penrose_graph(path).edges == tree_as_graph(path).edges);

    // R_Pen always contains the tree
    for (int n = 1; n <= 5; ++n)
        for (const RootedTree& t : enumerate_rooted_trees(n))
            CHECK(penrose_graph(t).contains(tree_as_graph(t)));
}

TEST_CASE("partition scheme covers connected graphs exactly once") {
    CHECK(verify_partition_scheme(1));
    CHECK(verify_partition_scheme(2));
    CHECK(verify_partition_scheme(3));
    CHECK(verify_partition_scheme(4));
    CHECK_THROWS_AS(verify_partition_scheme(6), TooLarge);
}

TEST_CASE("a broken scheme is rejected") {
    // same-generation edges omitted
    auto broken = [](const RootedTree& t) -> LabeledGraph {
        LabeledGraph g = tree_as_graph(t);
        const std::vector<int> d = t.depths();
        for (int i = 1; i <= t.n(); ++i)
            for (int j = 0; j <= t.n(); ++j)
                if (i != j && !g.has_edge(i, j) &&
                    d[static_cast<size_t>(j)] == d[static_cast<size_t>(i)] - 1 && t.parent_of(i) < j)
                    g.add_edge(i, j);
        return g;
    };
    CHECK_FALSE(verify_partition_scheme_with(2, broken));
}

TEST_CASE("truncated weight: direct examples") {
    CHECK(truncated_weight_direct<Rational>(1, {{rat(0)}}) == rat(1));
    std::vector<std::vector<Rational>> w2 = {{rat(0), rat(1, 3)}, {rat(1, 3), rat(0)}};
    CHECK(truncated_weight_direct<Rational>(2, w2) == rat(1, 3) - rat(1));
    CHECK(truncated_weight_scheme<Rational>(2, w2) == rat(1, 3) - rat(1));
}

TEST_CASE("truncated weight: scheme equals direct sum exactly") {
    for (int n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 12; ++trial) {
            auto w = random_symmetric_matrix(n);
            CHECK(truncated_weight_direct<Rational>(n, w) == truncated_weight_scheme<Rational>(n, w));
        }
}

TEST_CASE("truncated weight at w == 0 counts bare Penrose trees") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<std::vector<Rational>> zeros(static_cast<size_t>(n),
                                                 std::vector<Rational>(static_cast<size_t>(n), rat(0)));
        Rational direct = truncated_weight_direct<Rational>(n, zeros);
        long long bare = 0;
        for (const RootedTree& t : enumerate_rooted_trees(n - 1))
            if (penrose_graph(t).edges == tree_as_graph(t).edges) ++bare;
        Rational expect = rat(bare);
        if ((n - 1) % 2 == 1) expect = -expect;  // each tree carries (-1)^(n-1)
        CHECK(direct == expect);
    }
}

TEST_CASE("penrose concatenation") {
    RootedTree edge = RootedTree::from_parent_map({0});

    // single part: identity up to labels
    RootedTree t = RootedTree::from_parent_map({0, 1, 0});
    CHECK(penrose_concatenate({LabeledTree{t, {1, 2, 3}}}) == t);

    // two single-edge trees -> path 0-1-2
    RootedTree merged = penrose_concatenate({LabeledTree{edge, {1}}, LabeledTree{edge, {2}}});
    CHECK(merged == RootedTree::from_parent_map({0, 1}));

    // edge counts add (every vertex keeps exactly one parent)
    RootedTree big = penrose_concatenate({LabeledTree{t, {2, 4, 5}}, LabeledTree{edge, {1}},
                                          LabeledTree{edge, {3}}});
    CHECK(big.n() == 5);

    CHECK_THROWS_AS(penrose_concatenate({LabeledTree{edge, {1}}, LabeledTree{edge, {1}}}),
                    LabelCollision);
    CHECK_THROWS_AS(penrose_concatenate({LabeledTree{edge, {2}}}), LabelCollision);
}

TEST_CASE("splittings: examples") {
    for (const RootedTree& t : enumerate_rooted_trees(3)) CHECK(count_splittings(t, 1) == 1);

    RootedTree path = RootedTree::from_parent_map({0, 1});
    CHECK(count_splittings(path, 2) == 1);

    RootedTree star = RootedTree::from_parent_map({0, 0});
    CHECK(count_splittings(star, 2) == 0);
    CHECK(split_class(star).ell == 1);
    CHECK(split_class(path).ell == 2);
}

TEST_CASE("splitting counts agree with direct concatenation enumeration") {
    for (int n = 2; n <= 4; ++n) {
        std::map<std::uint64_t, std::map<int, std::uint64_t>> direct;
        std::vector<int> all;
        for (int v = 1; v <= n; ++v) all.push_back(v);
        std::vector<LabeledTree> acc;
        enumerate_splittings(all, acc, [&](const std::vector<LabeledTree>& parts) {
            ++direct[penrose_concatenate(parts).key()][static_cast<int>(parts.size())];
        });
        for (const RootedTree& t : enumerate_rooted_trees(n))
            for (int k = 1; k <= n; ++k)
                CHECK(count_splittings(t, k) == direct[t.key()][k]);
    }
}

TEST_CASE("splitting structure: |Sp_k| = binom(ell-1, k-1)") {
    for (int n = 2; n <= 5; ++n)
        for (const RootedTree& t : enumerate_rooted_trees(n)) {
            const int ell = split_class(t).ell;
            for (int k = 1; k <= n; ++k)
                CHECK(count_splittings(t, k) ==
                      binomial_uint(static_cast<unsigned long>(ell - 1),
                                    static_cast<unsigned long>(k - 1))
                          .get_ui());
        }
}

TEST_CASE("unsplittable counts equal (n-1)^(n-1) and classes partition all trees") {
    for (int n = 2; n <= 7; ++n) {
        auto classes = classify_splittable(n);
        CHECK(classes[1] == ipow(n - 1, n - 1));
        long long total = 0;
        for (const auto& [ell, cnt] : classes) {
            CHECK(ell >= 1);
            CHECK(ell <= n);
            total += cnt;
        }
        CHECK(total == ipow(n + 1, n - 1));
    }
    CHECK(classify_splittable(2)[1] == 1);
    CHECK(classify_splittable(3)[1] == 4);
    CHECK(classify_splittable(5)[1] == 256);
}

TEST_CASE("splittability counts obey the exponential power law") {
    // count(ell, n)/n! = [x^n] (sum_m count(1, m) x^m/m!)^ell, checked in exact
    // rational arithmetic through n = 7.
    const int N = 7;
    std::vector<std::map<int, long long>> cls(static_cast<size_t>(N) + 1);
    for (int n = 1; n <= N; ++n) cls[static_cast<size_t>(n)] = classify_splittable(n);
    std::vector<Rational> unsplittable(static_cast<size_t>(N) + 1, rat(0));
    for (int n = 1; n <= N; ++n)
        unsplittable[static_cast<size_t>(n)] =
            rat(cls[static_cast<size_t>(n)][1]) / Rational(factorial(static_cast<unsigned>(n)));
    for (int ell = 1; ell <= N; ++ell) {
        // power of the exponential generating sequence
        std::vector<Rational> pw(static_cast<size_t>(N) + 1, rat(0));
        pw[0] = 1;
        for (int e = 0; e < ell; ++e) {
            std::vector<Rational> nxt(static_cast<size_t>(N) + 1, rat(0));
            for (int i = 0; i <= N; ++i)
                for (int j = 1; i + j <= N; ++j)
                    nxt[static_cast<size_t>(i + j)] +=
                        pw[static_cast<size_t>(i)] * unsplittable[static_cast<size_t>(j)];
            pw = nxt;
        }
        for (int n = ell; n <= N; ++n)
            CHECK(rat(cls[static_cast<size_t>(n)].count(ell) ? cls[static_cast<size_t>(n)][ell] : 0) /
                      Rational(factorial(static_cast<unsigned>(n))) ==
                  pw[static_cast<size_t>(n)]);
    }
}

TEST_CASE("faithfulness: scheme-edge differences split over the parts") {
    // For every splitting of every tree on up to 6 non-root vertices, the
    // added Penrose edges of the concatenation are the disjoint union of the
    // added Penrose edges of the embedded parts.
    for (int n = 2; n <= 6; ++n) {
        std::vector<int> all;
        for (int v = 1; v <= n; ++v) all.push_back(v);
        std::vector<LabeledTree> acc;
        enumerate_splittings(all, acc, [&](const std::vector<LabeledTree>& parts) {
            if (parts.size() < 2) return;
            const RootedTree merged = penrose_concatenate(parts);
            const std::uint32_t whole = penrose_graph(merged).edges & ~tree_as_graph(merged).edges;
            std::uint32_t acc_edges = 0;
            int attach = 0;
            for (const LabeledTree& p : parts) {
                const std::uint32_t diff =
                    penrose_graph(p.shape).edges & ~tree_as_graph(p.shape).edges;
                // map the part's canonical vertices into global labels
                for (int j = 1; j <= p.shape.n(); ++j)
                    for (int i = 0; i < j; ++i)
                        if (diff >> LabeledGraph::edge_bit(i, j) & 1u) {
                            const int gi = i == 0 ? attach : p.label_of(i);
                            const int gj = p.label_of(j);
                            const std::uint32_t bit = 1u << LabeledGraph::edge_bit(gi, gj);
                            CHECK((acc_edges & bit) == 0);  // disjointness
                            acc_edges |= bit;
                        }
                attach = p.j_max_label();
            }
            CHECK(acc_edges == whole);
        });
    }
}

TEST_CASE("cayley degree counts") {
    CHECK(cayley_degree_count(std::vector<int>{1, 2, 1}) == 1);
    CHECK(cayley_degree_count(std::vector<int>{3, 1, 1, 1}) == 1);
    CHECK(cayley_degree_count(std::vector<int>{2, 2, 1, 1}) == 2);
    CHECK_THROWS_AS(cayley_degree_count(std::vector<int>{1, 1, 1}), InvalidDegreeSequence);
    CHECK_THROWS_AS(cayley_degree_count(std::vector<int>{0, 2, 2, 2}), InvalidDegreeSequence);

    // cross-check against enumeration for n = 4
    std::map<std::vector<int>, long long> by_degrees;
    for (const RootedTree& t : enumerate_rooted_trees(4)) ++by_degrees[t.degrees()];
    for (const auto& [deg, cnt] : by_degrees)
        CHECK(cayley_degree_count(deg) == static_cast<unsigned long long>(cnt));
}
