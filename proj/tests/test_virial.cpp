#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mayer/trees.hpp"
#include "mayer/virial.hpp"

using namespace mayer;

namespace {

std::mt19937 rng(987654);

Rational random_nonneg_ghat() {
    std::uniform_int_distribution<int> num(0, 8);
    return rat(num(rng), 8);
}

Rational random_rational() {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 6);
    return rat(num(rng), den(rng));
}

// Direct oracle: sum over all rooted trees of the product of sibling-count
// weights, divided by n!.
Rational tree_sum_by_enumeration(const std::vector<Rational>& ghat, int n) {
    auto g_of = [&](int k) {
        if (k == 0) return rat(1);
        return k < static_cast<int>(ghat.size()) ? ghat[static_cast<size_t>(k)] : rat(0);
    };
    Rational total(0);
    for (const RootedTree& t : enumerate_rooted_trees(n)) {
        Rational prod(1);
        for (int s : t.sibling_counts()) prod *= g_of(s);
        total += prod;
    }
    return total / Rational(factorial(static_cast<unsigned>(n)));
}

std::vector<Rational> hard_rod_ghat() { return {rat(0), rat(1), rat(1, 4)}; }

VertexCoefficients power_law_reference_vc() {
    VertexCoefficients vc(4.0 * std::acos(-1.0) * std::sqrt(std::acos(-1.0)) / 3.0, 5);
    vc.set_monte_carlo(2, 0.6917, 0.0);
    vc.set_monte_carlo(3, 0.3685, 0.0);
    vc.set_monte_carlo(4, 0.145, 0.0);
    vc.set_monte_carlo(5, 0.0627, 0.0);
    return pad_submultiplicative(vc, 14);
}

}  // namespace

TEST_CASE("tree sum: functional equation basics") {
    // free gas
    auto t = tree_sum_functional_coeffs<Rational>({rat(0)}, 6);
    for (int n = 1; n <= 6; ++n) CHECK(t[static_cast<size_t>(n)] == rat(0));
    CHECK(t[0] == rat(1));

    // first order is ghat(1)
    auto h = tree_sum_functional_coeffs<Rational>(hard_rod_ghat(), 4);
    CHECK(h[1] == rat(1));
    CHECK(h[2] == rat(9, 8));
    CHECK(h[3] == rat(11, 8));
    CHECK(h[4] == rat(57, 32));
}

TEST_CASE("tree sum: dual paths agree exactly to order 8") {
    CHECK(tree_sum_degree_coeffs<Rational>(hard_rod_ghat(), 8) ==
          tree_sum_functional_coeffs<Rational>(hard_rod_ghat(), 8));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> g{rat(0)};
        for (int k = 1; k <= 8; ++k) g.push_back(random_nonneg_ghat());
        CHECK(tree_sum_degree_coeffs<Rational>(g, 8) == tree_sum_functional_coeffs<Rational>(g, 8));
    }
}

TEST_CASE("tree sum: degree formula equals direct tree enumeration") {
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Rational> g{rat(0)};
        for (int k = 1; k <= 5; ++k) g.push_back(random_nonneg_ghat());
        auto deg = tree_sum_degree_coeffs<Rational>(g, 5);
        for (int n = 1; n <= 5; ++n)
            CHECK(deg[static_cast<size_t>(n)] == tree_sum_by_enumeration(g, n));
    }
}

TEST_CASE("tree sum: unit weights give the Cayley counts") {
    std::vector<Rational> ones(9, rat(1));
    ones[0] = rat(0);
    auto t = tree_sum_functional_coeffs<Rational>(ones, 8);
    for (int n = 1; n <= 8; ++n) {
        Integer expect = 1;
        for (int i = 0; i < n - 1; ++i) expect *= n + 1;
        CHECK(t[static_cast<size_t>(n)] * Rational(factorial(static_cast<unsigned>(n))) ==
              Rational(expect));
    }
}

TEST_CASE("unsplittable series t_pen1") {
    // B = 1 -> T = 0
    auto z = t_pen1_coeffs<Rational>({rat(1), rat(0), rat(0)});
    CHECK(z == std::vector<Rational>{rat(0), rat(0), rat(0)});

    // unit weights: n! [x^n] T = (n-1)^(n-1), matching the splitting classifier
    std::vector<Rational> ones(8, rat(1));
    ones[0] = rat(0);
    auto b = tree_sum_functional_coeffs<Rational>(ones, 7);
    auto t = t_pen1_coeffs<Rational>(b);
    for (int n = 1; n <= 7; ++n) {
        Integer expect = 1;
        for (int i = 0; i < n - 1; ++i) expect *= n - 1;
        CHECK(t[static_cast<size_t>(n)] * Rational(factorial(static_cast<unsigned>(n))) ==
              Rational(expect));
    }
    for (int n = 2; n <= 6; ++n) {
        auto classes = classify_splittable(n);
        CHECK(t[static_cast<size_t>(n)] * Rational(factorial(static_cast<unsigned>(n))) ==
              rat(classes[1]));
    }

    // nonnegative coefficients for any repulsive (nonnegative) weights
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> g{rat(0)};
        for (int k = 1; k <= 8; ++k) g.push_back(random_nonneg_ghat());
        auto tb = t_pen1_coeffs<Rational>(tree_sum_functional_coeffs<Rational>(g, 8));
        for (const Rational& c : tb) CHECK(c >= 0);
    }
}

TEST_CASE("splittable-power identity: sum of T^m recovers B - 1") {
    for (int trial = 0; trial < 8; ++trial) {
        const int N = 8;
        std::vector<Rational> g{rat(0)};
        for (int k = 1; k <= N; ++k) g.push_back(random_nonneg_ghat());
        auto b = tree_sum_functional_coeffs<Rational>(g, N);
        auto t = t_pen1_coeffs<Rational>(b);
        // accumulate sum_{m=1..N} T^m truncated at N
        std::vector<Rational> acc(static_cast<size_t>(N) + 1, rat(0));
        std::vector<Rational> pw(static_cast<size_t>(N) + 1, rat(0));
        pw[0] = rat(1);
        for (int m = 1; m <= N; ++m) {
            std::vector<Rational> nxt(static_cast<size_t>(N) + 1, rat(0));
            for (int i = 0; i <= N; ++i)
                for (int j = 0; i + j <= N; ++j)
                    nxt[static_cast<size_t>(i + j)] +=
                        pw[static_cast<size_t>(i)] * t[static_cast<size_t>(j)];
            pw = nxt;
            for (int i = 0; i <= N; ++i) acc[static_cast<size_t>(i)] += pw[static_cast<size_t>(i)];
        }
        for (int i = 1; i <= N; ++i) CHECK(acc[static_cast<size_t>(i)] == b[static_cast<size_t>(i)]);
    }
}

TEST_CASE("virial coefficients from cluster coefficients: dual paths") {
    CHECK(virial_from_cluster_bell({}, 0) == rat(1));
    CHECK(virial_from_cluster_lagrange({}, 0) == rat(1));

    // beta_2 = -b_2
    std::vector<Rational> b{rat(3, 7)};
    CHECK(virial_from_cluster_bell(b, 1) == rat(-3, 7));
    CHECK(virial_from_cluster_lagrange(b, 1) == rat(-3, 7));

    // beta_3 = 6 b_2^2 - 2 b_3
    std::vector<Rational> b3{rat(1, 2), rat(5)};
    CHECK(virial_from_cluster_bell(b3, 2) == rat(6) * rat(1, 4) - rat(2) * rat(5));
    CHECK(virial_from_cluster_lagrange(b3, 2) == virial_from_cluster_bell(b3, 2));

    // ideal gas: all zero
    std::vector<Rational> zeros(6, rat(0));
    for (int n = 1; n <= 5; ++n) CHECK(virial_from_cluster_bell(zeros, n) == rat(0));

    // random rational agreement through beta_8
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> bb;
        for (int i = 0; i < 7; ++i) bb.push_back(random_rational());
        for (int n = 1; n <= 7; ++n)
            CHECK(virial_from_cluster_bell(bb, n) == virial_from_cluster_lagrange(bb, n));
    }

    CHECK_THROWS_AS(virial_from_cluster_bell({rat(1)}, 3), InsufficientCoefficients);
}

TEST_CASE("GRT bound") {
    const GrtBound g = grt_bound(1.0);
    // The defining equations give 0.2319610/C; this equals the exponential
    // efficient-criterion value exactly (same scalar fixed-point algebra).
    CHECK(g.r_grt == doctest::Approx(0.2319610).epsilon(2e-6));
    CHECK(g.r_hat == doctest::Approx(0.356310).epsilon(2e-5));
    CHECK(g.tail_bound < 1e-6);

    auto cls = VertexCoefficients::classical_only(1.0);
    const PsiFunction expfn(cls, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(expfn);
    const MStarResult m1 = m_star(expfn, rs.mu_star);
    CHECK(g.r_grt == doctest::Approx(m1.value).epsilon(1e-6));

    CHECK(grt_bound(2.0).r_grt == doctest::Approx(g.r_grt / 2).epsilon(1e-9));
    CHECK(g.r_grt / lp_classical_bound(1.0) > 1.6);

    // refinement with more terms moves the value by less than the tail bound
    const GrtBound g8 = grt_bound(1.0, 800);
    CHECK(std::abs(g8.r_grt - g.r_grt) <= g.tail_bound + g8.tail_bound);

    CHECK_THROWS_AS(grt_bound(1.0, 16), TruncationInsufficient);
}

TEST_CASE("efficient criterion M*") {
    // exponential vertex sum: alpha* solves e^a (1 - a) = 1/2
    auto cls = VertexCoefficients::classical_only(1.0);
    const PsiFunction expfn(cls, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(expfn);
    const MStarResult m1 = m_star(expfn, rs.mu_star);
    CHECK(m1.mu_arg == doctest::Approx(0.768039).epsilon(2e-6));
    CHECK(m1.value == doctest::Approx(0.231961).epsilon(2e-6));

    auto cls2 = VertexCoefficients::classical_only(2.0);
    const PsiFunction expfn2(cls2, PsiMode::Upper);
    const RStarResult rs2 = optimize_r_star(expfn2);
    CHECK(m_star(expfn2, rs2.mu_star).value == doctest::Approx(0.231961 / 2).epsilon(2e-6));

    // hard rods: max alpha/(1 + 2 alpha + alpha^2/4) = 1/3 at alpha = 2
    auto rods = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
    const PsiFunction rodsfn(rods, PsiMode::Upper);
    const RStarResult rrs = optimize_r_star(rodsfn);
    const MStarResult mrods = m_star(rodsfn, rrs.mu_star);
    CHECK(mrods.value == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(mrods.mu_arg == doctest::Approx(2.0).epsilon(1e-5));

    // hard disks with the reference coefficients
    auto disks = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(1.0, 2));
    const PsiFunction disksfn(disks, PsiMode::Upper);
    const RStarResult drs = optimize_r_star(disksfn);
    const MStarResult mdisks = m_star(disksfn, drs.mu_star);
    CHECK(mdisks.value * disks.c_beta() == doctest::Approx(0.300224).epsilon(1e-4));
}

TEST_CASE("r_star_virial") {
    // free gas: B = 1, so r B/(2B - 1) = r maxes at the cap
    TreeSum free_gas{{1.0, 0.0, 0.0}, 1.0, TreeSum::Source::FunctionalEquation, std::nullopt};
    CHECK(r_star_virial(free_gas, 0.3, false).value == doctest::Approx(0.3).epsilon(1e-9));
    CHECK_THROWS_AS(r_star_virial(free_gas, 0.0, false), DomainEmpty);

    // hard rods: the truncated estimate dominates M* and converges down to it
    auto rods = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
    const PsiFunction fn(rods, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(fn);
    const double mstar = m_star(fn, rs.mu_star).value;
    const TreeSum b20 = tree_sum_functional(rods, 20, PsiMode::Lower);
    const TreeSum b60 = tree_sum_functional(rods, 60, PsiMode::Lower);
    const double r20 = r_star_virial(b20, rs.r_star, false).value;
    const double r60 = r_star_virial(b60, rs.r_star, false).value;
    CHECK(r20 >= mstar * (1 - 1e-12));
    CHECK(r60 >= mstar * (1 - 1e-12));
    CHECK(r60 <= r20);
    CHECK(r60 <= mstar * 1.05);

    // certified evaluation can only shrink the estimate
    const TreeSum bc = tree_sum_functional(rods, 20, PsiMode::Upper);
    const double rc = r_star_virial(bc, rs.r_star, true).value;
    CHECK(rc <= r20 * (1 + 1e-12));
    CHECK(rc >= 0);
}

TEST_CASE("bound chain: |z| B(|z|) below the fixed point mu_z") {
    // the truncated tree sum underestimates B, so z B_N(z) must sit below the
    // smallest fixed point of z Psi for every admissible z
    auto rods = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
    const PsiFunction fn(rods, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(fn);
    const TreeSum b = tree_sum_functional(rods, 40, PsiMode::Lower);
    for (double frac : {0.2, 0.5, 0.8, 0.95}) {
        const double z = frac * rs.r_star;
        const double mu_z = fixed_point_mu_z(z, fn, rs);
        CHECK(z * b.evaluate(z) <= mu_z * (1 + 1e-9));
        // and the certified evaluation stays above the same product
        const TreeSum bc = tree_sum_functional(rods, 40, PsiMode::Upper);
        CHECK(z * bc.evaluate_upper(z) >= z * b.evaluate(z) * (1 - 1e-12));
    }
}

TEST_CASE("virial term bound") {
    auto rods = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
    const PsiFunction fn(rods, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(fn);
    const TreeSum b = tree_sum_functional(rods, 64, PsiMode::Lower);

    // n = 0 consistency with beta_1 = 1
    CHECK(virial_term_bound(b, 0, rs.r_star).value == doctest::Approx(1.0));

    // the two forms of the infimum agree once tails are negligible
    const VirialTermBound vb = virial_term_bound(b, 3, 0.6 * rs.r_star);
    CHECK(vb.inf_tree_form == doctest::Approx(vb.inf_unsplittable).epsilon(1e-12));

    // n = 1: the bound dominates |beta_2|/2! = C/2
    const VirialTermBound v1 = virial_term_bound(b, 1, rs.r_star);
    CHECK(v1.value >= 0.5 * rods.c_beta() * (1 - 1e-12));
}

TEST_CASE("power-law reference pipeline values") {
    auto vc = power_law_reference_vc();
    const double c = vc.c_beta();
    const PsiFunction lowfn(vc, PsiMode::Lower);
    const RStarResult rs = optimize_r_star(lowfn);
    CHECK(rs.r_star * c == doctest::Approx(0.427970).epsilon(5e-5));

    const MStarResult ms = m_star(lowfn, rs.mu_star);
    CHECK(ms.value * c == doctest::Approx(0.2612496).epsilon(1e-4));

    const TreeSum b = tree_sum_functional(vc, 14, PsiMode::Lower);
    const double rv = r_star_virial(b, rs.r_star, false).value;
    CHECK(rv * c == doctest::Approx(0.269402).epsilon(5e-3));
    CHECK(rv >= ms.value * (1 - 1e-12));
}

TEST_CASE("virial report") {
    auto rods = VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
    const ClusterReport cr = make_cluster_report(rods);
    const VirialReport vr = make_virial_report(rods, cr, 20);
    CHECK(vr.m_star_certified == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(vr.m_star_certified >= vr.r_lp_classical);
    CHECK(vr.r_grt == doctest::Approx(0.2319610).epsilon(1e-5));
    CHECK(vr.r_star_virial_estimate >= vr.m_star_estimate * (1 - 1e-12));
    CHECK(vr.r_star_virial_certified.has_value());

    const ClusterReport ideal = make_cluster_report(VertexCoefficients::classical_only(0.0));
    CHECK(make_virial_report(VertexCoefficients::classical_only(0.0), ideal).infinite_radius);
}
