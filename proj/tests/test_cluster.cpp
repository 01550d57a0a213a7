#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mayer/cluster.hpp"

using namespace mayer;

namespace {

VertexCoefficients hard_rods() {
    return VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(0.5, 1));
}

VertexCoefficients hard_disks() {
    return VertexCoefficients::hard_sphere_reference(PairPotential::hard_sphere(1.0, 2));
}

}  // namespace

TEST_CASE("classical bound") {
    CHECK(classical_bound(1.0) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(classical_bound(2.0) == doctest::Approx(0.1839397).epsilon(1e-6));

    // closed-form argmax of mu e^{-mu C} is mu = 1/C
    auto vc = VertexCoefficients::classical_only(1.7);
    const RStarResult r = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
    CHECK(r.r_star == doctest::Approx(classical_bound(1.7)).epsilon(1e-8));
    CHECK(r.mu_star == doctest::Approx(1.0 / 1.7).epsilon(1e-6));
}

TEST_CASE("lambert pressure bound") {
    CHECK(lambert_pressure_bound(0.0, 2.0) == 0.0);
    const double c = 2.0;
    CHECK(lambert_pressure_bound(classical_bound(c), c) == doctest::Approx(1.0 / c).epsilon(1e-9));
    CHECK_THROWS_AS(lambert_pressure_bound(0.2, 2.0), OutOfDomain);

    // agreement with the fixed point of mu = z e^{C mu}
    auto vc = VertexCoefficients::classical_only(c);
    const PsiFunction psi_fn(vc, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(psi_fn);
    for (double frac : {0.1, 0.5, 0.9, 0.99}) {
        const double z = frac * classical_bound(c);
        CHECK(fixed_point_mu_z(z, psi_fn, rs) ==
              doctest::Approx(lambert_pressure_bound(z, c)).epsilon(1e-10));
    }
}

TEST_CASE("first correction bound") {
    const double c = 1.3;
    CHECK(first_correction_bound(c, c * c).ratio_to_classical == doctest::Approx(1.0));

    // hard disks: delta = 3^{3/4}/(2 sqrt(pi)), ratio about 1.25
    const double ghat2 = 3.0 * std::sqrt(3.0) / (4.0 * std::acos(-1.0));
    const auto fc = first_correction_bound(1.0, ghat2);
    CHECK(fc.delta == doctest::Approx(std::pow(3.0, 0.75) / (2 * std::sqrt(std::acos(-1.0)))));
    CHECK(fc.ratio_to_classical == doctest::Approx(1.2541).epsilon(1e-3));

    // g2 -> 0 limit: r2 -> 1/(C sinh 1)
    CHECK(first_correction_bound(c, 1e-18).r2 ==
          doctest::Approx(1.0 / (c * std::sinh(1.0))).epsilon(1e-6));

    CHECK_THROWS_AS(first_correction_bound(1.0, 1.5), InvalidG2);
}

TEST_CASE("optimize_r_star: hard rods") {
    auto vc = hard_rods();  // C = V1 = 1 for radius 1/2
    const RStarResult r = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
    CHECK(r.r_star * vc.c_beta() == doctest::Approx(0.5857864376).epsilon(1e-7));
    CHECK(r.mu_star * vc.c_beta() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-6));
    // lower and upper coincide for an exact polynomial vertex sum
    const RStarResult rl = optimize_r_star(PsiFunction(vc, PsiMode::Lower));
    CHECK(rl.r_star == doctest::Approx(r.r_star).epsilon(1e-12));
}

TEST_CASE("optimize_r_star: hard disks reference coefficients") {
    auto vc = hard_disks();
    const RStarResult r = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
    // honest maximum of alpha/Psi2(alpha) with the stored coefficients
    CHECK(r.r_star * vc.c_beta() == doctest::Approx(0.5120874).epsilon(2e-6));
    CHECK(r.mu_star * vc.c_beta() == doctest::Approx(2.01458).epsilon(1e-4));
}

TEST_CASE("fixed point mu_z") {
    auto vc = hard_rods();
    const PsiFunction psi_fn(vc, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(psi_fn);

    CHECK(fixed_point_mu_z(0.0, psi_fn, rs) == 0.0);

    // at the endpoint z = r* the fixed point is the maximizer itself
    CHECK(fixed_point_mu_z(rs.r_star, psi_fn, rs) ==
          doctest::Approx(std::sqrt(8.0)).epsilon(1e-5));

    // monotone in z and always below mu*
    double prev = 0.0;
    for (double frac : {0.2, 0.5, 0.8, 0.95, 1.0}) {
        const double mu = fixed_point_mu_z(frac * rs.r_star, psi_fn, rs);
        CHECK(mu >= prev - 1e-12);
        CHECK(mu <= rs.mu_star * (1 + 1e-9));
        prev = mu;
    }
    CHECK_THROWS_AS(fixed_point_mu_z(rs.r_star * 1.01, psi_fn, rs), NoConvergence);

    // exponential tangency point: z = 1/(eC) gives mu_z = 1/C
    auto cls = VertexCoefficients::classical_only(1.0);
    const PsiFunction expfn(cls, PsiMode::Upper);
    const RStarResult ers = optimize_r_star(expfn);
    CHECK(fixed_point_mu_z(ers.r_star, expfn, ers) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(fixed_point_mu_z(0.5 * ers.r_star, expfn) ==
          doctest::Approx(fixed_point_mu_z(0.5 * ers.r_star, expfn, ers)));
}

TEST_CASE("optimize_r_star reports a missing interior maximum") {
    // Psi = 1 + mu C makes mu/Psi increase forever: the sup is never attained
    VertexCoefficients vc(1.0, 2);
    vc.set_exact(2, 0.0);
    vc.set_zero_tail(true);
    CHECK_THROWS_AS(optimize_r_star(PsiFunction(vc, PsiMode::Upper)), NoInteriorMax);
}

TEST_CASE("pi iteration sequence") {
    auto vc = hard_rods();
    const PsiFunction psi_fn(vc, PsiMode::Upper);
    const RStarResult rs = optimize_r_star(psi_fn);
    const double z = 0.8 * rs.r_star;
    const double mu_z = fixed_point_mu_z(z, psi_fn, rs);

    // a fixed point stays fixed
    auto fixed = pi_iteration_sequence(z, psi_fn, mu_z, 5);
    for (double v : fixed) CHECK(v == doctest::Approx(mu_z).epsilon(1e-10));

    // from mu* the sequence decreases strictly to mu_z
    auto seq = pi_iteration_sequence(z, psi_fn, rs.mu_star, 200);
    for (size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] < seq[i - 1] + 1e-15);
    CHECK(seq.front() <= rs.mu_star);
    CHECK(seq.back() == doctest::Approx(mu_z).epsilon(1e-10));
    for (double v : seq) CHECK(v >= mu_z - 1e-12);

    CHECK_THROWS_AS(pi_iteration_sequence(z, psi_fn, 0.01 * mu_z, 3), PreconditionViolated);
}

TEST_CASE("penrose upper bound") {
    std::vector<double> b{0, 1, -1.0};
    CHECK(penrose_upper_bound(b, 2) == doctest::Approx(1.0));
    b[2] = -2.0;
    CHECK(penrose_upper_bound(b, 2) == doctest::Approx(0.5));
    b[2] = 0.0;
    CHECK_THROWS_AS(penrose_upper_bound(b, 2), ZeroCoefficient);

    // hard rods: b_n = (-n)^{n-1} a^{n-1}; every bound sits above the exact
    // radius 1/(e a), which sits above the certified r*
    const double a = 0.5;
    auto vc = hard_rods();
    const RStarResult rs = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
    std::vector<double> rods_b{0, 1};
    for (int n = 2; n <= 7; ++n)
        rods_b.push_back(std::pow(-static_cast<double>(n), n - 1) * std::pow(a, n - 1));
    const double exact_radius = 1.0 / (std::exp(1.0) * a);
    for (int n = 2; n <= 7; ++n) {
        const double ub = penrose_upper_bound(rods_b, n);
        CHECK(ub >= exact_radius * (1 - 1e-12));
        CHECK(ub >= rs.r_star);
    }
}

TEST_CASE("cluster report") {
    auto vc = hard_rods();
    ClusterReport rep = make_cluster_report(vc, 0.8 * 0.5857864376);
    CHECK_FALSE(rep.infinite_radius);
    CHECK(rep.r_classical <= rep.r_star_certified * (1 + 1e-12));
    CHECK(rep.r_star_certified <= rep.penrose_upper_n2 * (1 + 1e-12));
    CHECK(rep.mu_z.has_value());
    CHECK(*rep.mu_z <= rep.mu_star_certified * (1 + 1e-9));
    CHECK(rep.first_correction.has_value());

    // ideal gas: symbolic infinity
    ClusterReport ideal = make_cluster_report(VertexCoefficients::classical_only(0.0));
    CHECK(ideal.infinite_radius);
}

TEST_CASE("sandwich r_classical <= r* <= 1/C across vertex sequences") {
    std::vector<VertexCoefficients> cases;
    cases.push_back(hard_rods());
    cases.push_back(hard_disks());
    cases.push_back(VertexCoefficients::classical_only(3.7));
    {
        VertexCoefficients vc(2.0, 5);
        vc.set_monte_carlo(2, 0.6917, 4e-4);
        vc.set_monte_carlo(3, 0.3685, 4e-4);
        vc.set_monte_carlo(4, 0.145, 3e-4);
        vc.set_monte_carlo(5, 0.0627, 2e-4);
        cases.push_back(pad_submultiplicative(vc, 14));
    }
    for (const auto& vc : cases) {
        const RStarResult r = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
        CHECK(classical_bound(vc.c_beta()) <= r.r_star * (1 + 1e-10));
        CHECK(r.r_star <= (1.0 / vc.c_beta()) * (1 + 1e-12));
    }
}
