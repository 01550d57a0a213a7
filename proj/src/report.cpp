#include "mayer/report.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mayer/series.hpp"
#include "mayer/trees.hpp"

namespace mayer {

namespace {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::MonteCarlo: return "monte_carlo";
        case Provenance::Bound: return "bound";
    }
    return "bound";
}

VertexCoefficients build_vertex(const PairPotential& p, const RunConfig& cfg, double c) {
    if (c <= 0.0) return VertexCoefficients::classical_only(0.0);

    if (p.kind() == PotentialKind::HardSphere && p.dimension() == 1)
        return VertexCoefficients::hard_sphere_reference(p);
    if (p.kind() == PotentialKind::HardSphere && p.dimension() == 2 && !cfg.seed)
        return VertexCoefficients::hard_sphere_reference(p);

    // Monte Carlo for the low orders, submultiplicative padding beyond.
    if (!cfg.seed)
        throw ConfigError("this potential needs Monte Carlo vertex integrals: pass --seed");
    const int n_mc = std::min(cfg.order, 5);
    VertexCoefficients vc(c, std::max(n_mc, 1));
    for (int n = 2; n <= n_mc; ++n) {
        if (auto exact = g_exact_normalized(p, n)) {
            vc.set_exact(n, *exact);
            continue;
        }
        const GEstimate g = g_monte_carlo(p, n, cfg.samples, *cfg.seed + static_cast<std::uint64_t>(n),
                                          cfg.workers);
        vc.set_monte_carlo(n, g.normalized, g.normalized_err);
    }
    if (p.kind() == PotentialKind::HardSphere && p.dimension() == 2) {
        VertexCoefficients padded = pad_submultiplicative(vc, 5);
        padded.set_zero_tail(true);
        return padded;
    }
    return pad_submultiplicative(vc, cfg.order);
}

/// Exact Tonks-gas cluster coefficients b_n = (-n)^{n-1} a^{n-1} feed the
/// virial-coefficient machinery when the model is hard rods.
std::vector<double> hard_rod_beta_over_factorial(double radius, int up_to) {
    std::vector<Rational> b2up;
    const Rational a(radius);
    Rational apow = a;
    for (int n = 2; n <= up_to + 1; ++n) {
        Rational bn = apow;
        if ((n - 1) % 2 == 1) bn = -bn;
        Integer nf = 1;
        for (int i = 0; i < n - 1; ++i) nf *= n;
        b2up.push_back(bn * Rational(nf));
        apow *= a;
    }
    std::vector<double> out{0.0, 1.0};  // beta_1 = 1
    for (int n = 1; n < up_to; ++n) {
        const Rational beta = virial_from_cluster_bell(b2up, n);
        out.push_back(to_double(beta / Rational(factorial(static_cast<unsigned>(n + 1)))));
    }
    return out;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg) {
    if (cfg.order < 2) throw ConfigError("truncation order must be at least 2");
    PipelineResult out;
    out.potential = potential_from_json(cfg.potential);
    const double c = c_beta(out.potential);
    out.vertex = build_vertex(out.potential, cfg, c);
    out.cluster = make_cluster_report(out.vertex);
    out.virial = make_virial_report(out.vertex, out.cluster, cfg.order);
    if (out.potential.kind() == PotentialKind::HardSphere && out.potential.dimension() == 1)
        out.virial.beta_over_factorial =
            hard_rod_beta_over_factorial(out.potential.radius(), std::min(cfg.order, 8));
    return out;
}

nlohmann::json report_to_json(const RunConfig& cfg, const PipelineResult& res) {
    const bool cert_only = cfg.certified_only;
    nlohmann::json j;
    j["schema"] = "virial-bounds/1";
    j["potential"] = potential_to_json(res.potential);
    j["config"]["order"] = cfg.order;
    j["config"]["samples"] = cfg.samples;
    if (cfg.seed) j["config"]["seed"] = *cfg.seed;
    j["config"]["workers"] = cfg.workers;
    j["config"]["certified_only"] = cert_only;
    j["c_beta"] = res.vertex.c_beta();

    nlohmann::json vs = nlohmann::json::array();
    for (int n = 1; n <= res.vertex.order(); ++n) {
        if (!res.vertex.has(n)) continue;
        const VertexEntry& e = res.vertex.entry(n);
        nlohmann::json row;
        row["n"] = n;
        row["provenance"] = provenance_name(e.provenance);
        if (cert_only) {
            row["ghat_upper"] = res.vertex.upper(n);
        } else {
            row["ghat"] = e.value;
            row["ghat_upper"] = res.vertex.upper(n);
            if (e.provenance == Provenance::MonteCarlo) row["std_err"] = e.std_err;
        }
        vs.push_back(std::move(row));
    }
    j["vertex_coefficients"] = std::move(vs);

    const ClusterReport& cl = res.cluster;
    nlohmann::json c;
    c["infinite_radius"] = cl.infinite_radius;
    if (!cl.infinite_radius) {
        const double cb = cl.c_beta;
        c["r_classical"] = cl.r_classical;
        c["r_classical_times_c"] = cl.r_classical * cb;
        c["r_star"]["certified"] = cl.r_star_certified;
        c["r_star"]["certified_times_c"] = cl.r_star_certified * cb;
        c["mu_star"]["certified"] = cl.mu_star_certified;
        c["mu_star"]["certified_times_c"] = cl.mu_star_certified * cb;
        if (!cert_only) {
            c["r_star"]["estimate"] = cl.r_star_estimate;
            c["r_star"]["estimate_times_c"] = cl.r_star_estimate * cb;
            c["mu_star"]["estimate"] = cl.mu_star_estimate;
        }
        c["penrose_upper_n2"] = cl.penrose_upper_n2;
        if (cl.first_correction) {
            c["first_correction"]["r2"] = cl.first_correction->r2;
            c["first_correction"]["ratio_to_classical"] = cl.first_correction->ratio_to_classical;
            c["first_correction"]["delta"] = cl.first_correction->delta;
        }
        if (cl.z_abs) {
            c["z_abs"] = *cl.z_abs;
            c["mu_z"] = *cl.mu_z;
            c["z_at_endpoint"] = cl.z_at_endpoint;
        }
        c["metadata"]["truncation"] = cl.truncation;
        c["metadata"]["psi_mode"] = "upper";
        c["metadata"]["optimizer_iterations"] = cl.optimizer_iterations;
    }
    j["cluster"] = std::move(c);

    const VirialReport& vr = res.virial;
    nlohmann::json v;
    v["infinite_radius"] = vr.infinite_radius;
    if (!vr.infinite_radius) {
        const double cb = vr.c_beta;
        v["m_star"]["certified"] = vr.m_star_certified;
        v["m_star"]["certified_times_c"] = vr.m_star_certified * cb;
        v["m_star"]["mu_arg"] = vr.m_star_mu;
        if (vr.r_star_virial_certified) {
            v["r_star_virial"]["certified"] = *vr.r_star_virial_certified;
            v["r_star_virial"]["certified_times_c"] = *vr.r_star_virial_certified * cb;
        }
        if (!cert_only) {
            v["m_star"]["estimate"] = vr.m_star_estimate;
            v["m_star"]["estimate_times_c"] = vr.m_star_estimate * cb;
            v["r_star_virial"]["estimate"] = vr.r_star_virial_estimate;
            v["r_star_virial"]["estimate_times_c"] = vr.r_star_virial_estimate * cb;
        }
        v["r_grt"] = vr.r_grt;
        v["r_grt_times_c"] = vr.r_grt * cb;
        v["r_lp_classical"] = vr.r_lp_classical;
        if (vr.beta_over_factorial && !cert_only)
            v["beta_over_factorial"] = *vr.beta_over_factorial;
        v["metadata"]["truncation"] = vr.truncation;
    }
    j["virial"] = std::move(v);
    return j;
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

}  // namespace

std::string report_to_text(const nlohmann::json& j) {
    std::ostringstream os;
    os.precision(10);
    os << "potential: " << j["potential"]["kind"].get<std::string>()
       << "  d=" << j["potential"]["dimension"].get<int>()
       << "  beta=" << j["potential"]["beta"].get<double>() << "\n";
    os << "C(beta) = " << j["c_beta"].get<double>() << "\n";
    if (j["cluster"]["infinite_radius"].get<bool>()) {
        os << "C(beta) = 0: the pressure series is z itself; radius of convergence = infinite\n";
        return os.str();
    }
    auto line = [&os](const std::string& name, const nlohmann::json& v) {
        if (v.is_null()) return;
        os << "  " << name << " = " << v.get<double>() << "\n";
    };
    os << "cluster bounds (lower bounds on the fugacity radius):\n";
    line("r_classical        ", j["cluster"]["r_classical"]);
    line("r_classical * C    ", j["cluster"]["r_classical_times_c"]);
    line("r_star certified   ", j["cluster"]["r_star"]["certified"]);
    line("r_star certified *C", j["cluster"]["r_star"]["certified_times_c"]);
    if (j["cluster"]["r_star"].contains("estimate")) {
        line("r_star estimate    ", j["cluster"]["r_star"]["estimate"]);
        line("r_star estimate *C ", j["cluster"]["r_star"]["estimate_times_c"]);
    }
    line("penrose upper (n=2)", j["cluster"]["penrose_upper_n2"]);
    os << "virial bounds (lower bounds on the density radius):\n";
    line("M_star certified   ", j["virial"]["m_star"]["certified"]);
    line("M_star certified *C", j["virial"]["m_star"]["certified_times_c"]);
    if (j["virial"]["m_star"].contains("estimate")) {
        line("M_star estimate    ", j["virial"]["m_star"]["estimate"]);
        line("M_star estimate *C ", j["virial"]["m_star"]["estimate_times_c"]);
    }
    if (j["virial"].contains("r_star_virial") &&
        j["virial"]["r_star_virial"].contains("estimate"))
        line("R_star estimate *C ", j["virial"]["r_star_virial"]["estimate_times_c"]);
    line("R_GRT              ", j["virial"]["r_grt"]);
    line("R_GRT * C          ", j["virial"]["r_grt_times_c"]);
    line("R_LP classical     ", j["virial"]["r_lp_classical"]);
    return os.str();
}

std::string report_to_csv(const nlohmann::json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << "," << v << "\n";
    return os.str();
}

const std::vector<double>& grt_table_numerical_reference() {
    static const std::vector<double> ref{0.1092, 0.2418, 0.3280, 0.4022, 0.4634};
    return ref;
}

std::string grt_table_csv() {
    std::ostringstream os;
    os << "n,c_beta,r_grt,r_grt_times_c,r_num_reference\n";
    os.precision(6);
    for (int n = 4; n <= 8; ++n) {
        const auto p = PairPotential::power_law(1.0, 1.0, n, 3);
        const double c = c_beta(p);
        const GrtBound g = grt_bound(c);
        os << n << "," << c << "," << g.r_grt << "," << g.r_grt * c << ","
           << grt_table_numerical_reference()[static_cast<size_t>(n - 4)] << "\n";
    }
    return os.str();
}

namespace {

void add_check(nlohmann::json& checks, const std::string& name, bool pass,
               nlohmann::json detail = nullptr) {
    nlohmann::json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks.push_back(std::move(c));
}

}  // namespace

nlohmann::json verify_suite(int n_max) {
    if (n_max < 1 || n_max > 7) throw ConfigError("verify-trees: n must lie in [1, 7]");
    nlohmann::json checks = nlohmann::json::array();
    std::mt19937 rng(1234509876u);
    auto rand_rat = [&rng]() {
        std::uniform_int_distribution<int> num(-5, 5);
        return rat(num(rng), 5);
    };

    // Cayley counts, with the two enumerators cross-checked where both run
    {
        bool pass = true;
        nlohmann::json counts = nlohmann::json::array();
        for (int n = 1; n <= n_max; ++n) {
            long long expect = 1;
            for (int i = 0; i < n - 1; ++i) expect *= n + 1;
            const auto trees = enumerate_rooted_trees(n);
            pass = pass && static_cast<long long>(trees.size()) == expect;
            if (n <= 5)
                pass = pass && enumerate_trees_parent_maps(n).size() ==
                                   enumerate_trees_pruefer(n).size();
            counts.push_back(static_cast<long long>(trees.size()));
        }
        add_check(checks, "tree_counts_cayley", pass, counts);
    }

    // Penrose scheme: superset property and the exhaustive disjoint cover
    {
        bool superset = true;
        for (int n = 1; n <= std::min(n_max, 5); ++n)
            for (const RootedTree& t : enumerate_rooted_trees(n))
                superset = superset && penrose_graph(t).contains(tree_as_graph(t));
        add_check(checks, "penrose_superset", superset);

        bool cover = true;
        for (int n = 1; n <= std::min(n_max, 4); ++n) cover = cover && verify_partition_scheme(n);
        add_check(checks, "partition_scheme_disjoint_cover", cover,
                  {{"max_n", std::min(n_max, 4)}});
    }

    // truncated weights: scheme route vs direct connected-graph sum
    {
        bool pass = true;
        for (int nv = 2; nv <= std::min(n_max + 1, 5); ++nv)
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<std::vector<Rational>> w(
                    static_cast<size_t>(nv), std::vector<Rational>(static_cast<size_t>(nv), rat(0)));
                for (int i = 0; i < nv; ++i)
                    for (int jj = i + 1; jj < nv; ++jj) w[i][jj] = w[jj][i] = rand_rat();
                pass = pass && truncated_weight_direct<Rational>(nv, w) ==
                                   truncated_weight_scheme<Rational>(nv, w);
            }
        add_check(checks, "truncated_weight_dual_path", pass);
    }

    // splitting classification
    {
        bool pass = true;
        nlohmann::json unsplittable = nlohmann::json::array();
        for (int n = 1; n <= n_max; ++n) {
            auto classes = classify_splittable(n);
            long long expect = 1, total_expect = 1;
            for (int i = 0; i < n - 1; ++i) {
                expect *= n - 1;
                total_expect *= n + 1;
            }
            long long total = 0;
            for (const auto& [ell, cnt] : classes) total += cnt;
            pass = pass && classes[1] == expect && total == total_expect;
            unsplittable.push_back(classes[1]);
        }
        add_check(checks, "unsplittable_counts", pass, unsplittable);

        // exponential power law for the class sizes
        bool egf = true;
        std::vector<Rational> uns(static_cast<size_t>(n_max) + 1, rat(0));
        std::vector<std::map<int, long long>> cls(static_cast<size_t>(n_max) + 1);
        for (int n = 1; n <= n_max; ++n) {
            cls[static_cast<size_t>(n)] = classify_splittable(n);
            uns[static_cast<size_t>(n)] =
                rat(cls[static_cast<size_t>(n)][1]) / Rational(factorial(static_cast<unsigned>(n)));
        }
        for (int ell = 1; ell <= n_max; ++ell) {
            std::vector<Rational> pw(static_cast<size_t>(n_max) + 1, rat(0));
            pw[0] = rat(1);
            for (int e = 0; e < ell; ++e) {
                std::vector<Rational> nxt(static_cast<size_t>(n_max) + 1, rat(0));
                for (int i = 0; i <= n_max; ++i)
                    for (int jj = 1; i + jj <= n_max; ++jj)
                        nxt[static_cast<size_t>(i + jj)] +=
                            pw[static_cast<size_t>(i)] * uns[static_cast<size_t>(jj)];
                pw = nxt;
            }
            for (int n = ell; n <= n_max; ++n) {
                const long long have = cls[static_cast<size_t>(n)].count(ell)
                                           ? cls[static_cast<size_t>(n)][ell]
                                           : 0;
                egf = egf && rat(have) / Rational(factorial(static_cast<unsigned>(n))) ==
                                 pw[static_cast<size_t>(n)];
            }
        }
        add_check(checks, "splittable_exponential_power_law", egf);
    }

    // unsplittable series vs the classifier, through the tree sum
    {
        std::vector<Rational> ones(static_cast<size_t>(n_max) + 1, rat(1));
        ones[0] = rat(0);
        auto t = t_pen1_coeffs<Rational>(tree_sum_functional_coeffs<Rational>(ones, n_max));
        bool pass = true;
        for (int n = 2; n <= std::min(n_max, 6); ++n)
            pass = pass && t[static_cast<size_t>(n)] *
                                   Rational(factorial(static_cast<unsigned>(n))) ==
                               rat(classify_splittable(n)[1]);
        add_check(checks, "t_pen1_matches_classifier", pass);
    }

    // formal series spot checks
    {
        bool pass = true;
        Series b = Series::zero(10);
        b.coeff(1) = rat(1);
        for (int k = 2; k <= 10; ++k) b.coeff(k) = rand_rat();
        const Series inv = lagrange_inverse(b);
        pass = pass && compose(inv, b) == Series::x(10) && compose(b, inv) == Series::x(10);

        for (int m = 0; m <= 8 && pass; ++m)
            for (int ri = -6; ri <= 6 && pass; ++ri) {
                Rational s(0);
                for (int k = 0; k <= m; ++k)
                    s += generalized_binomial(rat(ri), static_cast<unsigned>(k + 1)) *
                         Rational(binomial_uint(static_cast<unsigned long>(m),
                                                static_cast<unsigned long>(k)));
                pass = pass && s == generalized_binomial(rat(ri + m), static_cast<unsigned>(m + 1));
            }

        for (int trial = 0; trial < 20 && pass; ++trial) {
            std::vector<Rational> b2up;
            for (int i = 0; i < 5; ++i) b2up.push_back(rand_rat());
            for (int n = 1; n <= 5 && pass; ++n)
                pass = pass && virial_from_cluster_bell(b2up, n) ==
                                   virial_from_cluster_lagrange(b2up, n);
        }
        add_check(checks, "formal_series_identities", pass);
    }

    bool all = true;
    for (const auto& c : checks) all = all && c["pass"].get<bool>();
    nlohmann::json out;
    out["schema"] = "virial-bounds/1";
    out["n_max"] = n_max;
    out["checks"] = std::move(checks);
    out["all_pass"] = all;
    return out;
}

}  // namespace mayer
