#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "sdtorus/curvature.hpp"
#include "sdtorus/runner.hpp"
#include "sdtorus/threepole.hpp"

using namespace sdt;

TEST_CASE("eh coordinates: examples and the sqrt(rho) F identity") {
    ThreePoleParams p2{1.0, 1.0, 0.0, ThreePoleKind::TypeII};
    HalfPlanePoint p = eh_coords(p2, std::sqrt(2.0), 0.0);
    CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.eta == doctest::Approx(0.0));

    MultipoleSpec s2 = threepole_spec(p2);
    Lcg rng(1);
    for (int k = 0; k < 50; ++k) {
        double R = 1.0 + rng.uniform(0.05, 4.0), th = rng.uniform(-1.4, 1.4);
        HalfPlanePoint q = eh_coords(p2, R, th);
        double lhs = std::sqrt(q.rho) * eval_F(s2, q).value();
        CHECK(std::abs(lhs - (1.0 + R)) < 1e-10 * (1.0 + R));
    }

    // general parameters, both types, plus the quarter-discriminant closed form
    for (auto kind : {ThreePoleKind::TypeII, ThreePoleKind::TypeI}) {
        ThreePoleParams prm{1.0, 0.7, 0.3, kind};
        for (int k = 0; k < 40; ++k) {
            double R = (kind == ThreePoleKind::TypeII)
                           ? 1.0 + rng.uniform(0.05, 4.0)
                           : rng.uniform(0.05, 4.0) * (k % 2 ? 1.0 : -1.0);
            double th = rng.uniform(-1.4, 1.4);
            int sheet = R > 0 ? +1 : -1;
            MultipoleSpec spec = threepole_spec(prm, sheet);
            HalfPlanePoint q = eh_coords(prm, R, th);
            Jet2 F = eval_F(spec, q);
            double lhs = std::sqrt(q.rho) * F.value();
            double rhs = 1.0 + 0.7 * R + 0.3 * std::sin(th);
            CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
            double quarter = (0.25 * F.value() * F.value() -
                              q.rho * q.rho * (F.dr() * F.dr() + F.de() * F.de())) /
                             q.rho;
            CHECK(std::abs(quarter - quarter_disc_eh(prm, R, th)) <
                  1e-10 * std::max(1.0, std::abs(quarter)));
        }
    }

    CHECK_THROWS_AS(eh_coords(p2, 0.9, 0.0), DomainError);
    CHECK_THROWS_AS(eh_coords(p2, 2.0, 2.0), DomainError);
}

TEST_CASE("threepole spec construction") {
    ThreePoleParams mono{1.0, 0.0, 0.0, ThreePoleKind::TypeII};
    MultipoleSpec ms = threepole_spec(mono);
    CHECK(ms.is_single_monopole());

    // Type I with c = 0 solves the PDE
    ThreePoleParams p1{1.0, 0.6, 0.0, ThreePoleKind::TypeI};
    MultipoleSpec s1 = threepole_spec(p1);
    Lcg rng(3);
    for (int k = 0; k < 25; ++k) {
        HalfPlanePoint q{rng.uniform(0.4, 2.2), rng.uniform(-1.5, 1.5)};
        CHECK(std::abs(pde_residual(s1, q)) < 1e-10 * std::max(1.0, pde_scale(s1, q)));
    }
    CHECK_THROWS_AS(threepole_spec(ThreePoleParams{0, 0, 0, ThreePoleKind::TypeII}),
                    InvalidInput);
}

TEST_CASE("type I boundaries: closed forms, ordering, vanishing loci") {
    // c = 0: R_inf = -1/b, R_pm = b
    TypeIBoundaries tb = typeI_boundaries(0.5, 0.0, 0.7);
    CHECK(tb.R_inf == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(tb.R_pm == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(typeI_boundaries(0.0, 0.5, 0.1), DomainError);

    Lcg rng(7);
    for (int k = 0; k < 1000; ++k) {
        double b = rng.uniform(1e-3, 3.0), c = rng.uniform(0.0, 3.0);
        double th = rng.uniform(-1.57, 1.57);
        TypeIBoundaries t = typeI_boundaries(b, c, th);
        CHECK(t.R_inf < t.R_pm);
    }

    for (int k = 0; k < 25; ++k) {
        double b = rng.uniform(0.2, 1.5), c = rng.uniform(0.0, 1.2);
        double th = rng.uniform(-1.4, 1.4);
        TypeIBoundaries t = typeI_boundaries(b, c, th);
        ThreePoleParams prm{1.0, b, c, ThreePoleKind::TypeI};
        MultipoleSpec si = threepole_spec(prm, t.R_inf > 0 ? +1 : -1);
        CHECK(std::abs(eval_F(si, eh_coords(prm, t.R_inf, th)).value()) < 1e-10);
        MultipoleSpec sp = threepole_spec(prm, t.R_pm > 0 ? +1 : -1);
        CHECK(std::abs(discriminant(sp, eh_coords(prm, t.R_pm, th))) < 1e-10);
    }
}

TEST_CASE("type II region: special points, lines, representatives") {
    CHECK(region_to_string(typeII_region(1.0, 0.0)) == "FubiniStudy");
    CHECK(region_to_string(typeII_region(0.0, 1.0)) == "Bergmann");
    CHECK(region_to_string(typeII_region(0.0, -1.0)) == "Bergmann");
    CHECK(region_to_string(typeII_region(-1.0, 0.0)) == "Bergmann");
    CHECK(region_to_string(typeII_region(0.0, 0.5)) == "BianchiVIII");
    CHECK(region_to_string(typeII_region(-0.4, 0.6)) == "BianchiVIII");  // b - c + 1 = 0
    CHECK(region_to_string(typeII_region(0.5, 0.5)) == "Dipole");
    CHECK(region_to_string(typeII_region(-0.8, 0.8)) == "Dipole");
    CHECK(region_to_string(typeII_region(2.0, 0.0)) == "BianchiIX");
    CHECK(region_to_string(typeII_region(0.3, 0.7)) == "BianchiIX");  // b + c = 1

    CHECK(region_to_string(typeII_region(0.5, 0.1, 100)) == "A");
    CHECK(region_to_string(typeII_region(0.1, 0.8, 100)) == "B");
    CHECK(region_to_string(typeII_region(-0.5, 0.1, 100)) == "C");
    CHECK(region_to_string(typeII_region(1.2, -2.5, 100)) == "D");
}

TEST_CASE("the thirteen open strata split 1 + 3 + 3 + 6 across the classes") {
    std::map<std::string, std::string> sigs;
    Lcg rng(99);
    int tries = 0;
    while (sigs.size() < 13 && tries < 20000) {
        ++tries;
        double b = rng.uniform(-3.5, 3.5), c = rng.uniform(-3.5, 3.5);
        auto near = [&](double x) { return std::abs(x) < 0.08; };
        if (near(b) || near(b - c + 1) || near(b + c + 1) || near(b - c) || near(b + c))
            continue;
        auto sgn = [](double x) { return x > 0 ? '+' : '-'; };
        std::string sig;
        sig += sgn(b);
        sig += sgn(b - c + 1);
        sig += sgn(b + c + 1);
        sig += sgn(b - c);
        sig += sgn(b + c);
        if (sigs.count(sig)) continue;
        sigs[sig] = region_to_string(typeII_region(b, c, 70));
    }
    REQUIRE(sigs.size() == 13);
    std::map<std::string, int> counts;
    for (const auto& [sig, cls] : sigs) counts[cls]++;
    CHECK(counts["A"] == 1);
    CHECK(counts["B"] == 3);
    CHECK(counts["C"] == 3);
    CHECK(counts["D"] == 6);
}

TEST_CASE("crux system: identity, line limits, generic out-of-range") {
    Lcg rng(11);
    for (int k = 0; k < 1000; ++k) {
        double b = rng.uniform(-3, 3), c = rng.uniform(-3, 3);
        if (std::abs(b) < 1e-3 || std::abs(c) < 1e-3) continue;
        CruxSolution s = crux_solution(b, c);
        CHECK(s.identity_err < 1e-12 * std::max(1.0, b * b * (s.R * s.R + 1)));
        if (std::abs(b + c + 1) > 1e-6 && std::abs(b - c + 1) > 1e-6)
            CHECK_FALSE(s.in_range);
    }
    // limits on the Bianchi VIII lines: b+c+1 = 0 -> (1, +1); b-c+1 = 0 -> (1, -1)
    {
        CruxSolution s = crux_solution(-0.4, -0.6);
        CHECK(s.R == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.S == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        CruxSolution s = crux_solution(-0.4, 0.6);
        CHECK(s.R == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.S == doctest::Approx(-1.0).epsilon(1e-12));
    }
    CHECK_FALSE(crux_solution(2.0, 0.5).in_range);
    CHECK_THROWS_AS(crux_solution(0.0, 1.0), DomainError);
}

TEST_CASE("rational metric equals the pullback of the explicit metric") {
    Lcg rng(13);
    int done = 0;
    while (done < 20) {
        double b = rng.uniform(0.3, 1.3), c = rng.uniform(-0.6, 0.6);
        double R = 1.0 + rng.uniform(0.2, 2.0), S = rng.uniform(-0.8, 0.8);
        ThreePoleParams prm{1.0, b, c, ThreePoleKind::TypeII};
        try {
            MetricSample rs = rs_metric(1.0, b, c, R, S);
            double sg = rs.branch == Branch::PositiveBranch ? 1.0 : -1.0;
            auto pb = pullback_to_rs(prm, threepole_spec(prm), R, S);
            double scale = rs.max_abs();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    CHECK(std::abs(sg * rs.g[i][j] - pb[i][j]) < 1e-9 * scale);
            ++done;
        } catch (const DomainError&) {
        }
    }
    CHECK_THROWS_AS(rs_metric(1.0, 0.0, 0.0, 2.0, 0.0), DomainError);
}

TEST_CASE("rational metric fields are Einstein") {
    Lcg rng(17);
    int done = 0;
    while (done < 20) {
        double b = rng.uniform(0.4, 1.2), c = rng.uniform(-0.4, 0.4);
        double R = 1.0 + rng.uniform(0.3, 2.0), S = rng.uniform(-0.7, 0.7);
        try {
            MetricSample rs = rs_metric(1.0, b, c, R, S);
            CurvatureReport r = curvature_report(rs);
            CHECK(r.einstein_residual < 1e-7);
            ++done;
        } catch (const DomainError&) {
        }
    }
}

TEST_CASE("kahler data: closed form checks") {
    Lcg rng(19);
    for (int k = 0; k < 20; ++k) {
        double R = 1.0 + rng.uniform(0.2, 2.0), S = rng.uniform(-0.8, 0.8);
        KahlerData kd = kahler_data(1.0, 1.0, 0.0, R, S);
        CHECK(kd.j_squared_residual < 1e-9);
        CHECK(kd.d_omega_residual < 1e-9);
        CHECK(kd.nabla_j_residual < 1e-7);
    }
    for (int k = 0; k < 10; ++k) {
        double R = 1.0 + rng.uniform(0.2, 2.0), S = rng.uniform(-0.8, 0.8);
        KahlerData kd = kahler_data(1.0, 0.3, 0.1, R, S);
        CHECK(kd.d_omega_residual < 1e-9);
        CHECK(kd.j_squared_residual < 1e-9);
        CHECK(kd.nabla_j_residual < 1e-7);
    }
    // momentum map value at (R,S) = (2,0): mu_phi = 2b/(b^2 - c^2 + 2ab)
    double a = 1.0, b = 0.8, c = 0.25;
    KahlerData kd = kahler_data(a, b, c, 2.0, 0.0);
    CHECK(kd.mu_phi ==
          doctest::Approx(2 * b / (b * b - c * c + 2 * a * b)).epsilon(1e-13));
    CHECK(kd.mu_psi ==
          doctest::Approx(2 * c / (b * b - c * c + 2 * a * b)).epsilon(1e-13));

    // d(mu_K) = kappa i_K Omega with one constant per parameter triple
    for (int k = 0; k < 10; ++k) {
        double R = 1.0 + rng.uniform(0.2, 2.0), S = rng.uniform(-0.8, 0.8);
        KahlerData kk = kahler_data(a, b, c, R, S);
        CHECK(kk.moment_residual < 1e-12);
        CHECK(kk.moment_constant == doctest::Approx(b * b - c * c).epsilon(1e-10));
    }
}

namespace {

// match two root multisets up to a single scale: returns the fitted scale or
// NaN if no match within tol
double fit_multiset_scale(std::array<double, 4> r, std::array<double, 4> q, double tol) {
    double nr = 0, nq = 0;
    for (int i = 0; i < 4; ++i) {
        nr += r[i] * r[i];
        nq += q[i] * q[i];
    }
    double mag = std::sqrt(nr / nq);
    for (double lam : {mag, -mag}) {
        std::array<double, 4> scaled;
        for (int i = 0; i < 4; ++i) scaled[i] = lam * q[i];
        std::array<double, 4> rs = r;
        std::sort(rs.begin(), rs.end());
        std::sort(scaled.begin(), scaled.end());
        double worst = 0;
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(rs[i] - scaled[i]));
        if (worst < tol) return lam;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

TEST_CASE("bryant polynomial roots") {
    Lcg rng(23);
    for (int k = 0; k < 50; ++k) {
        Twistor t1{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Twistor t2{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Twistor t3{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (std::abs(twistor_det(t1, t2)) < 1e-3 || std::abs(twistor_det(t2, t3)) < 1e-3 ||
            std::abs(twistor_det(t3, t1)) < 1e-3)
            continue;
        BryantRoots br = bryant_poly(t1, t2, t3);
        CHECK(std::abs(br.roots[0] + br.roots[1] + br.roots[2] + br.roots[3]) < 1e-13);
        double t = rng.uniform(-1, 1), u = rng.uniform(-1, 1);
        Mat2 M = mat2_mul(Mat2{{{1, t}, {0, 1}}}, Mat2{{{1, 0}, {u, 1}}});
        BryantRoots br2 = bryant_poly(sl2_act(M, t1), sl2_act(M, t2), sl2_act(M, t3));
        for (int i = 0; i < 4; ++i)
            CHECK(br.roots[i] == doctest::Approx(br2.roots[i]).epsilon(1e-10));
    }
    CHECK_THROWS_AS(bryant_poly(Twistor{1, 0}, Twistor{2, 0}, Twistor{0, 1}), InvalidInput);

    // multiset match with the product form, one global scale across parameters
    double lambda_ref = 0.0;
    int matched = 0;
    for (int k = 0; k < 100; ++k) {
        double a = rng.uniform(0.3, 1.5), b = rng.uniform(0.2, 1.4), c = rng.uniform(-1.0, 1.0);
        ThreePoleParams prm{a, b, c, ThreePoleKind::TypeII};
        MultipoleSpec sp = threepole_spec(prm);
        if (sp.terms.size() != 3) continue;
        auto weighted = [&](int i) {
            const auto& t = sp.terms[i];
            return Twistor{t.sign * t.phi.a, t.sign * t.phi.b};
        };
        BryantRoots br = bryant_poly(weighted(0), weighted(1), weighted(2));
        auto prod = bryant_product_roots(a, b, c);
        double scale = std::abs(prod[0]) + std::abs(prod[1]) + std::abs(prod[2]);
        double lam = fit_multiset_scale(br.roots, prod, 1e-10 * scale);
        REQUIRE(std::isfinite(lam));
        if (matched == 0) lambda_ref = lam;
        CHECK(lam == doctest::Approx(lambda_ref).epsilon(1e-9));
        ++matched;
    }
    CHECK(matched > 80);
    CHECK(lambda_ref == doctest::Approx(-0.25).epsilon(1e-12));
}
