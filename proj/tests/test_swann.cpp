#include <cmath>

#include "doctest.h"
#include "sdtorus/curvature.hpp"
#include "sdtorus/runner.hpp"
#include "sdtorus/swann.hpp"

using namespace sdt;

namespace {

MultipoleSpec three_pole_mixed() {
    MultipoleSpec s;
    s.label = "3pole";
    s.terms.push_back(real_pole({0.0, 1.0}));
    s.terms.push_back(real_pole({1.0, -1.0}));
    s.terms.push_back(real_pole({1.0, 1.0}, -1));
    return s;
}

Quat random_quat(Lcg& rng) {
    return {rng.uniform(0.2, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1),
            rng.uniform(-1, 1)};
}

}  // namespace

TEST_CASE("quaternion algebra: ij = k and conjugation") {
    Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    Quat ij = qmul(i, j);
    CHECK(ij.z == doctest::Approx(1.0));
    CHECK(qmul(j, k).x == doctest::Approx(1.0));
    CHECK(qmul(k, i).y == doctest::Approx(1.0));
    CHECK(qmul(i, i).w == doctest::Approx(-1.0));
    Quat q{0.3, -0.7, 1.1, 0.2};
    Quat qq = qmul(q, qconj(q));
    CHECK(qq.w == doctest::Approx(qnorm2(q)).epsilon(1e-14));
    CHECK(std::abs(qq.x) + std::abs(qq.y) + std::abs(qq.z) < 1e-15);
}

TEST_CASE("omega evaluated on the Killing fields matches the closed forms") {
    MultipoleSpec fp = dipole_plus();
    HalfPlanePoint p = make_point(1.4, -0.6);
    SwannFrames f = quaternionic_frames(fp, p);
    double F = eval_F(fp, p).value();
    double sr = std::sqrt(p.rho);
    // omega(d_psi) = k / (sqrt(rho) F)
    CHECK(f.omega.i.c[3].value() == doctest::Approx(0.0));
    CHECK(f.omega.j.c[3].value() == doctest::Approx(0.0));
    CHECK(f.omega.k.c[3].value() == doctest::Approx(1.0 / (sr * F)).epsilon(1e-13));
    // omega(d_phi) = (eta + rho i) k / (sqrt(rho) F) = eta k/(sr F) - sr j/F
    CHECK(f.omega.i.c[2].value() == doctest::Approx(0.0));
    CHECK(f.omega.j.c[2].value() == doctest::Approx(-sr / F).epsilon(1e-13));
    CHECK(f.omega.k.c[2].value() == doctest::Approx(p.eta / (sr * F)).epsilon(1e-13));
}

TEST_CASE("Theta coefficients at F+, (1,0)") {
    MultipoleSpec fp = dipole_plus();
    SwannFrames f = quaternionic_frames(fp, make_point(1, 0));
    // (1/F^2)(-F^2/4 + rho^2 |grad F|^2)/rho^2 = -1/4 and alpha^beta coeff 1/F^2 = 1/4
    CHECK(f.Theta.i.c[Form2::pair_index(0, 1)].value() ==
          doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(f.Theta.i.c[Form2::pair_index(2, 3)].value() ==
          doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("structure residuals vanish with s = 1; perturbation is rejected") {
    std::vector<MultipoleSpec> specs = {dipole_plus(), dipole_minus(), dipole_conj(),
                                        three_pole_mixed()};
    Lcg rng(3);
    for (const auto& spec : specs) {
        double sfrozen = std::numeric_limits<double>::quiet_NaN();
        for (int k = 0; k < 12; ++k) {
            HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
            if (std::abs(eval_F(spec, p).value()) < 1e-3 * local_scale(spec, p)) continue;
            StructureResiduals sr = structure_residuals(spec, p, sfrozen);
            if (!std::isfinite(sfrozen)) {
                sfrozen = sr.s_fit;
                CHECK(sr.s_fit == doctest::Approx(1.0).epsilon(1e-10));
            }
            CHECK(sr.r_theta < 1e-8);
            CHECK(sr.r_omega < 1e-8);
            StructureResiduals refit = structure_residuals(spec, p);
            CHECK(std::abs(refit.s_fit - sfrozen) < 1e-8);
        }
    }

    MultipoleSpec bad = dipole_plus();
    PoleTerm pt;
    pt.kind = PoleTerm::Kind::Perturb;
    pt.coeff = 0.6;
    bad.terms.push_back(pt);
    StructureResiduals sr = structure_residuals(bad, make_point(1.3, 0.4));
    CHECK(std::max(sr.r_theta, sr.r_omega) > 1e-2);
}

TEST_CASE("monopole matrix: closed-form examples and determinant identity") {
    // F = 1/sqrt(rho): rho F_r = -F/2, F_e = 0 -> diag(0, 1/rho) at qnorm2 = 1
    MultipoleSpec m = monopole_spec();
    HalfPlanePoint p = make_point(1.7, 0.9);
    Mat2d mm = monopole_matrix(m, p, 1.0);
    CHECK(mm[0][0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(mm[0][1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(mm[1][1] == doctest::Approx(1.0 / p.rho).epsilon(1e-13));

    MultipoleSpec fp = dipole_plus();
    Mat2d m2 = monopole_matrix(fp, make_point(1, 0), 1.0);
    CHECK(m2[0][0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(m2[1][1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(m2[0][1] == doctest::Approx(0.0).epsilon(1e-13));

    // det = F^2 D / (4 qnorm2^2), positive iff D > 0
    Lcg rng(7);
    for (int k = 0; k < 25; ++k) {
        HalfPlanePoint q{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
        double qn2 = rng.uniform(0.3, 2.0);
        Mat2d mq = monopole_matrix(fp, q, qn2);
        double det = mq[0][0] * mq[1][1] - mq[0][1] * mq[1][0];
        double f = eval_F(fp, q).value();
        double D = discriminant(fp, q);
        CHECK(det == doctest::Approx(f * f * D / (4 * qn2 * qn2)).epsilon(1e-11));
    }
}

TEST_CASE("momentum maps: hand values and norm identities") {
    MultipoleSpec fp = dipole_plus();
    HalfPlanePoint p0 = make_point(1, 0);
    Quat one{1, 0, 0, 0};
    auto x = momentum_maps(fp, p0, one);
    // x_psi = k / (sqrt(rho) F) = k/2; x_phi = (0 + 1*i) k / 2 = -j/2
    CHECK(x[0].x == doctest::Approx(0.0));
    CHECK(x[0].y == doctest::Approx(0.0));
    CHECK(x[0].z == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x[1].x == doctest::Approx(0.0));
    CHECK(x[1].y == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(x[1].z == doctest::Approx(0.0));

    Lcg rng(11);
    for (int k = 0; k < 30; ++k) {
        HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
        Quat q = random_quat(rng);
        auto xs = momentum_maps(fp, p, q);
        double f = eval_F(fp, p).value();
        double qn2 = qnorm2(q);
        // |x_psi|^2 rho F^2 = |q|^4
        CHECK(dot(xs[0], xs[0]) * p.rho * f * f ==
              doctest::Approx(qn2 * qn2).epsilon(1e-12));
        // <x_psi, x_phi> / |x_psi|^2 = eta
        CHECK(dot(xs[0], xs[1]) / dot(xs[0], xs[0]) ==
              doctest::Approx(p.eta).epsilon(1e-12));
    }
}

TEST_CASE("grammian: k,j example, commuting diagram, decomposable error") {
    ImQuat k{0, 0, 1}, j{0, 1, 0};
    HyperboloidMatrix G = grammian_check(k, j);
    CHECK(G.m[0][0] == doctest::Approx(1.0));
    CHECK(G.m[0][1] == doctest::Approx(0.0));
    CHECK(G.m[1][1] == doctest::Approx(1.0));

    Lcg rng(13);
    for (const auto& spec : {dipole_plus(), three_pole_mixed()}) {
        for (int t = 0; t < 20; ++t) {
            HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
            Quat q = random_quat(rng);
            auto xs = momentum_maps(spec, p, q);
            HyperboloidMatrix Gm = grammian_check(xs[0], xs[1]);
            HyperboloidMatrix A = hyperboloid_matrix(p);
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    CHECK(std::abs(Gm.m[i][jj] - A.m[i][jj]) < 1e-12);
        }
    }

    ImQuat kk{0, 0, 2};
    CHECK_THROWS_AS(grammian_check(k, kk), InvalidInput);
}

TEST_CASE("bielawski-dancer equals the cone-jet matrix at the grammian point") {
    Lcg rng(17);
    for (const auto& spec :
         {monopole_spec(), dipole_plus(), dipole_conj(), three_pole_mixed()}) {
        for (int t = 0; t < 15; ++t) {
            HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
            Quat q = random_quat(rng);
            auto xs = momentum_maps(spec, p, q);
            Mat2d bd = bielawski_dancer_matrix(spec, xs[0], xs[1]);
            ConeVector A{dot(xs[0], xs[0]), dot(xs[0], xs[1]), dot(xs[1], xs[1])};
            Mat2d ref = dFtilde_matrix_basis(spec, A);
            double sc = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj) sc = std::max(sc, std::abs(ref[i][jj]));
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    CHECK(std::abs(bd[i][jj] - ref[i][jj]) < 1e-10 * sc);
        }
    }
}

TEST_CASE("bielawski-dancer summands are positive semidefinite for positive poles") {
    MultipoleSpec fp = dipole_plus();
    Lcg rng(19);
    HalfPlanePoint p = make_point(1.2, 0.3);
    Quat q = random_quat(rng);
    auto xs = momentum_maps(fp, p, q);
    Mat2d bd = bielawski_dancer_matrix(fp, xs[0], xs[1]);
    CHECK(bd[0][0] >= 0.0);
    CHECK(bd[1][1] >= 0.0);
    CHECK(bd[0][0] * bd[1][1] - bd[0][1] * bd[1][0] >= -1e-15);
}

TEST_CASE("monopole-matrix dictionary to the BD sum") {
    // with (x1, x2) the momentum maps at (p, q) and qnorm2 = |q|^2, the frame
    // change collapses to monopole_matrix(spec, p, qn2) = B^T BD B, B = [m0 m1]
    Lcg rng(23);
    for (const auto& spec : {dipole_plus(), three_pole_mixed()}) {
        for (int t = 0; t < 10; ++t) {
            HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
            Quat q = random_quat(rng);
            double qn2 = qnorm2(q);
            auto xs = momentum_maps(spec, p, q);
            Mat2d bd = bielawski_dancer_matrix(spec, xs[0], xs[1]);
            double sr = std::sqrt(p.rho);
            double B[2][2] = {{0.0, 1.0 / sr}, {sr, p.eta / sr}};
            Mat2d lhs = monopole_matrix(spec, p, qn2);
            // the BD sum takes the positive root of each r_k^2; on domains
            // where F < 0 (mixed-signature specs) the signed dictionary value
            // is |q|^2 n_k / (sqrt(rho) F), hence the sign(F) factor
            double sgn = eval_F(spec, p).value() > 0.0 ? 1.0 : -1.0;
            double sc = std::max(
                {std::abs(lhs[0][0]), std::abs(lhs[0][1]), std::abs(lhs[1][1])});
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj) {
                    double s = 0.0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) s += B[a][i] * bd[a][b] * B[b][jj];
                    CHECK(std::abs(lhs[i][jj] - sgn * s) < 1e-10 * sc);
                }
        }
    }
}

TEST_CASE("homogeneous extension: restriction, homogeneity, wave equation, frame matrix") {
    Lcg rng(29);
    std::vector<MultipoleSpec> specs = {monopole_spec(), dipole_plus(), dipole_minus(),
                                        dipole_conj(), three_pole_mixed()};
    for (const auto& spec : specs) {
        for (int t = 0; t < 6; ++t) {
            HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.4, 1.4)};
            ConeVector A1 = cone_point(p, 1.0);
            Jet3 Ft = homogeneous_F(spec, A1);
            CHECK(Ft.value() == doctest::Approx(eval_F(spec, p).value()).epsilon(1e-12));
            ConeVector A4 = cone_point(p, 4.0);
            CHECK(homogeneous_F(spec, A4).value() ==
                  doctest::Approx(2.0 * Ft.value()).epsilon(1e-12));
            double lam = rng.uniform(0.1, 10.0);
            double sc = 1.0;
            double res = wave_residual(spec, cone_point(p, lam), &sc);
            CHECK(std::abs(res) < 1e-7 * sc);
            Mat2d mf = dFtilde_matrix_frame(spec, cone_point(p, rng.uniform(0.3, 3.0)));
            Jet2 F = eval_F(spec, p);
            double f = F.value(), fr = F.dr(), fe = F.de();
            CHECK(mf[0][0] == doctest::Approx(0.5 * f + p.rho * fr).epsilon(1e-10));
            CHECK(mf[0][1] == doctest::Approx(p.rho * fe).epsilon(1e-10));
            CHECK(mf[1][1] == doctest::Approx(0.5 * f - p.rho * fr).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(homogeneous_F(dipole_plus(), ConeVector{1.0, 2.0, 1.0}), DomainError);
}

TEST_CASE("structure route and curvature route accept/reject together") {
    MultipoleSpec good = dipole_plus();
    HalfPlanePoint p = make_point(1.3, 0.4);
    StructureResiduals sg = structure_residuals(good, p);
    MetricSample mg = einstein_metric(good, p);
    CurvatureReport rg = curvature_report(mg);
    CHECK(std::max(sg.r_theta, sg.r_omega) < 1e-8);
    CHECK(rg.einstein_residual < 1e-7);

    MultipoleSpec bad = good;
    PoleTerm pt;
    pt.kind = PoleTerm::Kind::Perturb;
    pt.coeff = 0.6;
    bad.terms.push_back(pt);
    StructureResiduals sb = structure_residuals(bad, p);
    MetricSample mb = einstein_metric(bad, p);
    CurvatureReport rb = curvature_report(mb);
    CHECK(std::max(sb.r_theta, sb.r_omega) > 1e-2);
    CHECK(rb.einstein_residual > 1e-2);
}
