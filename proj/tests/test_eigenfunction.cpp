#include <cmath>
#include <complex>

#include "doctest.h"
#include "sdtorus/eigenfunction.hpp"
#include "sdtorus/runner.hpp"

using namespace sdt;

namespace {

MultipoleSpec random_spec(Lcg& rng, int max_poles) {
    MultipoleSpec spec;
    spec.label = "random";
    int n = 1 + int(rng.uniform() * max_poles);
    for (int k = 0; k < n; ++k) {
        double pick = rng.uniform();
        if (pick < 0.7) {
            Twistor phi{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            if (std::abs(phi.a) + std::abs(phi.b) < 0.2) phi.b += 1.0;
            spec.terms.push_back(real_pole(phi, rng.uniform() < 0.75 ? +1 : -1));
        } else {
            spec.terms.push_back(conj_pair({rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                           {rng.uniform(-2, 2), rng.uniform(-2, 2) + 2.5}));
        }
    }
    return spec;
}

}  // namespace

TEST_CASE("monopole F = 1/sqrt(rho)") {
    MultipoleSpec m = monopole_spec();
    Jet2 F = eval_F(m, make_point(4.0, 3.7));
    CHECK(F.value() == doctest::Approx(0.5).epsilon(1e-14));
    for (double rho : {0.2, 1.0, 3.3})
        CHECK(std::abs(pde_residual(m, make_point(rho, -1.0))) < 1e-13);
    for (double eta : {-2.0, 0.0, 1.5})
        CHECK(std::abs(discriminant(m, make_point(0.9, eta))) < 1e-13);
    CHECK(classify_point(m, make_point(1.0, 0.0)) == PointClass::Singular);
}

TEST_CASE("dipole F+ hand values at (1,0)") {
    MultipoleSpec fp = dipole_plus();
    HalfPlanePoint p = make_point(1.0, 0.0);
    Jet2 F = eval_F(fp, p);
    CHECK(F.value() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(F.dr() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(F.de() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(discriminant(fp, p) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(classify_point(fp, p) == PointClass::PositiveScal);
}

TEST_CASE("F- vanishes on the unit semicircle; D <= 0") {
    MultipoleSpec fm = dipole_minus();
    for (double t : {0.3, 0.9, 1.4}) {
        HalfPlanePoint p = make_point(std::sin(t), std::cos(t));
        CHECK(std::abs(eval_F(fm, p).value()) < 1e-13);
        CHECK(classify_point(fm, p) == PointClass::ConformalInfinity);
        CHECK(discriminant(fm, p) <= 0.0);
    }
}

TEST_CASE("Fc is real-valued and a closed-form match") {
    MultipoleSpec fc = dipole_conj();
    double rho = 1.3, eta = 0.8;
    Jet2 F = eval_F(fc, make_point(rho, eta));
    std::complex<double> z(rho * rho + eta * eta - 1.0, 2.0 * eta);
    double expect = 2.0 * std::sqrt(z).real() / std::sqrt(rho);
    CHECK(F.value() == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("PDE residual relative bound for named and random specs") {
    Lcg rng(42);
    std::vector<MultipoleSpec> specs = {monopole_spec(), dipole_plus(), dipole_minus(),
                                        dipole_conj()};
    for (int k = 0; k < 20; ++k) specs.push_back(random_spec(rng, 8));
    for (const auto& spec : specs) {
        for (int i = 0; i < 30; ++i) {
            HalfPlanePoint p{rng.uniform(0.3, 2.5), rng.uniform(-2.0, 2.0)};
            double res;
            try {
                res = pde_residual(spec, p);
            } catch (const BranchError&) {
                continue;
            }
            CHECK(std::abs(res) < 1e-10 * std::max(1.0, pde_scale(spec, p)));
        }
    }
}

TEST_CASE("linearity of eval_F under spec concatenation") {
    Lcg rng(9);
    for (int k = 0; k < 10; ++k) {
        MultipoleSpec a = random_spec(rng, 4), b = random_spec(rng, 4);
        HalfPlanePoint p{rng.uniform(0.4, 2.0), rng.uniform(-1.5, 1.5)};
        try {
            Jet2 fa = eval_F(a, p), fb = eval_F(b, p), fc = eval_F(concat(a, b), p);
            for (int n = 0; n < Jet2::N; ++n) {
                double expect = fa.c[n] + fb.c[n];
                CHECK(std::abs(fc.c[n] - expect) <
                      1e-13 * std::max(1.0, std::abs(expect)));
            }
        } catch (const BranchError&) {
        }
    }
}

TEST_CASE("SL(W)-equivariance of eval_F values") {
    Lcg rng(13);
    for (int k = 0; k < 25; ++k) {
        MultipoleSpec spec = random_spec(rng, 5);
        double t = rng.uniform(-1, 1), u = rng.uniform(-1, 1);
        Mat2 M = mat2_mul(Mat2{{{1, t}, {0, 1}}}, Mat2{{{1, 0}, {u, 1}}});
        HalfPlanePoint p{rng.uniform(0.4, 2.0), rng.uniform(-1.5, 1.5)};
        try {
            double before = eval_F(spec, p).value();
            double after = eval_F(sl2_act(M, spec), sl2_act_point(M, p)).value();
            CHECK(std::abs(after - before) < 1e-9 * std::max(1.0, std::abs(before)));
        } catch (const BranchError&) {
        }
    }
}

TEST_CASE("discriminant agrees with the pairwise-determinant oracle") {
    Lcg rng(77);
    for (int k = 0; k < 20; ++k) {
        MultipoleSpec spec = random_spec(rng, 6);
        HalfPlanePoint p{rng.uniform(0.4, 2.2), rng.uniform(-1.8, 1.8)};
        try {
            double d1 = discriminant(spec, p);
            double d2 = discriminant_pairwise(spec, p);
            CHECK(std::abs(d1 - d2) < 1e-10 * std::max(1.0, std::abs(d2)));
        } catch (const BranchError&) {
        }
    }
}

TEST_CASE("backlund: monopole gives constant G and V") {
    MultipoleSpec m = monopole_spec();
    HalfPlanePoint base = make_point(1.0, 0.0);
    BacklundData b1 = backlund(m, make_point(2.0, 1.5), base);
    CHECK(b1.G.value() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b1.G.dr() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(std::abs(b1.V) < 1e-10);
    CHECK(std::abs(b1.ahf_residual) < 1e-12);
}

TEST_CASE("backlund: AHF residual and path independence for F+") {
    MultipoleSpec fp = dipole_plus();
    HalfPlanePoint base = make_point(1.0, 0.0);
    Lcg rng(5);
    for (int k = 0; k < 50; ++k) {
        HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
        BacklundData b = backlund(fp, p, base);
        CHECK(std::abs(b.ahf_residual) < 1e-9);
    }
    HalfPlanePoint target = make_point(1.8, 0.9);
    double v1 = backlund_V_polyline(fp, {base, make_point(1.8, 0.0), target});
    double v2 = backlund_V_polyline(fp, {base, make_point(1.0, 0.9), target});
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-8));
}

TEST_CASE("domain and input errors") {
    MultipoleSpec fp = dipole_plus();
    CHECK_THROWS_AS(eval_F(fp, HalfPlanePoint{-1.0, 0.0}), DomainError);
    MultipoleSpec empty;
    CHECK_THROWS_AS(eval_F(empty, make_point(1, 0)), InvalidInput);
}

TEST_CASE("spec JSON round trip") {
    MultipoleSpec spec;
    spec.label = "mix";
    spec.terms.push_back(real_pole({0.5, -1.0}, -1));
    spec.terms.push_back(conj_pair({1, 0}, {0, -1}, {0.5, -0.25}));
    MultipoleSpec back = spec_from_json_text(spec_to_json_text(spec));
    CHECK(back.label == "mix");
    REQUIRE(back.terms.size() == 2);
    CHECK(back.terms[0].kind == PoleTerm::Kind::RealPole);
    CHECK(back.terms[0].sign == -1);
    CHECK(back.terms[0].phi.a == doctest::Approx(0.5));
    CHECK(back.terms[1].kind == PoleTerm::Kind::ConjugatePair);
    CHECK(back.terms[1].weight.real() == doctest::Approx(0.5));
    CHECK(back.terms[1].weight.imag() == doctest::Approx(-0.25));
    Lcg rng(3);
    for (int k = 0; k < 10; ++k) {
        HalfPlanePoint p{rng.uniform(0.5, 2.0), rng.uniform(-1, 1)};
        CHECK(eval_F(spec, p).value() ==
              doctest::Approx(eval_F(back, p).value()).epsilon(1e-15));
    }
    CHECK_THROWS_AS(spec_from_json_text("{\"terms\": []}"), InvalidInput);
    CHECK_THROWS_AS(spec_from_json_text("not json"), std::exception);
}

TEST_CASE("perturb term breaks the PDE (negative control hook)") {
    MultipoleSpec fp = dipole_plus();
    PoleTerm pt;
    pt.kind = PoleTerm::Kind::Perturb;
    pt.coeff = 0.5;
    fp.terms.push_back(pt);
    HalfPlanePoint p = make_point(1.3, 0.4);
    // residual of c*rho is -3c/(4 rho), far above the eigenfunction noise floor
    CHECK(std::abs(pde_residual(fp, p)) > 1e-2);
}
