#include "sdtorus/runner.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "sdtorus/curvature.hpp"
#include "sdtorus/joyce_ew.hpp"
#include "sdtorus/swann.hpp"
#include "sdtorus/threepole.hpp"

namespace sdt {

namespace {

MultipoleSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return spec_from_json_text(ss.str());
}

int write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(cfg.out_path);
    if (!out) {
        std::cerr << "cannot open output file: " << cfg.out_path << "\n";
        return 2;
    }
    out << text << "\n";
    return 0;
}

struct CheckRow {
    std::string name;
    double max_residual;
    double tol;
    bool pass;
};

nlohmann::json rows_to_json(const std::vector<CheckRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"name", r.name},
                       {"max", r.max_residual},
                       {"tol", r.tol},
                       {"pass", r.pass}});
    return arr;
}

}  // namespace

namespace {

// RunConfig invariants: positive-rho bounds and at least one sample
bool config_valid(const RunConfig& cfg) {
    if (!(cfg.rho_min > 0.0) || !(cfg.rho_max >= cfg.rho_min)) {
        std::cerr << "invalid config: rho bounds must be positive\n";
        return false;
    }
    if (cfg.n < 1 || cfg.nx < 0 || cfg.ny < 0) {
        std::cerr << "invalid config: counts must be >= 1\n";
        return false;
    }
    return true;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// scaled squared distance to the nearest pole boundary point, with a guard
// against the principal branch cut of conjugate-pair terms; jets near either
// locus are valid but too ill-conditioned for the residual tolerances
double pole_margin(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    double margin = 1e300;
    for (const auto& t : spec.terms) {
        if (t.kind == PoleTerm::Kind::RealPole) {
            double q = t.phi.a * t.phi.a * p.rho * p.rho +
                       (t.phi.a * p.eta - t.phi.b) * (t.phi.a * p.eta - t.phi.b);
            margin = std::min(margin, q / (t.phi.a * t.phi.a + t.phi.b * t.phi.b));
        } else if (t.kind == PoleTerm::Kind::ConjugatePair) {
            std::complex<double> a{t.phi1.a, t.phi2.a}, b{t.phi1.b, t.phi2.b};
            std::complex<double> q =
                a * a * p.rho * p.rho + (a * p.eta - b) * (a * p.eta - b);
            margin = std::min(margin, std::abs(q) / (std::norm(a) + std::norm(b)));
            if (q.real() < 0.0 && std::abs(q.imag()) < 0.05 * std::abs(q)) margin = 0.0;
        }
    }
    return margin;
}

}  // namespace

std::vector<HalfPlanePoint> sample_points(const MultipoleSpec& spec, const RunConfig& cfg,
                                          int count) {
    // the single monopole is singular everywhere; its checks (PDE, Joyce,
    // Swann identities) still want interior points
    bool allow_singular = spec.is_single_monopole();
    Lcg rng(cfg.seed);
    std::vector<HalfPlanePoint> pts;
    int attempts = 0;
    while ((int)pts.size() < count && attempts < 100000) {
        ++attempts;
        HalfPlanePoint p{rng.uniform(cfg.rho_min, cfg.rho_max),
                         rng.uniform(cfg.eta_min, cfg.eta_max)};
        try {
            if (pole_margin(spec, p) < 0.04) continue;
            PointClass c = classify_point(spec, p, 1e-2);
            if (c == PointClass::PositiveScal || c == PointClass::NegativeScal ||
                (allow_singular && c == PointClass::Singular))
                pts.push_back(p);
        } catch (const DomainError&) {
        }
    }
    if ((int)pts.size() < count)
        throw DomainError("sample_points: could not find enough non-degenerate points");
    return pts;
}

int cmd_verify(const RunConfig& cfg) {
    if (!config_valid(cfg)) return 2;
    MultipoleSpec spec;
    try {
        spec = load_spec(cfg.spec_path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    std::vector<CheckRow> rows;
    try {
        auto pts = sample_points(spec, cfg, cfg.n);

        double pde = 0.0;
        for (const auto& p : pts)
            pde = std::max(pde, std::abs(pde_residual(spec, p)) /
                                    std::max(1.0, pde_scale(spec, p)));
        rows.push_back({"pde_residual", pde, cfg.tol_pde, pde < cfg.tol_pde});

        bool monopole = spec.is_single_monopole();
        if (!monopole) {
            EinsteinSummary es = einstein_verify(spec, pts);
            rows.push_back({"einstein_residual", es.max_einstein_residual, cfg.tol_einstein,
                            es.max_einstein_residual < cfg.tol_einstein});
            rows.push_back({"lambda_spread", es.lambda_spread, cfg.tol_lambda,
                            es.lambda_spread < cfg.tol_lambda});
            rows.push_back({"scalar_sign", es.sign_consistent ? 0.0 : 1.0, 0.5,
                            es.sign_consistent});

            double weyl = 0.0, twist = 0.0;
            for (const auto& r : es.reports) {
                double mx = std::max(r.weyl_plus_norm, r.weyl_minus_norm);
                double mn = std::min(r.weyl_plus_norm, r.weyl_minus_norm);
                // selfduality: one Hodge half vanishes; for the conformally
                // flat dipoles the full Weyl tensor vanishes instead
                double half_ratio = mn / std::max(mx, r.metric_scale * 1e-30);
                double flat_ratio = r.weyl_full_norm / r.metric_scale;
                weyl = std::max(weyl, std::min(half_ratio, flat_ratio));
                twist = std::max(twist,
                                 std::max(std::abs(r.twist_scalar_1), std::abs(r.twist_scalar_2)) /
                                     r.metric_scale);
            }
            rows.push_back({"weyl_half", weyl, cfg.tol_weyl, weyl < cfg.tol_weyl});
            rows.push_back({"twist_scalars", twist, cfg.tol_twist, twist < cfg.tol_twist});

            double sfrozen = std::numeric_limits<double>::quiet_NaN();
            double structure = 0.0, sconst = 0.0;
            for (const auto& p : pts) {
                StructureResiduals sr = structure_residuals(spec, p, sfrozen);
                if (!std::isfinite(sfrozen)) sfrozen = sr.s_fit;
                structure = std::max(structure, std::max(sr.r_theta, sr.r_omega));
            }
            // constancy of s: refit at each point against the frozen value
            for (const auto& p : pts) {
                StructureResiduals sr = structure_residuals(spec, p);
                sconst = std::max(sconst,
                                  std::abs(sr.s_fit - sfrozen) / std::max(1.0, std::abs(sfrozen)));
            }
            rows.push_back({"structure_residuals", structure, cfg.tol_structure,
                            structure < cfg.tol_structure});
            rows.push_back({"s_constancy", sconst, cfg.tol_s_const, sconst < cfg.tol_s_const});
        }

        double joyce = 0.0, identity = 0.0;
        for (const auto& p : pts) {
            JoyceSolution ca = canonical_solution(spec, p);
            JoyceSolution se = second_solution(spec, p);
            auto r1 = joyce_residual(ca, p);
            auto r2 = joyce_residual(se, p);
            double scale = std::max({1.0, std::abs(ca.A0.value()), std::abs(ca.A1.value())});
            joyce = std::max({joyce, std::abs(r1[0]) / scale, std::abs(r1[1]) / scale,
                              std::abs(r2[0]) / scale, std::abs(r2[1]) / scale});
            Jet2 G = sqrt(jet_rho(p.rho)) * eval_F(spec, p);
            double lhs = ca.A1.value() * se.A0.value() - ca.A0.value() * se.A1.value();
            double rhs = p.rho * (ca.A0.value() * ca.A0.value() + ca.A1.value() * ca.A1.value()) -
                         G.value() * ca.A0.value();
            identity = std::max(identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        rows.push_back({"joyce_residuals", joyce, cfg.tol_joyce, joyce < cfg.tol_joyce});
        rows.push_back({"joyce_identity", identity, cfg.tol_joyce, identity < cfg.tol_joyce});
    } catch (const std::exception& e) {
        std::cerr << "verify failed: " << e.what() << "\n";
        return 2;
    }

    bool pass = true;
    std::string failing;
    for (const auto& r : rows)
        if (!r.pass && failing.empty()) {
            pass = false;
            failing = r.name;
        }

    nlohmann::json j;
    j["command"] = "verify";
    j["spec"] = spec.label;
    j["seed"] = cfg.seed;
    j["n"] = cfg.n;
    j["checks"] = rows_to_json(rows);
    j["pass"] = pass;
    if (!pass) j["failing_check"] = failing;
    int rc = write_output(cfg, j.dump(2));
    if (rc != 0) return rc;
    if (!pass) {
        std::cerr << "tolerance failure: " << failing << "\n";
        return 1;
    }
    return 0;
}

int cmd_grid(const RunConfig& cfg) {
    if (!config_valid(cfg)) return 2;
    MultipoleSpec spec;
    try {
        spec = load_spec(cfg.spec_path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    int nx = cfg.nx > 0 ? cfg.nx : cfg.n;
    int ny = cfg.ny > 0 ? cfg.ny : cfg.n;
    std::ostringstream out;
    out << "rho,eta,F,D,class\n";
    for (int j = 0; j < ny; ++j) {
        double eta = ny == 1 ? cfg.eta_min
                             : cfg.eta_min + (cfg.eta_max - cfg.eta_min) * j / (ny - 1.0);
        for (int i = 0; i < nx; ++i) {
            double rho = nx == 1 ? cfg.rho_min
                                 : cfg.rho_min + (cfg.rho_max - cfg.rho_min) * i / (nx - 1.0);
            HalfPlanePoint p{rho, eta};
            double F = 0.0, D = 0.0;
            PointClass c = PointClass::Undefined;
            try {
                F = eval_F(spec, p).value();
                D = discriminant(spec, p);
                c = classify_point(spec, p, cfg.tol_class);
            } catch (const DomainError&) {
                c = PointClass::Undefined;
            }
            out << format_double(rho) << ',' << format_double(eta) << ','
                << format_double(F) << ',' << format_double(D) << ',' << to_string(c)
                << "\n";
        }
    }
    std::string text = out.str();
    text.pop_back();  // drop trailing newline; write_output adds one
    return write_output(cfg, text);
}

int cmd_moduli3(const RunConfig& cfg) {
    if (!config_valid(cfg)) return 2;
    try {
        if (cfg.format == "csv") {
            std::ostringstream out;
            if (cfg.nx > 0 && cfg.ny > 0) {
                // region scan of the (b, c) plane
                out << "b,c,region_label\n";
                for (int j = 0; j < cfg.ny; ++j) {
                    double c = cfg.ny == 1 ? cfg.c_min
                                           : cfg.c_min + (cfg.c_max - cfg.c_min) * j /
                                                             (cfg.ny - 1.0);
                    for (int i = 0; i < cfg.nx; ++i) {
                        double b = cfg.nx == 1 ? cfg.b_min
                                               : cfg.b_min + (cfg.b_max - cfg.b_min) * i /
                                                                 (cfg.nx - 1.0);
                        out << format_double(b) << ',' << format_double(c) << ','
                            << region_to_string(typeII_region(b, c, 60, 1e-6)) << "\n";
                    }
                }
            } else {
                // R-scan for the given (b, c) at sampled S values
                if (cfg.kind != "II") {
                    std::cerr << "csv R-scan is a Type II report\n";
                    return 2;
                }
                ThreePoleParams prm{1.0, cfg.b, cfg.c, ThreePoleKind::TypeII};
                MultipoleSpec spec = threepole_spec(prm);
                out << "R,S,F,D,class\n";
                for (int i = 0; i < cfg.n; ++i) {
                    double t = (i + 0.5) / cfg.n;
                    double R = 1.0 + t / (1.0 - t);
                    for (int j = 0; j < 5; ++j) {
                        double S = -0.8 + 0.4 * j;
                        HalfPlanePoint p = eh_coords(prm, R, std::asin(S));
                        out << format_double(R) << ',' << format_double(S) << ','
                            << format_double(eval_F(spec, p).value()) << ','
                            << format_double(discriminant(spec, p)) << ','
                            << to_string(classify_point(spec, p)) << "\n";
                    }
                }
            }
            std::string text = out.str();
            text.pop_back();
            return write_output(cfg, text);
        }
        nlohmann::json j;
        j["command"] = "moduli3";
        j["b"] = cfg.b;
        j["c"] = cfg.c;
        j["kind"] = cfg.kind;
        if (cfg.kind == "II") {
            RegionLabel lbl = typeII_region(cfg.b, cfg.c);
            j["region"] = region_to_string(lbl);
            ThreePoleParams prm{1.0, cfg.b, cfg.c, ThreePoleKind::TypeII};
            MultipoleSpec spec = threepole_spec(prm);
            // class sequence along an R-scan at S = 0
            nlohmann::json scan = nlohmann::json::array();
            for (int i = 0; i < cfg.n; ++i) {
                double t = (i + 0.5) / cfg.n;
                double R = 1.0 + t / (1.0 - t);
                HalfPlanePoint p = eh_coords(prm, R, 0.0);
                scan.push_back({{"R", R},
                                {"F", eval_F(spec, p).value()},
                                {"D", discriminant(spec, p)},
                                {"class", to_string(classify_point(spec, p))}});
            }
            j["scan"] = scan;
        } else if (cfg.kind == "I") {
            if (cfg.b == 0.0) {
                j["region"] = "BianchiVIII";
            } else {
                nlohmann::json bnd = nlohmann::json::array();
                for (int i = 0; i < cfg.n; ++i) {
                    double theta = -1.5 + 3.0 * (i + 0.5) / cfg.n;
                    TypeIBoundaries tb = typeI_boundaries(cfg.b, cfg.c, theta);
                    bnd.push_back({{"theta", theta}, {"R_inf", tb.R_inf}, {"R_pm", tb.R_pm}});
                }
                j["boundaries"] = bnd;
                j["region"] = cfg.c == 0.0 ? "BianchiIX" : "typeI-generic";
            }
        } else {
            std::cerr << "kind must be I or II\n";
            return 2;
        }
        return write_output(cfg, j.dump(2));
    } catch (const std::exception& e) {
        std::cerr << "moduli3 failed: " << e.what() << "\n";
        return 2;
    }
}

int cmd_swann(const RunConfig& cfg) {
    if (!config_valid(cfg)) return 2;
    MultipoleSpec spec;
    try {
        spec = load_spec(cfg.spec_path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    std::vector<CheckRow> rows;
    try {
        auto pts = sample_points(spec, cfg, std::max(4, cfg.n / 4));
        Lcg rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

        double bd = 0.0, gram = 0.0, wave = 0.0, frame = 0.0;
        for (const auto& p : pts) {
            Quat q{rng.uniform(0.2, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1),
                   rng.uniform(-1, 1)};
            auto x = momentum_maps(spec, p, q);
            // BD sum vs cone jets at the Grammian point
            double a = dot(x[0], x[0]), b_ = dot(x[0], x[1]), c_ = dot(x[1], x[1]);
            ConeVector A{a, b_, c_};
            Mat2d lhs = bielawski_dancer_matrix(spec, x[0], x[1]);
            Mat2d rhs = dFtilde_matrix_basis(spec, A);
            double scale = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj) scale = std::max(scale, std::abs(rhs[i][jj]));
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    bd = std::max(bd, std::abs(lhs[i][jj] - rhs[i][jj]) / scale);

            HyperboloidMatrix G = grammian_check(x[0], x[1]);
            HyperboloidMatrix Aref = hyperboloid_matrix(p);
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    gram = std::max(gram, std::abs(G.m[i][jj] - Aref.m[i][jj]));

            double wsc = 1.0;
            double wres = wave_residual(spec, cone_point(p, rng.uniform(0.2, 4.0)), &wsc);
            wave = std::max(wave, std::abs(wres) / wsc);

            // closed-form frame matrix of d(Ftilde) in the homogeneity-1/2 frame
            ConeVector Ap = cone_point(p, rng.uniform(0.3, 3.0));
            Mat2d mf = dFtilde_matrix_frame(spec, Ap);
            Jet2 F = eval_F(spec, p);
            double f = F.value(), fr = F.dr(), fe = F.de();
            double ref[2][2] = {{0.5 * f + p.rho * fr, p.rho * fe},
                                {p.rho * fe, 0.5 * f - p.rho * fr}};
            double fsc = std::max({std::abs(ref[0][0]), std::abs(ref[1][1]), std::abs(ref[0][1])});
            for (int i = 0; i < 2; ++i)
                for (int jj = 0; jj < 2; ++jj)
                    frame = std::max(frame, std::abs(mf[i][jj] - ref[i][jj]) / fsc);
        }
        rows.push_back({"bd_equality", bd, cfg.tol_bd, bd < cfg.tol_bd});
        rows.push_back({"grammian", gram, cfg.tol_grammian, gram < cfg.tol_grammian});
        rows.push_back({"wave_residual", wave, cfg.tol_wave, wave < cfg.tol_wave});
        rows.push_back({"dFtilde_frame", frame, 1e-10, frame < 1e-10});

        if (!spec.is_single_monopole()) {
            double sfrozen = std::numeric_limits<double>::quiet_NaN();
            double structure = 0.0;
            for (const auto& p : pts) {
                StructureResiduals sr = structure_residuals(spec, p, sfrozen);
                if (!std::isfinite(sfrozen)) sfrozen = sr.s_fit;
                structure = std::max(structure, std::max(sr.r_theta, sr.r_omega));
            }
            rows.push_back({"structure_residuals", structure, cfg.tol_structure,
                            structure < cfg.tol_structure});
        }
    } catch (const std::exception& e) {
        std::cerr << "swann failed: " << e.what() << "\n";
        return 2;
    }

    bool pass = true;
    std::string failing;
    for (const auto& r : rows)
        if (!r.pass && failing.empty()) {
            pass = false;
            failing = r.name;
        }
    nlohmann::json j;
    j["command"] = "swann";
    j["spec"] = spec.label;
    j["seed"] = cfg.seed;
    j["checks"] = rows_to_json(rows);
    j["pass"] = pass;
    if (!pass) j["failing_check"] = failing;
    int rc = write_output(cfg, j.dump(2));
    if (rc != 0) return rc;
    if (!pass) {
        std::cerr << "tolerance failure: " << failing << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sdt
