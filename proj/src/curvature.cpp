#include "sdtorus/curvature.hpp"

#include <cmath>

#include "json.hpp"

namespace sdt {

namespace {

using M4 = std::array<std::array<double, 4>, 4>;

M4 invert4(const M4& a) {
    // Gauss-Jordan with partial pivoting
    double aug[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            aug[i][j] = a[i][j];
            aug[i][j + 4] = (i == j) ? 1.0 : 0.0;
        }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (aug[piv][col] == 0.0) throw DegenerateAtPoint("degenerate metric");
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
        double d = aug[col][col];
        for (int j = 0; j < 8; ++j) aug[col][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double f = aug[r][col];
            for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    M4 inv{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][j + 4];
    return inv;
}

// Cholesky factor L (lower), g = L L^T; requires positive definite input
M4 cholesky(const M4& g) {
    M4 L{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g[i][j];
            for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(s > 0.0))
                    throw DegenerateAtPoint("metric not positive definite (cholesky)");
                L[i][j] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    return L;
}

struct Derivs {
    double g[4][4];
    double dg[2][4][4];
    double ddg[2][2][4][4];
};

Derivs extract(const MetricSample& m) {
    Derivs d{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Jet2& jj = m.gj[i][j];
            d.g[i][j] = jj.value();
            d.dg[0][i][j] = jj.dr();
            d.dg[1][i][j] = jj.de();
            d.ddg[0][0][i][j] = jj.drr();
            d.ddg[0][1][i][j] = jj.dre();
            d.ddg[1][0][i][j] = jj.dre();
            d.ddg[1][1][i][j] = jj.dee();
        }
    return d;
}

struct CurvatureCore {
    M4 g, ginv;
    double Gamma[4][4][4];       // Gamma^a_{bc}
    double dGamma[2][4][4][4];   // d_m Gamma^a_{bc}, m = rho, eta
    double Riem[4][4][4][4];     // R^a_{bcd}: R(e_c, e_d) e_b = R^a_{bcd} e_a
    double Rlow[4][4][4][4];     // g_{ae} R^e_{bcd}
    double Ric[4][4];
    double scal;
};

CurvatureCore core_from(const MetricSample& m) {
    CurvatureCore c{};
    Derivs d = extract(m);
    c.g = {{{d.g[0][0], d.g[0][1], d.g[0][2], d.g[0][3]},
            {d.g[1][0], d.g[1][1], d.g[1][2], d.g[1][3]},
            {d.g[2][0], d.g[2][1], d.g[2][2], d.g[2][3]},
            {d.g[3][0], d.g[3][1], d.g[3][2], d.g[3][3]}}};
    c.ginv = invert4(c.g);

    // d ginv = -ginv dg ginv
    double dginv[2][4][4];
    for (int mdir = 0; mdir < 2; ++mdir)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int p = 0; p < 4; ++p)
                    for (int q = 0; q < 4; ++q)
                        s -= c.ginv[i][p] * d.dg[mdir][p][q] * c.ginv[q][j];
                dginv[mdir][i][j] = s;
            }

    auto dmetric = [&](int dir, int i, int j) -> double {
        return dir < 2 ? d.dg[dir][i][j] : 0.0;
    };
    auto ddmetric = [&](int dir1, int dir2, int i, int j) -> double {
        return (dir1 < 2 && dir2 < 2) ? d.ddg[dir1][dir2][i][j] : 0.0;
    };

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc) {
                double s = 0.0;
                for (int e = 0; e < 4; ++e)
                    s += c.ginv[a][e] *
                         (dmetric(b, e, cc) + dmetric(cc, b, e) - dmetric(e, b, cc));
                c.Gamma[a][b][cc] = 0.5 * s;
            }

    for (int mdir = 0; mdir < 2; ++mdir)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int cc = 0; cc < 4; ++cc) {
                    double s = 0.0;
                    for (int e = 0; e < 4; ++e) {
                        s += dginv[mdir][a][e] *
                             (dmetric(b, e, cc) + dmetric(cc, b, e) - dmetric(e, b, cc));
                        s += c.ginv[a][e] *
                             (ddmetric(mdir, b, e, cc) + ddmetric(mdir, cc, b, e) -
                              ddmetric(mdir, e, b, cc));
                    }
                    c.dGamma[mdir][a][b][cc] = 0.5 * s;
                }

    auto dG = [&](int dir, int a, int b, int cc) -> double {
        return dir < 2 ? c.dGamma[dir][a][b][cc] : 0.0;
    };

    // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
    //           + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int dd = 0; dd < 4; ++dd) {
                    double s = dG(cc, a, dd, b) - dG(dd, a, cc, b);
                    for (int e = 0; e < 4; ++e)
                        s += c.Gamma[a][cc][e] * c.Gamma[e][dd][b] -
                             c.Gamma[a][dd][e] * c.Gamma[e][cc][b];
                    c.Riem[a][b][cc][dd] = s;
                }

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int dd = 0; dd < 4; ++dd) {
                    double s = 0.0;
                    for (int e = 0; e < 4; ++e) s += c.g[a][e] * c.Riem[e][b][cc][dd];
                    c.Rlow[a][b][cc][dd] = s;
                }

    // Ric(X, Y) = trace(Z -> R(Z, X) Y)
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a) s += c.Riem[a][y][a][x];
            c.Ric[x][y] = s;
        }

    c.scal = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.scal += c.ginv[i][j] * c.Ric[i][j];
    return c;
}

// 2-form index pairs, ordered so that the Hodge dual of pair k is pair k+3
constexpr int PAIRS[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

}  // namespace

CurvatureReport curvature_report(const MetricSample& m) {
    CurvatureCore c = core_from(m);
    CurvatureReport r;
    r.scalar_curv = c.scal;
    r.lambda_hat = 0.25 * c.scal;

    double gmax = 0.0, emax = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            gmax = std::max(gmax, std::abs(c.g[i][j]));
            emax = std::max(emax, std::abs(c.Ric[i][j] - r.lambda_hat * c.g[i][j]));
        }
    r.metric_scale = gmax;
    r.einstein_residual = emax / gmax;

    // first Bianchi: R^a_{bcd} + R^a_{cdb} + R^a_{dbc} = 0
    double bmax = 0.0, rmax = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int dd = 0; dd < 4; ++dd) {
                    bmax = std::max(bmax, std::abs(c.Riem[a][b][cc][dd] +
                                                   c.Riem[a][cc][dd][b] +
                                                   c.Riem[a][dd][b][cc]));
                    rmax = std::max(rmax, std::abs(c.Riem[a][b][cc][dd]));
                }
    r.bianchi_residual = bmax / std::max(1.0, rmax);

    // Weyl, fully lowered
    double C[4][4][4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int dd = 0; dd < 4; ++dd) {
                    double v = c.Rlow[a][b][cc][dd];
                    v -= 0.5 * (c.g[a][cc] * c.Ric[b][dd] - c.g[a][dd] * c.Ric[b][cc] +
                                c.g[b][dd] * c.Ric[a][cc] - c.g[b][cc] * c.Ric[a][dd]);
                    v += (c.scal / 6.0) *
                         (c.g[a][cc] * c.g[b][dd] - c.g[a][dd] * c.g[b][cc]);
                    C[a][b][cc][dd] = v;
                }

    // orthonormal coframe: theta^i_a = L[a][i] with g = L L^T; frame vectors
    // solve L^T E = Id
    M4 L = cholesky(c.g);
    M4 E{};  // E[a][i]: frame vector e_i components
    for (int i = 0; i < 4; ++i) {
        // back-substitute L^T x = unit_i
        double x[4];
        for (int a = 3; a >= 0; --a) {
            double s = (a == i) ? 1.0 : 0.0;
            for (int b = a + 1; b < 4; ++b) s -= L[b][a] * x[b];
            x[a] = s / L[a][a];
        }
        for (int a = 0; a < 4; ++a) E[a][i] = x[a];
    }

    double Cf[4][4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            for (int cc = 0; cc < 4; ++cc)
                                for (int dd = 0; dd < 4; ++dd)
                                    s += E[a][i] * E[b][j] * E[cc][k] * E[dd][l] *
                                         C[a][b][cc][dd];
                    Cf[i][j][k][l] = s;
                }

    double W6[6][6];
    for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q)
            W6[p][q] = Cf[PAIRS[p][0]][PAIRS[p][1]][PAIRS[q][0]][PAIRS[q][1]];

    double wp = 0.0, wm = 0.0, wf = 0.0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            double plus = 0.5 * (W6[p][q] + W6[p + 3][q] + W6[p][q + 3] + W6[p + 3][q + 3]);
            double minus = 0.5 * (W6[p][q] - W6[p + 3][q] - W6[p][q + 3] + W6[p + 3][q + 3]);
            wp += plus * plus;
            wm += minus * minus;
        }
    for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) wf += W6[p][q] * W6[p][q];
    r.weyl_plus_norm = std::sqrt(wp);
    r.weyl_minus_norm = std::sqrt(wm);
    // for a Weyl-symmetric operator the 6x6 Frobenius norm splits as plus^2 + minus^2
    r.weyl_full_norm = std::sqrt(wf);

    // twist scalars: K = d/dphi, Ktilde = d/dpsi
    Derivs d = extract(m);
    for (int which = 0; which < 2; ++which) {
        int kidx = which == 0 ? 2 : 3;
        // (dK^flat)_{ab} = d_a g_{k b} - d_b g_{k a}
        double om[4][4] = {};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 4; ++b) {
                om[a][b] += d.dg[a][kidx][b];
                om[b][a] -= d.dg[a][kidx][b];
            }
        // to the orthonormal frame
        double omf[4][4] = {};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += E[a][i] * E[b][j] * om[a][b];
                omf[i][j] = s;
            }
        // Hodge star in the frame, orientation e0^e1^e2^e3
        double st[4][4] = {};
        for (int p = 0; p < 3; ++p) {
            int a = PAIRS[p][0], b = PAIRS[p][1];
            int a2 = PAIRS[p + 3][0], b2 = PAIRS[p + 3][1];
            st[a][b] = omf[a2][b2];
            st[b][a] = -omf[a2][b2];
            st[a2][b2] = omf[a][b];
            st[b2][a2] = -omf[a][b];
        }
        // contract with K = d/dphi and Ktilde = d/dpsi in frame components
        double Kf[4], Ktf[4];
        for (int i = 0; i < 4; ++i) {
            Kf[i] = L[2][i];   // theta^i(d/dphi)
            Ktf[i] = L[3][i];  // theta^i(d/dpsi)
        }
        double tw = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) tw += st[i][j] * Kf[i] * Ktf[j];
        if (which == 0)
            r.twist_scalar_1 = tw;
        else
            r.twist_scalar_2 = tw;
    }
    return r;
}

double christoffel_fd_check(const MetricField& field, const HalfPlanePoint& p, double h) {
    MetricSample base = field(p);
    CurvatureCore c = core_from(base);
    // finite-difference dg
    MetricSample pr = field({p.rho + h, p.eta});
    MetricSample mr = field({p.rho - h, p.eta});
    MetricSample pe = field({p.rho, p.eta + h});
    MetricSample me = field({p.rho, p.eta - h});
    double dg[2][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            dg[0][i][j] = (pr.g[i][j] - mr.g[i][j]) / (2 * h);
            dg[1][i][j] = (pe.g[i][j] - me.g[i][j]) / (2 * h);
        }
    auto dmetric = [&](int dir, int i, int j) -> double {
        return dir < 2 ? dg[dir][i][j] : 0.0;
    };
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc) {
                double s = 0.0;
                for (int e = 0; e < 4; ++e)
                    s += c.ginv[a][e] *
                         (dmetric(b, e, cc) + dmetric(cc, b, e) - dmetric(e, b, cc));
                worst = std::max(worst, std::abs(0.5 * s - c.Gamma[a][b][cc]));
            }
    return worst;
}

EinsteinSummary einstein_verify(const MultipoleSpec& spec,
                                const std::vector<HalfPlanePoint>& points) {
    EinsteinSummary out;
    double lmin = 0.0, lmax = 0.0, lsum = 0.0;
    bool first = true;
    for (const auto& p : points) {
        MetricSample m = einstein_metric(spec, p);
        CurvatureReport r = curvature_report(m);
        out.max_einstein_residual = std::max(out.max_einstein_residual, r.einstein_residual);
        bool pos_branch = m.branch == Branch::PositiveBranch;
        if ((pos_branch && r.scalar_curv <= 0.0) || (!pos_branch && r.scalar_curv >= 0.0))
            out.sign_consistent = false;
        // the Einstein constant of the formula metric is branch-independent;
        // the returned sample on the negative branch is its negation, which
        // flips the fitted lambda
        double lam_eff = pos_branch ? r.lambda_hat : -r.lambda_hat;
        if (first) {
            lmin = lmax = lam_eff;
            first = false;
        } else {
            lmin = std::min(lmin, lam_eff);
            lmax = std::max(lmax, lam_eff);
        }
        lsum += std::abs(lam_eff);
        out.reports.push_back(r);
    }
    if (!out.reports.empty()) {
        double mean_abs = lsum / out.reports.size();
        out.mean_lambda = 0.0;
        for (const auto& r : out.reports) out.mean_lambda += r.lambda_hat;
        out.mean_lambda /= out.reports.size();
        out.lambda_spread = (lmax - lmin) / std::max(mean_abs, 1e-300);
    }
    return out;
}

std::array<std::array<std::array<double, 4>, 4>, 4> covariant_derivative(
    const MetricSample& m, const Tensor11Jets& T) {
    CurvatureCore c = core_from(m);
    std::array<std::array<std::array<double, 4>, 4>, 4> out{};
    for (int cc = 0; cc < 4; ++cc)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                if (cc == 0) s = T[a][b].dr();
                if (cc == 1) s = T[a][b].de();
                for (int d = 0; d < 4; ++d)
                    s += c.Gamma[a][cc][d] * T[d][b].value() -
                         c.Gamma[d][cc][b] * T[a][d].value();
                out[cc][a][b] = s;
            }
    return out;
}

double metric_compatibility_residual(const MetricSample& m) {
    CurvatureCore c = core_from(m);
    Derivs d = extract(m);
    double worst = 0.0;
    for (int cc = 0; cc < 4; ++cc)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = cc < 2 ? d.dg[cc][a][b] : 0.0;
                for (int e = 0; e < 4; ++e)
                    s -= c.Gamma[e][cc][a] * c.g[e][b] + c.Gamma[e][cc][b] * c.g[a][e];
                worst = std::max(worst, std::abs(s));
            }
    return worst;
}

std::string report_to_json_text(const CurvatureReport& r) {
    nlohmann::json j;
    j["lambda_hat"] = r.lambda_hat;
    j["einstein_residual"] = r.einstein_residual;
    j["scalar_curv"] = r.scalar_curv;
    j["weyl_plus_norm"] = r.weyl_plus_norm;
    j["weyl_minus_norm"] = r.weyl_minus_norm;
    j["weyl_full_norm"] = r.weyl_full_norm;
    j["twist_scalars"] = {r.twist_scalar_1, r.twist_scalar_2};
    return j.dump(2);
}

}  // namespace sdt
