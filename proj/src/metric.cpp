#include "sdtorus/metric.hpp"

#include <cmath>

#include "json.hpp"

namespace sdt {

void MetricSample::set(int i, int j, const Jet2& v) {
    gj[i][j] = v;
    gj[j][i] = v;
    g[i][j] = v.value();
    g[j][i] = v.value();
}

double MetricSample::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(g[i][j]));
    return m;
}

namespace {

// canonical pencil: A from twistor [0,1], B from [1,0]
void canonical_pencil(const MultipoleSpec& spec, const HalfPlanePoint& p, Jet2& A0,
                      Jet2& A1, Jet2& B0, Jet2& B1) {
    Jet2 F = eval_F(spec, p);
    Jet2 G = sqrt(jet_rho(p.rho)) * F;
    A0 = G.deriv_rho();
    A1 = G.deriv_eta();
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    B0 = rho * A1 - eta * A0;
    B1 = G - rho * A0 - eta * A1;
}

}  // namespace

MetricSample einstein_metric(const MultipoleSpec& spec, const HalfPlanePoint& p,
                             double degeneracy_tol) {
    if (spec.is_single_monopole())
        throw EmptyDomain("single-pole spec: D vanishes identically, empty domain");
    Jet2 F = eval_F(spec, p);
    Jet2 Fr = F.deriv_rho(), Fe = F.deriv_eta();
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    Jet2 D = F * F - 4.0 * rho * rho * (Fr * Fr + Fe * Fe);

    double scale = local_scale(spec, p);
    if (std::abs(F.value()) < degeneracy_tol * scale)
        throw DegenerateAtPoint("einstein_metric: F ~ 0 (conformal infinity) at rho=" +
                                std::to_string(p.rho) + " eta=" + std::to_string(p.eta));
    if (std::abs(D.value()) < degeneracy_tol * scale * scale)
        throw DegenerateAtPoint("einstein_metric: D ~ 0 (singular locus) at rho=" +
                                std::to_string(p.rho) + " eta=" + std::to_string(p.eta));

    Jet2 u = F - 2.0 * rho * Fr;        // coefficient of alpha in the first leg
    Jet2 v = -2.0 * rho * Fe;
    Jet2 w = F + 2.0 * rho * Fr;

    Jet2 conf = D / (4.0 * F * F * rho * rho);
    Jet2 den = F * F * D;
    Jet2 uu = u * u + v * v;
    Jet2 vv = v * v + w * w;
    Jet2 uv = 2.0 * F * v;  // 2 v (u + w) / 2 = coefficient of (alpha beta)

    // alpha = sqrt(rho) dphi, beta = (dpsi + eta dphi)/sqrt(rho)
    Jet2 g_pp = (uu * rho + 2.0 * uv * eta + vv * eta * eta / rho) / den;
    Jet2 g_ps = (uv + vv * eta / rho) / den;
    Jet2 g_ss = vv / (rho * den);

    MetricSample m;
    m.point = p;
    m.branch = D.value() > 0.0 ? Branch::PositiveBranch : Branch::NegativeBranch;
    double s = m.branch == Branch::PositiveBranch ? 1.0 : -1.0;
    m.set(0, 0, s * conf);
    m.set(1, 1, s * conf);
    m.set(2, 2, s * g_pp);
    m.set(2, 3, s * g_ps);
    m.set(3, 3, s * g_ss);
    m.set(0, 1, jet_const(0.0));
    m.set(0, 2, jet_const(0.0));
    m.set(0, 3, jet_const(0.0));
    m.set(1, 2, jet_const(0.0));
    m.set(1, 3, jet_const(0.0));
    return m;
}

MetricSample joyce_metric_g0(const Jet2& A0, const Jet2& A1, const Jet2& B0,
                             const Jet2& B1, const HalfPlanePoint& p) {
    Jet2 k = A0 * B1 - A1 * B0;
    double pencil_scale = std::abs(A0.value()) + std::abs(A1.value()) +
                          std::abs(B0.value()) + std::abs(B1.value());
    if (std::abs(k.value()) < 1e-14 * pencil_scale * pencil_scale + 1e-300)
        throw DegenerateAtPoint("joyce_metric_g0: degenerate pencil, A0 B1 - A1 B0 ~ 0");
    Jet2 rho = jet_rho(p.rho);
    Jet2 conf = k / (rho * rho);

    MetricSample m;
    m.point = p;
    m.branch = Branch::PositiveBranch;
    m.set(0, 0, conf);
    m.set(1, 1, conf);
    m.set(2, 2, (A0 * A0 + A1 * A1) / k);
    m.set(2, 3, -(A0 * B0 + A1 * B1) / k);
    m.set(3, 3, (B0 * B0 + B1 * B1) / k);
    m.set(0, 1, jet_const(0.0));
    m.set(0, 2, jet_const(0.0));
    m.set(0, 3, jet_const(0.0));
    m.set(1, 2, jet_const(0.0));
    m.set(1, 3, jet_const(0.0));
    return m;
}

MetricSample sfk_metric(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 A0, A1, B0, B1;
    canonical_pencil(spec, p, A0, A1, B0, B1);
    MetricSample g0 = joyce_metric_g0(A0, A1, B0, B1, p);
    Jet2 rho = jet_rho(p.rho);
    MetricSample m;
    m.point = p;
    m.branch = Branch::PositiveBranch;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) m.set(i, j, rho * g0.gj[i][j]);
    return m;
}

MetricSample reconstructed_metric(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 A0, A1, B0, B1;
    canonical_pencil(spec, p, A0, A1, B0, B1);
    Jet2 k = A0 * B1 - A1 * B0;  // = D/4
    MetricSample g0 = joyce_metric_g0(A0, A1, B0, B1, p);
    Jet2 F = eval_F(spec, p);
    Jet2 f2 = 1.0 / (F * F);
    MetricSample m;
    m.point = p;
    m.branch = k.value() > 0.0 ? Branch::PositiveBranch : Branch::NegativeBranch;
    double s = m.branch == Branch::PositiveBranch ? 1.0 : -1.0;
    // In the coordinates of the explicit metric formula the canonical solution
    // pairs with dpsi and the second solution with dphi (the quotient by
    // d/dphi is the canonical solution's Einstein-Weyl space), so the pencil
    // metric enters with its torus labels swapped.
    int perm[4] = {0, 1, 3, 2};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) m.set(i, j, s * (f2 * g0.gj[perm[i]][perm[j]]));
    return m;
}

std::string metric_to_json_text(const MetricSample& m) {
    nlohmann::json j;
    j["point"] = {m.point.rho, m.point.eta};
    j["branch"] = m.branch == Branch::PositiveBranch ? "positive" : "negative";
    nlohmann::json comp;
    const char* names[4] = {"rho", "eta", "phi", "psi"};
    for (int i = 0; i < 4; ++i)
        for (int k = i; k < 4; ++k)
            comp[std::string(names[i]) + "_" + names[k]] = m.g[i][k];
    j["components"] = comp;
    return j.dump(2);
}

}  // namespace sdt
