#include "sdtorus/threepole.hpp"

#include <cmath>

namespace sdt {

namespace {
constexpr double PI = 3.14159265358979323846;
}

HalfPlanePoint eh_coords(const ThreePoleParams& prm, double R, double theta) {
    if (!(theta > -PI / 2 && theta < PI / 2))
        throw DomainError("eh_coords: theta must lie in (-pi/2, pi/2)");
    double r2;
    if (prm.kind == ThreePoleKind::TypeII) {
        if (!(R > 1.0)) throw DomainError("eh_coords: Type II requires R > 1");
        r2 = R * R - 1.0;
    } else {
        r2 = R * R + 1.0;
    }
    return make_point(std::sqrt(r2) * std::cos(theta), R * std::sin(theta));
}

MultipoleSpec threepole_spec(const ThreePoleParams& prm, int sheet) {
    const double a = prm.a, b = prm.b, c = prm.c;
    if (a == 0.0 && b == 0.0 && c == 0.0)
        throw InvalidInput("threepole_spec: degenerate parameters");
    MultipoleSpec spec;
    auto push_real = [&](double weight, Twistor dir) {
        if (weight == 0.0) return;
        double s = std::abs(weight);
        spec.terms.push_back(
            real_pole({s * dir.a, s * dir.b}, weight > 0.0 ? +1 : -1));
    };
    if (prm.kind == ThreePoleKind::TypeII) {
        push_real(a, {0.0, 1.0});
        push_real(0.5 * (b + c), {1.0, -1.0});
        push_real(0.5 * (b - c), {1.0, 1.0});
        spec.label = "typeII";
    } else {
        if (sheet != +1 && sheet != -1) throw InvalidInput("threepole_spec: sheet must be +-1");
        push_real(a, {0.0, 1.0});
        if (b != 0.0 || c != 0.0) {
            // weight (b - i c)/2 on chi = [1, -i]; the other sheet of the
            // branched double cover negates the pair
            std::complex<double> w{0.5 * b * sheet, -0.5 * c * sheet};
            spec.terms.push_back(conj_pair({1.0, 0.0}, {0.0, -1.0}, w));
        }
        spec.label = sheet > 0 ? "typeI" : "typeI-sheet2";
    }
    if (spec.terms.empty()) throw InvalidInput("threepole_spec: no nonzero terms");
    return spec;
}

double quarter_disc_eh(const ThreePoleParams& prm, double R, double theta) {
    double s = std::sin(theta);
    const double a = prm.a, b = prm.b, c = prm.c;
    if (prm.kind == ThreePoleKind::TypeI)
        return (b * (a * R - b) - c * (a * s + c)) / (R * R + s * s);
    return (b * (a * R + b) - c * (a * s + c)) / (R * R - s * s);
}

TypeIBoundaries typeI_boundaries(double b, double c, double theta) {
    if (b == 0.0)
        throw DomainError("typeI_boundaries: b = 0 is the Bianchi VIII case, handled separately");
    double s = std::sin(theta);
    return {-(1.0 + c * s) / b, (b * b + c * c + c * s) / b};
}

std::string region_to_string(const RegionLabel& l) {
    switch (l.kind) {
        case RegionLabel::Kind::OpenRegion:
            switch (l.open_class) {
                case RegionClass::A: return "A";
                case RegionClass::B: return "B";
                case RegionClass::C: return "C";
                case RegionClass::D: return "D";
            }
            return "?";
        case RegionLabel::Kind::BianchiVIIILine: return "BianchiVIII";
        case RegionLabel::Kind::BianchiIXLine: return "BianchiIX";
        case RegionLabel::Kind::DipoleLine: return "Dipole";
        case RegionLabel::Kind::SpecialPoint: return l.name;
    }
    return "?";
}

RegionLabel typeII_region(double b, double c, int grid_n, double line_tol) {
    auto near = [&](double x) { return std::abs(x) < line_tol; };
    if (near(b - 1.0) && near(c)) return {RegionLabel::Kind::SpecialPoint, RegionClass::A, "FubiniStudy"};
    if ((near(b) && near(c - 1.0)) || (near(b) && near(c + 1.0)) ||
        (near(b + 1.0) && near(c)))
        return {RegionLabel::Kind::SpecialPoint, RegionClass::A, "Bergmann"};
    if (near(b) || near(b + c + 1.0) || near(b - c + 1.0))
        return {RegionLabel::Kind::BianchiVIIILine, RegionClass::A, ""};
    if (near(b - c) || near(b + c))
        return {RegionLabel::Kind::DipoleLine, RegionClass::A, ""};
    if (near(c) || near(b + c - 1.0) || near(b - c - 1.0))
        return {RegionLabel::Kind::BianchiIXLine, RegionClass::A, ""};

    ThreePoleParams prm{1.0, b, c, ThreePoleKind::TypeII};
    MultipoleSpec spec = threepole_spec(prm);
    bool fplus = false, fminus = false, dplus = false, dminus = false;
    bool sawCI = false, sawSing = false;
    for (int i = 0; i < grid_n; ++i) {
        double t = (i + 0.5) / grid_n;
        double R = 1.0 + t / (1.0 - t);
        for (int j = 0; j < grid_n; ++j) {
            double S = -1.0 + 2.0 * (j + 0.5) / grid_n;
            HalfPlanePoint p = eh_coords(prm, R, std::asin(S));
            PointClass cls = classify_point(spec, p);
            if (cls == PointClass::ConformalInfinity) sawCI = true;
            if (cls == PointClass::Singular) sawSing = true;
            if (cls == PointClass::PositiveScal) dplus = true;
            if (cls == PointClass::NegativeScal) dminus = true;
            double f = eval_F(spec, p).value();
            double band = 1e-9 * local_scale(spec, p);
            if (f > band) fplus = true;
            if (f < -band) fminus = true;
        }
    }
    bool hasCI = sawCI || (fplus && fminus);
    bool hasSing = sawSing || (dplus && dminus);
    RegionClass cls;
    if (hasCI && hasSing)
        cls = RegionClass::D;
    else if (hasCI)
        cls = RegionClass::C;
    else if (hasSing)
        cls = RegionClass::B;
    else if (dplus && !dminus)
        cls = RegionClass::A;
    else
        cls = RegionClass::C;  // single negative domain; closest description
    return {RegionLabel::Kind::OpenRegion, cls, ""};
}

CruxSolution crux_solution(double b, double c) {
    if (b == 0.0 || c == 0.0) throw DomainError("crux_solution requires b, c != 0");
    CruxSolution s;
    s.R = -(1.0 + b * b - c * c) / (2.0 * b);
    s.S = -(1.0 - b * b + c * c) / (2.0 * c);
    s.in_range = (s.R > 1.0) && (s.S > -1.0) && (s.S < 1.0);
    s.identity_err = std::abs(b * b * (s.R * s.R - 1.0) - c * c * (s.S * s.S - 1.0));
    return s;
}

namespace {

struct RsJets {
    Jet2 W, Q, X, Y, U, V, R, S;
};

RsJets rs_pieces(double a, double b, double c, double R, double S) {
    RsJets o;
    o.R = jet_rho(R);  // first active variable
    o.S = jet_eta(S);  // second active variable
    o.W = a + b * o.R + c * o.S;
    o.Q = (b * b - c * c) + a * (b * o.R - c * o.S);
    o.X = b * o.R - c * o.S;
    o.Y = c * o.R - b * o.S;
    Jet2 r21 = o.R * o.R - 1.0, s21 = 1.0 - o.S * o.S;
    o.U = b * r21 * o.S + c * s21 * o.R;
    o.V = c * r21 * o.S + b * s21 * o.R + a * (o.R * o.R - o.S * o.S);
    return o;
}

}  // namespace

MetricSample rs_metric(double a, double b, double c, double R, double S) {
    if (!(R > 1.0) || !(S > -1.0 && S < 1.0))
        throw DomainError("rs_metric: need R > 1 and S in (-1, 1)");
    RsJets t = rs_pieces(a, b, c, R, S);
    double scale = std::abs(a) + std::abs(b) * R + std::abs(c);
    if (std::abs(t.W.value()) < 1e-9 * scale)
        throw DegenerateAtPoint("rs_metric: a + bR + cS ~ 0");
    if (std::abs(t.Q.value()) < 1e-9 * scale * scale)
        throw DegenerateAtPoint("rs_metric: b^2 - c^2 + a(bR - cS) ~ 0");

    Jet2 W2 = t.W * t.W;
    Jet2 r21 = t.R * t.R - 1.0, s21 = 1.0 - t.S * t.S;
    Jet2 h = t.Q / W2;
    Jet2 den = W2 * t.Q * (t.R * t.R - t.S * t.S);
    Jet2 vol = r21 * s21;

    MetricSample m;
    m.point = {R, S};
    Jet2 g_rr = h / r21;
    Jet2 g_ss = h / s21;
    Jet2 g_pp = (vol * t.X * t.X + t.U * t.U) / den;
    Jet2 g_pq = (vol * t.X * t.Y + t.U * t.V) / den;
    Jet2 g_qq = (vol * t.Y * t.Y + t.V * t.V) / den;

    m.branch = g_rr.value() > 0.0 ? Branch::PositiveBranch : Branch::NegativeBranch;
    double sgn = m.branch == Branch::PositiveBranch ? 1.0 : -1.0;
    m.set(0, 0, sgn * g_rr);
    m.set(1, 1, sgn * g_ss);
    m.set(2, 2, sgn * g_pp);
    m.set(2, 3, sgn * g_pq);
    m.set(3, 3, sgn * g_qq);
    m.set(0, 1, jet_const(0.0));
    m.set(0, 2, jet_const(0.0));
    m.set(0, 3, jet_const(0.0));
    m.set(1, 2, jet_const(0.0));
    m.set(1, 3, jet_const(0.0));
    return m;
}

std::array<std::array<double, 4>, 4> pullback_to_rs(const ThreePoleParams& prm,
                                                    const MultipoleSpec& spec, double R,
                                                    double S) {
    double theta = std::asin(S);
    HalfPlanePoint p = eh_coords(prm, R, theta);
    MetricSample em = einstein_metric(spec, p);
    double sgn = em.branch == Branch::PositiveBranch ? 1.0 : -1.0;  // undo the branch negation
    // the rational chart's torus labels are (psi, -phi) of the explicit
    // metric: swap and flip one orientation so the pullback lands in the
    // rational chart's labeling
    MetricSample m;
    m.point = em.point;
    int perm[4] = {0, 1, 3, 2};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.g[i][j] = em.g[perm[i]][perm[j]];
    m.g[2][3] = -m.g[2][3];
    m.g[3][2] = -m.g[3][2];
    m.g[0][3] = -m.g[0][3];
    m.g[3][0] = -m.g[3][0];
    m.g[1][3] = -m.g[1][3];
    m.g[3][1] = -m.g[3][1];

    double pm = prm.kind == ThreePoleKind::TypeI ? 1.0 : -1.0;
    double r2 = R * R + pm;  // rho = sqrt(R^2 +- 1) cos(theta)
    double ct = std::cos(theta);
    // Jacobian d(rho, eta)/d(R, S), with S = sin(theta)
    double drho_dR = R * ct / std::sqrt(r2);
    double drho_dS = -std::sqrt(r2) * S / ct;
    double deta_dR = S;
    double deta_dS = R;
    double J[2][2] = {{drho_dR, drho_dS}, {deta_dR, deta_dS}};

    std::array<std::array<double, 4>, 4> out{};
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
            double s = 0.0;
            for (int aa = 0; aa < 2; ++aa)
                for (int bb = 0; bb < 2; ++bb) s += J[aa][A] * m.g[aa][bb] * J[bb][B];
            out[A][B] = sgn * s;
        }
    for (int A = 0; A < 2; ++A)
        for (int t = 2; t < 4; ++t) {
            double s = 0.0;
            for (int aa = 0; aa < 2; ++aa) s += J[aa][A] * m.g[aa][t];
            out[A][t] = sgn * s;
            out[t][A] = sgn * s;
        }
    for (int t = 2; t < 4; ++t)
        for (int u = 2; u < 4; ++u) out[t][u] = sgn * m.g[t][u];
    return out;
}

namespace {

// jet-valued 4x4 inverse by Gauss-Jordan, pivoting on values
std::array<std::array<Jet2, 4>, 4> invert4_jets(std::array<std::array<Jet2, 4>, 4> a) {
    std::array<std::array<Jet2, 4>, 4> inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = jet_const(1.0);
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
        if (a[piv][col].value() == 0.0) throw DegenerateAtPoint("invert4_jets: singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Jet2 d = a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            Jet2 f = a[r][col];
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace

KahlerData kahler_data(double a, double b, double c, double R, double S) {
    MetricSample ms = rs_metric(a, b, c, R, S);
    double unflip = ms.branch == Branch::PositiveBranch ? 1.0 : -1.0;
    RsJets t = rs_pieces(a, b, c, R, S);
    Jet2 cf = (t.W * t.W) / (t.Q * t.Q);

    KahlerData out;
    out.conformal_factor = cf.value();

    // Kaehler form (antisymmetric), coordinate order (R, S, phi, psi)
    Jet2 q2 = 1.0 / (t.Q * t.Q);
    std::array<std::array<Jet2, 4>, 4> om{};
    om[2][0] = b * q2;
    om[2][1] = (-c) * q2;
    om[3][0] = (jet_const(c) + a * t.S) * q2;
    om[3][1] = -((jet_const(b) + a * t.R) * q2);
    om[0][2] = -om[2][0];
    om[1][2] = -om[2][1];
    om[0][3] = -om[3][0];
    om[1][3] = -om[3][1];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.omega[i][j] = om[i][j].value();

    // dOmega: only the (R,S,phi) and (R,S,psi) triples are nonzero a priori
    double d1 = om[1][2].dr() - om[0][2].de();  // d(Omega)_{RS phi} up to sign
    double d2 = om[1][3].dr() - om[0][3].de();
    out.d_omega_residual = std::max(std::abs(d1), std::abs(d2));

    // conformal Kaehler metric ghat = cf * (unflipped rational metric)
    std::array<std::array<Jet2, 4>, 4> ghat{};
    MetricSample msample;
    msample.point = ms.point;
    msample.branch = Branch::PositiveBranch;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ghat[i][j] = cf * (unflip * ms.gj[i][j]);
    auto ginv = invert4_jets(ghat);

    Tensor11Jets J{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Jet2 s = jet_const(0.0);
            for (int k = 0; k < 4; ++k) s += ginv[i][k] * om[k][j];
            J[i][j] = s;
        }

    double j2 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = (i == j) ? 1.0 : 0.0;
            for (int k = 0; k < 4; ++k) s += J[i][k].value() * J[k][j].value();
            j2 = std::max(j2, std::abs(s));
        }
    out.j_squared_residual = j2;

    // nabla J with respect to ghat; ghat must be definite for the engine's
    // cholesky, so flip if needed (Levi-Civita is sign-invariant)
    double flip = ghat[0][0].value() > 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) msample.set(i, j, flip * ghat[i][j]);
    auto nj = covariant_derivative(msample, J);
    double njr = 0.0;
    for (int cdir = 0; cdir < 4; ++cdir)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) njr = std::max(njr, std::abs(nj[cdir][i][j]));
    out.nabla_j_residual = njr;

    Jet2 muphi = t.X / t.Q, mupsi = t.Y / t.Q;
    out.mu_phi = muphi.value();
    out.mu_psi = mupsi.value();
    // d(mu_K) = kappa * i_K Omega with one constant for both Killing fields
    double iphi[2] = {om[2][0].value(), om[2][1].value()};
    double ipsi[2] = {om[3][0].value(), om[3][1].value()};
    double dphi[2] = {muphi.dr(), muphi.de()};
    double dpsi[2] = {mupsi.dr(), mupsi.de()};
    double num = dphi[0] * iphi[0] + dphi[1] * iphi[1] + dpsi[0] * ipsi[0] +
                 dpsi[1] * ipsi[1];
    double den = iphi[0] * iphi[0] + iphi[1] * iphi[1] + ipsi[0] * ipsi[0] +
                 ipsi[1] * ipsi[1];
    out.moment_constant = num / den;
    double res = 0.0;
    for (int i = 0; i < 2; ++i) {
        res = std::max(res, std::abs(dphi[i] - out.moment_constant * iphi[i]));
        res = std::max(res, std::abs(dpsi[i] - out.moment_constant * ipsi[i]));
    }
    out.moment_residual = res;
    return out;
}

BryantRoots bryant_poly(const Twistor& p1, const Twistor& p2, const Twistor& p3) {
    if (twistor_det(p1, p2) == 0.0 || twistor_det(p2, p3) == 0.0 ||
        twistor_det(p3, p1) == 0.0)
        throw InvalidInput("bryant_poly: twistors must be pairwise independent");
    BryantRoots out;
    out.z = {twistor_det(p2, p3), twistor_det(p3, p1), twistor_det(p1, p2)};
    double z1 = out.z[0], z2 = out.z[1], z3 = out.z[2];
    out.roots = {0.5 * (z1 + z2 + z3), 0.5 * (z1 - z2 - z3), 0.5 * (-z1 + z2 - z3),
                 0.5 * (-z1 - z2 + z3)};
    return out;
}

std::array<double, 4> bryant_product_roots(double a, double b, double c) {
    double b2c2 = b * b - c * c;
    return {2 * a * b + b2c2, -2 * a * b + b2c2, 2 * a * c - b2c2, -2 * a * c - b2c2};
}

}  // namespace sdt
