#include "sdtorus/swann.hpp"

#include "sdtorus/metric.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace sdt {

Quat qmul(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat qconj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }

double qnorm2(const Quat& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }

double dot(const ImQuat& a, const ImQuat& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

ImQuat cross(const ImQuat& a, const ImQuat& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const ImQuat& a) { return std::sqrt(dot(a, a)); }

namespace {
constexpr int P2A[6] = {0, 0, 0, 1, 1, 2};
constexpr int P2B[6] = {1, 2, 3, 2, 3, 3};
constexpr int T3[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
}  // namespace

int Form2::pair_index(int a, int b) {
    for (int n = 0; n < 6; ++n)
        if (P2A[n] == a && P2B[n] == b) return n;
    return -1;
}

namespace {

Jet2 d_coord(const Jet2& f, int dir) {
    if (dir == 0) return f.deriv_rho();
    if (dir == 1) return f.deriv_eta();
    return Jet2{};  // phi, psi are Killing directions
}

// signed pair component
Jet2 pair_comp(const Form2& w, int a, int b) {
    if (a == b) return Jet2{};
    if (a < b) return w.c[Form2::pair_index(a, b)];
    return -w.c[Form2::pair_index(b, a)];
}

}  // namespace

Form2 exterior_d(const Form1& w) {
    Form2 out;
    for (int n = 0; n < 6; ++n) {
        int a = P2A[n], b = P2B[n];
        out.c[n] = d_coord(w.c[b], a) - d_coord(w.c[a], b);
    }
    return out;
}

Form3 exterior_d(const Form2& w) {
    Form3 out;
    for (int n = 0; n < 4; ++n) {
        int a = T3[n][0], b = T3[n][1], c = T3[n][2];
        out.c[n] = d_coord(pair_comp(w, b, c), a) - d_coord(pair_comp(w, a, c), b) +
                   d_coord(pair_comp(w, a, b), c);
    }
    return out;
}

Form2 wedge(const Form1& a, const Form1& b) {
    Form2 out;
    for (int n = 0; n < 6; ++n) {
        int p = P2A[n], q = P2B[n];
        out.c[n] = a.c[p] * b.c[q] - a.c[q] * b.c[p];
    }
    return out;
}

Form3 wedge(const Form1& a, const Form2& b) {
    Form3 out;
    for (int n = 0; n < 4; ++n) {
        int p = T3[n][0], q = T3[n][1], r = T3[n][2];
        out.c[n] = a.c[p] * pair_comp(b, q, r) - a.c[q] * pair_comp(b, p, r) +
                   a.c[r] * pair_comp(b, p, q);
    }
    return out;
}

double maxabs(const Form2& f) {
    double m = 0.0;
    for (const auto& c : f.c) m = std::max(m, std::abs(c.value()));
    return m;
}

double maxabs(const Form3& f) {
    double m = 0.0;
    for (const auto& c : f.c) m = std::max(m, std::abs(c.value()));
    return m;
}

SwannFrames quaternionic_frames(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 F = eval_F(spec, p);
    if (std::abs(F.value()) < 1e-12 * local_scale(spec, p))
        throw DegenerateAtPoint("quaternionic_frames: F ~ 0");
    Jet2 Fr = F.deriv_rho(), Fe = F.deriv_eta();
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    Jet2 sr = sqrt(rho);
    Jet2 F2 = F * F;

    Form1 alpha, beta;
    alpha.c[2] = sr;
    beta.c[2] = eta / sr;
    beta.c[3] = 1.0 / sr;

    SwannFrames out;

    // Theta_i = (1/F^2) [ (-F^2/4 + rho^2 (F_r^2 + F_e^2)) drho^deta / rho^2 + alpha^beta ]
    Jet2 coef = (-0.25 * F2 + rho * rho * (Fr * Fr + Fe * Fe)) / (F2 * rho * rho);
    Form2 th1;
    th1.c[Form2::pair_index(0, 1)] = coef;
    Form2 ab = wedge(alpha, beta);
    for (int n = 0; n < 6; ++n) th1.c[n] += ab.c[n] / F2;
    out.Theta.i = th1;

    // complex 1-form C = (rho F_r + i rho F_e)(alpha - i beta) - (F/2)(alpha + i beta)
    Form1 Cr, Ci;
    {
        Jet2 pr = rho * Fr, pe = rho * Fe, hf = 0.5 * F;
        for (int a = 0; a < 4; ++a) {
            Cr.c[a] = (pr - hf) * alpha.c[a] + pe * beta.c[a];
            Ci.c[a] = pe * alpha.c[a] - (pr + hf) * beta.c[a];
        }
    }
    Form1 drho_over_rho, deta_over_rho;
    drho_over_rho.c[0] = 1.0 / rho;
    deta_over_rho.c[1] = 1.0 / rho;
    Form2 z_r = wedge(Cr, drho_over_rho);
    {
        Form2 t = wedge(Ci, deta_over_rho);
        for (int n = 0; n < 6; ++n) z_r.c[n] += t.c[n];
    }
    Form2 z_i = wedge(Ci, drho_over_rho);
    {
        Form2 t = wedge(Cr, deta_over_rho);
        for (int n = 0; n < 6; ++n) z_i.c[n] -= t.c[n];
    }
    for (int n = 0; n < 6; ++n) {
        out.Theta.j.c[n] = z_r.c[n] / F2;
        out.Theta.k.c[n] = z_i.c[n] / F2;
    }

    // omega = (1/F)[ -rho F_e drho/rho + (F/2 + rho F_r) deta/rho ] i - (1/F)(alpha - i beta) j
    out.omega.i.c[0] = -Fe / F;
    out.omega.i.c[1] = (0.5 * F + rho * Fr) / (rho * F);
    for (int a = 0; a < 4; ++a) {
        out.omega.j.c[a] = -alpha.c[a] / F;
        out.omega.k.c[a] = beta.c[a] / F;
    }
    return out;
}

namespace {

double dot6(const Form2& a, const Form2& b) {
    double s = 0.0;
    for (int n = 0; n < 6; ++n) s += a.c[n].value() * b.c[n].value();
    return s;
}

}  // namespace

StructureResiduals structure_residuals(const MultipoleSpec& spec, const HalfPlanePoint& p,
                                       double s_frozen) {
    SwannFrames f = quaternionic_frames(spec, p);
    const Form1 &w1 = f.omega.i, &w2 = f.omega.j, &w3 = f.omega.k;
    const Form2 &t1 = f.Theta.i, &t2 = f.Theta.j, &t3 = f.Theta.k;

    // E0_a = d omega_a + omega_b ^ omega_c, (abc) cyclic; the selfdual
    // Einstein condition closes as E0_a + s Theta_a = 0
    Form2 e1 = exterior_d(w1), e2 = exterior_d(w2), e3 = exterior_d(w3);
    {
        Form2 ww = wedge(w2, w3);
        for (int n = 0; n < 6; ++n) e1.c[n] += ww.c[n];
    }
    {
        Form2 ww = wedge(w3, w1);
        for (int n = 0; n < 6; ++n) e2.c[n] += ww.c[n];
    }
    {
        Form2 ww = wedge(w1, w2);
        for (int n = 0; n < 6; ++n) e3.c[n] += ww.c[n];
    }

    double s;
    if (std::isfinite(s_frozen)) {
        s = s_frozen;
    } else {
        double num = dot6(e1, t1) + dot6(e2, t2) + dot6(e3, t3);
        double den = dot6(t1, t1) + dot6(t2, t2) + dot6(t3, t3);
        s = -num / den;
    }

    double r_omega = 0.0, scale_omega = 0.0;
    {
        const Form2* es[3] = {&e1, &e2, &e3};
        const Form2* ts[3] = {&t1, &t2, &t3};
        for (int a = 0; a < 3; ++a) {
            for (int n = 0; n < 6; ++n) {
                double v = es[a]->c[n].value() + s * ts[a]->c[n].value();
                r_omega = std::max(r_omega, std::abs(v));
            }
            scale_omega = std::max(scale_omega,
                                   std::max(maxabs(*es[a]), std::abs(s) * maxabs(*ts[a])));
        }
    }

    // dTheta_a + (omega_b ^ Theta_c - omega_c ^ Theta_b) = 0
    double r_theta = 0.0, scale_theta = 0.0;
    {
        const Form1* ws[3] = {&w1, &w2, &w3};
        const Form2* ts[3] = {&t1, &t2, &t3};
        for (int a = 0; a < 3; ++a) {
            int b = (a + 1) % 3, c = (a + 2) % 3;
            Form3 res = exterior_d(*ts[a]);
            Form3 wb = wedge(*ws[b], *ts[c]);
            Form3 wc = wedge(*ws[c], *ts[b]);
            double sc = maxabs(res);
            for (int n = 0; n < 4; ++n) {
                res.c[n] += wb.c[n] - wc.c[n];
                r_theta = std::max(r_theta, std::abs(res.c[n].value()));
            }
            scale_theta = std::max({scale_theta, sc, maxabs(wb), maxabs(wc)});
        }
    }

    StructureResiduals out;
    out.s_fit = s;
    out.r_omega = r_omega / std::max(scale_omega, 1e-300);
    out.r_theta = r_theta / std::max(scale_theta, 1e-300);
    return out;
}

Mat2d monopole_matrix(const MultipoleSpec& spec, const HalfPlanePoint& p, double qn2) {
    if (!(qn2 > 0.0)) throw InvalidInput("monopole_matrix: qnorm2 must be positive");
    Jet2 F = eval_F(spec, p);
    double f = F.value(), fr = F.dr(), fe = F.de();
    double c = f / qn2;
    return {{{c * (0.5 * f + p.rho * fr), c * p.rho * fe},
             {c * p.rho * fe, c * (0.5 * f - p.rho * fr)}}};
}

std::array<ImQuat, 2> momentum_maps(const MultipoleSpec& spec, const HalfPlanePoint& p,
                                    const Quat& q) {
    if (qnorm2(q) == 0.0) throw InvalidInput("momentum_maps: q must be nonzero");
    double f = eval_F(spec, p).value();
    if (f == 0.0) throw DegenerateAtPoint("momentum_maps: F = 0");
    double den = std::sqrt(p.rho) * f;
    Quat k{0, 0, 0, 1};
    Quat qk = qmul(qmul(q, k), qconj(q));
    // (eta + rho i) k = eta k - rho j
    Quat ek{0, 0, -p.rho, p.eta};
    Quat qe = qmul(qmul(q, ek), qconj(q));
    ImQuat xpsi{qk.x / den, qk.y / den, qk.z / den};
    ImQuat xphi{qe.x / den, qe.y / den, qe.z / den};
    return {xpsi, xphi};
}

HyperboloidMatrix grammian_check(const ImQuat& x1, const ImQuat& x2) {
    double a = dot(x1, x1), b = dot(x1, x2), c = dot(x2, x2);
    double wedge2 = a * c - b * b;
    if (!(wedge2 > 1e-24 * a * c))
        throw InvalidInput("grammian_check: decomposable input, |x1 ^ x2| ~ 0");
    double w = std::sqrt(wedge2);
    return {{{{a / w, b / w}, {b / w, c / w}}}};
}

Mat2d bielawski_dancer_matrix(const MultipoleSpec& spec, const ImQuat& x1,
                              const ImQuat& x2) {
    using C = std::complex<double>;
    Mat2d out{{{0.0, 0.0}, {0.0, 0.0}}};
    auto add_pole = [&](C a, C b, C weight) {
        // alpha = (b, -a); r = sqrt(sum (b x1 - a x2)_i^2), complex-bilinear
        C v1 = b * x1.x - a * x2.x;
        C v2 = b * x1.y - a * x2.y;
        C v3 = b * x1.z - a * x2.z;
        C r2 = v1 * v1 + v2 * v2 + v3 * v3;
        C r = std::sqrt(r2);
        if (std::abs(r) == 0.0)
            throw DomainError("bielawski_dancer_matrix: point on a pole axis, r_k = 0");
        C m00 = weight * b * b / r;
        C m01 = weight * (-a) * b / r;
        C m11 = weight * a * a / r;
        out[0][0] += m00.real();
        out[0][1] += m01.real();
        out[1][0] += m01.real();
        out[1][1] += m11.real();
    };
    for (const auto& t : spec.terms) {
        if (t.kind == PoleTerm::Kind::RealPole) {
            add_pole(C(t.phi.a, 0), C(t.phi.b, 0), C(double(t.sign), 0));
        } else if (t.kind == PoleTerm::Kind::ConjugatePair) {
            C a{t.phi1.a, t.phi2.a}, b{t.phi1.b, t.phi2.b};
            add_pole(a, b, t.weight);
            add_pole(std::conj(a), std::conj(b), std::conj(t.weight));
        } else {
            throw InvalidInput("bielawski_dancer_matrix: perturb terms unsupported");
        }
    }
    return out;
}

ConeVector cone_point(const HalfPlanePoint& p, double scale) {
    if (!(scale > 0.0)) throw InvalidInput("cone_point: scale must be positive");
    HyperboloidMatrix A = hyperboloid_matrix(p);
    return {scale * A.m[0][0], scale * A.m[0][1], scale * A.m[1][1]};
}

namespace {

Jet3 term_on_cone(const PoleTerm& t, const ConeVector& A) {
    using C = std::complex<double>;
    auto linear = [&](C a, C b) -> CJet3 {
        // L = b^2 P - 2 a b Q + a^2 R
        C cb2 = b * b, cab = a * b, ca2 = a * a;
        Jet3 re = cb2.real() * jet3_var(0, A.P) + (-2.0 * cab.real()) * jet3_var(1, A.Q) +
                  ca2.real() * jet3_var(2, A.R);
        Jet3 im = cb2.imag() * jet3_var(0, A.P) + (-2.0 * cab.imag()) * jet3_var(1, A.Q) +
                  ca2.imag() * jet3_var(2, A.R);
        return {re, im};
    };
    switch (t.kind) {
        case PoleTerm::Kind::RealPole: {
            CJet3 L = linear(C(t.phi.a, 0), C(t.phi.b, 0));
            Jet3 s = sqrt(L.re);
            return t.sign >= 0 ? s : -1.0 * s;
        }
        case PoleTerm::Kind::ConjugatePair: {
            C a{t.phi1.a, t.phi2.a}, b{t.phi1.b, t.phi2.b};
            CJet3 s = sqrt(linear(a, b));
            return 2.0 * (t.weight.real() * s.re - t.weight.imag() * s.im);
        }
        default:
            throw InvalidInput("homogeneous_F: perturb terms unsupported on the cone");
    }
}

}  // namespace

Jet3 homogeneous_F(const MultipoleSpec& spec, const ConeVector& A) {
    if (!(A.det() > 0.0))
        throw DomainError("homogeneous_F: cone point needs positive determinant");
    Jet3 F = jet3_const(0.0);
    for (const auto& t : spec.terms) F = F + term_on_cone(t, A);
    return F;
}

double wave_residual(const MultipoleSpec& spec, const ConeVector& A, double* scale) {
    if (!(A.det() > 0.0))
        throw DomainError("wave_residual: cone point needs positive determinant");
    double res = 0.0, sc = 0.0;
    for (const auto& t : spec.terms) {
        Jet3 f = term_on_cone(t, A);
        res += f.d22() - 4.0 * f.d13();
        sc += std::abs(f.d22()) + 4.0 * std::abs(f.d13()) + std::abs(f.value()) / A.det();
    }
    if (scale) *scale = sc > 0.0 ? sc : 1.0;
    return res;
}

Mat2d dFtilde_matrix_basis(const MultipoleSpec& spec, const ConeVector& A) {
    Jet3 F = homogeneous_F(spec, A);
    return {{{2.0 * F.d1(), F.d2()}, {F.d2(), 2.0 * F.d3()}}};
}

Mat2d dFtilde_matrix_frame(const MultipoleSpec& spec, const ConeVector& A) {
    // matrix of d(Ftilde) in the frame (m0, m1) of the projected point,
    // normalized by (det A)^{1/4}: equals
    // [[F/2 + rho F_r, rho F_e], [rho F_e, F/2 - rho F_r]] for every cone
    // point over (rho, eta)
    Mat2d Me = dFtilde_matrix_basis(spec, A);
    double t = std::sqrt(A.det());
    HalfPlanePoint p = point_from_matrix({{{A.P / t, A.Q / t}, {A.Q / t, A.R / t}}});
    double sr = std::sqrt(p.rho);
    double qroot = std::sqrt(t);  // (det A)^{1/4}
    // columns m0 = (0, sr), m1 = (1/sr, eta/sr)
    double B[2][2] = {{0.0, 1.0 / sr}, {sr, p.eta / sr}};
    Mat2d out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) s += B[a][i] * Me[a][b] * B[b][j];
            out[i][j] = qroot * s;
        }
    return out;
}

}  // namespace sdt
