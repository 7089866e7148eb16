#include "sdtorus/joyce_ew.hpp"

#include <cmath>

#include "sdtorus/metric.hpp"

namespace sdt {

JoyceSolution phi_from_F(const MultipoleSpec& spec, const Twistor& phi,
                         const HalfPlanePoint& p) {
    if (phi.is_zero()) throw InvalidInput("phi_from_F: zero twistor");
    Jet2 F = eval_F(spec, p);
    Jet2 Fr = F.deriv_rho(), Fe = F.deriv_eta();
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    Jet2 sr = sqrt(rho);
    // frame components of phi: p0 = mu0(phi), p1 = mu1(phi)
    Jet2 p0 = (jet_const(phi.b) - phi.a * eta) / sr;
    Jet2 p1 = phi.a * sr;
    // (1/2 F flat(phi) + dF . phi) in the (mu0, mu1) coframe collapses to the
    // symmetric matrix [[F/2 + rho F_r, rho F_e], [rho F_e, F/2 - rho F_r]]
    // acting on (p0, p1)
    Jet2 m00 = 0.5 * F + rho * Fr;
    Jet2 m01 = rho * Fe;
    Jet2 m11 = 0.5 * F - rho * Fr;
    return {m00 * p0 + m01 * p1, m01 * p0 + m11 * p1};
}

JoyceSolution canonical_solution(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 G = sqrt(jet_rho(p.rho)) * eval_F(spec, p);
    return {G.deriv_rho(), G.deriv_eta()};
}

JoyceSolution second_solution(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    JoyceSolution c = canonical_solution(spec, p);
    Jet2 G = sqrt(jet_rho(p.rho)) * eval_F(spec, p);
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    return {rho * c.A1 - eta * c.A0, G - rho * c.A0 - eta * c.A1};
}

std::array<double, 2> joyce_residual(const JoyceSolution& s, const HalfPlanePoint& p) {
    double r1 = s.A0.dr() + s.A1.de() - s.A0.value() / p.rho;
    double r2 = s.A0.de() - s.A1.dr();
    return {r1, r2};
}

EWData ew_quotient(const Jet2& A0, const Jet2& A1, const Jet2& B0, const Jet2& B1,
                   const HalfPlanePoint& p) {
    Jet2 n2 = A0 * A0 + A1 * A1;
    if (!(n2.value() > 0.0))
        throw DegenerateAtPoint("ew_quotient: vanishing pencil norm A0^2 + A1^2");
    Jet2 rho = jet_rho(p.rho);
    EWData ew;
    ew.gB_conf = n2.value();
    Jet2 om_r = (A0 * A0 - A1 * A1) / (rho * n2);
    Jet2 om_e = 2.0 * A0 * A1 / (rho * n2);
    ew.omegaB = {om_r.value(), om_e.value()};
    ew.w = ((A1 * B0 - A0 * B1) / n2).value();
    ew.A_psi = (-(A0 * B0 + A1 * B1) / n2).value();
    return ew;
}

std::array<double, 2> ew_monopole_residual(const Jet2& A0, const Jet2& A1,
                                           const Jet2& B0, const Jet2& B1,
                                           const HalfPlanePoint& p) {
    // c = dw - omega_B w on (drho, deta); *c = c_r deta^dpsi + c_e dpsi^drho
    // for any metric P (drho^2 + deta^2) + dpsi^2, orientation drho^deta^dpsi.
    // dA = f_r drho^dpsi + f_e deta^dpsi with f = A_psi.
    Jet2 n2 = A0 * A0 + A1 * A1;
    if (!(n2.value() > 0.0))
        throw DegenerateAtPoint("ew_monopole_residual: vanishing pencil norm");
    Jet2 rho = jet_rho(p.rho);
    Jet2 om_r = (A0 * A0 - A1 * A1) / (rho * n2);
    Jet2 om_e = 2.0 * A0 * A1 / (rho * n2);
    Jet2 w = (A1 * B0 - A0 * B1) / n2;
    Jet2 f = -(A0 * B0 + A1 * B1) / n2;
    // Weyl derivative of the weight -1 monopole: in these component
    // conventions this (w, A) pair satisfies *(dw + omega_B w) = dA exactly
    // (sign fixed at build time on the dipole family).
    double c_r = w.dr() + om_r.value() * w.value();
    double c_e = w.de() + om_e.value() * w.value();
    // match components: deta^dpsi and dpsi^drho
    return {c_r - f.de(), c_e + f.dr()};
}

std::array<double, 2> distinguished_monopoles(const MultipoleSpec& spec,
                                              const HalfPlanePoint& p) {
    JoyceSolution c = canonical_solution(spec, p);
    Jet2 G = sqrt(jet_rho(p.rho)) * eval_F(spec, p);
    double n2 = c.A0.value() * c.A0.value() + c.A1.value() * c.A1.value();
    if (!(n2 > 0.0))
        throw DegenerateAtPoint("distinguished_monopoles: vanishing pencil norm");
    double m1 = c.A0.value() / n2;
    double m2 = (p.rho * n2 - G.value() * c.A0.value()) / n2;
    return {m1, m2};
}

namespace {

struct NewtonResult {
    HalfPlanePoint q;
    double V;
};

// solve V(q) = xstar, G(q) = zstar near p; V accumulated incrementally
NewtonResult newton_invert(const MultipoleSpec& spec, const HalfPlanePoint& p,
                           double Vp, double xstar, double zstar) {
    HalfPlanePoint q = p;
    double Vq = Vp;
    for (int it = 0; it < 50; ++it) {
        JoyceSolution s = canonical_solution(spec, q);
        Jet2 G = sqrt(jet_rho(q.rho)) * eval_F(spec, q);
        double a0 = s.A0.value(), a1 = s.A1.value();
        double jac[2][2] = {{a1 / q.rho, -a0 / q.rho}, {a0, a1}};
        double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (std::abs(det) < 1e-14)
            throw DegenerateAtPoint("toda_check: Jacobian (A0^2+A1^2)/rho ~ 0");
        double rx = xstar - Vq, rz = zstar - G.value();
        double drho = (jac[1][1] * rx - jac[0][1] * rz) / det;
        double deta = (-jac[1][0] * rx + jac[0][0] * rz) / det;
        HalfPlanePoint qn{q.rho + drho, q.eta + deta};
        if (!(qn.rho > 0.0)) throw DomainError("toda_check: Newton left rho > 0");
        Vq += backlund_V_polyline(spec, {q, qn});
        q = qn;
        if (std::abs(drho) + std::abs(deta) < 1e-14 * (1.0 + std::abs(q.rho) + std::abs(q.eta)))
            break;
    }
    return {q, Vq};
}

struct StencilVals {
    double u_xx, euu_zz;
};

StencilVals second_differences(const MultipoleSpec& spec, const HalfPlanePoint& p,
                               double Vp, double x0, double z0, double h) {
    auto u_at = [&](double xs, double zs) {
        NewtonResult n = newton_invert(spec, p, Vp, xs, zs);
        return 2.0 * std::log(n.q.rho);
    };
    auto eu_at = [&](double xs, double zs) {
        NewtonResult n = newton_invert(spec, p, Vp, xs, zs);
        return n.q.rho * n.q.rho;
    };
    double u0 = 2.0 * std::log(p.rho);
    double uxx = (u_at(x0 + h, z0) - 2.0 * u0 + u_at(x0 - h, z0)) / (h * h);
    double ez = (eu_at(x0, z0 + h) - 2.0 * p.rho * p.rho + eu_at(x0, z0 - h)) / (h * h);
    return {uxx, ez};
}

}  // namespace

TodaData toda_check(const MultipoleSpec& spec, const HalfPlanePoint& p,
                    const HalfPlanePoint& basepoint, double h) {
    JoyceSolution s = canonical_solution(spec, p);
    double n2 = s.A0.value() * s.A0.value() + s.A1.value() * s.A1.value();
    double scale = local_scale(spec, p);
    if (n2 / p.rho < 1e-12 * scale * scale)
        throw DegenerateAtPoint("toda_check: (V,G) chart degenerate, A0 = A1 = 0");

    double Vp = backlund_V_polyline(spec, {basepoint, p});
    Jet2 G = sqrt(jet_rho(p.rho)) * eval_F(spec, p);

    TodaData out;
    out.u = 2.0 * std::log(p.rho);
    out.x = Vp;
    out.z = G.value();

    StencilVals c1 = second_differences(spec, p, Vp, Vp, out.z, h);
    StencilVals c2 = second_differences(spec, p, Vp, Vp, out.z, 0.5 * h);
    out.u_xx = (4.0 * c2.u_xx - c1.u_xx) / 3.0;
    out.euu_zz = (4.0 * c2.euu_zz - c1.euu_zz) / 3.0;
    out.residual = out.u_xx + out.euu_zz;
    return out;
}

}  // namespace sdt
