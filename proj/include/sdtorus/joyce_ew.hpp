#ifndef SDTORUS_JOYCE_EW_HPP
#define SDTORUS_JOYCE_EW_HPP

#include <array>

#include "sdtorus/eigenfunction.hpp"

namespace sdt {

// Solution Phi = A0 mu0 + A1 mu1 of the Joyce equation
//   (A0)_r + (A1)_e = A0/rho,   (A0)_e - (A1)_r = 0
struct JoyceSolution {
    Jet2 A0, A1;
};

// Phi = (1/2) F flat(phi) + dF . phi, with flat = index lowering by A(p)^{-1}
// and dF in S^2 W* contracted on one slot. For phi = [0,1] this is the
// canonical solution ((sqrt(rho) F)_r, (sqrt(rho) F)_e); for phi = [1,0] it is
// the second solution (rho A1 - eta A0, G - rho A0 - eta A1).
JoyceSolution phi_from_F(const MultipoleSpec& spec, const Twistor& phi,
                         const HalfPlanePoint& p);

JoyceSolution canonical_solution(const MultipoleSpec& spec, const HalfPlanePoint& p);
JoyceSolution second_solution(const MultipoleSpec& spec, const HalfPlanePoint& p);

// r1 = (A0)_r + (A1)_e - A0/rho, r2 = (A0)_e - (A1)_r
std::array<double, 2> joyce_residual(const JoyceSolution& s, const HalfPlanePoint& p);

struct EWData {
    // g_B = (A0^2+A1^2) g_H2 + dpsi^2, coordinates (rho, eta, psi)
    double gB_conf;                  // (A0^2 + A1^2)
    std::array<double, 2> omegaB;    // components on (drho, deta)
    double w;                        // abelian monopole
    double A_psi;                    // A = A_psi dpsi
};

EWData ew_quotient(const Jet2& A0, const Jet2& A1, const Jet2& B0, const Jet2& B1,
                   const HalfPlanePoint& p);

// residual 2-form components of *(dw - omega_B w) - dA on (deta^dpsi, dpsi^drho),
// orientation drho^deta^dpsi
std::array<double, 2> ew_monopole_residual(const Jet2& A0, const Jet2& A1,
                                           const Jet2& B0, const Jet2& B1,
                                           const HalfPlanePoint& p);

// (rho/2) u_z and (rho/2)(2 - z u_z) in terms of the canonical pencil
std::array<double, 2> distinguished_monopoles(const MultipoleSpec& spec,
                                              const HalfPlanePoint& p);

struct TodaData {
    double u;         // 2 log rho at the point
    double x, z;      // x = V (from basepoint), z = G
    double u_xx;      // second differences via Newton inversion
    double euu_zz;    // (e^u)_zz
    double residual;  // u_xx + (e^u)_zz  (u is psi-independent)
};

// Newton-inverts (V, G) around p to sample u(x, z) on a stencil; step h with
// one Richardson extrapolation. Throws on a degenerate Jacobian.
TodaData toda_check(const MultipoleSpec& spec, const HalfPlanePoint& p,
                    const HalfPlanePoint& basepoint, double h = 1e-3);

}  // namespace sdt

#endif
