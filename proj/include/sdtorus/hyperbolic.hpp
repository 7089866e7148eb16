#ifndef SDTORUS_HYPERBOLIC_HPP
#define SDTORUS_HYPERBOLIC_HPP

#include <array>
#include <complex>

#include "sdtorus/jets.hpp"

namespace sdt {

struct InvalidInput : DomainError {
    explicit InvalidInput(const std::string& what) : DomainError(what) {}
};

// Point of the half-space model, rho > 0.
struct HalfPlanePoint {
    double rho;
    double eta;
};

HalfPlanePoint make_point(double rho, double eta);  // validates rho > 0

// Element of the fixed 2-dimensional spinor space W, components in the global
// unimodular basis (e1, e2), area form eps(e1, e2) = 1.
struct Twistor {
    double a;
    double b;
    bool is_zero() const { return a == 0.0 && b == 0.0; }
};

struct ComplexTwistor {
    std::complex<double> a;
    std::complex<double> b;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

// Positive definite symmetric 2x2 with unit determinant: the embedding of the
// hyperbolic plane into S^2 W.
struct HyperboloidMatrix {
    Mat2 m;
};

double twistor_det(const Twistor& p1, const Twistor& p2);  // eps(p1, p2)

// sqrt(a^2 rho^2 + (a eta - b)^2) / sqrt(rho); equals sqrt(phi^T A(p)^{-1} phi)
double twistor_norm(const Twistor& phi, const HalfPlanePoint& p);
Jet2 twistor_norm_jet(const Twistor& phi, const HalfPlanePoint& p);

HyperboloidMatrix hyperboloid_matrix(const HalfPlanePoint& p);
// inverse map: extract (rho, eta) from a positive symmetric matrix after
// normalizing its determinant to 1
HalfPlanePoint point_from_matrix(const Mat2& m);

// SL(W) action on twistors (det M = 1 to tolerance 1e-10) and the induced
// Moebius action on the half plane, computed through the hyperboloid.
Twistor sl2_act(const Mat2& M, const Twistor& phi);
ComplexTwistor sl2_act(const Mat2& M, const ComplexTwistor& phi);
HalfPlanePoint sl2_act_point(const Mat2& M, const HalfPlanePoint& p);

// Frame of W over the half plane and its dual coframe:
//   m0 = [0, sqrt(rho)],  m1 = [1/sqrt(rho), eta/sqrt(rho)]
//   mu0 = [-eta/sqrt(rho), 1/sqrt(rho)], mu1 = [sqrt(rho), 0]  (rows; mu_i(m_j) = delta_ij)
// mu0 is the honest dual of m0; the solution components (A0, A1) of the Joyce
// equation are taken with respect to (mu0, mu1).
struct Frame {
    Twistor m0, m1;   // vectors
    Twistor mu0, mu1; // covectors, stored as component pairs
};

Frame frame_vectors(const HalfPlanePoint& p);

Mat2 mat2_mul(const Mat2& A, const Mat2& B);
Mat2 mat2_inv(const Mat2& A);
double mat2_det(const Mat2& A);

}  // namespace sdt

#endif
