#ifndef SDTORUS_SWANN_HPP
#define SDTORUS_SWANN_HPP

#include <array>
#include <limits>

#include "sdtorus/eigenfunction.hpp"

namespace sdt {

// quaternions, convention ij = k (right-handed), conjugation negates the
// imaginary part
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

Quat qmul(const Quat& a, const Quat& b);
Quat qconj(const Quat& a);
double qnorm2(const Quat& a);

struct ImQuat {
    double x = 0.0, y = 0.0, z = 0.0;
};

double dot(const ImQuat& a, const ImQuat& b);
ImQuat cross(const ImQuat& a, const ImQuat& b);
double norm(const ImQuat& a);

// differential forms on (rho, eta, phi, psi) with Jet2 coefficients; only the
// first two coordinates carry derivatives
struct Form1 {
    std::array<Jet2, 4> c{};  // components on dx^a
};
struct Form2 {
    // sorted pairs (01) (02) (03) (12) (13) (23)
    std::array<Jet2, 6> c{};
    static int pair_index(int a, int b);
};
struct Form3 {
    // sorted triples (012) (013) (023) (123)
    std::array<Jet2, 4> c{};
};

Form2 exterior_d(const Form1& w);
Form3 exterior_d(const Form2& w);
Form2 wedge(const Form1& a, const Form1& b);
Form3 wedge(const Form1& a, const Form2& b);

double maxabs(const Form2& f);
double maxabs(const Form3& f);

// imaginary-quaternion valued forms
template <class F>
struct QForm {
    F i, j, k;
};
using QForm1 = QForm<Form1>;
using QForm2 = QForm<Form2>;
using QForm3 = QForm<Form3>;

struct SwannFrames {
    QForm2 Theta;
    QForm1 omega;
};

// Theta (frame of antiselfdual 2-forms) and the connection omega
SwannFrames quaternionic_frames(const MultipoleSpec& spec, const HalfPlanePoint& p);

struct StructureResiduals {
    double r_theta;  // ||dTheta - (omega ^ Theta - Theta ^ omega)|| / scale
    double r_omega;  // ||domega - omega ^ omega + s Theta|| / scale
    double s_fit;    // least-squares s from this point
};

// if s_frozen is provided (finite), uses it instead of fitting
StructureResiduals structure_residuals(const MultipoleSpec& spec, const HalfPlanePoint& p,
                                       double s_frozen = std::numeric_limits<double>::quiet_NaN());

using Mat2d = std::array<std::array<double, 2>, 2>;

// (F/qnorm2) [[F/2 + rho F_r, rho F_e], [rho F_e, F/2 - rho F_r]]
Mat2d monopole_matrix(const MultipoleSpec& spec, const HalfPlanePoint& p, double qn2);

// x_psi = q k qbar / (sqrt(rho) F), x_phi = q (eta + rho i) k qbar / (sqrt(rho) F)
std::array<ImQuat, 2> momentum_maps(const MultipoleSpec& spec, const HalfPlanePoint& p,
                                    const Quat& q);

// Gram(x1, x2) / |x1 ^ x2|; throws on (nearly) decomposable input
HyperboloidMatrix grammian_check(const ImQuat& x1, const ImQuat& x2);

// Bielawski-Dancer sum over the spec's poles with r_k = |b_k x1 - a_k x2|
// (complex-bilinear for conjugate pairs). Equals the constant-basis matrix of
// d(Ftilde) at the Grammian cone point.
Mat2d bielawski_dancer_matrix(const MultipoleSpec& spec, const ImQuat& x1,
                              const ImQuat& x2);

// element of S^2 W_+: symmetric matrix [[P, Q], [Q, R]] with PR - Q^2 > 0
struct ConeVector {
    double P, Q, R;
    double det() const { return P * R - Q * Q; }
};

ConeVector cone_point(const HalfPlanePoint& p, double scale = 1.0);  // scale * A(p)

// homogeneity-1/2 extension of F to the cone, exact jets to order 2 in (P,Q,R)
Jet3 homogeneous_F(const MultipoleSpec& spec, const ConeVector& A);

// Lorentzian wave operator d^2/dQ^2 - 4 d^2/dPdR applied to Ftilde, and a scale
double wave_residual(const MultipoleSpec& spec, const ConeVector& A, double* scale = nullptr);

// constant-basis matrix [[2 Ftilde_P, Ftilde_Q], [Ftilde_Q, 2 Ftilde_R]]
Mat2d dFtilde_matrix_basis(const MultipoleSpec& spec, const ConeVector& A);
// the same object in the homogeneity-1/2 frame m_i(A) = (det A)^{1/4} m_i:
// equals [[F/2 + rho F_r, rho F_e],[rho F_e, F/2 - rho F_r]] at the projected
// point for every cone point over it
Mat2d dFtilde_matrix_frame(const MultipoleSpec& spec, const ConeVector& A);

}  // namespace sdt

#endif
