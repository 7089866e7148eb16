#include "sdtorus/hyperbolic.hpp"

#include <cmath>

namespace sdt {

HalfPlanePoint make_point(double rho, double eta) {
    if (!(rho > 0.0))
        throw DomainError("half-plane point requires rho > 0, got " + std::to_string(rho));
    return {rho, eta};
}

double twistor_det(const Twistor& p1, const Twistor& p2) {
    return p1.a * p2.b - p2.a * p1.b;
}

double twistor_norm(const Twistor& phi, const HalfPlanePoint& p) {
    if (phi.is_zero()) throw InvalidInput("twistor_norm of the zero twistor");
    if (!(p.rho > 0.0)) throw DomainError("twistor_norm requires rho > 0");
    double t = phi.a * p.eta - phi.b;
    return std::sqrt(phi.a * phi.a * p.rho * p.rho + t * t) / std::sqrt(p.rho);
}

Jet2 twistor_norm_jet(const Twistor& phi, const HalfPlanePoint& p) {
    if (phi.is_zero()) throw InvalidInput("twistor_norm of the zero twistor");
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    Jet2 t = phi.a * eta - jet_const(phi.b);
    Jet2 q = (phi.a * phi.a) * rho * rho + t * t;
    return sqrt(q) / sqrt(rho);
}

HyperboloidMatrix hyperboloid_matrix(const HalfPlanePoint& p) {
    if (!(p.rho > 0.0)) throw DomainError("hyperboloid_matrix requires rho > 0");
    double r = 1.0 / p.rho;
    return {{{{r, p.eta * r}, {p.eta * r, (p.rho * p.rho + p.eta * p.eta) * r}}}};
}

HalfPlanePoint point_from_matrix(const Mat2& m) {
    double det = mat2_det(m);
    if (!(det > 0.0) || !(m[0][0] > 0.0))
        throw DomainError("point_from_matrix: matrix not positive definite");
    double s = std::sqrt(det);
    double p00 = m[0][0] / s, p01 = m[0][1] / s;
    return {1.0 / p00, p01 / p00};
}

Twistor sl2_act(const Mat2& M, const Twistor& phi) {
    if (std::abs(mat2_det(M) - 1.0) > 1e-10)
        throw InvalidInput("sl2_act: matrix not unimodular, det = " +
                           std::to_string(mat2_det(M)));
    return {M[0][0] * phi.a + M[0][1] * phi.b, M[1][0] * phi.a + M[1][1] * phi.b};
}

ComplexTwistor sl2_act(const Mat2& M, const ComplexTwistor& phi) {
    if (std::abs(mat2_det(M) - 1.0) > 1e-10)
        throw InvalidInput("sl2_act: matrix not unimodular");
    return {M[0][0] * phi.a + M[0][1] * phi.b, M[1][0] * phi.a + M[1][1] * phi.b};
}

HalfPlanePoint sl2_act_point(const Mat2& M, const HalfPlanePoint& p) {
    HyperboloidMatrix A = hyperboloid_matrix(p);
    Mat2 Mt = {{{M[0][0], M[1][0]}, {M[0][1], M[1][1]}}};
    Mat2 out = mat2_mul(mat2_mul(M, A.m), Mt);
    return point_from_matrix(out);
}

Frame frame_vectors(const HalfPlanePoint& p) {
    if (!(p.rho > 0.0)) throw DomainError("frame_vectors requires rho > 0");
    double sr = std::sqrt(p.rho);
    Frame f;
    f.m0 = {0.0, sr};
    f.m1 = {1.0 / sr, p.eta / sr};
    f.mu0 = {-p.eta / sr, 1.0 / sr};
    f.mu1 = {sr, 0.0};
    return f;
}

Mat2 mat2_mul(const Mat2& A, const Mat2& B) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
    return r;
}

double mat2_det(const Mat2& A) { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }

Mat2 mat2_inv(const Mat2& A) {
    double d = mat2_det(A);
    if (d == 0.0) throw DomainError("mat2_inv: singular matrix");
    return {{{A[1][1] / d, -A[0][1] / d}, {-A[1][0] / d, A[0][0] / d}}};
}

}  // namespace sdt
