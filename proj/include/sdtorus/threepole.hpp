#ifndef SDTORUS_THREEPOLE_HPP
#define SDTORUS_THREEPOLE_HPP

#include <array>
#include <optional>
#include <string>

#include "sdtorus/curvature.hpp"
#include "sdtorus/metric.hpp"

namespace sdt {

enum class ThreePoleKind { TypeI, TypeII };

// sqrt(rho) F = a + b R + c sin(theta) in the Eguchi-Hanson-like chart.
// Type I (poles at eta = +-i) lives on a branched double cover; sheet = +-1
// selects the component R > 0 or R < 0.
struct ThreePoleParams {
    double a = 1.0, b = 0.0, c = 0.0;
    ThreePoleKind kind = ThreePoleKind::TypeII;
};

// rho = sqrt(R^2 - 1) cos(theta) (Type II, R > 1) or sqrt(R^2 + 1) cos(theta)
// (Type I, any real R), eta = R sin(theta), theta in (-pi/2, pi/2)
HalfPlanePoint eh_coords(const ThreePoleParams& prm, double R, double theta);

MultipoleSpec threepole_spec(const ThreePoleParams& prm, int sheet = +1);

// rho^{-1}(F^2/4 - rho^2 |grad F|^2) in the EH chart:
//   Type I:  (b(aR - b) - c(a sin t + c)) / (R^2 + sin^2 t)
//   Type II: (b(aR + b) - c(a sin t + c)) / (R^2 - sin^2 t)
double quarter_disc_eh(const ThreePoleParams& prm, double R, double theta);

struct TypeIBoundaries {
    double R_inf;  // F = 0:  -(1 + c sin t)/b
    double R_pm;   // D = 0:  (b^2 + c^2 + c sin t)/b
};
TypeIBoundaries typeI_boundaries(double b, double c, double theta);  // a = 1, b != 0

enum class RegionClass { A, B, C, D };

struct RegionLabel {
    enum class Kind {
        OpenRegion,
        BianchiVIIILine,
        BianchiIXLine,
        DipoleLine,
        SpecialPoint
    };
    Kind kind = Kind::OpenRegion;
    RegionClass open_class = RegionClass::A;  // valid for OpenRegion
    std::string name;                         // FubiniStudy / Bergmann for points
};

std::string region_to_string(const RegionLabel& l);

// stratification of the (b, c) plane at a = 1; open strata are classified by a
// sign scan of F and D over the (R, S) strip
RegionLabel typeII_region(double b, double c, int grid_n = 200, double line_tol = 1e-9);

struct CruxSolution {
    double R, S;
    bool in_range;        // (R, S) in (1, inf) x (-1, 1)
    double identity_err;  // |b^2(R^2-1) - c^2(S^2-1)|
};
CruxSolution crux_solution(double b, double c);  // a = 1, b, c != 0

// rational metric in coordinates (R, S, phi, psi); jets in (R, S)
MetricSample rs_metric(double a, double b, double c, double R, double S);

// pullback of the half-plane metric sample to the (R, S) chart for comparison
// (S = sin theta); components after the Jacobian transformation
std::array<std::array<double, 4>, 4> pullback_to_rs(const ThreePoleParams& prm,
                                                    const MultipoleSpec& spec, double R,
                                                    double S);

struct KahlerData {
    double conformal_factor;                 // (a+bR+cS)^2 / (b^2-c^2+a(bR-cS))^2
    std::array<std::array<double, 4>, 4> omega;  // Kaehler form components
    double mu_phi, mu_psi;                   // momentum maps
    double d_omega_residual;                 // max |dOmega| components
    double j_squared_residual;               // max |J^2 + Id|
    double nabla_j_residual;                 // max |nabla J| w.r.t. the conformal metric
    // d(mu_K) = kappa * i_K Omega for both Killing fields with one constant
    double moment_constant;                  // fitted kappa (= b^2 - c^2)
    double moment_residual;                  // max |d(mu_K) - kappa i_K Omega|
};

KahlerData kahler_data(double a, double b, double c, double R, double S);

struct BryantRoots {
    std::array<double, 3> z;      // z1 = eps(phi2,phi3), z2, z3 cyclic
    std::array<double, 4> roots;  // r0..r3, summing to zero
};
BryantRoots bryant_poly(const Twistor& p1, const Twistor& p2, const Twistor& p3);

// the product-form root multiset {2ab+b^2-c^2, -2ab+b^2-c^2, 2ac-b^2+c^2, -2ac-b^2+c^2}
std::array<double, 4> bryant_product_roots(double a, double b, double c);

}  // namespace sdt

#endif
