#ifndef SDTORUS_EIGENFUNCTION_HPP
#define SDTORUS_EIGENFUNCTION_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sdtorus/hyperbolic.hpp"
#include "sdtorus/jets.hpp"

namespace sdt {

// One summand of a multipole eigenfunction F.
//   RealPole:      sign * |phi|
//   ConjugatePair: 2 Re( weight * |phi1 + i phi2| )   (complex-bilinear norm,
//                  principal square root; weight defaults to 1, which is the
//                  |chi| + |chi-bar| combination)
//   Perturb:       coeff * rho   -- NOT an eigenfunction; negative-control hook
struct PoleTerm {
    enum class Kind { RealPole, ConjugatePair, Perturb };
    Kind kind = Kind::RealPole;
    Twistor phi{0.0, 1.0};
    int sign = 1;
    Twistor phi1{1.0, 0.0}, phi2{0.0, 0.0};
    std::complex<double> weight{1.0, 0.0};
    double coeff = 0.0;
};

struct MultipoleSpec {
    std::vector<PoleTerm> terms;
    std::string label;

    bool is_single_monopole() const;
};

PoleTerm real_pole(const Twistor& phi, int sign = 1);
PoleTerm conj_pair(const Twistor& phi1, const Twistor& phi2,
                   std::complex<double> weight = {1.0, 0.0});

// Built-in families
MultipoleSpec monopole_spec();
MultipoleSpec dipole_plus();    // F+ = (1 + sqrt(rho^2+eta^2)) / sqrt(rho)
MultipoleSpec dipole_minus();   // F- = (1 - sqrt(rho^2+eta^2)) / sqrt(rho)
MultipoleSpec dipole_conj();    // Fc = (sqrt(rho^2+(eta+i)^2) + sqrt(rho^2+(eta-i)^2)) / sqrt(rho)

MultipoleSpec sl2_act(const Mat2& M, const MultipoleSpec& spec);
MultipoleSpec concat(const MultipoleSpec& a, const MultipoleSpec& b);

enum class PointClass { PositiveScal, NegativeScal, ConformalInfinity, Singular, Undefined };
const char* to_string(PointClass c);

// F with exact partials through order 3.
Jet2 eval_F(const MultipoleSpec& spec, const HalfPlanePoint& p);

// F_rr + F_ee - 3F/(4 rho^2)
double pde_residual(const MultipoleSpec& spec, const HalfPlanePoint& p);
// magnitude of the summands entering the residual, for relative bounds
double pde_scale(const MultipoleSpec& spec, const HalfPlanePoint& p);

// D = F^2 - 4 rho^2 (F_r^2 + F_e^2)
double discriminant(const MultipoleSpec& spec, const HalfPlanePoint& p);
// independent route: D = 4 rho sum_{j<k} w_j w_k eps(phi_j, phi_k)^2 / (n_j n_k)
// (pairwise twistor determinants; used as a cross-check oracle)
double discriminant_pairwise(const MultipoleSpec& spec, const HalfPlanePoint& p);

// sum of |term| magnitudes: the local scale used by the classification bands
double local_scale(const MultipoleSpec& spec, const HalfPlanePoint& p);

PointClass classify_point(const MultipoleSpec& spec, const HalfPlanePoint& p,
                          double tol = 1e-9);

struct BacklundData {
    Jet2 G;           // sqrt(rho) * F
    double V;         // path integral of (A1/rho) drho - (A0/rho) deta from basepoint
    double ahf_residual;  // rho V_ee + (rho V_r)_r, from jets of (A0, A1)
};

// Integrates V along the straight segment basepoint -> p (the 1-form is closed;
// callers pick paths inside the domain). Adaptive Gauss-Kronrod, rel tol 1e-10.
BacklundData backlund(const MultipoleSpec& spec, const HalfPlanePoint& p,
                      const HalfPlanePoint& basepoint);
double backlund_V_polyline(const MultipoleSpec& spec,
                           const std::vector<HalfPlanePoint>& path);

// JSON wire format:
// { "label": str, "terms": [ {"type":"real","phi":[a,b],"sign":1|-1}
//                          | {"type":"conjpair","phi1":[a,b],"phi2":[a,b](,"weight":[re,im])}
//                          | {"type":"perturb","coeff":c} ] }
MultipoleSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const MultipoleSpec& spec);

}  // namespace sdt

#endif
