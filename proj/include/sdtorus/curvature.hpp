#ifndef SDTORUS_CURVATURE_HPP
#define SDTORUS_CURVATURE_HPP

#include <functional>
#include <string>
#include <vector>

#include "sdtorus/metric.hpp"

namespace sdt {

struct CurvatureReport {
    double lambda_hat = 0.0;        // fitted Einstein constant, Ric ~ Lambda g
    double einstein_residual = 0.0; // ||Ric - Lambda g||_inf / ||g||_inf
    double scalar_curv = 0.0;
    double weyl_plus_norm = 0.0;
    double weyl_minus_norm = 0.0;
    double weyl_full_norm = 0.0;
    double twist_scalar_1 = 0.0;    // (*dK^flat)(K, Ktilde), K = d/dphi
    double twist_scalar_2 = 0.0;    // same for Ktilde = d/dpsi
    double metric_scale = 0.0;      // ||g||_inf
    double bianchi_residual = 0.0;  // first Bianchi identity, engine sanity
};

using MetricField = std::function<MetricSample(const HalfPlanePoint&)>;

CurvatureReport curvature_report(const MetricSample& m);

// optional second derivative path: recompute Christoffels by central
// differences of the field's component values (step h) and report the largest
// disagreement with the jet route
double christoffel_fd_check(const MetricField& field, const HalfPlanePoint& p,
                            double h = 1e-4);

struct EinsteinSummary {
    std::vector<CurvatureReport> reports;
    double max_einstein_residual = 0.0;
    double lambda_spread = 0.0;   // relative spread of lambda_hat across points
    double mean_lambda = 0.0;
    bool sign_consistent = true;  // scalar curvature sign matches branch at all points
};

EinsteinSummary einstein_verify(const MultipoleSpec& spec,
                                const std::vector<HalfPlanePoint>& points);

// covariant derivative of a (1,1)-tensor field given as component jets;
// out[c][a][b] = (nabla_c T)^a_b
using Tensor11Jets = std::array<std::array<Jet2, 4>, 4>;
std::array<std::array<std::array<double, 4>, 4>, 4> covariant_derivative(
    const MetricSample& m, const Tensor11Jets& T);

// max |nabla g| of the sample's own Levi-Civita connection (compatibility check)
double metric_compatibility_residual(const MetricSample& m);

std::string report_to_json_text(const CurvatureReport& r);

}  // namespace sdt

#endif
