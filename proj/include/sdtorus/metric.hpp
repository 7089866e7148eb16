#ifndef SDTORUS_METRIC_HPP
#define SDTORUS_METRIC_HPP

#include <array>
#include <string>

#include "sdtorus/eigenfunction.hpp"

namespace sdt {

struct DegenerateAtPoint : DomainError {
    explicit DegenerateAtPoint(const std::string& what) : DomainError(what) {}
};
struct EmptyDomain : DomainError {
    explicit EmptyDomain(const std::string& what) : DomainError(what) {}
};

enum class Branch { PositiveBranch, NegativeBranch };

// 4x4 symmetric metric at a point, components as functions of the two active
// coordinates carried as jets (order 2 used by the curvature engine).
// Coordinate order is fixed: (rho, eta, phi, psi) for the half-plane charts,
// (R, S, phi, psi) for the rational 3-pole chart.
struct MetricSample {
    HalfPlanePoint point{1.0, 0.0};
    std::array<std::array<double, 4>, 4> g{};
    std::array<std::array<Jet2, 4>, 4> gj{};
    Branch branch = Branch::PositiveBranch;

    void set(int i, int j, const Jet2& v);
    double max_abs() const;
};

// Eq-(1)-style assembly from F. Positive definite on both branches; the
// NegativeBranch sample is the negation of the assembled formula.
MetricSample einstein_metric(const MultipoleSpec& spec, const HalfPlanePoint& p,
                             double degeneracy_tol = 1e-9);

// g0 = (A0 B1 - A1 B0) g_H2 + [(A0 dphi - B0 dpsi)^2 + (A1 dphi - B1 dpsi)^2]/(A0 B1 - A1 B0)
MetricSample joyce_metric_g0(const Jet2& A0, const Jet2& A1, const Jet2& B0,
                             const Jet2& B1, const HalfPlanePoint& p);

// rho * g0 with the canonical pencil of the spec: scalar-flat Kaehler
MetricSample sfk_metric(const MultipoleSpec& spec, const HalfPlanePoint& p);

// F^{-2} g0 with the canonical pencil (the reconstruction route of Eq. (1))
MetricSample reconstructed_metric(const MultipoleSpec& spec, const HalfPlanePoint& p);

std::string metric_to_json_text(const MetricSample& m);

}  // namespace sdt

#endif
