#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdtorus/curvature.hpp"
#include "sdtorus/joyce_ew.hpp"
#include "sdtorus/metric.hpp"
#include "sdtorus/swann.hpp"
#include "sdtorus/threepole.hpp"

namespace py = pybind11;
using namespace sdt;

namespace {

MultipoleSpec spec_from_arg(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) {
        std::string name = spec.cast<std::string>();
        if (name == "monopole") return monopole_spec();
        if (name == "F+") return dipole_plus();
        if (name == "F-") return dipole_minus();
        if (name == "Fc") return dipole_conj();
        return spec_from_json_text(name);  // JSON text
    }
    throw InvalidInput("spec must be a name or JSON text");
}

py::dict jet_to_dict(const Jet2& j) {
    py::dict d;
    d["value"] = j.value();
    d["d_rho"] = j.dr();
    d["d_eta"] = j.de();
    d["d_rho_rho"] = j.drr();
    d["d_rho_eta"] = j.dre();
    d["d_eta_eta"] = j.dee();
    return d;
}

}  // namespace

PYBIND11_MODULE(_sdtorus, m) {
    m.doc() = "selfdual Einstein metrics with torus symmetry from hyperbolic "
              "eigenfunctions: core operations";

    py::register_exception<DomainError>(m, "SdtDomainError");

    m.def("eval_F", [](const py::object& spec, double rho, double eta) {
        return jet_to_dict(eval_F(spec_from_arg(spec), make_point(rho, eta)));
    }, py::arg("spec"), py::arg("rho"), py::arg("eta"),
       "eigenfunction F with exact partial derivatives");

    m.def("pde_residual", [](const py::object& spec, double rho, double eta) {
        return pde_residual(spec_from_arg(spec), make_point(rho, eta));
    });

    m.def("discriminant", [](const py::object& spec, double rho, double eta) {
        return discriminant(spec_from_arg(spec), make_point(rho, eta));
    });

    m.def("classify_point", [](const py::object& spec, double rho, double eta, double tol) {
        return std::string(
            to_string(classify_point(spec_from_arg(spec), make_point(rho, eta), tol)));
    }, py::arg("spec"), py::arg("rho"), py::arg("eta"), py::arg("tol") = 1e-9);

    m.def("einstein_metric", [](const py::object& spec, double rho, double eta) {
        MetricSample s = einstein_metric(spec_from_arg(spec), make_point(rho, eta));
        py::dict d;
        std::vector<std::vector<double>> g(4, std::vector<double>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g[i][j] = s.g[i][j];
        d["g"] = g;
        d["branch"] = s.branch == Branch::PositiveBranch ? "positive" : "negative";
        return d;
    });

    m.def("curvature_report", [](const py::object& spec, double rho, double eta) {
        MetricSample s = einstein_metric(spec_from_arg(spec), make_point(rho, eta));
        CurvatureReport r = curvature_report(s);
        py::dict d;
        d["lambda_hat"] = r.lambda_hat;
        d["einstein_residual"] = r.einstein_residual;
        d["scalar_curv"] = r.scalar_curv;
        d["weyl_plus_norm"] = r.weyl_plus_norm;
        d["weyl_minus_norm"] = r.weyl_minus_norm;
        d["weyl_full_norm"] = r.weyl_full_norm;
        d["twist_scalars"] = py::make_tuple(r.twist_scalar_1, r.twist_scalar_2);
        return d;
    });

    m.def("joyce_residuals", [](const py::object& spec, double rho, double eta) {
        MultipoleSpec sp = spec_from_arg(spec);
        HalfPlanePoint p = make_point(rho, eta);
        auto r1 = joyce_residual(canonical_solution(sp, p), p);
        auto r2 = joyce_residual(second_solution(sp, p), p);
        return py::make_tuple(r1[0], r1[1], r2[0], r2[1]);
    });

    m.def("structure_residuals", [](const py::object& spec, double rho, double eta) {
        StructureResiduals sr = structure_residuals(spec_from_arg(spec), make_point(rho, eta));
        py::dict d;
        d["r_theta"] = sr.r_theta;
        d["r_omega"] = sr.r_omega;
        d["s_fit"] = sr.s_fit;
        return d;
    });

    m.def("typeII_region", [](double b, double c, int grid_n) {
        return region_to_string(typeII_region(b, c, grid_n));
    }, py::arg("b"), py::arg("c"), py::arg("grid_n") = 120);

    m.def("threepole_spec_json", [](double a, double b, double c, const std::string& kind,
                                    int sheet) {
        ThreePoleParams prm{a, b, c,
                            kind == "I" ? ThreePoleKind::TypeI : ThreePoleKind::TypeII};
        return spec_to_json_text(threepole_spec(prm, sheet));
    }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("kind") = "II",
       py::arg("sheet") = 1);

    m.def("spec_json", [](const py::object& spec) {
        return spec_to_json_text(spec_from_arg(spec));
    });
}
