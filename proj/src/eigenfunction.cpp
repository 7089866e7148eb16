#include "sdtorus/eigenfunction.hpp"

#include <cmath>
#include <functional>

#include "json.hpp"

namespace sdt {

namespace {

// complex quadratic q(rho,eta) = a^2 rho^2 + (a eta - b)^2 for a complex twistor,
// as a complex jet
CJet2 pair_quadratic(const Twistor& p1, const Twistor& p2, const HalfPlanePoint& p) {
    Jet2 rho = jet_rho(p.rho), eta = jet_eta(p.eta);
    CJet2 a{jet_const(p1.a), jet_const(p2.a)};
    CJet2 b{jet_const(p1.b), jet_const(p2.b)};
    CJet2 crho{rho, jet_const(0.0)}, ceta{eta, jet_const(0.0)};
    CJet2 t = a * ceta - b;
    return a * a * crho * crho + t * t;
}

Jet2 eval_term(const PoleTerm& t, const HalfPlanePoint& p, const Jet2& rsqrt_rho) {
    switch (t.kind) {
        case PoleTerm::Kind::RealPole: {
            if (t.phi.is_zero()) throw InvalidInput("RealPole with zero twistor");
            Jet2 n = twistor_norm_jet(t.phi, p);
            return t.sign >= 0 ? n : -n;
        }
        case PoleTerm::Kind::ConjugatePair: {
            if (twistor_det(t.phi1, t.phi2) == 0.0)
                throw InvalidInput("ConjugatePair twistors must be linearly independent");
            CJet2 q = pair_quadratic(t.phi1, t.phi2, p);
            CJet2 s = sqrt(q);
            // 2 Re(w * s) / sqrt(rho)
            Jet2 re = t.weight.real() * s.re - t.weight.imag() * s.im;
            return 2.0 * re * rsqrt_rho;
        }
        case PoleTerm::Kind::Perturb: {
            return t.coeff * jet_rho(p.rho);
        }
    }
    throw DomainError("unreachable");
}

}  // namespace

bool MultipoleSpec::is_single_monopole() const {
    int n = 0;
    for (const auto& t : terms)
        if (t.kind != PoleTerm::Kind::Perturb || t.coeff != 0.0) ++n;
    return n == 1 && terms.size() >= 1 && terms.front().kind == PoleTerm::Kind::RealPole;
}

PoleTerm real_pole(const Twistor& phi, int sign) {
    PoleTerm t;
    t.kind = PoleTerm::Kind::RealPole;
    t.phi = phi;
    t.sign = sign;
    return t;
}

PoleTerm conj_pair(const Twistor& phi1, const Twistor& phi2, std::complex<double> weight) {
    PoleTerm t;
    t.kind = PoleTerm::Kind::ConjugatePair;
    t.phi1 = phi1;
    t.phi2 = phi2;
    t.weight = weight;
    return t;
}

MultipoleSpec monopole_spec() { return {{real_pole({0.0, 1.0})}, "monopole"}; }

MultipoleSpec dipole_plus() {
    return {{real_pole({0.0, 1.0}), real_pole({1.0, 0.0})}, "F+"};
}

MultipoleSpec dipole_minus() {
    return {{real_pole({0.0, 1.0}), real_pole({1.0, 0.0}, -1)}, "F-"};
}

MultipoleSpec dipole_conj() {
    // chi = [1, -i]: |chi|^2 = rho^2 + (eta + i)^2
    return {{conj_pair({1.0, 0.0}, {0.0, -1.0})}, "Fc"};
}

MultipoleSpec sl2_act(const Mat2& M, const MultipoleSpec& spec) {
    MultipoleSpec out = spec;
    for (auto& t : out.terms) {
        if (t.kind == PoleTerm::Kind::RealPole) {
            t.phi = sl2_act(M, t.phi);
        } else if (t.kind == PoleTerm::Kind::ConjugatePair) {
            t.phi1 = sl2_act(M, t.phi1);
            t.phi2 = sl2_act(M, t.phi2);
        }
    }
    return out;
}

MultipoleSpec concat(const MultipoleSpec& a, const MultipoleSpec& b) {
    MultipoleSpec out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    out.label = a.label + "+" + b.label;
    return out;
}

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::PositiveScal: return "positive";
        case PointClass::NegativeScal: return "negative";
        case PointClass::ConformalInfinity: return "conformal_infinity";
        case PointClass::Singular: return "singular";
        case PointClass::Undefined: return "undefined";
    }
    return "?";
}

Jet2 eval_F(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    if (!(p.rho > 0.0)) throw DomainError("eval_F requires rho > 0");
    if (spec.terms.empty()) throw InvalidInput("empty MultipoleSpec");
    Jet2 rs = 1.0 / sqrt(jet_rho(p.rho));
    Jet2 F = jet_const(0.0);
    for (const auto& t : spec.terms) F += eval_term(t, p, rs);
    return F;
}

double pde_residual(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 F = eval_F(spec, p);
    return F.drr() + F.dee() - 0.75 * F.value() / (p.rho * p.rho);
}

double pde_scale(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 rs = 1.0 / sqrt(jet_rho(p.rho));
    double s = 0.0;
    for (const auto& t : spec.terms) {
        Jet2 f = eval_term(t, p, rs);
        s += std::abs(f.drr()) + std::abs(f.dee()) +
             0.75 * std::abs(f.value()) / (p.rho * p.rho);
    }
    return s;
}

double discriminant(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 F = eval_F(spec, p);
    double fr = F.dr(), fe = F.de(), f = F.value();
    return f * f - 4.0 * p.rho * p.rho * (fr * fr + fe * fe);
}

double discriminant_pairwise(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    // expand every term into (complex weight, complex twistor) summands
    struct CP {
        std::complex<double> w, a, b;
    };
    std::vector<CP> ps;
    for (const auto& t : spec.terms) {
        if (t.kind == PoleTerm::Kind::RealPole) {
            ps.push_back({{double(t.sign), 0.0}, {t.phi.a, 0.0}, {t.phi.b, 0.0}});
        } else if (t.kind == PoleTerm::Kind::ConjugatePair) {
            std::complex<double> a{t.phi1.a, t.phi2.a}, b{t.phi1.b, t.phi2.b};
            ps.push_back({t.weight, a, b});
            ps.push_back({std::conj(t.weight), std::conj(a), std::conj(b)});
        } else {
            throw InvalidInput("discriminant_pairwise: perturb term unsupported");
        }
    }
    std::complex<double> rho{p.rho, 0.0}, eta{p.eta, 0.0};
    auto n_of = [&](const CP& q) {
        std::complex<double> t = q.a * eta - q.b;
        return std::sqrt(q.a * q.a * rho * rho + t * t);
    };
    std::complex<double> acc = 0.0;
    for (size_t j = 0; j < ps.size(); ++j)
        for (size_t k = j + 1; k < ps.size(); ++k) {
            std::complex<double> eps = ps[j].a * ps[k].b - ps[k].a * ps[j].b;
            acc += ps[j].w * ps[k].w * eps * eps / (n_of(ps[j]) * n_of(ps[k]));
        }
    return 4.0 * p.rho * acc.real();
}

double local_scale(const MultipoleSpec& spec, const HalfPlanePoint& p) {
    Jet2 rs = 1.0 / sqrt(jet_rho(p.rho));
    double s = 0.0;
    for (const auto& t : spec.terms) s += std::abs(eval_term(t, p, rs).value());
    return s > 0.0 ? s : 1.0;
}

PointClass classify_point(const MultipoleSpec& spec, const HalfPlanePoint& p, double tol) {
    try {
        double scale = local_scale(spec, p);
        double f = eval_F(spec, p).value();
        if (std::abs(f) < tol * scale) return PointClass::ConformalInfinity;
        double d = discriminant(spec, p);
        if (std::abs(d) < tol * scale * scale) return PointClass::Singular;
        return d > 0.0 ? PointClass::PositiveScal : PointClass::NegativeScal;
    } catch (const DomainError&) {
        return PointClass::Undefined;
    }
}

namespace {

// dV = (A1/rho) drho - (A0/rho) deta with A0 = (sqrt(rho) F)_rho, A1 = (sqrt(rho) F)_eta
double v_integrand(const MultipoleSpec& spec, const HalfPlanePoint& q, double drho,
                   double deta) {
    Jet2 F = eval_F(spec, q);
    Jet2 G = sqrt(jet_rho(q.rho)) * F;
    double a0 = G.dr(), a1 = G.de();
    return (a1 * drho - a0 * deta) / q.rho;
}

// 15-point Gauss-Kronrod with embedded 7-point Gauss, on [-1, 1]
struct GK15 {
    static constexpr double xk[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769,
        -0.741531185599394, -0.586087235467691, -0.405845151377397,
        -0.207784955007898, 0.0,                0.207784955007898,
        0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static constexpr double wk[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728, 0.204432940075298,
        0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static constexpr double wg[7] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469,
                                     0.381830050505119, 0.279705391489277,
                                     0.129484966168870};
};

double segment_integral(const std::function<double(double)>& f, double t0, double t1,
                        double rel_tol, int depth) {
    double h = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(mid + h * GK15::xk[i]);
        k += GK15::wk[i] * v;
        if (i % 2 == 1) g += GK15::wg[i / 2] * v;
    }
    k *= h;
    g *= h;
    double err = std::abs(k - g);
    if (err <= rel_tol * (std::abs(k) + 1e-300) || err < 1e-15 || depth > 40) return k;
    return segment_integral(f, t0, mid, rel_tol, depth + 1) +
           segment_integral(f, mid, t1, rel_tol, depth + 1);
}

}  // namespace

double backlund_V_polyline(const MultipoleSpec& spec,
                           const std::vector<HalfPlanePoint>& path) {
    double V = 0.0;
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        HalfPlanePoint a = path[s], b = path[s + 1];
        double drho = b.rho - a.rho, deta = b.eta - a.eta;
        auto f = [&](double t) {
            HalfPlanePoint q{a.rho + t * drho, a.eta + t * deta};
            if (!(q.rho > 0.0)) throw DomainError("backlund path leaves rho > 0");
            return v_integrand(spec, q, drho, deta);
        };
        V += segment_integral(f, 0.0, 1.0, 1e-10, 0);
    }
    return V;
}

BacklundData backlund(const MultipoleSpec& spec, const HalfPlanePoint& p,
                      const HalfPlanePoint& basepoint) {
    BacklundData out;
    Jet2 F = eval_F(spec, p);
    out.G = sqrt(jet_rho(p.rho)) * F;
    out.V = backlund_V_polyline(spec, {basepoint, p});
    // rho V_ee + (rho V_r)_r = (A1)_r - (A0)_e, vanishing with the Joyce equation
    Jet2 A0 = out.G.deriv_rho(), A1 = out.G.deriv_eta();
    out.ahf_residual = A1.dr() - A0.de();
    return out;
}

MultipoleSpec spec_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MultipoleSpec spec;
    spec.label = j.value("label", "");
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        throw InvalidInput("spec JSON needs a nonempty 'terms' array");
    for (const auto& t : j["terms"]) {
        std::string type = t.at("type").get<std::string>();
        if (type == "real") {
            auto phi = t.at("phi");
            int sign = t.value("sign", 1);
            if (sign != 1 && sign != -1) throw InvalidInput("real pole sign must be +-1");
            spec.terms.push_back(real_pole({phi.at(0), phi.at(1)}, sign));
        } else if (type == "conjpair") {
            auto p1 = t.at("phi1");
            auto p2 = t.at("phi2");
            std::complex<double> w{1.0, 0.0};
            if (t.contains("weight")) w = {t["weight"].at(0), t["weight"].at(1)};
            spec.terms.push_back(conj_pair({p1.at(0), p1.at(1)}, {p2.at(0), p2.at(1)}, w));
        } else if (type == "perturb") {
            PoleTerm pt;
            pt.kind = PoleTerm::Kind::Perturb;
            pt.coeff = t.at("coeff").get<double>();
            spec.terms.push_back(pt);
        } else {
            throw InvalidInput("unknown term type '" + type + "'");
        }
    }
    return spec;
}

std::string spec_to_json_text(const MultipoleSpec& spec) {
    nlohmann::json j;
    j["label"] = spec.label;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : spec.terms) {
        nlohmann::json e;
        if (t.kind == PoleTerm::Kind::RealPole) {
            e["type"] = "real";
            e["phi"] = {t.phi.a, t.phi.b};
            e["sign"] = t.sign;
        } else if (t.kind == PoleTerm::Kind::ConjugatePair) {
            e["type"] = "conjpair";
            e["phi1"] = {t.phi1.a, t.phi1.b};
            e["phi2"] = {t.phi2.a, t.phi2.b};
            if (t.weight != std::complex<double>{1.0, 0.0})
                e["weight"] = {t.weight.real(), t.weight.imag()};
        } else {
            e["type"] = "perturb";
            e["coeff"] = t.coeff;
        }
        j["terms"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace sdt
