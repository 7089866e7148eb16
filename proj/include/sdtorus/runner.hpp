#ifndef SDTORUS_RUNNER_HPP
#define SDTORUS_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sdtorus/eigenfunction.hpp"

namespace sdt {

// 64-bit LCG; identical seed => identical point streams on every platform
struct Lcg {
    uint64_t state;
    explicit Lcg(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state;
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

struct RunConfig {
    std::string command;
    std::string spec_path;
    double rho_min = 0.4, rho_max = 2.5;
    double eta_min = -2.0, eta_max = 2.0;
    int n = 40;          // sample count (verify/swann) or per-axis count (grid)
    int nx = 0, ny = 0;  // grid overrides; 0 = use n
    uint64_t seed = 1;
    double tol_pde = 1e-10;
    double tol_einstein = 1e-7;
    double tol_lambda = 1e-6;
    double tol_weyl = 1e-7;
    double tol_twist = 1e-8;
    double tol_joyce = 1e-10;
    double tol_structure = 1e-8;
    double tol_s_const = 1e-8;
    double tol_bd = 1e-10;
    double tol_grammian = 1e-12;
    double tol_wave = 1e-7;
    double tol_class = 1e-9;  // classification band for grid scans
    std::string out_path;    // empty = stdout
    std::string format = "json";  // json | csv where applicable
    // moduli3 parameters
    double b = 0.0, c = 0.0;
    std::string kind = "II";
    // (b, c)-plane bounds for the csv region scan (--nx/--ny select it)
    double b_min = -2.0, b_max = 2.0, c_min = -2.0, c_max = 2.0;
};

// Seeded rejection sampling of non-degenerate points for the spec.
std::vector<HalfPlanePoint> sample_points(const MultipoleSpec& spec, const RunConfig& cfg,
                                          int count);

// Commands return the process exit status: 0 ok, 1 tolerance failure, 2 usage/parse.
// Reports are written to cfg.out_path or stdout.
int cmd_verify(const RunConfig& cfg);
int cmd_grid(const RunConfig& cfg);
int cmd_moduli3(const RunConfig& cfg);
int cmd_swann(const RunConfig& cfg);

// 17-significant-digit, locale-free formatting used by all CSV output
std::string format_double(double v);

}  // namespace sdt

#endif
