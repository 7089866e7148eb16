#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sdtorus/runner.hpp"

namespace {

void add_common(CLI::App* app, sdt::RunConfig& cfg) {
    app->add_option("--rho-min", cfg.rho_min);
    app->add_option("--rho-max", cfg.rho_max);
    app->add_option("--eta-min", cfg.eta_min);
    app->add_option("--eta-max", cfg.eta_max);
    app->add_option("--n", cfg.n);
    app->add_option("--seed", cfg.seed);
    app->add_option("--tol-pde", cfg.tol_pde);
    app->add_option("--tol-einstein", cfg.tol_einstein);
    app->add_option("--tol-lambda", cfg.tol_lambda);
    app->add_option("--tol-weyl", cfg.tol_weyl);
    app->add_option("--tol-twist", cfg.tol_twist);
    app->add_option("--tol-joyce", cfg.tol_joyce);
    app->add_option("--tol-structure", cfg.tol_structure);
    app->add_option("--tol-bd", cfg.tol_bd);
    app->add_option("--tol-grammian", cfg.tol_grammian);
    app->add_option("--tol-wave", cfg.tol_wave);
    app->add_option("--tol-class", cfg.tol_class);
    app->add_option("--out", cfg.out_path);
    app->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
}

// SDTORUS_OUTPUT_DIR prefixes relative --out paths
void apply_output_dir(sdt::RunConfig& cfg) {
    if (cfg.out_path.empty() || cfg.out_path.front() == '/') return;
    const char* dir = std::getenv("SDTORUS_OUTPUT_DIR");
    if (dir && *dir) cfg.out_path = std::string(dir) + "/" + cfg.out_path;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selfdual Einstein metrics with torus symmetry: verification driver"};
    app.require_subcommand(1);

    sdt::RunConfig cfg;

    auto* verify = app.add_subcommand(
        "verify", "run the identity suite on a multipole spec at seeded random points");
    verify->add_option("spec", cfg.spec_path, "spec JSON path")->required();
    add_common(verify, cfg);

    auto* grid = app.add_subcommand("grid", "CSV scan of (rho, eta, F, D, class)");
    grid->add_option("spec", cfg.spec_path, "spec JSON path")->required();
    grid->add_option("--nx", cfg.nx);
    grid->add_option("--ny", cfg.ny);
    add_common(grid, cfg);

    auto* moduli = app.add_subcommand("moduli3", "3-pole moduli classification");
    moduli->add_option("--b", cfg.b);
    moduli->add_option("--c", cfg.c);
    moduli->add_option("--kind", cfg.kind)->check(CLI::IsMember({"I", "II"}));
    moduli->add_option("--nx", cfg.nx, "b-axis count for --format csv plane scans");
    moduli->add_option("--ny", cfg.ny, "c-axis count for --format csv plane scans");
    moduli->add_option("--b-min", cfg.b_min);
    moduli->add_option("--b-max", cfg.b_max);
    moduli->add_option("--c-min", cfg.c_min);
    moduli->add_option("--c-max", cfg.c_max);
    add_common(moduli, cfg);

    auto* swann = app.add_subcommand(
        "swann", "monopole-matrix / Bielawski-Dancer / Grammian / wave-equation checks");
    swann->add_option("spec", cfg.spec_path, "spec JSON path")->required();
    add_common(swann, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    apply_output_dir(cfg);

    if (verify->parsed()) return sdt::cmd_verify(cfg);
    if (grid->parsed()) return sdt::cmd_grid(cfg);
    if (moduli->parsed()) return sdt::cmd_moduli3(cfg);
    if (swann->parsed()) return sdt::cmd_swann(cfg);
    return 2;
}
