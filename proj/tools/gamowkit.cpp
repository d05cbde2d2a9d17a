// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// gamowkit: resonance poles, survival and decay curves, Born limits and
// Lindblad trajectories as CSV or JSON tables.

#include <gamowkit/io/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kColumns = R"(Columns per command:
  poles       re,im,e_r,gamma,residue_re,residue_im
  survival    t,amplitude_re,amplitude_im,probability
  khalfin     t,gamma_t,p_semibounded,exponential,ratio
  decay       t,P,rate,survival
  born-limit  gamma_over_er,exact_rate,fermi_rate,rel_diff
  lindblad    t,trace,purity,min_eigenvalue,pop_0..pop_{n-1}
  expansion   x,dirac_re,dirac_im,complex_re,complex_im,abs_diff

Time grids run from 0 to --t-max in --steps intervals (default t-max 10,
khalfin 30/Gamma); --t evaluates a single time. GAMOWKIT_QUAD_ORDER sets the
quadrature order when --quad-order is absent. lindblad without --model uses
a seeded random generator of dimension --dim.)";

}  // namespace

int main(int argc, char** argv) {
    namespace io = gamowkit::io;
    CLI::App app{"gamowkit: resonances, Gamow states and irreversible evolution"};
    app.footer(kColumns);
    app.set_version_flag("--version", io::kVersion);

    io::RunConfig cfg;
    std::string format = "csv";
    std::string support = "semibounded";
    std::string region;

    app.add_option("command", cfg.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(io::commands()));
    app.add_option("--model", cfg.model_path, "Model JSON file");
    app.add_option("--out", cfg.out_path, "Output file (default stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--quad-order", cfg.quad_order, "Gauss-Legendre nodes per panel");
    app.add_option("--t-max", cfg.t_max, "Upper end of the time grid");
    app.add_option("--steps", cfg.steps, "Intervals in the time grid");
    app.add_option("--t", cfg.t, "Single evaluation time");
    app.add_option("--region", region, "Pole search rectangle e_min,e_max,im_min[,eps]");
    app.add_option("--support", support, "Energy support")->check(CLI::IsMember({"full", "semibounded"}));
    app.add_option("--seed", cfg.seed, "Seed for generated test models");
    app.add_option("--dim", cfg.dim, "Dimension of a generated Lindblad model");
    app.add_option("--tol", cfg.tol, "Order-doubling tolerance override");
    app.add_flag("--stamp", cfg.stamp, "Add a UTC timestamp to the provenance header");

    CLI11_PARSE(app, argc, argv);

    cfg.format = format == "json" ? io::Format::Json : io::Format::Csv;
    cfg.support = support == "full" ? gamowkit::Support::FullLine : gamowkit::Support::Semibounded;
    if (!region.empty()) {
        try {
            cfg.region = io::parse_number_list(region);
        } catch (const gamowkit::ToolkitError& e) {
            std::cerr << "gamowkit: " << e.what() << '\n';
            return io::exit_code(e.kind());
        }
    }
    return io::run(cfg, std::cout, std::cerr);
}
