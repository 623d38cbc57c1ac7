#include <heisapp/commands.hpp>
#include <heisapp/config.hpp>

#include <heis/common.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"heisfreq: Fourier analysis on the Heisenberg group H^d"};
    app.require_subcommand(1);
    std::string config_path, out_dir = "out";
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");

    heisapp::TransformArgs ta;
    auto* tr = app.add_subcommand("transform", "forward or inverse transform of a field/table");
    tr->add_option("--input", ta.input, "field file (.bin or .csv) or table .csv");
    tr->add_option("--fixture", ta.fixture, "bundled field: gaussian, skew, narrow, zero");
    tr->add_option("--direction", ta.direction, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));
    tr->add_flag("!--no-round-trip", ta.round_trip, "skip the inverse check in the summary");

    heisapp::HeatArgs ha;
    auto* he = app.add_subcommand("heat", "heat flow through the spectral multiplier");
    he->add_option("--input", ha.input, "initial field file");
    he->add_option("--fixture", ha.fixture, "bundled initial field");
    he->add_option("--times", ha.times, "evaluation times");

    heisapp::PairArgs pa;
    auto* pr = app.add_subcommand("pair", "pair a distribution with a profile test function");
    pr->add_option("--dist", pa.dist, "dirac, one, g_tensor_one, I, dirac_0hat[:c], pf:<gamma>, mu")->required();
    pr->add_option("--theta", pa.theta, "heat:<t>, gauss_profile:<sigma>, exp_floor:<r0>")->required();

    heisapp::KernelArgs ka;
    auto* ke = app.add_subcommand("kernel", "tabulate the boundary kernel K(xdot, k, Y)");
    ke->add_option("--xdot", ka.xdot, "boundary coordinate");
    ke->add_option("--k", ka.k, "lattice index");

    std::string suite = "all";
    auto* ve = app.add_subcommand("verify", "run acceptance suites and write report.json");
    ve->add_option("--suite", suite, "suite id or all");

    for (auto* sub : {tr, he, pr, ke, ve}) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const heisapp::Config cfg = config_path.empty() ? heisapp::default_config() : heisapp::load_config(config_path);
        if (*tr) return heisapp::cmd_transform(ta, cfg, out_dir, std::cout);
        if (*he) return heisapp::cmd_heat(ha, cfg, out_dir, std::cout);
        if (*pr) return heisapp::cmd_pair(pa, cfg, out_dir, std::cout);
        if (*ke) return heisapp::cmd_kernel(ka, cfg, out_dir, std::cout);
        if (*ve) return heisapp::cmd_verify(suite, cfg, out_dir, std::cerr);
    } catch (const heis::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return heisapp::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return heisapp::kFailed;
    }
    return heisapp::kUsage;
}
