// Copyright 2026 The qscalar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qscalar/commands.hpp"

namespace {

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        qscalar::detail::require(used == item.size(), "bad list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

qscalar::VelocityProfile profile_by_name(const std::string &name) {
    return qscalar::io::parse_config("n_x = 2\nt_final = 0\nD = 0\nn_y = 2\nprofile = " + name + "\n", "--profile")
        .scenario.profile;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spectral advection-diffusion circuits on a statevector simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::int64_t shots = 10000;
    std::optional<std::string> splitting;

    auto *run = app.add_subcommand("run", "run a scenario and write field/summary CSVs");
    bool dump = false;
    run->add_option("--config", config, "scenario file")->required();
    run->add_option("--out-dir", out_dir, "output directory");
    run->add_option("--splitting", splitting, "override the splitting")->check(CLI::IsMember({"trotter", "strang"}));
    run->add_flag("--dump-amplitudes", dump, "also write final_state.bin");

    auto *converge = app.add_subcommand("converge", "error sweep over grid sizes or step counts");
    std::string sweep_grid, sweep_steps;
    converge->add_option("--config", config, "scenario file")->required();
    converge->add_option("--out-dir", out_dir, "output directory");
    auto *grid_opt = converge->add_option("--sweep-grid", sweep_grid, "comma-separated grid sizes N");
    auto *steps_opt = converge->add_option("--sweep-steps", sweep_steps, "comma-separated step counts N_t");
    grid_opt->excludes(steps_opt);

    auto *gatecount = app.add_subcommand("gatecount", "advection gate counts over a qubit range");
    std::string profile = "couette";
    int n_min = 3, n_max = 8;
    gatecount->add_option("--profile", profile, "couette, poiseuille, blasius, uniform or [c0,...]");
    gatecount->add_option("--n-min", n_min, "smallest qubits per axis");
    gatecount->add_option("--n-max", n_max, "largest qubits per axis");
    gatecount->add_option("--out-dir", out_dir, "output directory");

    auto *demo = app.add_subcommand("hardware-demo", "export and simulate the small periodic demo circuit");
    int n_demo = 3;
    demo->add_option("--n", n_demo, "main-register qubits");
    demo->add_option("--shots", shots, "shots for the reconstruction");
    demo->add_option("--seed", seed, "sampling seed");
    demo->add_option("--out-dir", out_dir, "output directory");

    auto *sample = app.add_subcommand("sample", "run a scenario and reconstruct it from shots");
    sample->add_option("--config", config, "scenario file")->required();
    sample->add_option("--shots", shots, "shot count");
    sample->add_option("--seed", seed, "sampling seed");
    sample->add_option("--out-dir", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        namespace cli = qscalar::cli;
        if (run->parsed()) {
            std::optional<qscalar::Splitting> s;
            if (splitting) {
                s = qscalar::parse_splitting(*splitting);
            }
            cli::cmd_run(qscalar::io::load_config(config), out_dir, std::cout, s, dump);
        } else if (converge->parsed()) {
            qscalar::detail::require(!sweep_grid.empty() || !sweep_steps.empty(),
                                     "converge needs --sweep-grid or --sweep-steps");
            const auto kind = sweep_grid.empty() ? cli::SweepKind::Steps : cli::SweepKind::Grid;
            const auto table = cli::cmd_converge(qscalar::io::load_config(config), kind,
                                                 parse_int_list(sweep_grid.empty() ? sweep_steps : sweep_grid), std::cout);
            cli::ensure_dir(out_dir);
            qscalar::io::write_csv((cli::fs::path(out_dir) / "converge.csv").string(), table);
        } else if (gatecount->parsed()) {
            const auto table = cli::cmd_gatecount(profile_by_name(profile), n_min, n_max, std::cout);
            cli::ensure_dir(out_dir);
            qscalar::io::write_csv((cli::fs::path(out_dir) / "gatecount.csv").string(), table);
        } else if (demo->parsed()) {
            cli::cmd_hardware_demo(n_demo, shots, seed, out_dir, std::cout);
        } else if (sample->parsed()) {
            cli::cmd_sample(qscalar::io::load_config(config), shots, seed, out_dir, std::cout);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
