// SPDX-License-Identifier: Apache-2.0
//
// relaycf - compress-and-forward rate optimization for MIMO relay channels
// with correlated interference-induced noise
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line frontend: rate-versus-budget sweeps, the randomized
// constant-gap audit, slope maps, high-SNR scaling probes and scenario
// generation. Exit codes: 0 success, 1 usage error, 2 numerical failure,
// 3 audit violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relaycf/channel_io.hpp"
#include "relaycf/harness.hpp"

namespace
{

struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

relaycf::antenna_profile parse_profile(const std::string &text)
{
    relaycf::antenna_profile p;
    unsigned long long s = 0, d = 0, r = 0, t = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%llu,%llu,%llu,%llu%c", &s, &d, &r, &t, &tail) != 4)
        throw usage_error("--profile must be s,d,r,t (got '" + text + "')");
    p.s = s;
    p.d = d;
    p.r = r;
    p.t = t;
    return p;
}

std::vector<double> parse_grid(const std::string &text)
{
    double lo = 0, hi = 0, step = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lg:%lg:%lg%c", &lo, &hi, &step, &tail) != 3 ||
        step <= 0.0 || hi < lo || lo < 0.0)
        throw usage_error("--c0-grid must be lo:hi:step with 0 <= lo <= hi, step > 0");
    std::vector<double> grid;
    for (double c = lo; c <= hi + 1e-9 * step; c += step)
        grid.push_back(c);
    return grid;
}

std::pair<double, double> parse_range(const std::string &text, const char *flag)
{
    double lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lg:%lg%c", &lo, &hi, &tail) != 2 || hi < lo)
        throw usage_error(std::string(flag) + " must be lo:hi with lo <= hi");
    return {lo, hi};
}

std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

relaycf::cellular_config load_config(const std::string &path, std::optional<arma::uword> seed)
{
    relaycf::cellular_config cfg;
    if (!path.empty())
        cfg = relaycf::read_cellular_config(path);
    if (seed)
        cfg.seed = *seed;
    return cfg;
}

// Channel source shared by sweep: explicit file wins, otherwise a
// generated scenario from the cellular config.
struct channel_args
{
    std::string channel_file;
    std::string config_file;
    std::string profile_text = "2,2,2,0";
    std::optional<arma::uword> seed;
    std::optional<arma::uword> interferers;

    void add(CLI::App *cmd)
    {
        cmd->add_option("--channel", channel_file,
                        "channel realization file (overrides --config/--profile)");
        cmd->add_option("--config", config_file, "cellular config file (key=value)");
        cmd->add_option("--profile", profile_text, "antenna counts s,d,r,t");
        cmd->add_option("--seed", seed, "override the scenario seed");
        cmd->add_option("--interferers", interferers,
                        "override the interfering BS count (default: 1 when t > 0)");
    }

    relaycf::cellular_config config() const
    {
        relaycf::cellular_config cfg = load_config(config_file, seed);
        if (interferers)
            cfg.n_interferers = *interferers;
        else if (cfg.n_interferers == 0 && parse_profile(profile_text).t > 0)
            cfg.n_interferers = 1;
        return cfg;
    }

    relaycf::channel_realization realize() const
    {
        if (!channel_file.empty())
            return relaycf::read_channel_file(channel_file);
        return relaycf::generate_scenario(config(), parse_profile(profile_text));
    }
};

int run(int argc, char **argv)
{
    CLI::App app{"compress-and-forward rate tools for MIMO relay channels "
                 "with correlated noise"};
    app.require_subcommand(1);

    // ---- sweep ----------------------------------------------------------
    auto *sweep = app.add_subcommand("sweep", "rate versus relay budget, all schemes");
    channel_args sweep_ch;
    sweep_ch.add(sweep);
    std::string sweep_grid = "0:20:1";
    std::string sweep_out = "sweep.csv";
    double sweep_power = 1.0;
    unsigned sweep_par = 1;
    sweep->add_option("--c0-grid", sweep_grid, "budget grid lo:hi:step (bits)");
    sweep->add_option("--power", sweep_power, "transmit power constraint");
    sweep->add_option("--out", sweep_out, "output CSV path");
    sweep->add_option("--parallel", sweep_par, "worker threads");

    // ---- gap-audit ------------------------------------------------------
    auto *audit = app.add_subcommand("gap-audit",
                                     "randomized audit of the min(r,s)-bit gap guarantee");
    relaycf::gap_audit_config audit_cfg;
    std::string audit_out;
    audit->add_option("--trials", audit_cfg.n_trials, "number of random trials");
    audit->add_option("--max-antennas", audit_cfg.max_antennas, "antenna count cap");
    audit->add_option("--c0-max", audit_cfg.c0_max, "largest random budget (bits)");
    audit->add_option("--seed", audit_cfg.seed, "base seed");
    audit->add_option("--parallel", audit_cfg.parallel, "worker threads");
    audit->add_option("--out", audit_out, "per-trial CSV path (optional)");

    // ---- slope-map ------------------------------------------------------
    auto *slope = app.add_subcommand("slope-map",
                                     "average marginal bit value per component over (r, d)");
    relaycf::slope_map_config slope_cfg;
    std::string slope_out = "slopes.csv";
    std::string slope_r = "1:6", slope_d = "1:6";
    slope->add_option("--s", slope_cfg.s, "source antennas");
    slope->add_option("--t", slope_cfg.t, "interferer antennas");
    slope->add_option("--r-range", slope_r, "relay antenna range lo:hi");
    slope->add_option("--d-range", slope_d, "destination antenna range lo:hi");
    slope->add_option("--realizations", slope_cfg.n_realizations, "draws per cell");
    slope->add_option("--sigma2", slope_cfg.sigma2, "thermal noise power");
    slope->add_option("--seed", slope_cfg.seed, "base seed");
    slope->add_option("--parallel", slope_cfg.parallel, "worker threads");
    slope->add_option("--out", slope_out, "output CSV path");

    // ---- dof ------------------------------------------------------------
    auto *dof = app.add_subcommand("dof", "pre-log formulas and empirical secant estimates");
    relaycf::dof_experiment_config dof_cfg;
    std::string dof_profile = "2,3,3,4";
    std::string dof_rho = "1e5:1e7";
    dof->add_option("--profile", dof_profile, "antenna counts s,d,r,t");
    dof->add_option("--alpha", dof_cfg.alpha, "budget pre-log (default: unlimited)");
    dof->add_option("--rho", dof_rho, "SNR secant endpoints lo:hi");
    dof->add_option("--seed", dof_cfg.seed, "channel draw seed");

    // ---- gen-scenario ---------------------------------------------------
    auto *gen = app.add_subcommand("gen-scenario", "draw a cellular channel realization");
    channel_args gen_ch;
    gen_ch.add(gen);
    gen->get_option("--channel")->group(""); // hidden: gen always generates
    std::string gen_out = "scenario.txt";
    gen->add_option("--out", gen_out, "output channel file");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sweep->parsed())
    {
        relaycf::channel_realization ch = sweep_ch.realize();
        relaycf::sweep_config cfg;
        cfg.c0_grid = parse_grid(sweep_grid);
        cfg.power = sweep_power;
        cfg.parallel = sweep_par;
        auto rows = relaycf::run_sweep(ch, cfg);
        auto out = open_out(sweep_out);
        relaycf::write_sweep_csv(out, rows);
        std::printf("wrote %zu rows to %s\n", rows.size(), sweep_out.c_str());
        return 0;
    }

    if (audit->parsed())
    {
        std::vector<relaycf::gap_trial> rows;
        relaycf::gap_audit_summary sum = relaycf::run_gap_audit(audit_cfg, &rows);
        if (!audit_out.empty())
        {
            auto out = open_out(audit_out);
            relaycf::write_gap_csv(out, rows);
        }
        std::printf("trials: %u  max gap: %.6f  mean gap: %.6f  violations: %u\n",
                    sum.n_trials, sum.max_gap, sum.mean_gap, sum.violations);
        if (!sum.all_within())
        {
            std::fprintf(stderr, "audit violation: first offending seed %llu\n",
                         (unsigned long long)sum.first_violation_seed);
            return 3;
        }
        return 0;
    }

    if (slope->parsed())
    {
        auto [rlo, rhi] = parse_range(slope_r, "--r-range");
        auto [dlo, dhi] = parse_range(slope_d, "--d-range");
        slope_cfg.r_lo = arma::uword(rlo);
        slope_cfg.r_hi = arma::uword(rhi);
        slope_cfg.d_lo = arma::uword(dlo);
        slope_cfg.d_hi = arma::uword(dhi);
        auto rows = relaycf::run_slope_map(slope_cfg);
        auto out = open_out(slope_out);
        relaycf::write_slope_csv(out, rows);
        std::printf("wrote %zu cells to %s\n", rows.size(), slope_out.c_str());
        return 0;
    }

    if (dof->parsed())
    {
        dof_cfg.profile = parse_profile(dof_profile);
        auto [rlo, rhi] = parse_range(dof_rho, "--rho");
        dof_cfg.rho_lo = rlo;
        dof_cfg.rho_hi = rhi;
        relaycf::dof_experiment_result res = relaycf::run_dof_experiment(dof_cfg);
        std::printf("pre-log, direct link:        %llu\n",
                    (unsigned long long)res.formula.dof_dest);
        std::printf("pre-log, unconstrained link: %llu\n",
                    (unsigned long long)res.formula.dof_relay);
        std::printf("%-28s formula %8.4f   empirical %8.4f\n", "relay gain (joint design):",
                    res.formula.dof_gain, res.joint_gain);
        std::printf("%-28s formula %8.4f   empirical %8.4f\n", "relay gain (white noise):",
                    res.formula.dof_gain_iid, res.iid_gain);
        std::printf("%-28s %19s empirical %8.4f\n", "relay gain (combiner):", "",
                    res.combiner_gain);
        return 0;
    }

    // gen-scenario
    relaycf::cellular_config cfg = gen_ch.config();
    relaycf::channel_realization ch =
        relaycf::generate_scenario(cfg, parse_profile(gen_ch.profile_text));
    relaycf::write_channel_file(gen_out, ch, {relaycf::scenario_metadata(cfg)});
    std::printf("wrote %s\n", gen_out.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    try
    {
        return run(argc, argv);
    }
    catch (const usage_error &e)
    {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }
    catch (const std::invalid_argument &e)
    {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
