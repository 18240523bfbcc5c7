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

#ifndef relaycf_harness_H
#define relaycf_harness_H

#include <iosfwd>

#include "relaycf/dof.hpp"
#include "relaycf/joint_opt.hpp"
#include "relaycf/scenario.hpp"

// Batch experiments over the core primitives: rate-versus-budget sweeps,
// the randomized constant-gap audit, slope maps and high-SNR scaling
// probes. Grid points and trials are embarrassingly parallel; results are
// merged in index order so output never depends on scheduling.

namespace relaycf
{

// One budget point comparing the joint design against its baselines.
// Every column is an achievable rate except cutset, which caps them all.
struct sweep_row
{
    double c0 = 0.0;
    double cutset = 0.0;
    double cf_joint = 0.0;        // alternating joint design (best found)
    double cf_wf_sd = 0.0;        // water-filling on the direct link, then
                                  // budget-exact quantizer
    double cf_wf_srd = 0.0;       // water-filling on the stacked channel,
                                  // then budget-exact quantizer
    double cf_iid_q = 0.0;        // joint input, white quantization noise
                                  // with q matched to the budget
    double cf_constant_gap = 0.0; // cut-set-optimal input, budget-exact
                                  // quantizer (the constant-gap scheme)
};

struct sweep_config
{
    std::vector<double> c0_grid;
    double power = 1.0;
    unsigned parallel = 1;
    joint_opt_options opts;
};

std::vector<sweep_row> run_sweep(const channel_realization &ch, const sweep_config &cfg);
void write_sweep_csv(std::ostream &out, const std::vector<sweep_row> &rows);

// Randomized end-to-end audit of the constant-gap guarantee: the cut-set
// bound never exceeds the best CF rate by more than min(r, s) bits.
struct gap_trial
{
    arma::uword index = 0;
    arma::uword seed = 0;
    antenna_profile profile;
    double sigma2 = 0.0;
    double c0 = 0.0;
    double cutset = 0.0;
    double cf = 0.0;
    double gap = 0.0;
    double bound = 0.0; // min(r, s)
    bool within = true;
};

struct gap_audit_config
{
    unsigned n_trials = 200;
    arma::uword max_antennas = 4; // s, d, r drawn from 1..max, t from 0..max
    double c0_max = 12.0;
    arma::uword seed = 1;
    unsigned parallel = 1;
    double tolerance = 1e-6;
};

struct gap_audit_summary
{
    unsigned n_trials = 0;
    unsigned violations = 0;
    double max_gap = 0.0;
    double mean_gap = 0.0;
    arma::uword first_violation_seed = 0;
    bool all_within() const { return violations == 0; }
};

gap_audit_summary run_gap_audit(const gap_audit_config &cfg,
                                std::vector<gap_trial> *rows = nullptr);
void write_gap_csv(std::ostream &out, const std::vector<gap_trial> &rows);

// Marginal value of the first description bits per component, averaged
// over channel realizations at a fixed isotropic input.
struct slope_cell
{
    arma::uword r = 0, d = 0, component = 0;
    double avg_slope = 0.0;
};

struct slope_map_config
{
    arma::uword s = 5, t = 18;
    arma::uword r_lo = 1, r_hi = 6;
    arma::uword d_lo = 1, d_hi = 6;
    arma::uword max_component = 6;
    unsigned n_realizations = 100;
    double sigma2 = 1e-6;
    double power = 1.0;
    arma::uword seed = 1;
    unsigned parallel = 1;
};

std::vector<slope_cell> run_slope_map(const slope_map_config &cfg);
void write_slope_csv(std::ostream &out, const std::vector<slope_cell> &rows);

// High-SNR scaling probe on one channel geometry: thermal noise 1/rho,
// relay budget alpha log2(rho) (a generous proxy budget when alpha is
// +infinity), secant slopes between rho_lo and rho_hi. Gains are relative
// to direct transmission with a water-filled input.
struct dof_experiment_config
{
    antenna_profile profile;
    double alpha = std::numeric_limits<double>::infinity();
    double rho_lo = 1e5;
    double rho_hi = 1e7;
    double power = 1.0;
    arma::uword seed = 7;
    joint_opt_options opts;
};

struct dof_experiment_result
{
    dof_summary formula;        // closed-form values at the same alpha
    double joint_gain = 0.0;    // secant DoF gain of the joint design
    double iid_gain = 0.0;      // white quantization noise on all antennas
    double combiner_gain = 0.0; // white noise on interference-nulled rows
};

dof_experiment_result run_dof_experiment(const dof_experiment_config &cfg);

} // namespace relaycf

#endif
