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

#ifndef relaycf_joint_opt_H
#define relaycf_joint_opt_H

#include "relaycf/input_design.hpp"
#include "relaycf/quantizer.hpp"

// Joint design of transmit covariance and quantizer for a relay link of c0
// bits. The budget constraint is dualized with a multiplier mu in (0, 1);
// for fixed mu the Lagrangian is maximized by alternating two globally
// solvable subproblems (closed-form quantizer, concave input problem), and
// mu itself is found by bisection on the achieved description rate, which
// is non-increasing in mu.

namespace relaycf
{

struct joint_opt_options
{
    input_opt_config input;       // inner projected-gradient settings
    double inner_rel_tol = 1e-8;  // relative Lagrangian improvement cutoff
    int max_alternations = 200;
    double budget_rel_tol = 1e-6; // |description rate - c0| <= tol * max(1, c0)
    double mu_lo = 1e-4;          // initial multiplier bracket; extended
    double mu_hi = 1.0 - 1e-4;    // geometrically when it does not straddle
    double mu_interval_min = 1e-10; // bracket width cutoff, in log-odds of mu
    double timeshare_rel_gap = 1e-3; // budget mismatch beyond which an
                                     // exhausted bracket becomes time sharing
    int multi_starts = 0;            // extra random restarts (0 = off)
    arma::uword restart_seed = 1;
    std::optional<arma::cx_mat> init_S_X;
};

struct operating_point
{
    arma::cx_mat S_X;
    quant_allocation alloc;
    double objective = 0.0;   // I(X; V, Y_D)
    double description = 0.0; // I(Y_R; V | Y_D)
};

// Convex combination of two operating points whose description rates
// straddle the budget; arises when the optimal multiplier sits at a jump.
struct timeshare_point
{
    operating_point low;  // description rate above the budget
    operating_point high; // description rate below the budget
    double weight_low = 0.0;
};

struct joint_opt_result
{
    double rate = 0.0; // achievable bits at budget c0
    double c0 = 0.0;
    double mu = 0.0;
    operating_point point;
    std::optional<timeshare_point> timeshare;
    int inner_iters = 0; // alternation steps, total
    int outer_iters = 0; // multiplier bisection steps
    double kkt_residual = 0.0; // input stationarity at the solution
    double kkt_slack = 0.0;    // |mu * (description - c0)|
    std::vector<double> lagrangian_trace; // last inner run, non-decreasing
};

// Alternating maximization of  I(X; V, Y_D) - mu I(Y_R; V | Y_D)  at fixed
// mu. Each half-step solves its subproblem exactly, so the trace is non-
// decreasing; the loop stops on relative improvement below inner_rel_tol.
struct inner_ascent_result
{
    operating_point point;
    double lagrangian = 0.0;
    int iters = 0;
    double input_residual = 0.0;
    std::vector<double> trace;
};
inner_ascent_result inner_coordinate_ascent(const channel_realization &ch, double mu,
                                            const joint_opt_options &opts,
                                            std::optional<arma::cx_mat> init = std::nullopt);

// Full joint optimization at relay-link budget c0 (bits). c0 = 0 reduces
// to direct transmission with a silent relay; very large c0 saturates at
// the unconstrained optimum and is reported with the budget slack.
joint_opt_result optimize_cf(const channel_realization &ch, double P, double c0,
                             const joint_opt_options &opts = {});

// Rate at each budget of an ascending grid, warm-starting each point from
// the previous solution. Points are closed under "keep the previous
// operating point if it is better": a solution feasible at a smaller
// budget stays feasible at a larger one, so the curve is non-decreasing.
std::vector<joint_opt_result> rate_curve(const channel_realization &ch, double P,
                                         const std::vector<double> &c0_grid,
                                         const joint_opt_options &opts = {});

} // namespace relaycf

#endif
