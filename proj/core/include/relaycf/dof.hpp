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

#ifndef relaycf_dof_H
#define relaycf_dof_H

#include <functional>

#include "relaycf/channel.hpp"

// High-SNR scaling (degrees of freedom) of the relay gain when signal and
// interference powers grow together. The relay link is scaled as
// c0 = alpha log2(rho); alpha = +infinity models an unconstrained link.

namespace relaycf
{

struct dof_summary
{
    arma::uword dof_dest = 0;  // pre-log of direct transmission:
                               // min(s, (d - t)^+)
    arma::uword dof_relay = 0; // pre-log with an unconstrained relay link:
                               // min(s, (r + d - t)^+)
    double dof_gain = 0.0;     // joint-design relay gain:
                               // min(dof_relay - dof_dest, alpha)
    double dof_gain_iid = 0.0; // gain with white quantization noise, which
                               // wastes bits on every described dimension:
                               // (dof_relay - dof_dest) min(1, alpha / r')
    arma::uword r_prime = 0;   // dimensions the relay observes beyond the
                               // destination: min(r, (s + t - d)^+)
    arma::uword combiner_rows = 0; // interference-nulling description size:
                                   // min(r, s, (r + d - t)^+)
    bool relay_helps = false;      // dof_relay > dof_dest
};

// Closed-form summary from antenna counts alone (full-rank generic
// channels and full-rank input assumed). alpha must be >= 0; +infinity is
// allowed.
dof_summary dof_report(const antenna_profile &p, double alpha);

// Whether a relay with an out-of-band link ever improves the pre-log:
// positive gain iff s >= 1, r >= 1, r + d > t and d < s + t (given
// alpha > 0).
bool relay_improves_dof(const antenna_profile &p);

// Linear combining across relay and destination antennas that cancels the
// interferer exactly: rows of [relay_rows dest_rows] form an orthonormal
// basis of (a min(r, s, (r+d-t)^+)-dimensional part of) the left null
// space of the stacked interference channel [H_TR; H_TD] S_XT^(1/2).
// Numeric null space at threshold 1e-10 times the largest singular value.
//
// The relay describes relay_rows Y_R; the destination adds dest_rows Y_D.
// For generic channels the combined signal channel keeps full rank, so the
// description is interference-free without losing signal dimensions.
struct zf_combiner
{
    arma::cx_mat relay_rows; // k x r
    arma::cx_mat dest_rows;  // k x d
};
zf_combiner interference_nulling_combiner(const channel_realization &ch);

// Secant slope of a rate curve against log2(rho): empirical pre-log
// between two SNR points. Requires rho_hi > rho_lo >= 10.
double empirical_dof(const std::function<double(double)> &rate_at_rho,
                     double rho_lo, double rho_hi);

} // namespace relaycf

#endif
