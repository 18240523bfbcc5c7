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

#ifndef relaycf_input_design_H
#define relaycf_input_design_H

#include <optional>
#include <vector>

#include "relaycf/rates.hpp"

// Transmit covariance optimization. The Lagrangian combining the two CF
// branches at a fixed quantizer,
//   (1 - mu) I(X; V, Y_D) + mu I(X; Y_D),
// is concave in S_X, so projected gradient ascent over the trace ball
// {S_X >= 0, tr <= P} finds the global maximum.

namespace relaycf
{

struct input_opt_config
{
    double power = 1.0;      // transmit power budget P
    double grad_tol = 1e-7;  // stop when the unit-step projected gradient
                             // residual drops below grad_tol * P
    int max_iters = 5000;
    double step_init = 1.0;
    double armijo = 1e-4;    // sufficient-increase fraction
    double backtrack = 0.5;  // step shrink factor
};

struct input_opt_result
{
    arma::cx_mat S_X;
    double lagrangian = 0.0;      // bits, at the returned S_X
    int iters = 0;
    double residual = 0.0;        // final projected-gradient residual
    bool flat_directions = false; // maximum value reached along a direction
                                  // with no curvature; maximizer may not be
                                  // unique (value still is)
    std::vector<double> trace;    // Lagrangian per accepted iterate
};

// Classical water-filling: maximizes log2 det(I + N^-1/2 H S H' N^-1/2')
// over tr(S) <= P for a channel H with noise covariance N. Exact
// closed-form allocation over the whitened channel's singular values.
arma::cx_mat waterfilling_input(const arma::cx_mat &H, const arma::cx_mat &N, double P);

// Input covariance maximizing direct transmission I(X; Y_D).
arma::cx_mat dest_opt_input(const channel_realization &ch, double P);

// Projected gradient ascent for the branch Lagrangian at fixed quantizer.
// Requires mu in (0, 1) and P > 0. Trial steps are spectral
// (Barzilai-Borwein) with Armijo backtracking, so the Lagrangian is
// non-decreasing along accepted iterates. Throws convergence_error
// (carrying the last iterate) if max_iters is exhausted with the residual
// still more than two decades above target.
input_opt_result maximize_lagrangian_input(const channel_realization &ch,
                                           const quantizer &Q, double mu,
                                           const input_opt_config &cfg,
                                           std::optional<arma::cx_mat> init = std::nullopt);

// Max-min cut upper bound on the relay channel with an out-of-band relay
// link of c0 bits:  min{ max I(X; Y_R, Y_D), max I(X; Y_D) + c0 } with a
// common input, evaluated by bisecting the weight of the two cuts (the
// weighted problem is concave; its value is convex in the weight).
struct cutset_result
{
    double value = 0.0;    // bits
    arma::cx_mat S_X;      // input achieving the reported value
    bool bracketed = true; // false when one cut dominates for every weight
                           // and the reported value is that cut's optimum
    int outer_iters = 0;
};

cutset_result cutset_bound(const channel_realization &ch, double P, double c0,
                           const input_opt_config &cfg = {});

} // namespace relaycf

#endif
