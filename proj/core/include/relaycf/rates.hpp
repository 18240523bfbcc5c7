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

#ifndef relaycf_rates_H
#define relaycf_rates_H

#include <string>

#include "relaycf/channel.hpp"
#include "relaycf/quantizer.hpp"

// Mutual-information functionals of the compress-and-forward scheme. All
// rates are in bits per channel use (log base 2). Description rates can be
// +infinity (zero quantization noise in a direction that carries signal);
// this is signalled with std::numeric_limits<double>::infinity(), never
// with NaN or exceptions.

namespace relaycf
{

// Effective point-to-point channel from the input to the stacked vector
// (V, Y_D): gain G = [front H_SR; H_SD] and total noise covariance N_V
// collecting interference, thermal noise and quantization noise. N_V does
// not depend on S_X, which makes it the natural object for input-gradient
// computations.
struct stacked_observation
{
    arma::cx_mat G;   // (k+d) x s
    arma::cx_mat N_V; // (k+d) x (k+d), Hermitian
};
stacked_observation stack_with_quantizer(const channel_realization &ch,
                                         const quantizer &Q);

// I(X; V, Y_D): what the destination decodes from its own observation
// plus the relay's compressed description V.
double cf_objective(const channel_realization &ch, const arma::cx_mat &S_X,
                    const quantizer &Q);

// I(Y_R; V | Y_D): description bits the relay must ship so the destination
// can recover V by binning against its own observation. +infinity when the
// quantization noise is singular while the description carries signal.
double cf_constraint(const channel_realization &ch, const arma::cx_mat &S_X,
                     const quantizer &Q);

// Same quantity evaluated through joint determinants of (V, Y_D) rather
// than through a Schur complement of the relay conditional. Kept as an
// independent evaluation route; the two must agree to ~1e-9 bits.
double cf_constraint_joint(const channel_realization &ch, const arma::cx_mat &S_X,
                           const quantizer &Q);

// I(Y_R; V | Y_D, X): the part of the description spent on noise the
// destination could not have subtracted even knowing the input.
double relay_private_rate(const channel_realization &ch, const arma::cx_mat &S_X,
                          const quantizer &Q);

// I(X; Y_D): direct transmission, relay ignored.
double dest_only_rate(const channel_realization &ch, const arma::cx_mat &S_X);

// Achievable rate at relay-link budget c0:
//   min{ I(X; V, Y_D),  I(X; Y_D) + c0 - I(Y_R; V | Y_D, X) }.
// The two branches coincide when I(Y_R; V | Y_D) = c0 exactly.
double cf_rate_minform(const channel_realization &ch, const arma::cx_mat &S_X,
                       const quantizer &Q, double c0);

// One evaluated point of a rate sweep.
struct rate_point
{
    double c0 = 0.0;
    double rate = 0.0;
    std::string scheme;
    double mu = 0.0;     // multiplier at the solution, where applicable
    int inner_iters = 0; // alternation steps of the inner ascent
    int outer_iters = 0; // multiplier bisection steps
};

} // namespace relaycf

#endif
