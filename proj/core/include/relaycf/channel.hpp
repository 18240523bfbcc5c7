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

#ifndef relaycf_channel_H
#define relaycf_channel_H

#include <armadillo>

#include "relaycf/hermitian.hpp"

// Static model of one full-duplex relay link: a source with s antennas
// talks to a destination (d antennas) helped by a relay (r antennas) that
// forwards a compressed observation over a rate-limited bit pipe. A t-
// antenna interferer couples into relay and destination simultaneously,
// which is the sole source of noise correlation across the two receivers.

namespace relaycf
{

struct antenna_profile
{
    arma::uword s = 1; // source antennas
    arma::uword d = 1; // destination antennas
    arma::uword r = 1; // relay antennas
    arma::uword t = 0; // interferer antennas (0 = interference-free)
};

struct channel_realization
{
    arma::cx_mat H_SR; // r x s, source -> relay
    arma::cx_mat H_SD; // d x s, source -> destination
    arma::cx_mat H_TR; // r x t, interferer -> relay
    arma::cx_mat H_TD; // d x t, interferer -> destination
    double sigma2 = 1.0; // thermal noise power per receive antenna
    arma::cx_mat S_XT;   // t x t interferer input covariance, Hermitian PSD

    antenna_profile profile() const;

    // Validates dimensional consistency, sigma2 > 0 and S_XT Hermitian PSD.
    // Throws std::invalid_argument on violation.
    void validate() const;
};

// Channel with every dimension filled from i.i.d. CN(0,1) entries and
// S_XT = I; the generic-position workhorse for tests and audits.
channel_realization random_channel(const antenna_profile &p, double sigma2,
                                   arma::uword seed);

// Covariance of the stacked interference seen at (relay, destination):
// [H_TR; H_TD] S_XT [H_TR; H_TD]'. Sized (r+d) x (r+d); zero when t = 0.
arma::cx_mat interference_covariance(const channel_realization &ch);

// Noise covariance at the destination alone: interference block plus
// thermal noise, d x d.
arma::cx_mat dest_noise_covariance(const channel_realization &ch);

struct conditional_covariances
{
    arma::cx_mat given_dest;       // covariance of Y_R given Y_D, r x r
    arma::cx_mat given_dest_input; // covariance of Y_R given (Y_D, X), r x r
};

// given_dest_input conditions the noise alone, since knowing X removes the
// signal exactly (and so cannot depend on S_X). Both conditionals are built
// by the law of total covariance as a white floor plus a congruence of a
// conditional symbol covariance, so the Loewner ordering
//     given_dest >= given_dest_input >= sigma2 * I
// holds by construction at any noise-to-signal separation. Requires S_X
// Hermitian PSD, s x s.
conditional_covariances relay_conditionals(const channel_realization &ch,
                                           const arma::cx_mat &S_X);

// Numeric ranks of the two conditionals with thermal noise removed, i.e.
// of what the relay still sees about (signal + interference) after the
// destination's observation is subtracted out.
struct rank_profile
{
    arma::uword r_prime = 0;  // rank of the noiseless "given dest" conditional
    arma::uword r_dprime = 0; // rank of the noiseless "given dest and input" conditional
    arma::uword s_rank = 0;   // rank of S_X used in the computation

    // Generic-position predictions from the antenna counts alone.
    arma::uword r_prime_expected = 0;
    arma::uword r_dprime_expected = 0;

    // r_prime - r_dprime: number of relay dimensions that stay noiseless
    // even after conditioning on the input; these are the directions whose
    // quantization preserves degrees of freedom.
    arma::uword deterministic_components() const { return r_prime - r_dprime; }
};

// Computes the ranks at sigma2 = 0 (numeric threshold herm_null_tol
// relative) together with the generic-position predictions
//   r_prime  = min(r, (rank(S_X) + t - d)^+)
//   r_dprime = min(r, (t - d)^+)
// which hold for channels in general position.
rank_profile noiseless_rank_profile(const channel_realization &ch,
                                    const arma::cx_mat &S_X);

} // namespace relaycf

#endif
