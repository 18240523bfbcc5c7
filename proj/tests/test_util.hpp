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

#ifndef relaycf_test_util_H
#define relaycf_test_util_H

#include <armadillo>

#include "relaycf/channel.hpp"

namespace testutil
{

// Single-antenna channel with real scalar gains and no interferer.
inline relaycf::channel_realization scalar_channel(double h_sr, double h_sd, double sigma2)
{
    relaycf::channel_realization ch;
    ch.H_SR.set_size(1, 1);
    ch.H_SR(0, 0) = h_sr;
    ch.H_SD.set_size(1, 1);
    ch.H_SD(0, 0) = h_sd;
    ch.H_TR.set_size(1, 0);
    ch.H_TD.set_size(1, 0);
    ch.S_XT.set_size(0, 0);
    ch.sigma2 = sigma2;
    return ch;
}

// Scalar channel plus a single-antenna interferer with real gains.
inline relaycf::channel_realization scalar_interference_channel(double h_sr, double h_sd,
                                                                double g_r, double g_d,
                                                                double sigma2,
                                                                double int_power = 1.0)
{
    relaycf::channel_realization ch = scalar_channel(h_sr, h_sd, sigma2);
    ch.H_TR.set_size(1, 1);
    ch.H_TR(0, 0) = g_r;
    ch.H_TD.set_size(1, 1);
    ch.H_TD(0, 0) = g_d;
    ch.S_XT.set_size(1, 1);
    ch.S_XT(0, 0) = int_power;
    return ch;
}

inline arma::cx_mat scaled_identity(arma::uword n, double v)
{
    arma::cx_mat S(n, n, arma::fill::eye);
    S *= v;
    return S;
}

// Random Hermitian positive definite matrix with unit-scale spectrum.
inline arma::cx_mat random_hpd(arma::uword n)
{
    arma::cx_mat M(n, n, arma::fill::randn);
    arma::cx_mat R = M * M.t();
    R.diag() += 0.1;
    return (R + R.t()) / 2.0;
}

// Real part of the Frobenius inner product <A, B>.
inline double hip(const arma::cx_mat &A, const arma::cx_mat &B)
{
    return std::real(arma::accu(arma::conj(A) % B));
}

} // namespace testutil

#endif
