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

#include "relaycf/channel.hpp"

#include <algorithm>

namespace relaycf
{

antenna_profile channel_realization::profile() const
{
    antenna_profile p;
    p.r = H_SR.n_rows;
    p.s = H_SR.n_cols;
    p.d = H_SD.n_rows;
    p.t = H_TR.n_cols;
    return p;
}

void channel_realization::validate() const
{
    arma::uword s = H_SR.n_cols, r = H_SR.n_rows;
    arma::uword d = H_SD.n_rows, t = H_TR.n_cols;

    if (s < 1 || r < 1 || d < 1)
        throw std::invalid_argument("channel_realization: source, relay and destination need at least one antenna");
    if (H_SD.n_cols != s)
        throw std::invalid_argument("channel_realization: H_SD column count does not match source antennas");
    if (H_TR.n_rows != r || H_TD.n_rows != d || H_TD.n_cols != t)
        throw std::invalid_argument("channel_realization: interferer matrix dimensions are inconsistent");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("channel_realization: sigma2 must be positive");
    if (S_XT.n_rows != t || S_XT.n_cols != t)
        throw std::invalid_argument("channel_realization: S_XT must be t x t");
    if (t > 0 && !is_psd(S_XT))
        throw std::invalid_argument("channel_realization: S_XT must be Hermitian PSD");
}

channel_realization random_channel(const antenna_profile &p, double sigma2,
                                   arma::uword seed)
{
    arma::arma_rng::set_seed(seed);
    const double unit = std::sqrt(0.5); // CN(0,1): variance 1/2 per component
    channel_realization ch;
    ch.H_SR = unit * arma::cx_mat(p.r, p.s, arma::fill::randn);
    ch.H_SD = unit * arma::cx_mat(p.d, p.s, arma::fill::randn);
    ch.H_TR = unit * arma::cx_mat(p.r, p.t, arma::fill::randn);
    ch.H_TD = unit * arma::cx_mat(p.d, p.t, arma::fill::randn);
    ch.sigma2 = sigma2;
    ch.S_XT.eye(p.t, p.t);
    ch.validate();
    return ch;
}

arma::cx_mat interference_covariance(const channel_realization &ch)
{
    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows;
    if (ch.H_TR.n_cols == 0)
        return arma::cx_mat(r + d, r + d, arma::fill::zeros);

    arma::cx_mat H_T = arma::join_cols(ch.H_TR, ch.H_TD);
    return hermitian_part(H_T * ch.S_XT * H_T.t());
}

arma::cx_mat dest_noise_covariance(const channel_realization &ch)
{
    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows;
    arma::cx_mat S_int = interference_covariance(ch);
    arma::cx_mat N = hermitian_part(S_int.submat(r, r, r + d - 1, r + d - 1));
    N.diag() += ch.sigma2;
    return N;
}

// Joint covariance of the stacked observation (Y_R, Y_D) for input X with
// covariance S_X. Thermal noise sigma2 is passed in so the noiseless
// variant can reuse the assembly.
static arma::cx_mat observation_covariance(const channel_realization &ch,
                                           const arma::cx_mat &S_X, double sigma2)
{
    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows;

    arma::cx_mat J = interference_covariance(ch);
    J.submat(0, 0, r - 1, r - 1) += ch.H_SR * S_X * ch.H_SR.t();
    J.submat(0, r, r - 1, r + d - 1) += ch.H_SR * S_X * ch.H_SD.t();
    J.submat(r, 0, r + d - 1, r - 1) = J.submat(0, r, r - 1, r + d - 1).t();
    J.submat(r, r, r + d - 1, r + d - 1) += ch.H_SD * S_X * ch.H_SD.t();
    J.diag() += sigma2;

    return hermitian_part(J);
}

static void check_input_cov(const channel_realization &ch, const arma::cx_mat &S_X)
{
    if (S_X.n_rows != ch.H_SR.n_cols || S_X.n_cols != ch.H_SR.n_cols)
        throw std::invalid_argument("relay_conditionals: S_X must be s x s");
    if (!is_psd(S_X))
        throw std::invalid_argument("relay_conditionals: S_X must be Hermitian PSD");
}

// Covariance of X given the observation Y = H X + N, on the positive modes
// of S = cov(X), in information form: restricted to those modes the
// conditional is (diag(1/p) + U' H' inv(N_cov) H U)^-1, a congruence of a
// positive definite inverse. No subtraction occurs, so the result is PSD
// and accurate in a relative sense even when it is many orders of
// magnitude below the observation scale.
static arma::cx_mat input_given_observation(const arma::cx_mat &S, const arma::cx_mat &H,
                                            const arma::cx_mat &N_cov)
{
    arma::vec p;
    arma::cx_mat U;
    arma::eig_sym(p, U, hermitian_part(S));

    arma::uvec keep = arma::find(p > herm_null_tol * std::max(p.max(), 0.0));
    if (keep.n_elem == 0)
        return arma::cx_mat(S.n_rows, S.n_cols, arma::fill::zeros);
    arma::cx_mat Uk = U.cols(keep);
    arma::vec pk = p(keep);

    arma::cx_mat HU = H * Uk;
    arma::cx_mat inner = HU.t() * pd_inverse(N_cov) * HU;
    inner.diag() += arma::conv_to<arma::cx_vec>::from(1.0 / pk);
    return hermitian_part(Uk * pd_inverse(hermitian_part(inner)) * Uk.t());
}

conditional_covariances relay_conditionals(const channel_realization &ch,
                                           const arma::cx_mat &S_X)
{
    ch.validate();
    check_input_cov(ch, S_X);

    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows, t = ch.H_TR.n_cols;

    // Law of total covariance, applied twice. Writing each conditional as
    // a white floor plus a congruence of a conditional input covariance
    // keeps the Loewner ordering
    //     given_dest >= given_dest_input >= sigma2 * I
    // exact by construction; a direct Schur complement of the observation
    // covariance loses it to round-off once sigma2 sits several orders
    // below the signal scale.

    conditional_covariances out;

    // Noise given the destination's noise: thermal floor plus the part of
    // the interferers' symbols the destination cannot resolve. Knowing
    // both Y_D and X removes the signal exactly, so this cannot depend on
    // S_X.
    arma::cx_mat A(r, r, arma::fill::eye);
    A *= ch.sigma2;
    if (t > 0)
    {
        arma::cx_mat Z_D(d, d, arma::fill::eye);
        arma::cx_mat Sigma_T = input_given_observation(ch.S_XT, ch.H_TD, ch.sigma2 * Z_D);
        A = hermitian_part(A + ch.H_TR * Sigma_T * ch.H_TR.t());
    }
    out.given_dest_input = A;

    // Relay observation given the destination's: add the part of the
    // source symbols the destination cannot resolve, seen through the
    // channel left after subtracting the predictable part of the noise.
    arma::cx_mat S_ND = dest_noise_covariance(ch);
    arma::cx_mat G = ch.H_SR;
    if (t > 0)
    {
        arma::cx_mat S_NRD = ch.H_TR * ch.S_XT * ch.H_TD.t();
        G -= S_NRD * pd_inverse(S_ND) * ch.H_SD;
    }
    arma::cx_mat Sigma_X = input_given_observation(S_X, ch.H_SD, S_ND);
    out.given_dest = hermitian_part(A + G * Sigma_X * G.t());

    return out;
}

rank_profile noiseless_rank_profile(const channel_realization &ch,
                                    const arma::cx_mat &S_X)
{
    ch.validate();
    check_input_cov(ch, S_X);

    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows, t = ch.H_TR.n_cols;

    rank_profile out;
    out.r_prime = numeric_rank(conditional_covariance(observation_covariance(ch, S_X, 0.0), r));
    out.r_dprime = numeric_rank(conditional_covariance(interference_covariance(ch), r));
    out.s_rank = numeric_rank(S_X);

    auto pos = [](arma::sword x) { return arma::uword(std::max<arma::sword>(x, 0)); };
    arma::sword sd = arma::sword(d), st = arma::sword(t), ss = arma::sword(out.s_rank);
    out.r_prime_expected = std::min(r, pos(ss + st - sd));
    out.r_dprime_expected = std::min(r, pos(st - sd));
    return out;
}

} // namespace relaycf
