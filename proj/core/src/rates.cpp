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

#include "relaycf/rates.hpp"

#include <limits>

namespace relaycf
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

void check_args(const channel_realization &ch, const arma::cx_mat &S_X,
                const quantizer &Q, const char *where)
{
    ch.validate();
    Q.validate();
    arma::uword s = ch.H_SR.n_cols, r = ch.H_SR.n_rows;
    if (S_X.n_rows != s || S_X.n_cols != s)
        throw std::invalid_argument(std::string(where) + ": S_X must be s x s");
    if (!is_psd(S_X))
        throw std::invalid_argument(std::string(where) + ": S_X must be Hermitian PSD");
    if (Q.in_dim() != r)
        throw std::invalid_argument(std::string(where) + ": quantizer front end must have r columns");
}

bool noise_singular(const quantizer &Q)
{
    if (Q.out_dim() == 0)
        return false;
    arma::vec ev = arma::eig_sym(hermitian_part(Q.noise));
    return ev.min() <= herm_null_tol * std::max(ev.max(), 0.0) || ev.max() <= 0.0;
}

} // namespace

stacked_observation stack_with_quantizer(const channel_realization &ch, const quantizer &Q)
{
    arma::uword r = ch.H_SR.n_rows, d = ch.H_SD.n_rows;
    arma::uword k = Q.out_dim();

    arma::cx_mat S_int = interference_covariance(ch);
    arma::cx_mat S_RR = S_int.submat(0, 0, r - 1, r - 1);
    arma::cx_mat S_RD = S_int.submat(0, r, r - 1, r + d - 1);
    arma::cx_mat S_DD = S_int.submat(r, r, r + d - 1, r + d - 1);

    stacked_observation m;
    m.G = arma::join_cols(Q.front * ch.H_SR, ch.H_SD);

    m.N_V.zeros(k + d, k + d);
    if (k > 0)
    {
        m.N_V.submat(0, 0, k - 1, k - 1) =
            Q.front * S_RR * Q.front.t() + ch.sigma2 * (Q.front * Q.front.t()) + Q.noise;
        m.N_V.submat(0, k, k - 1, k + d - 1) = Q.front * S_RD;
        m.N_V.submat(k, 0, k + d - 1, k - 1) = m.N_V.submat(0, k, k - 1, k + d - 1).t();
    }
    m.N_V.submat(k, k, k + d - 1, k + d - 1) = S_DD;
    for (arma::uword i = 0; i < d; ++i)
        m.N_V(k + i, k + i) += ch.sigma2;
    m.N_V = hermitian_part(m.N_V);
    return m;
}

double cf_objective(const channel_realization &ch, const arma::cx_mat &S_X,
                    const quantizer &Q)
{
    check_args(ch, S_X, Q, "cf_objective");
    stacked_observation m = stack_with_quantizer(ch, Q);
    return logdet2_pd(hermitian_part(m.G * S_X * m.G.t()) + m.N_V) - logdet2_pd(m.N_V);
}

double cf_constraint(const channel_realization &ch, const arma::cx_mat &S_X,
                     const quantizer &Q)
{
    check_args(ch, S_X, Q, "cf_constraint");
    if (Q.out_dim() == 0)
        return 0.0;
    if (noise_singular(Q))
        return inf;

    arma::cx_mat S_rel = relay_conditionals(ch, S_X).given_dest;
    arma::cx_mat described = hermitian_part(Q.front * S_rel * Q.front.t()) + hermitian_part(Q.noise);
    return logdet2_pd(described) - logdet2_pd(Q.noise);
}

double cf_constraint_joint(const channel_realization &ch, const arma::cx_mat &S_X,
                           const quantizer &Q)
{
    check_args(ch, S_X, Q, "cf_constraint_joint");
    if (Q.out_dim() == 0)
        return 0.0;
    if (noise_singular(Q))
        return inf;

    stacked_observation m = stack_with_quantizer(ch, Q);
    double joint = logdet2_pd(hermitian_part(m.G * S_X * m.G.t()) + m.N_V);
    double dest = logdet2_pd(hermitian_part(ch.H_SD * S_X * ch.H_SD.t()) + dest_noise_covariance(ch));
    return joint - dest - logdet2_pd(Q.noise);
}

double relay_private_rate(const channel_realization &ch, const arma::cx_mat &S_X,
                          const quantizer &Q)
{
    check_args(ch, S_X, Q, "relay_private_rate");
    if (Q.out_dim() == 0)
        return 0.0;
    if (noise_singular(Q))
        return inf;

    arma::cx_mat S_rel = relay_conditionals(ch, S_X).given_dest_input;
    arma::cx_mat described = hermitian_part(Q.front * S_rel * Q.front.t()) + hermitian_part(Q.noise);
    return logdet2_pd(described) - logdet2_pd(Q.noise);
}

double dest_only_rate(const channel_realization &ch, const arma::cx_mat &S_X)
{
    ch.validate();
    arma::uword s = ch.H_SR.n_cols;
    if (S_X.n_rows != s || S_X.n_cols != s || !is_psd(S_X))
        throw std::invalid_argument("dest_only_rate: S_X must be s x s Hermitian PSD");

    arma::cx_mat N_D = dest_noise_covariance(ch);
    return logdet2_pd(hermitian_part(ch.H_SD * S_X * ch.H_SD.t()) + N_D) - logdet2_pd(N_D);
}

double cf_rate_minform(const channel_realization &ch, const arma::cx_mat &S_X,
                       const quantizer &Q, double c0)
{
    if (c0 < 0.0)
        throw std::invalid_argument("cf_rate_minform: c0 must be non-negative");

    double direct = cf_objective(ch, S_X, Q);
    double priv = relay_private_rate(ch, S_X, Q);
    if (std::isinf(priv))
        return -inf;
    double binned = dest_only_rate(ch, S_X) + c0 - priv;
    return std::min(direct, binned);
}

} // namespace relaycf
