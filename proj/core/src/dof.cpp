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

#include "relaycf/dof.hpp"

#include <algorithm>
#include <cmath>

namespace relaycf
{

namespace
{

arma::uword pos_diff(arma::uword a, arma::uword b) // (a - b)^+
{
    return a > b ? a - b : 0;
}

} // namespace

dof_summary dof_report(const antenna_profile &p, double alpha)
{
    if (std::isnan(alpha) || alpha < 0.0)
        throw std::invalid_argument("dof_report: alpha must be non-negative (or +inf)");

    dof_summary out;
    out.dof_dest = std::min(p.s, pos_diff(p.d, p.t));
    out.dof_relay = std::min(p.s, pos_diff(p.r + p.d, p.t));
    out.r_prime = std::min(p.r, pos_diff(p.s + p.t, p.d));
    out.combiner_rows = std::min({p.r, p.s, pos_diff(p.r + p.d, p.t)});
    out.relay_helps = out.dof_relay > out.dof_dest;

    double gap = double(out.dof_relay - out.dof_dest);
    out.dof_gain = std::min(gap, alpha);
    if (gap == 0.0)
        out.dof_gain_iid = 0.0;
    else
        out.dof_gain_iid = gap * std::min(1.0, alpha / double(out.r_prime));
    return out;
}

bool relay_improves_dof(const antenna_profile &p)
{
    return p.s >= 1 && p.r >= 1 && p.r + p.d > p.t && p.d < p.s + p.t;
}

zf_combiner interference_nulling_combiner(const channel_realization &ch)
{
    ch.validate();
    antenna_profile p = ch.profile();
    arma::uword k = std::min({p.r, p.s, pos_diff(p.r + p.d, p.t)});

    zf_combiner out;
    if (k == 0)
    {
        out.relay_rows.set_size(0, p.r);
        out.dest_rows.set_size(0, p.d);
        return out;
    }

    arma::cx_mat basis; // columns: left null space of the interference image
    if (p.t == 0)
    {
        basis.eye(p.r + p.d, k);
    }
    else
    {
        arma::cx_mat M = arma::join_cols(ch.H_TR, ch.H_TD) * psd_sqrt(ch.S_XT);
        arma::cx_mat U;
        arma::vec sv;
        arma::cx_mat V;
        if (!arma::svd(U, sv, V, M))
            throw std::domain_error("interference_nulling_combiner: SVD failed");

        double cutoff = 1e-10 * (sv.n_elem > 0 ? sv.max() : 0.0);
        arma::uword rank = 0;
        while (rank < sv.n_elem && sv(rank) > cutoff)
            ++rank;
        if (p.r + p.d - rank < k)
            throw std::domain_error("interference_nulling_combiner: interference occupies the combining space");
        basis = U.cols(rank, rank + k - 1);
    }

    arma::cx_mat rows = basis.t(); // k x (r+d), orthonormal rows
    out.relay_rows = rows.cols(0, p.r - 1);
    out.dest_rows = rows.cols(p.r, p.r + p.d - 1);
    return out;
}

double empirical_dof(const std::function<double(double)> &rate_at_rho,
                     double rho_lo, double rho_hi)
{
    if (!(rho_hi > rho_lo) || !(rho_lo >= 10.0))
        throw std::invalid_argument("empirical_dof: need rho_hi > rho_lo >= 10");
    return (rate_at_rho(rho_hi) - rate_at_rho(rho_lo)) /
           (std::log2(rho_hi) - std::log2(rho_lo));
}

} // namespace relaycf
