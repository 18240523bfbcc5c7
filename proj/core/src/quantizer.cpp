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

#include "relaycf/quantizer.hpp"

#include <cmath>
#include <limits>

namespace relaycf
{

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();
}

void quantizer::validate() const
{
    if (noise.n_rows != front.n_rows || noise.n_cols != front.n_rows)
        throw std::invalid_argument("quantizer: noise covariance must be k x k for a k x r front end");
    if (front.n_rows > 0 && !is_psd(noise))
        throw std::invalid_argument("quantizer: noise covariance must be Hermitian PSD");
}

quantizer quantizer::dense(arma::cx_mat S_Q)
{
    quantizer q;
    q.front.eye(S_Q.n_rows, S_Q.n_rows);
    q.noise = std::move(S_Q);
    q.validate();
    return q;
}

quantizer quantizer::iid(double qpow, arma::uword r)
{
    if (!(qpow > 0.0))
        throw std::invalid_argument("quantizer::iid: noise power must be positive");
    quantizer q;
    q.front.eye(r, r);
    q.noise.zeros(r, r);
    q.noise.diag() += qpow;
    return q;
}

quantizer quantizer::silent(arma::uword r)
{
    quantizer q;
    q.front.zeros(0, r);
    q.noise.zeros(0, 0);
    return q;
}

quantizer quantizer::perfect(arma::uword r)
{
    quantizer q;
    q.front.eye(r, r);
    q.noise.zeros(r, r);
    return q;
}

quantizer quant_allocation::make_quantizer() const
{
    arma::uword r = basis.dim();
    if (active.n_elem == 0)
        return quantizer::silent(r);

    quantizer q;
    q.front = basis.transform.cols(active).t();
    q.noise.zeros(active.n_elem, active.n_elem);
    for (arma::uword i = 0; i < active.n_elem; ++i)
        q.noise(i, i) = noise_diag(active(i));
    return q;
}

arma::cx_mat quant_allocation::dense_noise() const
{
    if (active.n_elem != basis.dim())
        throw std::domain_error("quant_allocation: dense noise undefined with inactive components");

    arma::cx_mat Cinv = arma::inv(basis.transform);
    return hermitian_part(Cinv.t() * arma::diagmat(arma::cx_vec(noise_diag, arma::vec(noise_diag.n_elem, arma::fill::zeros))) * Cinv);
}

gen_eig_system description_basis(const channel_realization &ch, const arma::cx_mat &S_X)
{
    conditional_covariances cc = relay_conditionals(ch, S_X);
    return simdiag_congruence(cc.given_dest_input, cc.given_dest);
}

namespace
{

// Componentwise reverse water-filling at multiplier mu in a given basis.
quant_allocation allocation_from_mu(gen_eig_system basis, double mu)
{
    arma::uword r = basis.dim();
    quant_allocation out;
    out.mu = mu;
    out.rates.zeros(r);
    out.noise_diag.set_size(r);
    out.noise_diag.fill(inf);

    std::vector<arma::uword> act;
    double ratio = mu / (1.0 - mu);
    for (arma::uword i = 0; i < r; ++i)
    {
        double lam = basis.eigenvalues(i);
        double margin = 1.0 - 1.0 / lam - mu;
        if (margin <= 0.0)
            continue;
        act.push_back(i);
        out.rates(i) = std::log2(lam - 1.0) - std::log2(ratio);
        out.noise_diag(i) = mu / margin;
    }
    out.active = arma::uvec(act);
    out.basis = std::move(basis);
    return out;
}

} // namespace

quant_allocation quantizer_for_mu(const channel_realization &ch,
                                  const arma::cx_mat &S_X, double mu)
{
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("quantizer_for_mu: mu must lie strictly between 0 and 1");
    return allocation_from_mu(description_basis(ch, S_X), mu);
}

budget_allocation allocation_for_budget(const gen_eig_system &basis, double c0)
{
    if (c0 < 0.0)
        throw std::invalid_argument("allocation_for_budget: c0 must be non-negative");

    arma::uword r = basis.dim();
    arma::uword n_pos = 0; // components with lambda > 1, in descending order
    while (n_pos < r && basis.eigenvalues(n_pos) > 1.0)
        ++n_pos;

    budget_allocation out;
    if (c0 == 0.0 || n_pos == 0)
    {
        // Empty allocation; the marginal value of the first description
        // bit is set by the largest eigenvalue.
        out.alloc.basis = basis;
        out.alloc.rates.zeros(r);
        out.alloc.noise_diag.set_size(r);
        out.alloc.noise_diag.fill(inf);
        double lam1 = r > 0 ? basis.eigenvalues(0) : 1.0;
        out.alloc.mu = lam1 > 1.0 ? 1.0 - 1.0 / lam1 : 0.0;
        out.marginal_value = out.alloc.mu;
        return out;
    }

    // Find the active-set size k consistent with its own multiplier:
    // mu_k < 1 - 1/lambda_k (component k really active) and, unless k is
    // the last positive component, mu_k >= 1 - 1/lambda_{k+1}.
    const double ln2 = std::log(2.0);
    double log_sum = 0.0; // sum of ln(lambda_j - 1) over the first k
    double x = 0.0;       // ln((1-mu)/mu) at the consistent k
    arma::uword k_sel = 0;
    for (arma::uword k = 1; k <= n_pos; ++k)
    {
        log_sum += std::log(basis.eigenvalues(k - 1) - 1.0);
        double xk = (c0 * ln2 - log_sum) / double(k);
        double mu_k = 1.0 / (1.0 + std::exp(xk));

        bool last_ok = mu_k < 1.0 - 1.0 / basis.eigenvalues(k - 1);
        bool next_ok = (k == n_pos) || mu_k >= 1.0 - 1.0 / basis.eigenvalues(k);
        if (last_ok && next_ok)
        {
            k_sel = k;
            x = xk;
            break;
        }
    }
    if (k_sel == 0)
        throw std::domain_error("allocation_for_budget: no consistent active set (numerical)");

    double mu = 1.0 / (1.0 + std::exp(x));
    quant_allocation alloc;
    alloc.basis = basis;
    alloc.mu = mu;
    alloc.rates.zeros(r);
    alloc.noise_diag.set_size(r);
    alloc.noise_diag.fill(inf);
    alloc.active = arma::regspace<arma::uvec>(0, k_sel - 1);
    for (arma::uword i = 0; i < k_sel; ++i)
    {
        double lam = basis.eigenvalues(i);
        // c_i = log2(lambda_i - 1) + x / ln 2; the budget is met exactly.
        alloc.rates(i) = std::log2(lam - 1.0) + x / ln2;
        alloc.noise_diag(i) = mu / (1.0 - 1.0 / lam - mu);
    }

    out.alloc = std::move(alloc);
    out.marginal_value = mu;
    return out;
}

slope_profile describe_slopes(const gen_eig_system &basis, const rank_profile &ranks)
{
    arma::uword r = basis.dim();
    slope_profile out;
    out.critical_budgets.set_size(r);
    out.marginal_values.set_size(r);
    out.n_never_active = 0;
    out.n_deterministic = ranks.deterministic_components();

    for (arma::uword i = 0; i < r; ++i)
    {
        double lam_i = basis.eigenvalues(i);
        if (lam_i <= 1.0)
        {
            out.critical_budgets(i) = inf;
            out.marginal_values(i) = 0.0;
            ++out.n_never_active;
            continue;
        }
        double budget = 0.0;
        for (arma::uword j = 0; j < i; ++j)
            budget += std::log2(basis.eigenvalues(j) - 1.0) - std::log2(lam_i - 1.0);
        out.critical_budgets(i) = budget;
        out.marginal_values(i) = 1.0 - 1.0 / lam_i;
    }
    return out;
}

quant_allocation constant_gap_allocation(const channel_realization &ch,
                                         const arma::cx_mat &S_X)
{
    gen_eig_system basis = description_basis(ch, S_X);
    arma::uword r = basis.dim();

    quant_allocation alloc;
    alloc.mu = std::numeric_limits<double>::quiet_NaN(); // not a single-multiplier point
    alloc.rates.zeros(r);
    alloc.noise_diag.set_size(r);
    alloc.noise_diag.fill(inf);

    std::vector<arma::uword> act;
    for (arma::uword i = 0; i < r; ++i)
    {
        double lam = basis.eigenvalues(i);
        // Components numerically indistinguishable from reversely degraded
        // (lambda = 1) stay undescribed: they would carry O(tol) bits while
        // lambda / (lambda - 1) blows up the quantizer noise spread.
        if (lam <= 1.0 + 1e-9)
            continue;
        act.push_back(i);
        alloc.noise_diag(i) = lam / (lam - 1.0);
        alloc.rates(i) = std::log2(lam); // log2(1 + lambda / sigma_q)
    }
    alloc.active = arma::uvec(act);
    alloc.basis = std::move(basis);
    return alloc;
}

double iid_noise_for_budget(const channel_realization &ch, const arma::cx_mat &S_X,
                            double c0, double rel_tol)
{
    arma::cx_mat front(ch.H_SR.n_rows, ch.H_SR.n_rows, arma::fill::eye);
    return iid_noise_for_budget(ch, S_X, c0, front, rel_tol);
}

double iid_noise_for_budget(const channel_realization &ch, const arma::cx_mat &S_X,
                            double c0, const arma::cx_mat &front, double rel_tol)
{
    if (c0 < 0.0)
        throw std::invalid_argument("iid_noise_for_budget: c0 must be non-negative");
    if (front.n_cols != ch.H_SR.n_rows)
        throw std::invalid_argument("iid_noise_for_budget: front end must have r columns");
    if (front.n_rows == 0)
        throw std::invalid_argument("iid_noise_for_budget: front end must keep at least one row");
    if (c0 == 0.0)
        return inf;

    arma::cx_mat S_rel = relay_conditionals(ch, S_X).given_dest;
    arma::vec m = arma::eig_sym(hermitian_part(front * S_rel * front.t()));
    if (m.max() <= 0.0)
        throw std::domain_error("iid_noise_for_budget: described signal is identically zero");
    auto rate = [&m](double q) {
        double acc = 0.0;
        for (double mi : m)
            acc += std::log2(1.0 + mi / q);
        return acc;
    };

    // Budgets beyond ~900 bits per component drive q below the smallest
    // normal double; the scheme is then effectively lossless and the
    // smallest resolvable noise is returned (description rate < c0).
    constexpr double q_floor = 1e-290;
    if (rate(q_floor) <= c0)
        return q_floor;

    double lo = arma::mean(m), hi = lo;
    while (rate(lo) < c0)
        lo /= 16.0;
    while (rate(hi) > c0)
        hi *= 16.0;

    for (int it = 0; it < 500; ++it)
    {
        // Geometric midpoint, sqrt-of-factors so lo * hi cannot underflow.
        double mid = std::sqrt(lo) * std::sqrt(hi);
        double f = rate(mid);
        if (std::abs(f - c0) <= rel_tol * std::max(1.0, c0))
            return mid;
        (f > c0 ? lo : hi) = mid;
    }
    return std::sqrt(lo) * std::sqrt(hi);
}

} // namespace relaycf
