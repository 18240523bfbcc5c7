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

#include "relaycf/hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace relaycf
{

bool is_hermitian(const arma::cx_mat &M, double rel_tol)
{
    if (!M.is_square())
        return false;
    if (M.n_elem == 0)
        return true;
    double scale = arma::abs(M).max();
    if (scale == 0.0)
        return true;
    double dev = arma::abs(M - M.t()).max();
    return dev <= rel_tol * scale * 2.0;
}

arma::cx_mat hermitian_part(const arma::cx_mat &M)
{
    return 0.5 * (M + M.t());
}

bool is_psd(const arma::cx_mat &M, double rel_slack)
{
    if (!is_hermitian(M))
        return false;
    if (M.n_elem == 0)
        return true;
    arma::vec ev = arma::eig_sym(hermitian_part(M));
    double scale = std::max(std::abs(ev.min()), std::abs(ev.max()));
    if (scale == 0.0)
        return true;
    return ev.min() >= -rel_slack * scale;
}

double logdet2_pd(const arma::cx_mat &M)
{
    if (!is_hermitian(M))
        throw std::invalid_argument("logdet2_pd: matrix is not Hermitian");
    if (M.n_elem == 0)
        return 0.0;

    arma::cx_mat L;
    if (arma::chol(L, hermitian_part(M), "lower"))
    {
        double acc = 0.0;
        for (arma::uword i = 0; i < L.n_rows; ++i)
            acc += std::log2(std::real(L(i, i)));
        return 2.0 * acc;
    }

    // Cholesky can fail on ill-conditioned but still PD inputs; retry with
    // an eigensolve before declaring the matrix singular.
    arma::vec ev = arma::eig_sym(hermitian_part(M));
    if (ev.min() <= 0.0)
        throw std::domain_error("logdet2_pd: matrix is not positive definite");
    return arma::accu(arma::log2(ev));
}

arma::cx_mat pinv_psd(const arma::cx_mat &M, double rel_tol)
{
    if (!is_hermitian(M))
        throw std::invalid_argument("pinv_psd: matrix is not Hermitian");
    if (M.n_elem == 0)
        return M;

    arma::vec ev;
    arma::cx_mat V;
    arma::eig_sym(ev, V, hermitian_part(M));

    double cutoff = rel_tol * std::max(std::abs(ev.min()), std::abs(ev.max()));
    arma::vec inv_ev(ev.n_elem, arma::fill::zeros);
    for (arma::uword i = 0; i < ev.n_elem; ++i)
        if (ev(i) > cutoff)
            inv_ev(i) = 1.0 / ev(i);

    return hermitian_part(V * arma::diagmat(inv_ev) * V.t());
}

arma::cx_mat pd_inverse(const arma::cx_mat &M)
{
    arma::cx_mat R;
    if (arma::inv_sympd(R, hermitian_part(M)))
        return R;
    return pinv_psd(M); // near-singular fallback
}

arma::cx_mat psd_sqrt(const arma::cx_mat &M)
{
    if (!is_hermitian(M))
        throw std::invalid_argument("psd_sqrt: matrix is not Hermitian");
    if (M.n_elem == 0)
        return M;

    arma::vec ev;
    arma::cx_mat V;
    arma::eig_sym(ev, V, hermitian_part(M));
    ev.transform([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
    return hermitian_part(V * arma::diagmat(ev) * V.t());
}

arma::cx_mat conditional_covariance(const arma::cx_mat &joint, arma::uword block_dim)
{
    if (!is_hermitian(joint))
        throw std::invalid_argument("conditional_covariance: joint covariance is not Hermitian");
    if (block_dim > joint.n_rows)
        throw std::invalid_argument("conditional_covariance: block dimension exceeds matrix size");
    if (!is_psd(joint))
        throw std::invalid_argument("conditional_covariance: joint covariance is indefinite");

    arma::uword n = joint.n_rows;
    if (block_dim == 0)
        return arma::cx_mat(0, 0);
    if (block_dim == n)
        return hermitian_part(joint);

    arma::cx_mat S_U = joint.submat(0, 0, block_dim - 1, block_dim - 1);
    arma::cx_mat S_UV = joint.submat(0, block_dim, block_dim - 1, n - 1);
    arma::cx_mat S_V = joint.submat(block_dim, block_dim, n - 1, n - 1);

    return hermitian_part(S_U - S_UV * pinv_psd(S_V) * S_UV.t());
}

gen_eig_system simdiag_congruence(const arma::cx_mat &A, const arma::cx_mat &B)
{
    if (!is_hermitian(A) || !is_hermitian(B))
        throw std::invalid_argument("simdiag_congruence: inputs must be Hermitian");
    if (A.n_rows != B.n_rows)
        throw std::invalid_argument("simdiag_congruence: dimension mismatch");

    arma::cx_mat Ah = hermitian_part(A);
    arma::cx_mat Bh = hermitian_part(B);

    arma::vec evA = arma::eig_sym(Ah);
    if (evA.min() <= herm_sym_tol * std::max(evA.max(), 0.0) || evA.max() <= 0.0)
        throw std::domain_error("simdiag_congruence: first matrix is numerically singular");

    // Loewner ordering B >= A, allowing a small relative slack for
    // round-off in upstream Schur complements.
    arma::vec evD = arma::eig_sym(Bh - Ah);
    double scale = std::max(std::abs(arma::eig_sym(Bh).max()), evA.max());
    if (evD.min() < -herm_null_tol * scale)
        throw std::invalid_argument("simdiag_congruence: second matrix is not >= the first");

    // Whiten A, then diagonalize the whitened B with a unitary eigenbasis.
    // C = inv(L)' V satisfies C' A C = I and C' B C = diag(lambda).
    arma::cx_mat L;
    if (!arma::chol(L, Ah, "lower"))
        throw std::domain_error("simdiag_congruence: Cholesky factorization failed");

    arma::cx_mat X = arma::solve(arma::trimatl(L), Bh);
    arma::cx_mat W = hermitian_part(arma::solve(arma::trimatl(L), X.t()));

    arma::vec ev;
    arma::cx_mat V;
    arma::eig_sym(ev, V, W);

    // eig_sym returns ascending order; flip to descending.
    ev = arma::reverse(ev);
    V = arma::fliplr(V);
    ev.transform([](double x) { return std::max(x, 1.0); });

    gen_eig_system out;
    out.transform = arma::solve(arma::trimatu(L.t()), V);
    out.eigenvalues = ev;
    return out;
}

arma::uword numeric_rank(const arma::cx_mat &M, double rel_tol)
{
    if (!is_hermitian(M))
        throw std::invalid_argument("numeric_rank: matrix is not Hermitian");
    if (M.n_elem == 0)
        return 0;

    arma::vec ev = arma::abs(arma::eig_sym(hermitian_part(M)));
    double cutoff = rel_tol * ev.max();
    return arma::accu(ev > cutoff);
}

arma::cx_mat project_trace_psd(const arma::cx_mat &M, double budget)
{
    if (!is_hermitian(M))
        throw std::invalid_argument("project_trace_psd: matrix is not Hermitian");
    if (budget < 0.0)
        throw std::invalid_argument("project_trace_psd: trace budget must be non-negative");
    if (M.n_elem == 0)
        return M;

    arma::vec ev;
    arma::cx_mat V;
    arma::eig_sym(ev, V, hermitian_part(M));

    arma::vec clipped = arma::clamp(ev, 0.0, arma::datum::inf);
    if (arma::accu(clipped) > budget)
    {
        // Projection onto the simplex {x >= 0, sum x = budget} along the
        // eigenvalue vector: subtract the level tau with re-clipping.
        arma::vec srt = arma::sort(ev, "descend");
        double tau = 0.0, cum = 0.0;
        for (arma::uword k = 0; k < srt.n_elem; ++k)
        {
            cum += srt(k);
            double cand = (cum - budget) / double(k + 1);
            if (k + 1 == srt.n_elem || srt(k + 1) <= cand)
            {
                tau = cand;
                break;
            }
        }
        clipped = arma::clamp(ev - tau, 0.0, arma::datum::inf);
    }

    return hermitian_part(V * arma::diagmat(clipped) * V.t());
}

} // namespace relaycf
