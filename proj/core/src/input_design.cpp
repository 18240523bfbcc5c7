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

#include "relaycf/input_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaycf
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

// Real inner product on Hermitian matrices.
double hdot(const arma::cx_mat &A, const arma::cx_mat &B)
{
    return std::real(arma::accu(arma::conj(A) % B));
}

} // namespace

arma::cx_mat waterfilling_input(const arma::cx_mat &H, const arma::cx_mat &N, double P)
{
    if (!(P > 0.0))
        throw std::invalid_argument("waterfilling_input: power budget must be positive");
    if (N.n_rows != H.n_rows || N.n_cols != H.n_rows)
        throw std::invalid_argument("waterfilling_input: noise covariance must match receive dimension");

    arma::uword s = H.n_cols;

    // Whiten the noise, then allocate over the right singular basis.
    arma::vec nev;
    arma::cx_mat nV;
    arma::eig_sym(nev, nV, hermitian_part(N));
    if (nev.min() <= 0.0)
        throw std::domain_error("waterfilling_input: noise covariance must be positive definite");
    arma::cx_mat W = nV * arma::diagmat(1.0 / arma::sqrt(nev)) * nV.t();

    arma::cx_mat U, V;
    arma::vec sv;
    if (!arma::svd(U, sv, V, W * H))
        throw std::domain_error("waterfilling_input: SVD failed");

    arma::vec gains(s, arma::fill::zeros);
    for (arma::uword i = 0; i < sv.n_elem && i < s; ++i)
        gains(i) = sv(i) * sv(i);

    if (gains.max() <= 0.0)
        return arma::cx_mat(s, s, arma::fill::zeros); // dead channel needs no power

    // Water level over the k strongest modes; pick the largest k for which
    // every kept mode stays above water.
    arma::vec p(s, arma::fill::zeros);
    for (arma::uword k = gains.n_elem; k >= 1; --k)
    {
        if (gains(k - 1) <= 0.0)
            continue;
        double inv_sum = 0.0;
        for (arma::uword i = 0; i < k; ++i)
            inv_sum += 1.0 / gains(i);
        double level = (P + inv_sum) / double(k);
        if (level > 1.0 / gains(k - 1))
        {
            for (arma::uword i = 0; i < k; ++i)
                p(i) = level - 1.0 / gains(i);
            break;
        }
    }

    return hermitian_part(V * arma::diagmat(arma::conv_to<arma::cx_vec>::from(p)) * V.t());
}

arma::cx_mat dest_opt_input(const channel_realization &ch, double P)
{
    ch.validate();
    return waterfilling_input(ch.H_SD, dest_noise_covariance(ch), P);
}

input_opt_result maximize_lagrangian_input(const channel_realization &ch,
                                           const quantizer &Q, double mu,
                                           const input_opt_config &cfg,
                                           std::optional<arma::cx_mat> init)
{
    ch.validate();
    Q.validate();
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("maximize_lagrangian_input: mu must lie strictly between 0 and 1");
    if (!(cfg.power > 0.0))
        throw std::invalid_argument("maximize_lagrangian_input: power budget must be positive");

    arma::uword s = ch.H_SR.n_cols;
    if (init && (init->n_rows != s || init->n_cols != s))
        throw std::invalid_argument("maximize_lagrangian_input: initial point must be s x s");
    stacked_observation m = stack_with_quantizer(ch, Q);
    arma::cx_mat N_D = dest_noise_covariance(ch);
    // With this constant, value(S) is exactly I(X;V,Y_D) - mu * I(Y_R;V|Y_D):
    // the noise-only part of the description cost,
    // logdet(N_V) - logdet(N_D) - logdet(S_Q), does not depend on S and
    // folds into the base term. Singular quantizer noise (a lossless
    // observation) makes that cost infinite; the term is dropped and
    // value(S) is then the weighted pair of cuts itself, whose maximizer
    // is what cut-set evaluation consumes.
    double base = logdet2_pd(m.N_V);
    if (Q.out_dim() > 0)
    {
        arma::vec ev = arma::eig_sym(hermitian_part(Q.noise));
        if (ev.min() > herm_null_tol * std::max(ev.max(), 0.0))
            base -= mu * logdet2_pd(hermitian_part(Q.noise));
    }

    auto value = [&](const arma::cx_mat &S) {
        double full = logdet2_pd(hermitian_part(m.G * S * m.G.t()) + m.N_V);
        double dest = logdet2_pd(hermitian_part(ch.H_SD * S * ch.H_SD.t()) + N_D);
        return (1.0 - mu) * full + mu * dest - base;
    };
    auto gradient = [&](const arma::cx_mat &S) {
        arma::cx_mat Mf = pd_inverse(hermitian_part(m.G * S * m.G.t()) + m.N_V);
        arma::cx_mat Md = pd_inverse(hermitian_part(ch.H_SD * S * ch.H_SD.t()) + N_D);
        arma::cx_mat g = (1.0 - mu) * (m.G.t() * Mf * m.G) + mu * (ch.H_SD.t() * Md * ch.H_SD);
        return hermitian_part(g / std::log(2.0));
    };

    arma::cx_mat S = init ? project_trace_psd(hermitian_part(*init), cfg.power)
                          : arma::cx_mat(arma::cx_double(cfg.power / double(s), 0.0) *
                                         arma::cx_mat(s, s, arma::fill::eye));

    input_opt_result out;
    out.S_X = S;
    out.lagrangian = value(S);
    out.trace.push_back(out.lagrangian);

    double step = cfg.step_init;
    bool stalled = false;
    arma::cx_mat S_prev, g_prev;

    for (out.iters = 0; out.iters < cfg.max_iters; ++out.iters)
    {
        arma::cx_mat g = gradient(S);
        out.residual = arma::norm(S - project_trace_psd(S + g, cfg.power), "fro");
        if (out.residual <= cfg.grad_tol * cfg.power)
            break;

        // Spectral (Barzilai-Borwein) trial step: matches the inverse
        // curvature along the last move. Plain gradient steps need a
        // number of iterations proportional to the conditioning, which is
        // prohibitive at the SNRs cellular scenarios produce.
        if (!S_prev.is_empty())
        {
            arma::cx_mat ds = S - S_prev;
            arma::cx_mat dy = g - g_prev;
            double curv = -hdot(ds, dy); // >= 0 along a concave objective
            double nrm = hdot(ds, ds);
            if (curv > 0.0 && nrm > 0.0)
                step = std::clamp(nrm / curv, 1e-12, 1e8);
        }
        S_prev = S;
        g_prev = g;

        // Armijo backtracking on the projected step.
        double L = out.lagrangian;
        arma::cx_mat S_next;
        double L_next = L;
        bool accepted = false;
        while (step > 1e-18)
        {
            S_next = project_trace_psd(S + step * g, cfg.power);
            L_next = value(S_next);
            if (L_next >= L + cfg.armijo * hdot(g, S_next - S))
            {
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
        }
        if (!accepted)
        {
            stalled = true;
            break;
        }

        S = S_next;
        out.S_X = S;
        out.lagrangian = L_next;
        out.trace.push_back(L_next);
        step = std::min(step / cfg.backtrack, 1e6); // let the step recover
    }

    if (out.residual > cfg.grad_tol * cfg.power)
    {
        // A step-size stall at machine precision, or iteration exhaustion
        // within two decades of the target, is convergence in all but
        // name; a large residual is not.
        double slack = stalled ? std::sqrt(cfg.grad_tol) : 100.0 * cfg.grad_tol;
        if (out.residual > slack * cfg.power)
            throw convergence_error("maximize_lagrangian_input: no convergence within iteration budget",
                                    S, out.residual);
        if (stalled)
            out.flat_directions = true;
    }

    // Cheap non-uniqueness probe: a sizable feasible move that costs no
    // objective indicates a flat ridge at the maximum.
    if (s > 1)
    {
        arma::cx_mat T(s, s, arma::fill::zeros);
        T(0, s - 1) = arma::cx_double(1.0, 1.0);
        T = hermitian_part(T);
        arma::cx_mat S_probe = project_trace_psd(S + 0.05 * cfg.power * T, cfg.power);
        if (arma::norm(S_probe - S, "fro") >= 1e-3 * cfg.power &&
            value(S_probe) >= out.lagrangian - 1e-9 * std::max(1.0, std::abs(out.lagrangian)))
            out.flat_directions = true;
    }

    return out;
}

cutset_result cutset_bound(const channel_realization &ch, double P, double c0,
                           const input_opt_config &cfg_in)
{
    ch.validate();
    if (!(P > 0.0))
        throw std::invalid_argument("cutset_bound: power budget must be positive");
    if (std::isnan(c0) || c0 < 0.0)
        throw std::invalid_argument("cutset_bound: c0 must be non-negative");

    input_opt_config cfg = cfg_in;
    cfg.power = P;

    arma::uword r = ch.H_SR.n_rows;
    quantizer lossless = quantizer::perfect(r);

    // Direct cut never exceeds the full cut at the same input, so at c0 = 0
    // the bound is plain direct transmission; solvable in closed form.
    if (c0 == 0.0)
    {
        cutset_result out;
        out.S_X = dest_opt_input(ch, P);
        out.value = dest_only_rate(ch, out.S_X);
        out.bracketed = false;
        return out;
    }

    auto maximize_at = [&](double w, std::optional<arma::cx_mat> warm) {
        double mu = std::clamp(1.0 - w, 1e-9, 1.0 - 1e-9);
        return maximize_lagrangian_input(ch, lossless, mu, cfg, std::move(warm));
    };
    auto full_cut = [&](const arma::cx_mat &S) { return cf_objective(ch, S, lossless); };
    auto direct_cut = [&](const arma::cx_mat &S) { return dest_only_rate(ch, S) + c0; };

    cutset_result out;

    // Full-cut endpoint: if the direct cut is slack at the full cut's own
    // maximizer, the bound equals the full cut's optimum.
    input_opt_result hi = maximize_at(1.0, std::nullopt);
    double full_hi = full_cut(hi.S_X);
    if (std::isinf(c0) || direct_cut(hi.S_X) >= full_hi)
    {
        out.value = full_hi;
        out.S_X = hi.S_X;
        out.bracketed = false;
        return out;
    }

    // Direct-cut endpoint, same reasoning.
    input_opt_result lo = maximize_at(0.0, hi.S_X);
    double direct_lo = direct_cut(lo.S_X);
    if (full_cut(lo.S_X) >= direct_lo)
    {
        out.value = direct_lo;
        out.S_X = lo.S_X;
        out.bracketed = false;
        return out;
    }

    // Both cuts bind somewhere inside: bisect the weight on the signed
    // cut difference, which changes sign across the crossing.
    double w_lo = 0.0, w_hi = 1.0;
    arma::cx_mat warm = lo.S_X;
    out.value = -inf;

    for (out.outer_iters = 0; out.outer_iters < 80; ++out.outer_iters)
    {
        double w = 0.5 * (w_lo + w_hi);
        input_opt_result res = maximize_at(w, warm);
        warm = res.S_X;

        double f = full_cut(res.S_X), g = direct_cut(res.S_X);
        double lower = std::min(f, g);
        if (lower > out.value)
        {
            out.value = lower;
            out.S_X = res.S_X;
        }

        double diff = f - g;
        if (std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(lower)) || w_hi - w_lo < 1e-12)
            break;
        (diff > 0.0 ? w_hi : w_lo) = w;
    }

    out.bracketed = true;
    return out;
}

} // namespace relaycf
