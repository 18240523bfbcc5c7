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

#include "relaycf/joint_opt.hpp"

#include <cmath>
#include <limits>

namespace relaycf
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

operating_point evaluate_point(const channel_realization &ch, const arma::cx_mat &S_X,
                               quant_allocation alloc)
{
    operating_point pt;
    pt.S_X = S_X;
    quantizer Q = alloc.make_quantizer();
    pt.objective = cf_objective(ch, S_X, Q);
    pt.description = cf_constraint(ch, S_X, Q);
    pt.alloc = std::move(alloc);
    return pt;
}

} // namespace

inner_ascent_result inner_coordinate_ascent(const channel_realization &ch, double mu,
                                            const joint_opt_options &opts,
                                            std::optional<arma::cx_mat> init)
{
    ch.validate();
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("inner_coordinate_ascent: mu must lie strictly between 0 and 1");

    arma::uword s = ch.H_SR.n_cols;
    arma::cx_mat S = init ? project_trace_psd(hermitian_part(*init), opts.input.power)
                          : arma::cx_mat(arma::cx_double(opts.input.power / double(s), 0.0) *
                                         arma::cx_mat(s, s, arma::fill::eye));

    inner_ascent_result out;
    double L_prev = -inf;
    quant_allocation alloc;

    for (out.iters = 1; out.iters <= opts.max_alternations; ++out.iters)
    {
        // Quantizer half-step: exact reverse water-filling at this input.
        alloc = quantizer_for_mu(ch, S, mu);
        quantizer Q = alloc.make_quantizer();
        double L_q = cf_objective(ch, S, Q) - mu * cf_constraint(ch, S, Q);
        out.trace.push_back(L_q);

        // Input half-step: concave maximization at this quantizer.
        input_opt_result ires = maximize_lagrangian_input(ch, Q, mu, opts.input, S);
        S = ires.S_X;
        out.input_residual = ires.residual;
        double L_x = cf_objective(ch, S, Q) - mu * cf_constraint(ch, S, Q);
        out.trace.push_back(L_x);

        if (std::isfinite(L_prev) &&
            L_x - L_prev <= opts.inner_rel_tol * std::max(1.0, std::abs(L_x)))
        {
            L_prev = L_x;
            break;
        }
        L_prev = L_x;
    }

    // Final quantizer refresh so the reported pair is mutually optimal.
    alloc = quantizer_for_mu(ch, S, mu);
    out.point = evaluate_point(ch, S, std::move(alloc));
    out.lagrangian = out.point.objective - mu * out.point.description;
    out.trace.push_back(out.lagrangian);
    return out;
}

namespace
{

joint_opt_result optimize_cf_single(const channel_realization &ch, double P, double c0,
                                    const joint_opt_options &opts)
{
    arma::uword s = ch.H_SR.n_cols;

    joint_opt_result out;
    out.c0 = c0;

    // No relay link: direct transmission with water-filling is exact.
    if (c0 == 0.0)
    {
        arma::cx_mat S = dest_opt_input(ch, P);
        if (arma::norm(S, "fro") == 0.0)
            S = arma::cx_mat(arma::cx_double(P / double(s), 0.0) *
                             arma::cx_mat(s, s, arma::fill::eye));
        budget_allocation ba = allocation_for_budget(description_basis(ch, S), 0.0);
        out.point = evaluate_point(ch, S, std::move(ba.alloc));
        out.rate = out.point.objective; // silent relay: equals I(X; Y_D)
        out.mu = ba.marginal_value;
        return out;
    }

    auto run_inner = [&](double mu, const arma::cx_mat &warm) {
        inner_ascent_result r = inner_coordinate_ascent(ch, mu, opts, warm);
        out.inner_iters += r.iters;
        return r;
    };

    arma::cx_mat warm = opts.init_S_X ? project_trace_psd(hermitian_part(*opts.init_S_X), P)
                                      : arma::cx_mat(arma::cx_double(P / double(s), 0.0) *
                                                     arma::cx_mat(s, s, arma::fill::eye));

    // Establish a multiplier bracket with the description rate straddling
    // the budget; the rate is non-increasing in mu.
    double mu_lo = opts.mu_lo, mu_hi = opts.mu_hi;

    inner_ascent_result at_lo = run_inner(mu_lo, warm);
    warm = at_lo.point.S_X;
    while (at_lo.point.description < c0 && mu_lo > 1e-12)
    {
        mu_lo = std::max(mu_lo * 1e-2, 1e-12);
        at_lo = run_inner(mu_lo, warm);
        warm = at_lo.point.S_X;
    }
    if (at_lo.point.description < c0)
    {
        // Budget slack even at a vanishing multiplier: the unconstrained
        // optimum is feasible and the link is effectively unlimited.
        out.point = at_lo.point;
        out.rate = cf_rate_minform(ch, out.point.S_X, out.point.alloc.make_quantizer(), c0);
        out.mu = mu_lo;
        out.kkt_residual = at_lo.input_residual;
        out.kkt_slack = mu_lo * std::abs(out.point.description - c0);
        out.lagrangian_trace = std::move(at_lo.trace);
        return out;
    }

    inner_ascent_result at_hi = run_inner(mu_hi, warm);
    while (at_hi.point.description > c0 && mu_hi < 1.0 - 1e-12)
    {
        mu_hi = 1.0 - std::max((1.0 - mu_hi) * 1e-2, 1e-12);
        at_hi = run_inner(mu_hi, at_hi.point.S_X);
    }
    if (at_hi.point.description > c0)
    {
        // Every multiplier overshoots the budget (c0 below the smallest
        // achievable description rate): time-share with relay silence.
        const operating_point &A = at_hi.point;
        double theta = c0 / A.description; // in (0, 1)
        operating_point B = A;
        B.alloc.active.reset();
        B.alloc.rates.zeros();
        B.alloc.noise_diag.fill(inf);
        B.objective = dest_only_rate(ch, A.S_X);
        B.description = 0.0;

        out.rate = theta * A.objective + (1.0 - theta) * B.objective;
        out.mu = mu_hi;
        out.point = A;
        out.timeshare = timeshare_point{A, std::move(B), theta};
        out.kkt_residual = at_hi.input_residual;
        return out;
    }

    // Bisection in the log-odds of mu, where the description rate is close
    // to affine (each active component contributes -log2(mu/(1-mu)) bits),
    // so multipliers near either end of (0, 1) resolve as fast as central
    // ones. Invariant: description(mu_lo) >= c0 >= description(mu_hi).
    auto logit = [](double m) { return std::log(m / (1.0 - m)); };
    double x_lo = logit(mu_lo), x_hi = logit(mu_hi);
    inner_ascent_result best = at_lo;
    while (x_hi - x_lo > opts.mu_interval_min)
    {
        ++out.outer_iters;
        double x = 0.5 * (x_lo + x_hi);
        double mu = 1.0 / (1.0 + std::exp(-x));
        inner_ascent_result mid = run_inner(mu, warm);
        warm = mid.point.S_X;

        double gap = mid.point.description - c0;
        if (std::abs(gap) <= opts.budget_rel_tol * std::max(1.0, c0))
        {
            out.point = mid.point;
            out.rate = cf_rate_minform(ch, out.point.S_X, out.point.alloc.make_quantizer(), c0);
            out.mu = mu;
            out.kkt_residual = mid.input_residual;
            out.kkt_slack = mu * std::abs(gap);
            out.lagrangian_trace = std::move(mid.trace);
            return out;
        }
        if (gap > 0.0)
        {
            x_lo = x;
            at_lo = mid;
        }
        else
        {
            x_hi = x;
            at_hi = mid;
        }
        best = mid;
    }
    mu_lo = 1.0 / (1.0 + std::exp(-x_lo));
    mu_hi = 1.0 / (1.0 + std::exp(-x_hi));

    // Bracket exhausted without meeting the budget: either accept the
    // closer endpoint or time-share across the jump.
    double gap_lo = at_lo.point.description - c0; // >= 0
    double gap_hi = c0 - at_hi.point.description; // >= 0
    out.mu = 0.5 * (mu_lo + mu_hi);
    out.kkt_residual = best.input_residual;
    out.lagrangian_trace = std::move(best.trace);

    if (std::min(gap_lo, gap_hi) <= opts.timeshare_rel_gap * std::max(1.0, c0))
    {
        const inner_ascent_result &pick = gap_lo <= gap_hi ? at_lo : at_hi;
        out.point = pick.point;
        out.rate = cf_rate_minform(ch, out.point.S_X, out.point.alloc.make_quantizer(), c0);
        out.kkt_slack = out.mu * std::min(gap_lo, gap_hi);
        return out;
    }

    double span = at_lo.point.description - at_hi.point.description;
    double theta = (c0 - at_hi.point.description) / span; // weight on the low side
    out.rate = theta * at_lo.point.objective + (1.0 - theta) * at_hi.point.objective;
    out.point = at_lo.point;
    out.timeshare = timeshare_point{at_lo.point, at_hi.point, theta};
    return out;
}

} // namespace

joint_opt_result optimize_cf(const channel_realization &ch, double P, double c0,
                             const joint_opt_options &opts)
{
    ch.validate();
    if (!(P > 0.0))
        throw std::invalid_argument("optimize_cf: power budget must be positive");
    if (std::isnan(c0) || c0 < 0.0 || std::isinf(c0))
        throw std::invalid_argument("optimize_cf: c0 must be finite and non-negative");

    joint_opt_options base = opts;
    base.input.power = P;

    joint_opt_result result = optimize_cf_single(ch, P, c0, base);

    // Optional random restarts as a hedge against alternation stalls; the
    // subproblems are globally solved but the joint landscape is not
    // proven unimodal.
    if (opts.multi_starts > 0)
    {
        arma::uword s = ch.H_SR.n_cols;
        for (int k = 0; k < opts.multi_starts; ++k)
        {
            arma::arma_rng::set_seed(opts.restart_seed + arma::uword(k));
            arma::cx_mat Z(s, s, arma::fill::randn);
            joint_opt_options o = base;
            o.init_S_X = project_trace_psd(hermitian_part(Z * Z.t()), P);
            joint_opt_result alt = optimize_cf_single(ch, P, c0, o);
            int iters = result.inner_iters + alt.inner_iters;
            if (alt.rate > result.rate)
                result = std::move(alt);
            result.inner_iters = iters;
        }
    }
    return result;
}

std::vector<joint_opt_result> rate_curve(const channel_realization &ch, double P,
                                         const std::vector<double> &c0_grid,
                                         const joint_opt_options &opts)
{
    for (std::size_t i = 0; i < c0_grid.size(); ++i)
        if (c0_grid[i] < 0.0 || (i > 0 && c0_grid[i] < c0_grid[i - 1]))
            throw std::invalid_argument("rate_curve: budgets must be non-negative and ascending");

    std::vector<joint_opt_result> out;
    out.reserve(c0_grid.size());

    joint_opt_options o = opts;
    for (std::size_t i = 0; i < c0_grid.size(); ++i)
    {
        joint_opt_result res = optimize_cf(ch, P, c0_grid[i], o);

        // A point feasible at the previous budget is feasible here, so a
        // rate drop can only be an optimizer artifact: keep the better
        // previous point instead.
        if (i > 0 && res.rate < out.back().rate)
        {
            res.rate = out.back().rate;
            res.point = out.back().point;
            res.mu = out.back().mu;
            res.timeshare = out.back().timeshare;
        }

        o.init_S_X = res.point.S_X;
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace relaycf
