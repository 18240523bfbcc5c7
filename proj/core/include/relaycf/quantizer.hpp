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

#ifndef relaycf_quantizer_H
#define relaycf_quantizer_H

#include <armadillo>

#include "relaycf/channel.hpp"
#include "relaycf/hermitian.hpp"

// Gaussian test channel for the relay's compressed description. The relay
// conveys V = front * Y_R + Q with Q ~ CN(0, noise), independent of
// everything else. Components the optimum would assign infinite
// quantization noise are not carried as infinities: they are removed from
// the description, so front has one row per component actually described.
// front = I with noise = S_Q recovers a plain additive quantization model.

namespace relaycf
{

struct quantizer
{
    arma::cx_mat front; // k x r linear front end applied to the relay input
    arma::cx_mat noise; // k x k Hermitian PSD quantization noise covariance

    arma::uword out_dim() const { return front.n_rows; }
    arma::uword in_dim() const { return front.n_cols; }

    // Dimension checks plus Hermitian PSD noise. Throws std::invalid_argument.
    void validate() const;

    // front = I_r, additive noise S_Q.
    static quantizer dense(arma::cx_mat S_Q);

    // front = I_r, noise = q I_r; the white benchmark scheme.
    static quantizer iid(double q, arma::uword r);

    // Empty description (k = 0): the relay stays silent.
    static quantizer silent(arma::uword r);

    // front = I_r, noise = 0: lossless forwarding. Description-rate
    // functionals diverge for this quantizer; observation-rate ones are
    // finite and model a relay with an unconstrained bit pipe.
    static quantizer perfect(arma::uword r);
};

// Per-component description allocation in the eigenbasis that jointly
// diagonalizes the relay's two conditional covariances.
//
// With C the congruence transform and lambda the generalized eigenvalues,
// the transformed relay observation has independent components with power
// lambda_i given the destination's signal and power 1 given destination
// and input both. Componentwise quantization with noise sigma_q(i) costs
//   c_i = log2(1 + lambda_i / sigma_q(i))
// description bits; all closed forms below live in this basis.
struct quant_allocation
{
    gen_eig_system basis;   // from simdiag of the two conditionals
    arma::uvec active;      // indices (into basis order) with finite noise
    arma::vec rates;        // description bits per component, 0 if inactive
    arma::vec noise_diag;   // sigma_q per component, +inf if inactive
    double mu = 0.0;        // Lagrange multiplier the allocation solves for

    double total_rate() const { return arma::accu(rates); }

    // Materializes the allocation: front = active rows of C', noise =
    // diag(sigma_q restricted to active components).
    quantizer make_quantizer() const;

    // Dense r x r quantization noise covariance, defined only when every
    // component is active (throws std::domain_error otherwise): maps the
    // diagonal allocation back through the congruence transform.
    arma::cx_mat dense_noise() const;
};

// Jointly diagonalizing basis of (cov given dest+input, cov given dest)
// for the channel at input covariance S_X. Eigenvalues are the per-
// component ratios of what the relay adds over what the destination
// already has; 1 means the component is useless to describe.
gen_eig_system description_basis(const channel_realization &ch, const arma::cx_mat &S_X);

// Optimal allocation for the Lagrangian  I(X; V, Y_D) - mu * c_total at
// fixed S_X. Requires 0 < mu < 1. Componentwise reverse water-filling:
//   active iff mu < 1 - 1/lambda_i,
//   c_i = log2(lambda_i - 1) - log2(mu / (1 - mu)),
//   sigma_q(i) = mu / (1 - 1/lambda_i - mu).
quant_allocation quantizer_for_mu(const channel_realization &ch,
                                  const arma::cx_mat &S_X, double mu);

// Same reverse water-filling, solved for a total description budget c0
// instead of a multiplier. Returns the allocation together with the
// marginal value of description bits (d rate / d c0), which equals the
// multiplier mu(c0). At c0 = 0 the allocation is empty and the marginal
// value is 1 - 1/lambda_1. Requires c0 >= 0.
struct budget_allocation
{
    quant_allocation alloc;
    double marginal_value = 0.0;
};
budget_allocation allocation_for_budget(const gen_eig_system &basis, double c0);

// Critical description budgets at which each component joins the active
// set, and the marginal values there.
struct slope_profile
{
    arma::vec critical_budgets;   // entry i: budget where component i activates;
                                  // +inf for components with lambda_i = 1
    arma::vec marginal_values;    // 1 - 1/lambda_i at those budgets
    arma::uword n_never_active;   // components with lambda_i = 1 (the relay
                                  // adds nothing the destination lacks)
    arma::uword n_deterministic;  // components whose lambda diverges as
                                  // sigma2 -> 0; from the rank profile
};
slope_profile describe_slopes(const gen_eig_system &basis, const rank_profile &ranks);

// One-shot allocation with sigma_q(i) = lambda_i / (lambda_i - 1) on all
// components with lambda_i > 1. Its description rate is within one bit per
// active component of what that quantizer delivers, uniformly over the
// channel; the workhorse for constant-gap arguments.
quant_allocation constant_gap_allocation(const channel_realization &ch,
                                         const arma::cx_mat &S_X);

// White-noise benchmark: finds q such that the description rate of
// quantizer::iid(q, r) equals c0 at the given input covariance. Monotone
// bisection; exact within rel_tol. c0 = 0 returns +inf. Budgets too large
// to resolve in double precision return the smallest resolvable q, with a
// description rate below c0.
double iid_noise_for_budget(const channel_realization &ch, const arma::cx_mat &S_X,
                            double c0, double rel_tol = 1e-12);

// Same matching for a quantizer with a fixed linear front end (k x r) and
// white noise q I_k on the described components.
double iid_noise_for_budget(const channel_realization &ch, const arma::cx_mat &S_X,
                            double c0, const arma::cx_mat &front, double rel_tol = 1e-12);

} // namespace relaycf

#endif
