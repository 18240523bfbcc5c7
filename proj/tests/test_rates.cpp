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

#include <cmath>
#include <limits>

#include <catch2/catch_amalgamated.hpp>

#include "relaycf/rates.hpp"
#include "test_util.hpp"

using namespace relaycf;
using Catch::Matchers::WithinAbs;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

// Unit-gain scalar link, sigma2 = 1, P = 2, additive quantization noise 1.
// Hand-computed:
//   S_V = 4, S_YD = 3, cross = 2
//   I(X; V, Y_D)      = log2((4*3 - 4) / (2*1))    = 2
//   I(X; Y_D)         = log2(3)
//   I(Y_R; V | Y_D)   = log2((4 - 4/3) / 1)        = log2(8/3)
//   I(Y_R; V | Y_D,X) = log2((1 + 1) / 1)          = 1
struct scalar_case
{
    channel_realization ch = testutil::scalar_channel(1.0, 1.0, 1.0);
    arma::cx_mat S_X = testutil::scaled_identity(1, 2.0);
    quantizer Q = quantizer::iid(1.0, 1);
};

} // namespace

TEST_CASE("scalar rate functionals match hand-computed values")
{
    scalar_case c;
    CHECK_THAT(cf_objective(c.ch, c.S_X, c.Q), WithinAbs(2.0, 1e-12));
    CHECK_THAT(dest_only_rate(c.ch, c.S_X), WithinAbs(std::log2(3.0), 1e-12));
    CHECK_THAT(cf_constraint(c.ch, c.S_X, c.Q), WithinAbs(std::log2(8.0 / 3.0), 1e-12));
    CHECK_THAT(cf_constraint_joint(c.ch, c.S_X, c.Q), WithinAbs(std::log2(8.0 / 3.0), 1e-12));
    CHECK_THAT(relay_private_rate(c.ch, c.S_X, c.Q), WithinAbs(1.0, 1e-12));
}

TEST_CASE("minform switches branch exactly where the budget binds")
{
    scalar_case c;
    double f_c = std::log2(8.0 / 3.0);

    // Ample budget: the decoding branch binds.
    CHECK_THAT(cf_rate_minform(c.ch, c.S_X, c.Q, 10.0), WithinAbs(2.0, 1e-12));

    // Exactly at the description rate the two branches coincide.
    CHECK_THAT(cf_rate_minform(c.ch, c.S_X, c.Q, f_c), WithinAbs(2.0, 1e-12));

    // Undershooting the description rate costs exactly the shortfall.
    CHECK_THAT(cf_rate_minform(c.ch, c.S_X, c.Q, f_c - 0.25),
               WithinAbs(2.0 - 0.25, 1e-12));
}

TEST_CASE("the two description-rate routes agree on random channels")
{
    for (arma::uword rep = 0; rep < 30; ++rep)
    {
        antenna_profile p{1 + rep % 3, 1 + (rep / 2) % 3, 1 + rep % 4, rep % 5};
        channel_realization ch = random_channel(p, 0.2 + 0.1 * double(rep % 7), 900 + rep);
        arma::cx_mat S_X = testutil::scaled_identity(p.s, 1.0 / double(p.s));

        quantizer q1 = quantizer::iid(0.3 + 0.2 * double(rep % 4), p.r);
        CHECK_THAT(cf_constraint(ch, S_X, q1),
                   WithinAbs(cf_constraint_joint(ch, S_X, q1), 1e-9));

        quantizer q2 = allocation_for_budget(description_basis(ch, S_X), 2.5).alloc.make_quantizer();
        CHECK_THAT(cf_constraint(ch, S_X, q2),
                   WithinAbs(cf_constraint_joint(ch, S_X, q2), 1e-9));
    }
}

TEST_CASE("rate routes stay consistent at very small thermal noise")
{
    channel_realization ch = random_channel(antenna_profile{2, 2, 2, 2}, 1e-9, 31);
    arma::cx_mat S_X = testutil::scaled_identity(2, 0.5);
    quantizer q = allocation_for_budget(description_basis(ch, S_X), 4.0).alloc.make_quantizer();
    CHECK_THAT(cf_constraint(ch, S_X, q), WithinAbs(cf_constraint_joint(ch, S_X, q), 1e-6));
    CHECK_THAT(cf_constraint(ch, S_X, q), WithinAbs(4.0, 1e-6));
}

TEST_CASE("stacked observation matches an independent block assembly")
{
    channel_realization ch = random_channel(antenna_profile{2, 2, 2, 2}, 0.4, 17);
    arma::cx_mat S_X = testutil::random_hpd(2);
    S_X *= 1.0 / arma::trace(S_X).real();

    arma::cx_mat F(1, 2, arma::fill::zeros);
    F(0, 0) = {0.8, -0.1};
    F(0, 1) = {0.2, 0.5};
    arma::cx_mat N_Q = testutil::scaled_identity(1, 0.3);
    quantizer Q{F, N_Q};

    stacked_observation so = stack_with_quantizer(ch, Q);

    arma::cx_mat S_int = interference_covariance(ch);
    arma::cx_mat RR = S_int.submat(0, 0, 1, 1) + 0.4 * arma::cx_mat(2, 2, arma::fill::eye);
    arma::cx_mat RD = S_int.submat(0, 2, 1, 3);
    arma::cx_mat DD = S_int.submat(2, 2, 3, 3) + 0.4 * arma::cx_mat(2, 2, arma::fill::eye);

    arma::cx_mat G_ref = arma::join_cols(F * ch.H_SR, ch.H_SD);
    arma::cx_mat N_ref = arma::join_cols(
        arma::join_rows(F * RR * F.t() + N_Q, F * RD),
        arma::join_rows(RD.t() * F.t(), DD));

    CHECK(arma::norm(so.G - G_ref, "fro") <= 1e-12);
    CHECK(arma::norm(so.N_V - N_ref, "fro") <= 1e-12);

    // The objective equals the log-det ratio of that assembly.
    double ref = logdet2_pd(hermitian_part(N_ref + G_ref * S_X * G_ref.t())) -
                 logdet2_pd(hermitian_part(N_ref));
    CHECK_THAT(cf_objective(ch, S_X, Q), WithinAbs(ref, 1e-10));
}

TEST_CASE("finer quantization only helps the decoder")
{
    channel_realization ch = random_channel(antenna_profile{2, 2, 2, 1}, 0.5, 23);
    arma::cx_mat S_X = testutil::scaled_identity(2, 0.5);

    double base = dest_only_rate(ch, S_X);
    double coarse = cf_objective(ch, S_X, quantizer::iid(4.0, 2));
    double fine = cf_objective(ch, S_X, quantizer::iid(0.25, 2));
    double lossless = cf_objective(ch, S_X, quantizer::perfect(2));

    CHECK(base < coarse);
    CHECK(coarse < fine);
    CHECK(fine < lossless);

    // The silent quantizer adds nothing.
    CHECK_THAT(cf_objective(ch, S_X, quantizer::silent(2)), WithinAbs(base, 1e-12));
}

TEST_CASE("degenerate quantizers produce the documented limit values")
{
    channel_realization ch = random_channel(antenna_profile{2, 2, 2, 1}, 0.5, 29);
    arma::cx_mat S_X = testutil::scaled_identity(2, 0.5);

    quantizer silent = quantizer::silent(2);
    CHECK(cf_constraint(ch, S_X, silent) == 0.0);
    CHECK(relay_private_rate(ch, S_X, silent) == 0.0);
    CHECK_THAT(cf_rate_minform(ch, S_X, silent, 0.0),
               WithinAbs(dest_only_rate(ch, S_X), 1e-12));

    // Lossless forwarding needs infinitely many description bits, so any
    // finite budget is infinitely overdrawn.
    quantizer perfect = quantizer::perfect(2);
    CHECK(cf_constraint(ch, S_X, perfect) == inf);
    CHECK(relay_private_rate(ch, S_X, perfect) == inf);
    CHECK(cf_rate_minform(ch, S_X, perfect, 5.0) == -inf);
    CHECK(std::isfinite(cf_objective(ch, S_X, perfect)));
}

TEST_CASE("zero input covariance gives zero rate everywhere")
{
    channel_realization ch = random_channel(antenna_profile{2, 2, 2, 1}, 0.5, 37);
    arma::cx_mat S_X(2, 2, arma::fill::zeros);
    quantizer q = quantizer::iid(1.0, 2);
    CHECK_THAT(cf_objective(ch, S_X, q), WithinAbs(0.0, 1e-12));
    CHECK_THAT(dest_only_rate(ch, S_X), WithinAbs(0.0, 1e-12));
    CHECK(cf_constraint(ch, S_X, q) >= 0.0);
}
