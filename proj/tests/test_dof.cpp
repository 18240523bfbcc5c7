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

#include "relaycf/dof.hpp"
#include "relaycf/rates.hpp"
#include "test_util.hpp"

using namespace relaycf;
using Catch::Matchers::WithinAbs;

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

arma::uword pos_diff(arma::uword a, arma::uword b) { return a > b ? a - b : 0; }
}

TEST_CASE("pre-log formulas on the three canonical profiles")
{
    // Interference-free 2x2 with a 2-antenna destination already saturated
    // by the source: relay adds one dimension.
    dof_summary a = dof_report(antenna_profile{3, 2, 2, 0}, inf);
    CHECK(a.dof_dest == 2);
    CHECK(a.dof_relay == 3);
    CHECK_THAT(a.dof_gain, WithinAbs(1.0, 0.0));
    CHECK(a.relay_helps);

    // Destination has spare antennas: the relay adds nothing.
    dof_summary b = dof_report(antenna_profile{2, 3, 3, 0}, inf);
    CHECK(b.dof_dest == 2);
    CHECK(b.dof_relay == 2);
    CHECK(b.dof_gain == 0.0);
    CHECK_FALSE(b.relay_helps);

    // Four interferers wipe out the direct link entirely; the relay
    // restores both source streams.
    dof_summary c = dof_report(antenna_profile{2, 3, 3, 4}, inf);
    CHECK(c.dof_dest == 0);
    CHECK(c.dof_relay == 2);
    CHECK_THAT(c.dof_gain, WithinAbs(2.0, 0.0));

    // A finite link of alpha log2(rho) caps the gain at alpha; white
    // quantization spreads it over r' described dimensions.
    dof_summary c1 = dof_report(antenna_profile{2, 3, 3, 4}, 1.0);
    CHECK_THAT(c1.dof_gain, WithinAbs(1.0, 0.0));
    CHECK(c1.r_prime == 3);
    CHECK_THAT(c1.dof_gain_iid, WithinAbs(2.0 / 3.0, 1e-12));
    CHECK(c1.combiner_rows == 2);
}

TEST_CASE("pre-log identities hold on the full antenna cube")
{
    for (arma::uword s = 0; s <= 6; ++s)
        for (arma::uword d = 0; d <= 6; ++d)
            for (arma::uword r = 0; r <= 6; ++r)
                for (arma::uword t = 0; t <= 6; ++t)
                {
                    antenna_profile p{s, d, r, t};
                    dof_summary u = dof_report(p, inf);

                    CHECK(u.dof_dest == std::min(s, pos_diff(d, t)));
                    CHECK(u.dof_relay == std::min(s, pos_diff(r + d, t)));
                    CHECK(u.r_prime == std::min(r, pos_diff(s + t, d)));
                    CHECK(u.combiner_rows == std::min({r, s, pos_diff(r + d, t)}));

                    double gap = double(u.dof_relay) - double(u.dof_dest);
                    CHECK_THAT(u.dof_gain, WithinAbs(gap, 0.0));

                    // Positive gain iff the relay observes, the receivers
                    // jointly out-antenna the interferer, and the
                    // destination alone is short.
                    bool iff = s >= 1 && r >= 1 && r + d > t && d < s + t;
                    CHECK(relay_improves_dof(p) == iff);
                    CHECK((u.dof_gain > 0.0) == iff);

                    // Finite link: gain capped at alpha; white quantization
                    // pays full price on all r' dimensions.
                    for (double alpha : {0.5, 1.0, 2.5})
                    {
                        dof_summary v = dof_report(p, alpha);
                        CHECK_THAT(v.dof_gain, WithinAbs(std::min(gap, alpha), 1e-12));
                        double iid = u.r_prime == 0
                                         ? 0.0
                                         : gap * std::min(1.0, alpha / double(u.r_prime));
                        CHECK_THAT(v.dof_gain_iid, WithinAbs(iid, 1e-12));
                        CHECK(v.dof_gain_iid <= v.dof_gain + 1e-12);
                    }
                }
}

TEST_CASE("dof_report rejects a negative link exponent")
{
    CHECK_THROWS_AS(dof_report(antenna_profile{2, 2, 2, 0}, -1.0), std::invalid_argument);
}

TEST_CASE("the interference-nulling combiner cancels the interferer exactly")
{
    for (arma::uword rep = 0; rep < 12; ++rep)
    {
        antenna_profile p{2 + rep % 2, 1 + rep % 3, 2 + (rep / 2) % 2, 1 + rep % 4};
        channel_realization ch = random_channel(p, 0.3, 400 + rep);
        zf_combiner zf = interference_nulling_combiner(ch);

        arma::uword k = zf.relay_rows.n_rows;
        CHECK(k == std::min({p.r, p.s, pos_diff(p.r + p.d, p.t)}));
        REQUIRE(zf.dest_rows.n_rows == k);
        if (k == 0)
            continue;

        arma::cx_mat W = arma::join_rows(zf.relay_rows, zf.dest_rows);
        arma::cx_mat H_T = arma::join_cols(ch.H_TR, ch.H_TD);

        // Rows annihilate the interference channel and are orthonormal.
        CHECK(arma::norm(W * H_T, "fro") <= 1e-9 * arma::norm(H_T, "fro"));
        CHECK(arma::norm(W * W.t() - arma::cx_mat(k, k, arma::fill::eye), "fro") <= 1e-9);

        // Generic channels keep full signal rank through the combiner.
        arma::cx_mat H_S = arma::join_cols(ch.H_SR, ch.H_SD);
        CHECK(numeric_rank(hermitian_part(W * H_S * H_S.t() * W.t())) == k);
    }
}

TEST_CASE("without an interferer the combiner spans relay space directly")
{
    channel_realization ch = random_channel(antenna_profile{3, 2, 2, 0}, 0.5, 431);
    zf_combiner zf = interference_nulling_combiner(ch);
    CHECK(zf.relay_rows.n_rows == 2);
    // Nulling nothing: the relay part alone is already orthonormal.
    arma::cx_mat W = arma::join_rows(zf.relay_rows, zf.dest_rows);
    CHECK(arma::norm(W * W.t() - arma::cx_mat(2, 2, arma::fill::eye), "fro") <= 1e-9);
}

TEST_CASE("empirical_dof recovers the slope of an exact log curve")
{
    auto curve = [](double rho) { return 3.0 * std::log2(1.0 + rho) + 2.0; };
    double slope = empirical_dof(curve, 1e5, 1e7);
    CHECK_THAT(slope, WithinAbs(3.0, 1e-4));

    CHECK_THROWS_AS(empirical_dof(curve, 1e7, 1e5), std::invalid_argument);
    CHECK_THROWS_AS(empirical_dof(curve, 2.0, 1e7), std::invalid_argument);
}

TEST_CASE("empirical destination pre-logs match the formula across profiles")
{
    // Direct transmission with equal-power input: rate grows like
    // dof_dest * log2(rho) when signal and interference scale together.
    for (auto [s, d, r, t] : {std::array<arma::uword, 4>{3, 2, 2, 0},
                              std::array<arma::uword, 4>{2, 3, 3, 4},
                              std::array<arma::uword, 4>{2, 2, 2, 1}})
    {
        antenna_profile p{s, d, r, t};
        channel_realization geom = random_channel(p, 1.0, 17);
        auto rate = [&](double rho) {
            channel_realization ch = geom;
            ch.sigma2 = 1.0 / rho;
            return dest_only_rate(ch, testutil::scaled_identity(p.s, 1.0 / double(p.s)));
        };
        double emp = empirical_dof(rate, 1e5, 1e7);
        CHECK_THAT(emp, WithinAbs(double(dof_report(p, inf).dof_dest), 0.05));
    }
}
