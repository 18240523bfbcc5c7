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
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "relaycf/scenario.hpp"
#include "test_util.hpp"

using namespace relaycf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("path loss follows the log-distance line")
{
    CHECK_THAT(pathloss_db(1.0), WithinAbs(140.7, 1e-12));
    CHECK_THAT(pathloss_db(0.1), WithinAbs(104.0, 1e-10));  // 140.7 - 36.7
    CHECK_THAT(pathloss_db(0.01), WithinAbs(67.3, 1e-10));  // 140.7 - 73.4
    CHECK_THROWS_AS(pathloss_db(0.0), std::invalid_argument);
    CHECK_THROWS_AS(pathloss_db(-1.0), std::invalid_argument);

    cellular_config flat;
    flat.pathloss_a = 100.0;
    flat.pathloss_b = 20.0;
    CHECK_THAT(pathloss_db(0.1, flat), WithinAbs(80.0, 1e-10));
}

TEST_CASE("thermal noise power over 10 MHz at -174 dBm/Hz")
{
    cellular_config cfg;
    CHECK_THAT(noise_power_watts(cfg), WithinRel(3.98107e-14, 1e-4));

    cfg.bandwidth_hz = 1e6;
    CHECK_THAT(noise_power_watts(cfg), WithinRel(3.98107e-15, 1e-4));
}

TEST_CASE("scenario draws are deterministic in the seed")
{
    cellular_config cfg;
    cfg.n_interferers = 2;
    cfg.seed = 5;
    antenna_profile p{2, 2, 2, 4};

    channel_realization a = generate_scenario(cfg, p);
    channel_realization b = generate_scenario(cfg, p);
    CHECK(arma::norm(a.H_SR - b.H_SR, "fro") == 0.0);
    CHECK(arma::norm(a.H_TD - b.H_TD, "fro") == 0.0);
    CHECK(a.sigma2 == b.sigma2);

    cfg.seed = 6;
    channel_realization c = generate_scenario(cfg, p);
    CHECK(arma::norm(a.H_SR - c.H_SR, "fro") > 0.0);
}

TEST_CASE("scenario dimensions, noise floor and genericity")
{
    cellular_config cfg;
    cfg.n_interferers = 2;
    cfg.seed = 9;
    antenna_profile p{2, 3, 3, 4};
    channel_realization ch = generate_scenario(cfg, p);
    ch.validate();

    CHECK(ch.H_SR.n_rows == 3);
    CHECK(ch.H_SR.n_cols == 2);
    CHECK(ch.H_TD.n_rows == 3);
    CHECK(ch.H_TD.n_cols == 4);
    CHECK(ch.sigma2 == noise_power_watts(cfg));
    CHECK(ch.S_XT.n_rows == 4);

    // Every link carries energy and the draws are in general position.
    CHECK(arma::norm(ch.H_SR, "fro") > 0.0);
    CHECK(arma::norm(ch.H_TR, "fro") > 0.0);
    CHECK(arma::rank(ch.H_SD) == 2);
    CHECK(arma::rank(arma::join_cols(ch.H_TR, ch.H_TD)) == 4);
}

TEST_CASE("mean link gains track the path-loss geometry")
{
    // Relay placed 90 m from the user toward the BS, i.e. 10 m from the
    // BS: its mean power advantage over the direct link is the path-loss
    // difference 104.0 - 67.3 = 36.7 dB. Shadowing (10 dB per link) and
    // Rayleigh fading are zero-mean in dB and average out.
    cellular_config cfg;
    cfg.relay_user_dist_m = 90.0;
    antenna_profile p{1, 1, 1, 0};

    const int n = 4000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
    {
        cfg.seed = arma::uword(i);
        channel_realization ch = generate_scenario(cfg, p);
        acc += 10.0 * std::log10(std::norm(ch.H_SR(0, 0)) / std::norm(ch.H_SD(0, 0)));
    }
    // Per-sample std ~ 16 dB; over 4000 draws, 1 dB is about four standard
    // errors of the mean.
    CHECK_THAT(acc / n, WithinAbs(36.7, 1.0));
}

TEST_CASE("shadowing contributes its configured dB spread")
{
    // dB power of a single Rayleigh entry has std 5.57; adding 10 dB
    // lognormal shadowing lifts the total to sqrt(100 + 31) = 11.45.
    antenna_profile p{1, 1, 1, 0};
    auto db_std = [&](double sigma_db) {
        cellular_config cfg;
        cfg.shadowing_sigma_db = sigma_db;
        const int n = 4000;
        arma::vec x(n);
        for (int i = 0; i < n; ++i)
        {
            cfg.seed = arma::uword(i);
            channel_realization ch = generate_scenario(cfg, p);
            x(i) = 10.0 * std::log10(std::norm(ch.H_SD(0, 0)));
        }
        return arma::stddev(x);
    };

    CHECK_THAT(db_std(0.0), WithinAbs(5.57, 0.5));
    CHECK_THAT(db_std(10.0), WithinAbs(11.45, 0.8));
}

TEST_CASE("the nearest interfering base station rivals the serving one")
{
    // Grid spacing 200 m puts the closest interferer 100 m from the user,
    // the same distance as the serving BS, so the mean interference power
    // at the destination matches the mean signal power within a few dB.
    cellular_config cfg;
    cfg.n_interferers = 1;
    antenna_profile p{1, 1, 1, 1};

    const int n = 2000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
    {
        cfg.seed = arma::uword(i);
        channel_realization ch = generate_scenario(cfg, p);
        acc += 10.0 * std::log10(std::norm(ch.H_TD(0, 0)) / std::norm(ch.H_SD(0, 0)));
    }
    CHECK_THAT(acc / n, WithinAbs(0.0, 3.0));
}

TEST_CASE("scenario generation validates its inputs")
{
    cellular_config cfg;
    antenna_profile p{2, 2, 2, 4};

    // t > 0 with no interferers configured.
    CHECK_THROWS_AS(generate_scenario(cfg, p), std::invalid_argument);

    // Interferer antennas must split evenly.
    cfg.n_interferers = 3;
    CHECK_THROWS_AS(generate_scenario(cfg, p), std::invalid_argument);

    cellular_config bad;
    bad.bs_user_dist_m = -5.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.tx_power_watts = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.shadowing_sigma_db = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config files parse, default and reject unknown keys")
{
    std::stringstream in(
        "# picocell snapshot\n"
        "tx_power_watts = 2.0\n"
        "bs_user_dist_m=50\n"
        "n_interferers = 2\n"
        "seed = 17\n"
        "\n"
        "shadowing_sigma_db = 6\n");
    cellular_config cfg = parse_cellular_config(in);
    CHECK(cfg.tx_power_watts == 2.0);
    CHECK(cfg.bs_user_dist_m == 50.0);
    CHECK(cfg.n_interferers == 2);
    CHECK(cfg.seed == 17);
    CHECK(cfg.shadowing_sigma_db == 6.0);
    CHECK(cfg.bandwidth_hz == 1e7); // untouched default

    std::stringstream bad1("tx_power_watts = 1\nwhatever = 3\n");
    try
    {
        parse_cellular_config(bad1);
        FAIL("expected unknown-key error");
    }
    catch (const std::runtime_error &e)
    {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::stringstream bad2("tx_power_watts\n");
    CHECK_THROWS_AS(parse_cellular_config(bad2), std::runtime_error);
    std::stringstream bad3("seed = banana\n");
    CHECK_THROWS_AS(parse_cellular_config(bad3), std::runtime_error);

    CHECK_THROWS_AS(read_cellular_config("/nonexistent/cfg.txt"), std::runtime_error);
}

TEST_CASE("scenario metadata names the seed")
{
    cellular_config cfg;
    cfg.seed = 123;
    std::string meta = scenario_metadata(cfg);
    CHECK(meta.find("123") != std::string::npos);
    CHECK(meta.find("seed") != std::string::npos);
}
