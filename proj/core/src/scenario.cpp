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

#include "relaycf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace relaycf
{

void cellular_config::validate() const
{
    if (!(tx_power_watts > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("cellular_config: powers and bandwidth must be positive");
    if (!(bs_user_dist_m > 0.0) || !(relay_user_dist_m > 0.0) || !(bs_grid_spacing_m > 0.0))
        throw std::invalid_argument("cellular_config: distances must be positive");
    if (shadowing_sigma_db < 0.0)
        throw std::invalid_argument("cellular_config: shadowing sigma must be non-negative");
}

double pathloss_db(double d_km, const cellular_config &cfg)
{
    if (!(d_km > 0.0))
        throw std::invalid_argument("pathloss_db: distance must be positive");
    return cfg.pathloss_a + cfg.pathloss_b * std::log10(d_km);
}

double noise_power_watts(const cellular_config &cfg)
{
    return std::pow(10.0, (cfg.noise_psd_dbm_hz - 30.0) / 10.0) * cfg.bandwidth_hz;
}

namespace
{

// Deterministic normal draws independent of the standard library's
// distribution internals: 53-bit uniforms plus Box-Muller.
class normal_source
{
  public:
    explicit normal_source(arma::uword seed) : eng_(seed) {}

    double operator()()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open();
        double u2 = uniform_open();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * arma::datum::pi * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * arma::datum::pi * u2);
    }

  private:
    double uniform_open()
    {
        double u = std::ldexp(double(eng_() >> 11), -53);
        return u > 0.0 ? u : std::ldexp(1.0, -53);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct point
{
    double x = 0.0, y = 0.0;
};

double dist_m(point a, point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Matrix of CN(0,1) entries scaled by a per-link amplitude; column-major
// draw order, real part before imaginary part.
arma::cx_mat fading_block(normal_source &rng, arma::uword rows, arma::uword cols,
                          double amplitude)
{
    arma::cx_mat M(rows, cols);
    const double unit = std::sqrt(0.5);
    for (arma::uword j = 0; j < cols; ++j)
        for (arma::uword i = 0; i < rows; ++i)
        {
            double re = rng(), im = rng();
            M(i, j) = amplitude * unit * arma::cx_double(re, im);
        }
    return M;
}

double link_amplitude(normal_source &rng, double d_m, const cellular_config &cfg)
{
    double gain_db = -pathloss_db(d_m / 1000.0, cfg) + cfg.shadowing_sigma_db * rng();
    return std::pow(10.0, gain_db / 20.0);
}

} // namespace

channel_realization generate_scenario(const cellular_config &cfg,
                                      const antenna_profile &profile)
{
    cfg.validate();
    if (profile.s < 1 || profile.d < 1 || profile.r < 1)
        throw std::invalid_argument("generate_scenario: s, d, r must be at least 1");
    if (cfg.n_interferers == 0)
    {
        if (profile.t != 0)
            throw std::invalid_argument("generate_scenario: t > 0 requires interferers");
    }
    else if (profile.t == 0 || profile.t % cfg.n_interferers != 0)
    {
        throw std::invalid_argument(
            "generate_scenario: t must be a positive multiple of n_interferers");
    }

    const point bs{0.0, 0.0};
    const point user{cfg.bs_user_dist_m, 0.0};
    const point relay{cfg.bs_user_dist_m - cfg.relay_user_dist_m * std::cos(cfg.relay_angle_rad),
                      cfg.relay_user_dist_m * std::sin(cfg.relay_angle_rad)};

    // Hexagonal grid of co-channel BSs around the serving one, nearest to
    // the user first (ties broken by coordinates for determinism).
    std::vector<point> interferers;
    if (cfg.n_interferers > 0)
    {
        const double a = cfg.bs_grid_spacing_m;
        std::vector<point> grid;
        const long span = 8; // covers several rings, plenty for any sane count
        for (long n1 = -span; n1 <= span; ++n1)
            for (long n2 = -span; n2 <= span; ++n2)
            {
                if (n1 == 0 && n2 == 0)
                    continue;
                grid.push_back(point{a * (double(n1) + 0.5 * double(n2)),
                                     a * 0.8660254037844386 * double(n2)});
            }
        std::sort(grid.begin(), grid.end(), [&](point p, point q) {
            double dp = dist_m(p, user), dq = dist_m(q, user);
            if (dp != dq)
                return dp < dq;
            if (p.x != q.x)
                return p.x < q.x;
            return p.y < q.y;
        });
        if (grid.size() < cfg.n_interferers)
            throw std::invalid_argument("generate_scenario: interferer count exceeds grid");
        interferers.assign(grid.begin(), grid.begin() + cfg.n_interferers);
    }

    normal_source rng(cfg.seed);
    channel_realization ch;

    // Draw order is part of the format: source->relay, source->dest, then
    // for each interferer its relay link and dest link; one shadowing draw
    // per link before the fading entries of that link.
    double amp_sr = link_amplitude(rng, dist_m(bs, relay), cfg);
    ch.H_SR = fading_block(rng, profile.r, profile.s, amp_sr);
    double amp_sd = link_amplitude(rng, dist_m(bs, user), cfg);
    ch.H_SD = fading_block(rng, profile.d, profile.s, amp_sd);

    ch.H_TR.set_size(profile.r, profile.t);
    ch.H_TD.set_size(profile.d, profile.t);
    if (cfg.n_interferers > 0)
    {
        arma::uword per = profile.t / cfg.n_interferers;
        for (arma::uword k = 0; k < cfg.n_interferers; ++k)
        {
            double amp_tr = link_amplitude(rng, dist_m(interferers[k], relay), cfg);
            ch.H_TR.cols(k * per, (k + 1) * per - 1) =
                fading_block(rng, profile.r, per, amp_tr);
            double amp_td = link_amplitude(rng, dist_m(interferers[k], user), cfg);
            ch.H_TD.cols(k * per, (k + 1) * per - 1) =
                fading_block(rng, profile.d, per, amp_td);
        }
    }

    ch.sigma2 = noise_power_watts(cfg);
    ch.S_XT.zeros(profile.t, profile.t);
    ch.S_XT.diag() += cfg.tx_power_watts;
    ch.validate();
    return ch;
}

std::string scenario_metadata(const cellular_config &cfg)
{
    std::ostringstream os;
    os << "rng=mt19937_64+box-muller seed=" << cfg.seed
       << " n_interferers=" << cfg.n_interferers;
    return os.str();
}

cellular_config parse_cellular_config(std::istream &in)
{
    cellular_config cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#')
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key=value");
        auto trim = [](std::string v) {
            std::size_t b = v.find_first_not_of(" \t\r");
            std::size_t e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        try
        {
            if (key == "tx_power_watts") cfg.tx_power_watts = std::stod(val);
            else if (key == "bandwidth_hz") cfg.bandwidth_hz = std::stod(val);
            else if (key == "noise_psd_dbm_hz") cfg.noise_psd_dbm_hz = std::stod(val);
            else if (key == "bs_user_dist_m") cfg.bs_user_dist_m = std::stod(val);
            else if (key == "relay_user_dist_m") cfg.relay_user_dist_m = std::stod(val);
            else if (key == "bs_grid_spacing_m") cfg.bs_grid_spacing_m = std::stod(val);
            else if (key == "shadowing_sigma_db") cfg.shadowing_sigma_db = std::stod(val);
            else if (key == "pathloss_a") cfg.pathloss_a = std::stod(val);
            else if (key == "pathloss_b") cfg.pathloss_b = std::stod(val);
            else if (key == "relay_angle_rad") cfg.relay_angle_rad = std::stod(val);
            else if (key == "n_interferers") cfg.n_interferers = arma::uword(std::stoull(val));
            else if (key == "seed") cfg.seed = arma::uword(std::stoull(val));
            else
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
        }
        catch (const std::invalid_argument &)
        {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": cannot parse value '" + val + "'");
        }
    }
    cfg.validate();
    return cfg;
}

cellular_config read_cellular_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open '" + path + "'");
    return parse_cellular_config(in);
}

} // namespace relaycf
