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

#ifndef relaycf_scenario_H
#define relaycf_scenario_H

#include <string>

#include "relaycf/channel.hpp"

// Picocell downlink snapshot: a serving base station, a user, a relay near
// the user, and co-channel interference from the surrounding base-station
// grid. Large-scale gains follow a log-distance path loss with lognormal
// shadowing; small-scale fading is Rayleigh. All powers are in watts.

namespace relaycf
{

struct cellular_config
{
    double tx_power_watts = 1.0;
    double bandwidth_hz = 1e7;
    double noise_psd_dbm_hz = -174.0;
    double bs_user_dist_m = 100.0;
    double relay_user_dist_m = 10.0;
    double bs_grid_spacing_m = 200.0;
    double shadowing_sigma_db = 10.0;
    double pathloss_a = 140.7;
    double pathloss_b = 36.7;
    double relay_angle_rad = 0.0; // relay bearing off the user->BS axis
    arma::uword n_interferers = 0;
    arma::uword seed = 0;

    void validate() const; // positive distances/powers; throws std::invalid_argument
};

// Log-distance path loss in dB: pathloss_a + pathloss_b * log10(d_km).
// d_km must be positive.
double pathloss_db(double d_km, const cellular_config &cfg = {});

// Thermal noise power in watts over the configured bandwidth.
double noise_power_watts(const cellular_config &cfg);

// Draws one channel realization. The serving BS sits at the origin, the
// user at bs_user_dist on the x axis, the relay relay_user_dist from the
// user toward the BS (rotated by relay_angle_rad). Interfering BSs occupy
// a hexagonal grid of the configured spacing around the serving BS; the
// n_interferers closest to the user transmit at full power, each owning
// profile.t / n_interferers adjacent columns of the interference matrices
// (profile.t must divide evenly; both zero is the interference-free case).
//
// Per link: one shadowing draw (normal, shadowing_sigma_db), applied with
// the negated path loss as an amplitude factor on i.i.d. CN(0,1) entries.
// Deterministic given cfg.seed; the generator is mt19937_64 with uniforms
// from the top 53 bits and Box-Muller normals, in the documented draw
// order (source->relay, source->dest, then per interferer relay/dest).
channel_realization generate_scenario(const cellular_config &cfg,
                                      const antenna_profile &profile);

// One-line generator stamp (algorithm + seed) for output metadata.
std::string scenario_metadata(const cellular_config &cfg);

// Flat key=value config parser; '#' comments and blank lines ignored.
// Unknown keys raise std::runtime_error with the offending line.
cellular_config read_cellular_config(const std::string &path);
cellular_config parse_cellular_config(std::istream &in);

} // namespace relaycf

#endif
