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

#ifndef relaycf_channel_io_H
#define relaycf_channel_io_H

#include <iosfwd>
#include <string>
#include <vector>

#include "relaycf/channel.hpp"

// Plain-text serialization of a channel realization.
//
//   # comment lines start with '#'
//   s d r t sigma2
//   H_SR r s
//   re,im re,im ...        (one line per matrix row)
//   H_SD d s
//   ...
//   H_TR r t
//   H_TD d t
//   S_XT t t               (optional; identity when absent)
//
// Floats are written with enough digits (%.17g) for bit-exact round trips.

namespace relaycf
{

// Parses a channel file. Malformed input (wrong dimensions, missing
// blocks, unparsable numbers) raises std::runtime_error with a line
// reference. The result has been validate()d.
channel_realization read_channel(std::istream &in);
channel_realization read_channel_file(const std::string &path);

// Writes the channel in the format above. Extra comment lines (without a
// leading '#') may be given and are emitted at the top.
void write_channel(std::ostream &out, const channel_realization &ch,
                   const std::vector<std::string> &comments = {});
void write_channel_file(const std::string &path, const channel_realization &ch,
                        const std::vector<std::string> &comments = {});

} // namespace relaycf

#endif
