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

// End-to-end checks of the installed command-line tool. The binary path is
// injected at compile time; commands run through the shell with outputs
// captured in a per-process scratch directory.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include "relaycf/channel_io.hpp"

namespace fs = std::filesystem;

namespace
{

const std::string cli = RELAYCF_CLI_PATH;

fs::path scratch_dir()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("relaycf_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the tool, captures stdout, returns the exit code.
int run_cli(const std::string &args, std::string *output = nullptr)
{
    fs::path cap = scratch_dir() / "stdout.txt";
    std::string cmd = cli + " " + args + " > '" + cap.string() + "' 2>&1";
    int status = std::system(cmd.c_str());
    if (output)
    {
        std::ifstream in(cap);
        std::stringstream buf;
        buf << in.rdbuf();
        *output = buf.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("help and usage errors use the documented exit codes")
{
    std::string out;
    CHECK(run_cli("--help", &out) == 0);
    CHECK(out.find("sweep") != std::string::npos);
    CHECK(out.find("gap-audit") != std::string::npos);
    CHECK(out.find("gen-scenario") != std::string::npos);

    CHECK(run_cli("--definitely-not-a-flag") == 1);
    CHECK(run_cli("") == 1);                          // a subcommand is required
    CHECK(run_cli("sweep --profile 1,1,1") == 1);     // malformed profile
    CHECK(run_cli("sweep --c0-grid 4:0:1") == 1);     // descending grid
    CHECK(run_cli("slope-map --r-range 3:1") == 1);   // descending range
}

TEST_CASE("missing inputs are runtime failures, not usage errors")
{
    CHECK(run_cli("sweep --channel /nonexistent/ch.txt") == 2);
    CHECK(run_cli("sweep --config /nonexistent/cfg.txt") == 2);
}

TEST_CASE("gen-scenario writes a parsable, seeded, reproducible channel")
{
    fs::path a = scratch_dir() / "scn_a.txt";
    fs::path b = scratch_dir() / "scn_b.txt";

    std::string args = "gen-scenario --profile 2,3,3,4 --seed 11 --out ";
    REQUIRE(run_cli(args + "'" + a.string() + "'") == 0);
    REQUIRE(run_cli(args + "'" + b.string() + "'") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("seed=11") != std::string::npos);

    relaycf::channel_realization ch = relaycf::read_channel_file(a.string());
    relaycf::antenna_profile p = ch.profile();
    CHECK(p.s == 2);
    CHECK(p.d == 3);
    CHECK(p.r == 3);
    CHECK(p.t == 4);
    CHECK(ch.sigma2 > 0.0);

    // A different seed gives a different draw.
    fs::path c = scratch_dir() / "scn_c.txt";
    REQUIRE(run_cli("gen-scenario --profile 2,3,3,4 --seed 12 --out '" + c.string() + "'") == 0);
    CHECK(slurp(c) != slurp(a));
}

TEST_CASE("sweep produces a deterministic CSV over the requested grid")
{
    fs::path scn = scratch_dir() / "scn_sweep.txt";
    REQUIRE(run_cli("gen-scenario --profile 2,2,2,2 --seed 4 --out '" + scn.string() + "'") == 0);

    fs::path csv1 = scratch_dir() / "sweep1.csv";
    fs::path csv2 = scratch_dir() / "sweep2.csv";
    std::string base = "sweep --channel '" + scn.string() + "' --c0-grid 0:4:2 --out ";
    REQUIRE(run_cli(base + "'" + csv1.string() + "'") == 0);
    REQUIRE(run_cli(base + "'" + csv2.string() + "'") == 0);

    std::string text = slurp(csv1);
    CHECK(text == slurp(csv2));
    REQUIRE(text.rfind("c0,cutset,cf_joint,", 0) == 0);

    // Header plus one row per grid point (0, 2, 4), full-precision floats.
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    double last_c0 = -1.0;
    while (std::getline(lines, line))
    {
        ++rows;
        std::istringstream ls(line);
        std::string field;
        int fields = 0;
        while (std::getline(ls, field, ','))
        {
            CHECK_NOTHROW(std::stod(field));
            ++fields;
        }
        CHECK(fields == 7);
        double c0 = std::stod(line.substr(0, line.find(',')));
        CHECK(c0 > last_c0);
        last_c0 = c0;
    }
    CHECK(rows == 3);
}

TEST_CASE("gap-audit reports a clean summary and optional per-trial CSV")
{
    fs::path csv = scratch_dir() / "gap.csv";
    std::string out;
    int code = run_cli("gap-audit --trials 6 --max-antennas 2 --seed 3 --out '" +
                           csv.string() + "'",
                       &out);
    CHECK(code == 0);
    CHECK(out.find("trials: 6") != std::string::npos);
    CHECK(out.find("violations: 0") != std::string::npos);

    std::string text = slurp(csv);
    CHECK(text.rfind("trial,seed,s,d,r,t,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7); // header + 6 trials
}

TEST_CASE("slope-map writes one cell per component")
{
    fs::path csv = scratch_dir() / "slopes.csv";
    int code = run_cli("slope-map --s 2 --t 3 --r-range 2:2 --d-range 1:1 "
                       "--realizations 3 --sigma2 1e-4 --out '" +
                       csv.string() + "'");
    CHECK(code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("r,d,component,avg_slope\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3); // header + 2 components
}

TEST_CASE("dof prints formula and empirical gains")
{
    std::string out;
    int code = run_cli("dof --profile 3,2,2,0 --rho 1e5:1e6 --seed 5", &out);
    CHECK(code == 0);
    CHECK(out.find("pre-log, direct link:        2") != std::string::npos);
    CHECK(out.find("pre-log, unconstrained link: 3") != std::string::npos);
    CHECK(out.find("relay gain (joint design):") != std::string::npos);
    CHECK(out.find("empirical") != std::string::npos);
}
