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

#include "relaycf/channel_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace relaycf
{

namespace
{

// Reads the next line that is neither blank nor a '#' comment. Returns
// false on end of stream. line_no tracks position for error messages.
bool next_content_line(std::istream &in, std::string &line, long &line_no)
{
    while (std::getline(in, line))
    {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#')
            continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(long line_no, const std::string &what)
{
    throw std::runtime_error("channel file, line " + std::to_string(line_no) + ": " + what);
}

arma::cx_mat read_block(std::istream &in, const std::string &name,
                        arma::uword rows, arma::uword cols, long &line_no)
{
    std::string line;
    if (!next_content_line(in, line, line_no))
        fail(line_no, "missing block header for " + name);

    std::istringstream hdr(line);
    std::string got;
    arma::uword got_rows = 0, got_cols = 0;
    if (!(hdr >> got >> got_rows >> got_cols) || got != name)
        fail(line_no, "expected block header '" + name + " <rows> <cols>'");
    if (got_rows != rows || got_cols != cols)
        fail(line_no, name + " has dimensions " + std::to_string(got_rows) + "x" +
                          std::to_string(got_cols) + ", expected " + std::to_string(rows) +
                          "x" + std::to_string(cols));

    arma::cx_mat M(rows, cols);
    // Degenerate blocks (t = 0 channels) carry a header and no row lines.
    for (arma::uword i = 0; cols > 0 && i < rows; ++i)
    {
        if (!next_content_line(in, line, line_no))
            fail(line_no, name + ": unexpected end of file in row " + std::to_string(i));
        std::istringstream row(line);
        for (arma::uword j = 0; j < cols; ++j)
        {
            std::string tok;
            if (!(row >> tok))
                fail(line_no, name + ": row " + std::to_string(i) + " has fewer than " +
                                  std::to_string(cols) + " entries");
            double re = 0.0, im = 0.0;
            if (std::sscanf(tok.c_str(), "%lg,%lg", &re, &im) != 2)
                fail(line_no, name + ": cannot parse entry '" + tok + "'");
            M(i, j) = std::complex<double>(re, im);
        }
    }
    return M;
}

} // namespace

channel_realization read_channel(std::istream &in)
{
    long line_no = 0;
    std::string line;
    if (!next_content_line(in, line, line_no))
        throw std::runtime_error("channel file: empty input");

    std::istringstream hdr(line);
    arma::uword s = 0, d = 0, r = 0, t = 0;
    double sigma2 = 0.0;
    if (!(hdr >> s >> d >> r >> t >> sigma2))
        fail(line_no, "expected header 's d r t sigma2'");

    channel_realization ch;
    ch.sigma2 = sigma2;
    ch.H_SR = read_block(in, "H_SR", r, s, line_no);
    ch.H_SD = read_block(in, "H_SD", d, s, line_no);
    ch.H_TR = read_block(in, "H_TR", r, t, line_no);
    ch.H_TD = read_block(in, "H_TD", d, t, line_no);

    // Optional trailing S_XT block; identity otherwise.
    std::streampos mark = in.tellg();
    long mark_line = line_no;
    if (next_content_line(in, line, line_no))
    {
        std::istringstream probe(line);
        std::string name;
        probe >> name;
        if (name == "S_XT")
        {
            in.seekg(mark);
            line_no = mark_line;
            ch.S_XT = read_block(in, "S_XT", t, t, line_no);
        }
        else
        {
            fail(line_no, "unexpected trailing block '" + name + "'");
        }
    }
    if (ch.S_XT.n_rows != t)
        ch.S_XT.eye(t, t);

    try
    {
        ch.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw std::runtime_error(std::string("channel file: ") + e.what());
    }
    return ch;
}

channel_realization read_channel_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("channel file: cannot open '" + path + "'");
    return read_channel(in);
}

namespace
{

void write_block(std::ostream &out, const char *name, const arma::cx_mat &M)
{
    out << name << ' ' << M.n_rows << ' ' << M.n_cols << '\n';
    char buf[128];
    for (arma::uword i = 0; M.n_cols > 0 && i < M.n_rows; ++i)
    {
        for (arma::uword j = 0; j < M.n_cols; ++j)
        {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", M(i, j).real(), M(i, j).imag());
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
}

} // namespace

void write_channel(std::ostream &out, const channel_realization &ch,
                   const std::vector<std::string> &comments)
{
    ch.validate();
    for (const auto &c : comments)
        out << "# " << c << '\n';

    antenna_profile p = ch.profile();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", ch.sigma2);
    out << p.s << ' ' << p.d << ' ' << p.r << ' ' << p.t << ' ' << buf << '\n';

    write_block(out, "H_SR", ch.H_SR);
    write_block(out, "H_SD", ch.H_SD);
    write_block(out, "H_TR", ch.H_TR);
    write_block(out, "H_TD", ch.H_TD);

    arma::cx_mat ident(p.t, p.t, arma::fill::eye);
    if (p.t > 0 && arma::abs(ch.S_XT - ident).max() != 0.0)
        write_block(out, "S_XT", ch.S_XT);
}

void write_channel_file(const std::string &path, const channel_realization &ch,
                        const std::vector<std::string> &comments)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("channel file: cannot open '" + path + "' for writing");
    write_channel(out, ch, comments);
    if (!out)
        throw std::runtime_error("channel file: write to '" + path + "' failed");
}

} // namespace relaycf
