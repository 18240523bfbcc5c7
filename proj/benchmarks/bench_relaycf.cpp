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

#include <benchmark/benchmark.h>

#include "relaycf/joint_opt.hpp"

using namespace relaycf;

namespace
{

channel_realization bench_channel(arma::uword n)
{
    return random_channel(antenna_profile{n, n, n, n}, 0.3, 42 + n);
}

arma::cx_mat isotropic(arma::uword s)
{
    return arma::cx_mat(s, s, arma::fill::eye) / double(s);
}

void bm_simdiag(benchmark::State &state)
{
    arma::uword r = arma::uword(state.range(0));
    arma::arma_rng::set_seed(7);
    arma::cx_mat M(r, r, arma::fill::randn), K(r, r, arma::fill::randn);
    arma::cx_mat A = hermitian_part(M * M.t());
    A.diag() += 0.1;
    arma::cx_mat B = hermitian_part(A + K * K.t());
    for (auto _ : state)
        benchmark::DoNotOptimize(simdiag_congruence(A, B));
}
BENCHMARK(bm_simdiag)->Arg(2)->Arg(4)->Arg(8);

void bm_allocation(benchmark::State &state)
{
    arma::uword n = arma::uword(state.range(0));
    channel_realization ch = bench_channel(n);
    gen_eig_system basis = description_basis(ch, isotropic(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(allocation_for_budget(basis, 6.0));
}
BENCHMARK(bm_allocation)->Arg(2)->Arg(4);

void bm_rate_functional(benchmark::State &state)
{
    arma::uword n = arma::uword(state.range(0));
    channel_realization ch = bench_channel(n);
    arma::cx_mat S_X = isotropic(n);
    quantizer Q = allocation_for_budget(description_basis(ch, S_X), 6.0)
                      .alloc.make_quantizer();
    for (auto _ : state)
        benchmark::DoNotOptimize(cf_rate_minform(ch, S_X, Q, 6.0));
}
BENCHMARK(bm_rate_functional)->Arg(2)->Arg(4);

void bm_input_ascent(benchmark::State &state)
{
    arma::uword n = arma::uword(state.range(0));
    channel_realization ch = bench_channel(n);
    quantizer Q = allocation_for_budget(description_basis(ch, isotropic(n)), 4.0)
                      .alloc.make_quantizer();
    input_opt_config cfg;
    cfg.power = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(maximize_lagrangian_input(ch, Q, 0.5, cfg));
}
BENCHMARK(bm_input_ascent)->Arg(2)->Arg(4);

void bm_optimize_cf(benchmark::State &state)
{
    arma::uword n = arma::uword(state.range(0));
    channel_realization ch = bench_channel(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_cf(ch, 1.0, 4.0));
}
BENCHMARK(bm_optimize_cf)->Arg(2);

void bm_cutset(benchmark::State &state)
{
    arma::uword n = arma::uword(state.range(0));
    channel_realization ch = bench_channel(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(cutset_bound(ch, 1.0, 4.0));
}
BENCHMARK(bm_cutset)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
