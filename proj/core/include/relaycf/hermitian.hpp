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

#ifndef relaycf_hermitian_H
#define relaycf_hermitian_H

#include <armadillo>
#include <stdexcept>

// Dense Hermitian kernels shared by the rate and optimization layers.
// Matrices are arma::cx_mat throughout; Hermitian symmetry is a contract,
// not a dedicated type, and is checked at entry of the operations below.

namespace relaycf
{

// Relative tolerance for Hermitian-symmetry checks (entrywise, against the
// largest magnitude entry).
constexpr double herm_sym_tol = 1e-12;

// Relative eigenvalue threshold below which a direction counts as null.
// Used by pseudoinverses, rank decisions and PSD checks alike.
constexpr double herm_null_tol = 1e-9;

// Thrown when an iterative routine exhausts its iteration budget. Carries
// the last iterate so callers can inspect or resume.
class convergence_error : public std::runtime_error
{
  public:
    arma::cx_mat last_iterate;
    double residual;
    convergence_error(const std::string &msg, arma::cx_mat iterate, double res)
        : std::runtime_error(msg), last_iterate(std::move(iterate)), residual(res) {}
};

// True if M is square and equals its conjugate transpose to a relative
// entrywise tolerance.
bool is_hermitian(const arma::cx_mat &M, double rel_tol = herm_sym_tol);

// (M + M') / 2; cheap symmetrization to strip round-off drift.
arma::cx_mat hermitian_part(const arma::cx_mat &M);

// True if the Hermitian matrix M has no eigenvalue below -rel_slack times
// its largest absolute eigenvalue.
bool is_psd(const arma::cx_mat &M, double rel_slack = herm_null_tol);

// log2 det(M) for Hermitian positive definite M. Cholesky first, symmetric
// eigensolve as fallback. Throws std::domain_error if M is not PD.
double logdet2_pd(const arma::cx_mat &M);

// Moore-Penrose pseudoinverse of a Hermitian PSD matrix. Eigenvalues at or
// below rel_tol times the largest one are treated as exact zeros.
arma::cx_mat pinv_psd(const arma::cx_mat &M, double rel_tol = herm_null_tol);

// Inverse of a Hermitian positive definite matrix (Cholesky route), with a
// pseudoinverse fallback when M is numerically singular.
arma::cx_mat pd_inverse(const arma::cx_mat &M);

// Hermitian PSD square root (negative round-off eigenvalues clamped to 0).
arma::cx_mat psd_sqrt(const arma::cx_mat &M);

// Covariance of the leading block of a jointly Gaussian vector conditioned
// on the remaining block: S_U - S_UV pinv(S_V) S_VU, where U is the first
// block_dim coordinates of the joint covariance.
//
// Preconditions: joint Hermitian and PSD (to -herm_null_tol relative
// slack), 0 <= block_dim <= dim. Violations raise std::invalid_argument.
// The result is Hermitian PSD up to round-off.
arma::cx_mat conditional_covariance(const arma::cx_mat &joint, arma::uword block_dim);

// Joint congruence diagonalization of a pencil (A, B) with A positive
// definite and B >= A (in the Loewner order, verified to -herm_null_tol
// relative slack).
struct gen_eig_system
{
    // Invertible transform C with C' A C = I and C' B C = diag(eigenvalues).
    arma::cx_mat transform;

    // Generalized eigenvalues of (B, A), sorted descending. All are >= 1 by
    // the ordering B >= A; values that round off slightly below 1 are
    // floored at exactly 1 because downstream allocations divide by
    // (eigenvalue - 1) and must see degenerate directions as inactive.
    arma::vec eigenvalues;

    arma::uword dim() const { return eigenvalues.n_elem; }
};

// Computes the congruence system via Cholesky whitening of A followed by a
// symmetric eigensolve. Throws std::domain_error if A is numerically
// singular, std::invalid_argument if B - A has an eigenvalue below the
// -herm_null_tol relative slack.
gen_eig_system simdiag_congruence(const arma::cx_mat &A, const arma::cx_mat &B);

// Number of eigenvalues of the Hermitian matrix M with magnitude above
// rel_tol times the largest magnitude. Zero matrix has rank 0.
arma::uword numeric_rank(const arma::cx_mat &M, double rel_tol = herm_null_tol);

// Frobenius-nearest point of {S Hermitian : S >= 0, tr S <= budget}.
// Eigenvectors are preserved; negative eigenvalues are clipped, and if the
// clipped trace still exceeds the budget a common level is subtracted with
// re-clipping at zero (water-filling in reverse). budget must be >= 0.
arma::cx_mat project_trace_psd(const arma::cx_mat &M, double budget);

} // namespace relaycf

#endif
