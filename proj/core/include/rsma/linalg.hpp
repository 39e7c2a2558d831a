// SPDX-License-Identifier: Apache-2.0
//
// cran-rsma: rate-splitting multiple access design for C-RAN downlinks
// Copyright (C) 2026 The cran-rsma authors
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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rsma
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kLn2 = 0.69314718055994530942;

/// Raised when a matrix that must be positive definite is not (or when a
/// quantity that must be finite is not).
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// h^H v for column vectors.
inline cplx inner(const CVector &h, const CVector &v) { return h.dot(v); }

/// log2 det(M) for a Hermitian positive definite M. Throws NumericalError
/// when the smallest eigenvalue is not above `min_eigenvalue`.
double log2_det_hpd(const CMatrix &m, double min_eigenvalue = 1e-12);

/// Smallest eigenvalue of the Hermitian part of M.
double min_eigenvalue(const CMatrix &m);

/// Hermitian check with an absolute tolerance on |M - M^H|.
bool is_hermitian(const CMatrix &m, double tol = 1e-9);

/// Hermitian PSD check: Hermitian and all eigenvalues >= floor.
bool is_hermitian_psd(const CMatrix &m, double floor = -1e-10);

bool all_finite(const CMatrix &m);
bool all_finite(const CVector &v);

} // namespace rsma
