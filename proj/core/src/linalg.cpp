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

#include "rsma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsma
{

double min_eigenvalue(const CMatrix &m)
{
    if (m.rows() == 0)
        return std::numeric_limits<double>::infinity();
    if (m.rows() == 1)
        return m(0, 0).real();
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double log2_det_hpd(const CMatrix &m, double min_eig)
{
    if (m.rows() != m.cols())
        throw NumericalError("log2_det_hpd: matrix is not square");
    if (m.rows() == 1)
    {
        const double a = m(0, 0).real();
        if (!(a > min_eig) || !std::isfinite(a))
            throw NumericalError("log2_det_hpd: matrix is not positive definite");
        return std::log2(a);
    }
    if (!(min_eigenvalue(m) > min_eig))
        throw NumericalError("log2_det_hpd: matrix is not positive definite");
    Eigen::LLT<CMatrix> llt(0.5 * (m + m.adjoint()));
    if (llt.info() != Eigen::Success)
        throw NumericalError("log2_det_hpd: Cholesky factorization failed");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        acc += std::log(llt.matrixL()(j, j).real());
    return 2.0 * acc / kLn2;
}

bool is_hermitian(const CMatrix &m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_hermitian_psd(const CMatrix &m, double floor)
{
    if (m.rows() == 0)
        return true;
    if (!is_hermitian(m))
        return false;
    return min_eigenvalue(m) >= floor;
}

bool all_finite(const CMatrix &m)
{
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
                return false;
    return true;
}

bool all_finite(const CVector &v)
{
    for (Eigen::Index r = 0; r < v.size(); ++r)
        if (!std::isfinite(v(r).real()) || !std::isfinite(v(r).imag()))
            return false;
    return true;
}

} // namespace rsma
