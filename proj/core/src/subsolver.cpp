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

#include "rsma/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsma/rates.hpp"
#include "rsma/wmmse.hpp"

namespace rsma
{

std::string to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::converged:
        return "converged";
    case SolveStatus::iteration_limit:
        return "iteration_limit";
    case SolveStatus::line_search_failure:
        return "line_search_failure";
    case SolveStatus::trivial:
        return "trivial";
    case SolveStatus::initial:
        return "initial";
    }
    return "unknown";
}

std::string to_string(SlackKind kind)
{
    switch (kind)
    {
    case SlackKind::epigraph:
        return "epigraph";
    case SlackKind::private_rate:
        return "private_rate";
    case SlackKind::common_rate:
        return "common_rate";
    case SlackKind::fronthaul:
        return "fronthaul";
    case SlackKind::power:
        return "power";
    case SlackKind::nonnegative:
        return "nonnegative";
    }
    return "unknown";
}

bool rrh_is_muted(const SystemConfig &cfg, int i)
{
    return !(cfg.fronthaul_capacity[i] > 0.0) || !(cfg.power_limit[i] > 0.0);
}

StandardForm::StandardForm(const SubproblemData &data)
    : cfg_(data.config), structure_(data.structure), h_(data.channel.h), ranges_(data.config.antenna_ranges())
{
    const auto &cfg = cfg_;
    const auto &st = structure_;
    const auto &aux = data.aux;
    if (h_.rows() != cfg.num_ues || h_.cols() != cfg.total_antennas())
        throw DimensionError("channel", "shape does not match the configuration");
    if (static_cast<int>(aux.u_private.size()) != cfg.num_ues || static_cast<int>(aux.w_private.size()) != cfg.num_ues ||
        aux.u_common.size() != st.sets.size() || aux.w_common.size() != st.sets.size() ||
        static_cast<int>(aux.sigma.size()) != cfg.num_rrhs)
        throw DimensionError("aux", "auxiliary variables do not match the problem dimensions");
    for (std::size_t l = 0; l < st.sets.size(); ++l)
        if (aux.u_common[l].size() != st.sets[l].size() || aux.w_common[l].size() != st.sets[l].size())
            throw DimensionError("aux", "common auxiliaries must align with set members");

    muted_.resize(cfg.num_rrhs);
    std::vector<int> active_rows;
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        muted_[i] = rrh_is_muted(cfg, i);
        if (!muted_[i])
            for (int a = 0; a < ranges_[i].count; ++a)
                active_rows.push_back(ranges_[i].offset + a);
    }
    trivial_ = active_rows.empty();

    int idx = 0;
    auto add_precoder = [&]() {
        Block b;
        b.rows = active_rows;
        for (std::size_t p = 0; p < active_rows.size(); ++p)
        {
            b.re.push_back(idx++);
            b.im.push_back(idx++);
        }
        blocks_.push_back(std::move(b));
    };
    num_private_blocks_ = cfg.num_ues;
    num_common_blocks_ = st.num_sets();
    for (int k = 0; k < cfg.num_ues; ++k)
        add_precoder();
    for (int l = 0; l < st.num_sets(); ++l)
        add_precoder();
    num_precoder_reals_ = idx;

    omega_block_begin_.assign(cfg.num_rrhs, -1);
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        if (muted_[i])
            continue;
        omega_block_begin_[i] = static_cast<int>(blocks_.size());
        for (int j = 0; j < ranges_[i].count; ++j)
        {
            Block b;
            b.rrh = i;
            for (int r = j; r < ranges_[i].count; ++r)
            {
                b.rows.push_back(ranges_[i].offset + r);
                b.re.push_back(idx++);
                b.im.push_back(r == j ? -1 : idx++);
            }
            b.diag = b.re.front();
            blocks_.push_back(std::move(b));
        }
    }
    num_omega_reals_ = idx - num_precoder_reals_;

    rate_begin_ = idx;
    ue_rate_vars_.assign(cfg.num_ues, {});
    for (int k = 0; k < cfg.num_ues; ++k)
    {
        private_rate_var_.push_back(idx);
        ue_rate_vars_[k].push_back(idx++);
    }
    common_rate_var_.resize(st.num_sets());
    for (int l = 0; l < st.num_sets(); ++l)
        for (int k : st.sets[l])
        {
            common_rate_var_[l].push_back(idx);
            ue_rate_vars_[k].push_back(idx++);
        }
    num_rate_vars_ = idx - rate_begin_;
    t_index_ = idx++;
    num_vars_ = idx;

    for (int k = 0; k < cfg.num_ues; ++k)
        tags_.push_back({SlackKind::epigraph, k, k});
    if (trivial_)
        return;

    std::vector<int> omega_blocks;
    for (int b = num_private_blocks_ + num_common_blocks_; b < static_cast<int>(blocks_.size()); ++b)
        omega_blocks.push_back(b);

    for (int k = 0; k < cfg.num_ues; ++k)
    {
        RateRow row;
        row.ue = k;
        row.own = k;
        for (int m = 0; m < cfg.num_ues; ++m)
            row.blocks.push_back(m);
        for (int l = 0; l < st.num_sets(); ++l)
            if (!st.contains(l, k))
                row.blocks.push_back(num_private_blocks_ + l);
        row.blocks.insert(row.blocks.end(), omega_blocks.begin(), omega_blocks.end());
        row.rate_vars = {private_rate_var_[k]};
        row.u = aux.u_private[k];
        const double w = aux.w_private[k];
        if (!(w > 0.0) || !std::isfinite(w))
            throw NumericalError("assemble: weights must be positive and finite");
        row.a = std::log2(w) + 1.0 / kLn2;
        row.b = w / kLn2;
        rate_rows_.push_back(std::move(row));
        tags_.push_back({SlackKind::private_rate, k, k});
    }
    for (int l = 0; l < st.num_sets(); ++l)
    {
        for (std::size_t j = 0; j < st.sets[l].size(); ++j)
        {
            const int k = st.sets[l][j];
            RateRow row;
            row.ue = k;
            row.own = num_private_blocks_ + l;
            for (int m = 0; m < cfg.num_ues; ++m)
                row.blocks.push_back(m);
            for (int m = 0; m < st.num_sets(); ++m)
                if (!st.contains(m, k))
                    row.blocks.push_back(num_private_blocks_ + m);
            const auto &order = st.orders[k];
            for (std::size_t pos = st.decode_position(k, l); pos < order.size(); ++pos)
                row.blocks.push_back(num_private_blocks_ + order[pos]);
            row.blocks.insert(row.blocks.end(), omega_blocks.begin(), omega_blocks.end());
            row.rate_vars = common_rate_var_[l];
            row.u = aux.u_common[l][j];
            const double w = aux.w_common[l][j];
            if (!(w > 0.0) || !std::isfinite(w))
                throw NumericalError("assemble: weights must be positive and finite");
            row.a = std::log2(w) + 1.0 / kLn2;
            row.b = w / kLn2;
            rate_rows_.push_back(std::move(row));
            tags_.push_back({SlackKind::common_rate, l, k});
        }
    }

    std::vector<int> precoder_blocks;
    for (int b = 0; b < num_private_blocks_ + num_common_blocks_; ++b)
        precoder_blocks.push_back(b);
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        if (muted_[i])
            continue;
        auto blocks = precoder_blocks;
        for (int j = 0; j < ranges_[i].count; ++j)
            blocks.push_back(omega_block_begin_[i] + j);

        FronthaulRow fr;
        fr.rrh = i;
        const CMatrix &sigma = aux.sigma[i];
        if (sigma.rows() != ranges_[i].count || sigma.cols() != ranges_[i].count)
            throw DimensionError("sigma", "shape must be n_{R,i} x n_{R,i}");
        fr.constant = log2_det_hpd(sigma) - ranges_[i].count / kLn2;
        fr.sigma_inv = sigma.llt().solve(CMatrix::Identity(sigma.rows(), sigma.cols()));
        fr.sigma_inv = 0.5 * (fr.sigma_inv + fr.sigma_inv.adjoint()).eval();
        fr.capacity = cfg.fronthaul_capacity[i];
        fr.blocks = blocks;
        fronthaul_rows_.push_back(std::move(fr));
        tags_.push_back({SlackKind::fronthaul, i, -1});
    }
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        if (muted_[i])
            continue;
        PowerRow pr;
        pr.rrh = i;
        pr.limit = cfg.power_limit[i];
        pr.blocks = precoder_blocks;
        for (int j = 0; j < ranges_[i].count; ++j)
            pr.blocks.push_back(omega_block_begin_[i] + j);
        power_rows_.push_back(std::move(pr));
        tags_.push_back({SlackKind::power, i, -1});
    }
    first_nonneg_ = static_cast<int>(tags_.size());
    for (int r = 0; r < num_rate_vars_; ++r)
        tags_.push_back({SlackKind::nonnegative, r, -1});
}

StandardForm assemble(const SubproblemData &data) { return StandardForm(data); }

RVector StandardForm::pack(const DesignVariables &vars, double t) const
{
    RVector x = RVector::Zero(num_vars_);
    for (int b = 0; b < num_private_blocks_ + num_common_blocks_; ++b)
    {
        const CVector &v = b < num_private_blocks_ ? vars.v_private[b] : vars.v_common[b - num_private_blocks_];
        const Block &blk = blocks_[b];
        for (std::size_t p = 0; p < blk.rows.size(); ++p)
        {
            x[blk.re[p]] = v[blk.rows[p]].real();
            x[blk.im[p]] = v[blk.rows[p]].imag();
        }
    }
    for (int i = 0; i < cfg_.num_rrhs; ++i)
    {
        if (muted_[i])
            continue;
        const CMatrix &omega = vars.omega[i];
        Eigen::LLT<CMatrix> llt(0.5 * (omega + omega.adjoint()));
        if (llt.info() != Eigen::Success || !(min_eigenvalue(omega) > 0.0))
            throw NumericalError("pack: quantization covariance of an active RRH must be positive definite");
        const CMatrix chol = llt.matrixL();
        for (int j = 0; j < ranges_[i].count; ++j)
        {
            const Block &blk = blocks_[omega_block_begin_[i] + j];
            for (std::size_t p = 0; p < blk.rows.size(); ++p)
            {
                const cplx c = chol(blk.rows[p] - ranges_[i].offset, j);
                x[blk.re[p]] = c.real();
                if (blk.im[p] >= 0)
                    x[blk.im[p]] = c.imag();
            }
        }
    }
    for (int k = 0; k < cfg_.num_ues; ++k)
        x[private_rate_var_[k]] = vars.rates.private_rates[k];
    for (int l = 0; l < structure_.num_sets(); ++l)
        for (std::size_t j = 0; j < structure_.sets[l].size(); ++j)
            x[common_rate_var_[l][j]] = vars.rates.common[l][j];
    x[t_index_] = t;
    return x;
}

void StandardForm::load_blocks(const RVector &x, CMatrix &z) const
{
    z.setZero(h_.cols(), static_cast<Eigen::Index>(blocks_.size()));
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        const Block &blk = blocks_[b];
        for (std::size_t p = 0; p < blk.rows.size(); ++p)
            z(blk.rows[p], b) = cplx(x[blk.re[p]], blk.im[p] >= 0 ? x[blk.im[p]] : 0.0);
    }
}

DesignVariables StandardForm::unpack(const RVector &x) const
{
    DesignVariables vars = DesignVariables::zeros(cfg_, structure_);
    if (trivial_)
        return vars;
    CMatrix z;
    load_blocks(x, z);
    for (int k = 0; k < num_private_blocks_; ++k)
        vars.v_private[k] = z.col(k);
    for (int l = 0; l < num_common_blocks_; ++l)
        vars.v_common[l] = z.col(num_private_blocks_ + l);
    for (int i = 0; i < cfg_.num_rrhs; ++i)
    {
        if (muted_[i])
            continue;
        const auto r = ranges_[i];
        CMatrix chol = CMatrix::Zero(r.count, r.count);
        for (int j = 0; j < r.count; ++j)
            chol.col(j) = z.col(omega_block_begin_[i] + j).segment(r.offset, r.count);
        vars.omega[i] = chol * chol.adjoint();
    }
    for (int k = 0; k < cfg_.num_ues; ++k)
        vars.rates.private_rates[k] = std::max(0.0, x[private_rate_var_[k]]);
    for (int l = 0; l < structure_.num_sets(); ++l)
        for (std::size_t j = 0; j < structure_.sets[l].size(); ++j)
            vars.rates.common[l][j] = std::max(0.0, x[common_rate_var_[l][j]]);
    return vars;
}

double StandardForm::min_rate(const RVector &x) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &vars : ue_rate_vars_)
    {
        double total = 0.0;
        for (int v : vars)
            total += x[v];
        best = std::min(best, total);
    }
    return best;
}

void StandardForm::evaluate(const RVector &x, RVector &s, RMatrix *jac) const
{
    const int m = num_constraints();
    s.resize(m);
    if (jac)
        jac->setZero(m, num_vars_);
    int j = 0;

    for (int k = 0; k < cfg_.num_ues; ++k, ++j)
    {
        double total = 0.0;
        for (int v : ue_rate_vars_[k])
        {
            total += x[v];
            if (jac)
                (*jac)(j, v) = 1.0;
        }
        s[j] = total - x[t_index_];
        if (jac)
            (*jac)(j, t_index_) = -1.0;
    }
    if (trivial_)
        return;

    CMatrix z;
    load_blocks(x, z);
    const CMatrix amp = h_.conjugate() * z; // amp(k, b) = h_k^H z_b

    auto scatter = [&](int row, const Block &blk, const CVector &g) {
        for (std::size_t p = 0; p < blk.rows.size(); ++p)
        {
            (*jac)(row, blk.re[p]) += g[blk.rows[p]].real();
            if (blk.im[p] >= 0)
                (*jac)(row, blk.im[p]) += g[blk.rows[p]].imag();
        }
    };

    for (const RateRow &row : rate_rows_)
    {
        const int k = row.ue;
        const double u2 = std::norm(row.u);
        double received = cfg_.noise_variance[k];
        for (int b : row.blocks)
            received += std::norm(amp(k, b));
        const double e = u2 * received - 2.0 * (std::conj(row.u) * amp(k, row.own)).real() + 1.0;
        double rates = 0.0;
        for (int v : row.rate_vars)
            rates += x[v];
        s[j] = row.a - row.b * e - rates;
        if (jac)
        {
            const CVector hk = h_.row(k).transpose();
            for (int b : row.blocks)
            {
                cplx coef = -row.b * 2.0 * u2 * amp(k, b);
                if (b == row.own)
                    coef += row.b * 2.0 * row.u;
                scatter(j, blocks_[b], coef * hk);
            }
            for (int v : row.rate_vars)
                (*jac)(j, v) -= 1.0;
        }
        ++j;
    }

    for (const FronthaulRow &row : fronthaul_rows_)
    {
        const auto r = ranges_[row.rrh];
        double quad = 0.0;
        double logs = 0.0;
        bool in_domain = true;
        for (int b : row.blocks)
        {
            const CVector seg = z.col(b).segment(r.offset, r.count);
            quad += (seg.adjoint() * row.sigma_inv * seg)(0, 0).real();
        }
        for (int c = 0; c < r.count; ++c)
        {
            const double d = x[blocks_[omega_block_begin_[row.rrh] + c].diag];
            if (!(d > 0.0))
                in_domain = false;
            else
                logs += std::log(d);
        }
        s[j] = in_domain ? row.capacity - row.constant - quad / kLn2 + 2.0 * logs / kLn2
                         : -std::numeric_limits<double>::infinity();
        if (jac && in_domain)
        {
            for (int b : row.blocks)
            {
                CVector g = CVector::Zero(h_.cols());
                g.segment(r.offset, r.count) = (-2.0 / kLn2) * (row.sigma_inv * z.col(b).segment(r.offset, r.count));
                scatter(j, blocks_[b], g);
            }
            for (int c = 0; c < r.count; ++c)
            {
                const int d = blocks_[omega_block_begin_[row.rrh] + c].diag;
                (*jac)(j, d) += 2.0 / (kLn2 * x[d]);
            }
        }
        ++j;
    }

    for (const PowerRow &row : power_rows_)
    {
        const auto r = ranges_[row.rrh];
        double p = 0.0;
        for (int b : row.blocks)
            p += z.col(b).segment(r.offset, r.count).squaredNorm();
        s[j] = row.limit - p;
        if (jac)
        {
            for (int b : row.blocks)
            {
                CVector g = CVector::Zero(h_.cols());
                g.segment(r.offset, r.count) = -2.0 * z.col(b).segment(r.offset, r.count);
                scatter(j, blocks_[b], g);
            }
        }
        ++j;
    }

    for (int v = 0; v < num_rate_vars_; ++v, ++j)
    {
        s[j] = x[rate_begin_ + v];
        if (jac)
            (*jac)(j, rate_begin_ + v) = 1.0;
    }
}

RVector StandardForm::slacks(const RVector &x) const
{
    RVector s;
    evaluate(x, s, nullptr);
    return s;
}

RMatrix StandardForm::jacobian(const RVector &x) const
{
    RVector s;
    RMatrix jac;
    evaluate(x, s, &jac);
    return jac;
}

double StandardForm::barrier(const RVector &x, double mu) const
{
    const RVector s = slacks(x);
    double acc = -x[t_index_] / mu;
    for (Eigen::Index j = 0; j < s.size(); ++j)
    {
        if (!(s[j] > 0.0) || !std::isfinite(s[j]))
            return std::numeric_limits<double>::infinity();
        acc -= std::log(s[j]);
    }
    return acc;
}

void StandardForm::barrier_derivatives(const RVector &x, double mu, RVector &grad, RMatrix &hess) const
{
    RVector s;
    RMatrix jac;
    evaluate(x, s, &jac);
    if (!((s.array() > 0.0).all()))
        throw NumericalError("barrier_derivatives: point is not strictly feasible");

    const RVector inv_s = s.cwiseInverse();
    grad = -(jac.transpose() * inv_s);
    grad[t_index_] -= 1.0 / mu;

    // Only the rate, fronthaul and power rows touch the precoder and Omega
    // columns, so the dense Gauss-Newton part is formed from those rows alone.
    const RMatrix scaled = inv_s.asDiagonal() * jac;
    const int dense = num_precoder_reals_ + num_omega_reals_;
    const int tail = num_vars_ - dense;
    const int first_row = cfg_.num_ues;
    const int num_rows = first_nonneg_ - first_row;
    hess.setZero(num_vars_, num_vars_);
    const auto mid = scaled.middleRows(first_row, num_rows);
    hess.topLeftCorner(dense, dense).selfadjointView<Eigen::Lower>().rankUpdate(mid.leftCols(dense).transpose());
    hess.bottomLeftCorner(tail, dense).noalias() = mid.rightCols(tail).transpose() * mid.leftCols(dense);
    hess.bottomRightCorner(tail, tail).noalias() = scaled.rightCols(tail).transpose() * scaled.rightCols(tail);
    hess.triangularView<Eigen::StrictlyUpper>() = hess.transpose();

    if (trivial_)
        return;

    // Curvature of the nonlinear slacks, accumulated per block as a complex
    // Hermitian matrix A_b; the real Hessian block is realify(2 A_b).
    const int n = static_cast<int>(h_.cols());
    const int num_blocks = static_cast<int>(blocks_.size());
    RMatrix ue_coef = RMatrix::Zero(cfg_.num_ues, num_blocks);
    std::vector<CMatrix> acc(num_blocks, CMatrix::Zero(n, n));

    int j = cfg_.num_ues;
    for (const RateRow &row : rate_rows_)
    {
        const double c = row.b * std::norm(row.u) / s[j];
        for (int b : row.blocks)
            ue_coef(row.ue, b) += c;
        ++j;
    }
    const CMatrix h_t = h_.transpose();
    const CMatrix h_c = h_.conjugate();
    for (int b = 0; b < num_blocks; ++b)
        if (ue_coef.col(b).any())
            acc[b] = h_t * ue_coef.col(b).cast<cplx>().asDiagonal() * h_c;

    for (const FronthaulRow &row : fronthaul_rows_)
    {
        const auto r = ranges_[row.rrh];
        const double c = 1.0 / (kLn2 * s[j]);
        for (int b : row.blocks)
            acc[b].block(r.offset, r.offset, r.count, r.count) += c * row.sigma_inv;
        for (int col = 0; col < r.count; ++col)
        {
            const int d = blocks_[omega_block_begin_[row.rrh] + col].diag;
            hess(d, d) += 2.0 / (kLn2 * x[d] * x[d] * s[j]);
        }
        ++j;
    }
    for (const PowerRow &row : power_rows_)
    {
        const auto r = ranges_[row.rrh];
        const double c = 1.0 / s[j];
        for (int b : row.blocks)
            acc[b].block(r.offset, r.offset, r.count, r.count).diagonal().array() += c;
        ++j;
    }

    for (int b = 0; b < num_blocks; ++b)
    {
        const Block &blk = blocks_[b];
        const CMatrix &a = acc[b];
        const std::size_t np = blk.rows.size();
        for (std::size_t p = 0; p < np; ++p)
        {
            for (std::size_t q = 0; q < np; ++q)
            {
                const cplx apq = a(blk.rows[p], blk.rows[q]);
                hess(blk.re[p], blk.re[q]) += 2.0 * apq.real();
                if (blk.im[q] >= 0)
                    hess(blk.re[p], blk.im[q]) -= 2.0 * apq.imag();
                if (blk.im[p] >= 0)
                {
                    hess(blk.im[p], blk.re[q]) += 2.0 * apq.imag();
                    if (blk.im[q] >= 0)
                        hess(blk.im[p], blk.im[q]) += 2.0 * apq.real();
                }
            }
        }
    }
}

namespace
{

// phi(x + step) - phi(x) for the barrier objective, formed from slack ratios
// so the difference keeps full precision when -t/mu is large.
double barrier_change(const StandardForm &form, const RVector &x, const RVector &s, const RVector &xn, double mu,
                      RVector &sn)
{
    sn = form.slacks(xn);
    double change = -(xn[form.epigraph_index()] - x[form.epigraph_index()]) / mu;
    for (Eigen::Index j = 0; j < sn.size(); ++j)
    {
        if (!(sn[j] > 0.0) || !std::isfinite(sn[j]))
            return std::numeric_limits<double>::infinity();
        change -= std::log(sn[j] / s[j]);
    }
    return change;
}

bool strictly_feasible(const RVector &s) { return (s.array() > 0.0).all() && s.allFinite(); }

// Pulls the rate variables inward until the point is strictly feasible. Only
// the rate split is touched; precoders and covariances must already be
// interior.
bool repair_rates(const StandardForm &form, RVector &x)
{
    const int begin = form.num_precoder_reals() + form.num_omega_reals();
    const int count = form.num_rate_variables();
    for (int v = begin; v < begin + count; ++v)
        if (!(x[v] > 0.0))
            x[v] = 1e-9;
    for (int attempt = 0; attempt < 80; ++attempt)
    {
        x[form.epigraph_index()] = form.min_rate(x) - 1e-3 * std::abs(form.min_rate(x)) - 1e-9;
        if (strictly_feasible(form.slacks(x)))
            return true;
        x.segment(begin, count) *= 0.5;
    }
    return false;
}

} // namespace

SubproblemSolution solve(const SubproblemData &data, const SolverOptions &opts)
{
    const StandardForm form(data);
    SubproblemSolution sol;
    if (form.trivial())
    {
        sol.vars = form.unpack(RVector::Zero(form.num_variables()));
        sol.t = 0.0;
        sol.diagnostics.status = SolveStatus::trivial;
        return sol;
    }

    RVector x = form.pack(data.warm_start, 0.0);
    {
        const double start = form.min_rate(x);
        x[form.epigraph_index()] = start - 1e-2 * std::abs(start) - 1e-6;
    }
    RVector s = form.slacks(x);
    if (!strictly_feasible(s))
    {
        if (!repair_rates(form, x))
            throw NumericalError("solve: warm start is not strictly feasible");
        s = form.slacks(x);
    }
    const RVector warm = x;
    const double warm_objective = form.min_rate(x);

    SolverDiagnostics diag;
    diag.status = SolveStatus::converged;
    RVector grad;
    RMatrix hess;
    RVector sn;
    double mu = opts.mu_initial;
    double lambda = std::numeric_limits<double>::infinity();
    bool stop = false;
    while (!stop)
    {
        const bool last_stage = mu <= opts.mu_final * (1.0 + 1e-12);
        const double stage_tol = last_stage ? 0.5 * opts.tolerance * opts.tolerance : opts.centering_tolerance;
        bool centered = false;
        for (int it = 0; it < opts.max_newton_per_stage && diag.newton_iterations < opts.max_newton_total; ++it)
        {
            form.barrier_derivatives(x, mu, grad, hess);
            RVector step;
            Eigen::LLT<RMatrix> llt(hess);
            if (llt.info() == Eigen::Success)
                step = llt.solve(-grad);
            else
                step = hess.ldlt().solve(-grad);
            const double slope = grad.dot(step);
            if (!std::isfinite(slope))
            {
                diag.status = SolveStatus::line_search_failure;
                stop = true;
                break;
            }
            lambda = std::sqrt(std::max(0.0, -slope));
            if (0.5 * lambda * lambda <= stage_tol)
            {
                centered = true;
                break;
            }
            double alpha = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt, alpha *= opts.backtrack)
            {
                const RVector xn = x + alpha * step;
                const double change = barrier_change(form, x, s, xn, mu, sn);
                if (change <= opts.armijo * alpha * slope)
                {
                    x = xn;
                    s = sn;
                    accepted = true;
                    break;
                }
            }
            ++diag.newton_iterations;
            if (!accepted)
            {
                // no representable decrease left along the Newton direction
                centered = 0.5 * lambda * lambda <= std::max(stage_tol, 1e-10);
                if (!centered)
                {
                    diag.status = SolveStatus::line_search_failure;
                    stop = true;
                }
                break;
            }
        }
        if (!centered && !stop)
        {
            diag.status = SolveStatus::iteration_limit;
            stop = true;
        }
        if (last_stage)
            break;
        mu = std::max(mu / opts.mu_factor, opts.mu_final);
    }
    diag.final_mu = mu;
    diag.stationarity = lambda;
    diag.max_violation = std::max(0.0, -s.minCoeff());

    const RVector &best = form.min_rate(x) >= warm_objective ? x : warm;
    diag.kept_warm_start = &best == &warm;
    sol.vars = form.unpack(best);
    sol.t = sol.vars.rates.min_ue_total(data.structure);
    sol.diagnostics = diag;
    return sol;
}

KktReport check_kkt(const SubproblemData &data, const SubproblemSolution &solution)
{
    const auto &cfg = data.config;
    const auto &st = data.structure;
    const auto &chan = data.channel;
    const auto &aux = data.aux;
    const auto &vars = solution.vars;
    KktReport rep;

    auto note = [&](SlackKind kind, int index, int ue, double excess) {
        if (excess > 0.0)
            rep.max_surrogate_violation = std::max(rep.max_surrogate_violation, excess);
        if (excess > 1e-7)
            rep.violated.push_back({kind, index, ue});
    };

    for (int k = 0; k < cfg.num_ues; ++k)
    {
        const double bound = lower_bound_private(k, vars, chan, st, cfg, aux.u_private[k], aux.w_private[k]);
        note(SlackKind::private_rate, k, k, vars.rates.private_rates[k] - bound);
        note(SlackKind::nonnegative, k, k, -vars.rates.private_rates[k]);
    }
    for (int l = 0; l < st.num_sets(); ++l)
    {
        const double carried = vars.rates.set_total(l);
        for (std::size_t j = 0; j < st.sets[l].size(); ++j)
        {
            const int k = st.sets[l][j];
            const double bound = lower_bound_common(l, k, vars, chan, st, cfg, aux.u_common[l][j], aux.w_common[l][j]);
            note(SlackKind::common_rate, l, k, carried - bound);
            note(SlackKind::nonnegative, l, k, -vars.rates.common[l][j]);
        }
    }
    for (int i = 0; i < cfg.num_rrhs; ++i)
    {
        note(SlackKind::power, i, -1, transmit_power(i, vars, cfg) - cfg.power_limit[i]);
        // a silent RRH sends nothing over its fronthaul
        if (rrh_is_muted(cfg, i) || transmit_covariance(i, vars, cfg).isZero(0.0))
            continue;
        double g = std::numeric_limits<double>::infinity();
        try
        {
            g = upper_bound_fronthaul(i, vars, aux.sigma[i], cfg);
        }
        catch (const NumericalError &)
        {
        }
        note(SlackKind::fronthaul, i, -1, g - cfg.fronthaul_capacity[i]);
    }

    const RateReport exact = evaluate(vars, chan, st, cfg);
    for (const auto &v : exact.violations)
        rep.max_exact_violation =
            std::max(rep.max_exact_violation, (v.lhs - v.rhs) / std::max(1.0, std::abs(v.rhs)));
    rep.epigraph_residual = std::abs(solution.t - vars.rates.min_ue_total(st));
    const StandardForm form(data);
    rep.complementarity_gap = form.num_constraints() * solution.diagnostics.final_mu;
    return rep;
}

} // namespace rsma
