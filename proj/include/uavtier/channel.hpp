// SPDX-License-Identifier: Apache-2.0
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

#ifndef UAVTIER_CHANNEL_HPP
#define UAVTIER_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uavtier/errors.hpp"

namespace uavtier {

// Rayleigh product channel H = Q_K ... Q_1 where Q_k is dims[k] x dims[k-1].
// dims[0] is the transmit side (users), dims.back() the receive side (BTS).
class ChannelSpec {
public:
    explicit ChannelSpec(std::vector<int> dims);

    std::span<const int> dims() const { return dims_; }
    int operator[](std::size_t i) const { return dims_[i]; }

    /// Number of matrices in the product.
    int tiers() const { return static_cast<int>(dims_.size()) - 1; }

    int users() const { return dims_.front(); }
    int receivers() const { return dims_.back(); }

    /// Smallest dimension; sets the multiplexing order of the product.
    int min_dim() const { return dims_[min_index_]; }

    /// First position holding min_dim(). Bound formulas treat it as the transmit side.
    std::size_t min_index() const { return min_index_; }

    /// All dims except the one at min_index(), in their original order.
    std::vector<int> product_dims() const;

    /// product_dims() minus min_dim(); the dimension excess of each factor.
    std::vector<int> excess() const;

    std::string to_string() const;

    bool operator==(const ChannelSpec&) const = default;

private:
    std::vector<int> dims_;
    std::size_t min_index_ = 0;
};

// Linear SNR held in the log domain so that very large and very small values
// (products of many tier gains) survive without overflow.
class SnrValue {
public:
    static SnrValue from_linear(double q);
    static SnrValue from_db(double db);
    static SnrValue from_log(double log_q);

    double linear() const { return std::exp(log_q_); }
    double log() const { return log_q_; }
    double db() const;

private:
    explicit SnrValue(double log_q) : log_q_(log_q) {}
    double log_q_;
};

struct CapacityEstimate {
    double mean = 0.0;        ///< nats per channel use
    double std_error = 0.0;   ///< sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

using ComplexMatrix = Eigen::MatrixXcd;

/// Generator for the draw with the given index. Depends only on (seed, index)
/// so any partition of the index range over workers yields the same draws.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x5eedu};
    return std::mt19937_64(seq);
}

/// One realisation of the product channel, shape dims.back() x dims.front().
/// Entries of every factor are circularly-symmetric complex Gaussian with unit
/// variance (variance 1/2 per real component).
template <typename Scalar = double, typename Generator>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
sample_channel(const ChannelSpec& spec, Generator& gen)
{
    using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
    std::normal_distribution<Scalar> component(Scalar(0), std::sqrt(Scalar(0.5)));
    auto draw = [&](int rows, int cols) {
        Matrix q(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) {
                const Scalar re = component(gen);
                const Scalar im = component(gen);
                q(i, j) = std::complex<Scalar>(re, im);
            }
        return q;
    };

    Matrix h = draw(spec[1], spec[0]);
    for (int k = 2; k <= spec.tiers(); ++k) {
        Matrix next = draw(spec[k], spec[k - 1]) * h;
        h.swap(next);
    }
    return h;
}

namespace detail {

// Eigenvalues of the Gram matrix on the smaller side of h, descending, with
// round-off negatives clamped to zero.
template <typename Derived>
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixBase<Derived>& h)
{
    if (!h.allFinite())
        throw NumericError("channel matrix has non-finite entries");

    const Eigen::MatrixXcd hd = h.template cast<std::complex<double>>();
    const Eigen::MatrixXcd gram =
        hd.cols() <= hd.rows() ? Eigen::MatrixXcd(hd.adjoint() * hd) : Eigen::MatrixXcd(hd * hd.adjoint());
    if (gram.size() == 0)
        return {};

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("Hermitian eigensolver did not converge");

    Eigen::VectorXd ev = solver.eigenvalues().reverse();
    const double scale = std::max(ev(0), 0.0);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < 0.0) {
            if (ev(i) < -1e-12 * scale)
                throw NumericError("Gram matrix is not positive semidefinite");
            ev(i) = 0.0;
        }
    }
    return ev;
}

inline Eigen::Index retained_rank(Eigen::Index available, std::optional<int> rank)
{
    if (!rank)
        return available;
    require(*rank >= 0, "rank must be non-negative");
    return std::min<Eigen::Index>(available, *rank);
}

} // namespace detail

/// ln det(I + q G) with G the Gram matrix on the smaller side of h.
///
/// When `rank` is given only the `rank` largest eigenvalues are used. A
/// product channel through a bottleneck tier has structural rank min_dim();
/// the remaining eigenvalues are exact zeros that round-off would otherwise
/// lift to ~1e-16 * ||G||, which is visible once q is large.
template <typename Derived>
double capacity_sample(const Eigen::MatrixBase<Derived>& h, SnrValue q, std::optional<int> rank = std::nullopt)
{
    const Eigen::VectorXd ev = detail::gram_eigenvalues(h);
    const Eigen::Index keep = detail::retained_rank(ev.size(), rank);
    const double ql = q.linear();
    if (!std::isfinite(ql))
        throw NumericError("SNR overflows double precision");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < keep; ++i)
        sum += std::log1p(ql * ev(i));
    return sum;
}

/// ln det(G) over the `rank` largest Gram eigenvalues (all of them by default).
/// Returns -infinity when the smallest retained eigenvalue is below 1e-300;
/// callers count such draws rather than averaging them.
template <typename Derived>
double logdet_gram_sample(const Eigen::MatrixBase<Derived>& h, std::optional<int> rank = std::nullopt)
{
    const Eigen::VectorXd ev = detail::gram_eigenvalues(h);
    const Eigen::Index keep = detail::retained_rank(ev.size(), rank);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < keep; ++i) {
        if (!(ev(i) >= 1e-300))
            return -std::numeric_limits<double>::infinity();
        sum += std::log(ev(i));
    }
    return sum;
}

} // namespace uavtier

#endif // UAVTIER_CHANNEL_HPP
