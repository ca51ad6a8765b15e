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

#include "uavtier/channel.hpp"

#include <algorithm>
#include <numbers>

namespace uavtier {

ChannelSpec::ChannelSpec(std::vector<int> dims) : dims_(std::move(dims))
{
    require(dims_.size() >= 2, "a channel needs at least two dimensions (K >= 1)");
    for (int d : dims_)
        require(d >= 1, "every channel dimension must be >= 1");
    min_index_ = static_cast<std::size_t>(std::min_element(dims_.begin(), dims_.end()) - dims_.begin());
}

std::vector<int> ChannelSpec::product_dims() const
{
    std::vector<int> out;
    out.reserve(dims_.size() - 1);
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (i != min_index_)
            out.push_back(dims_[i]);
    return out;
}

std::vector<int> ChannelSpec::excess() const
{
    std::vector<int> out = product_dims();
    for (int& d : out)
        d -= min_dim();
    return out;
}

std::string ChannelSpec::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(dims_[i]);
    }
    return s + ')';
}

SnrValue SnrValue::from_linear(double q)
{
    require(std::isfinite(q) && q > 0.0, "SNR must be finite and > 0");
    return SnrValue(std::log(q));
}

SnrValue SnrValue::from_db(double db)
{
    require(std::isfinite(db), "SNR in dB must be finite");
    return SnrValue(db * std::numbers::ln10 / 10.0);
}

SnrValue SnrValue::from_log(double log_q)
{
    require(std::isfinite(log_q), "log SNR must be finite");
    return SnrValue(log_q);
}

double SnrValue::db() const
{
    return 10.0 * log_q_ / std::numbers::ln10;
}

} // namespace uavtier
