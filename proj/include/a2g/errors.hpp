// SPDX-License-Identifier: Apache-2.0
//
// a2g: air-to-ground link reliability toolkit
// Copyright (C) 2026 The a2g authors
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

#ifndef A2G_ERRORS_HPP
#define A2G_ERRORS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace a2g {

/// Raised when an iterative solver (root finder, bracket search, fixed point)
/// cannot produce an answer within its iteration budget or search interval.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& what)
{
    if (!condition)
        throw std::domain_error(what);
}

inline void require_finite_nonnegative(double v, const char* name)
{
    if (!std::isfinite(v) || v < 0.0)
        throw std::domain_error(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
}

inline void require_open_unit(double p, const char* name)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error(std::string(name) + " must lie in (0,1), got " + std::to_string(p));
}

}  // namespace detail
}  // namespace a2g

#endif
