// Copyright 2026 The bhclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Extended-precision real scalars usable inside Eigen's dense solvers.

#include <boost/multiprecision/cpp_bin_float.hpp>
#ifdef BHCLONE_HAVE_FLOAT128
#include <boost/multiprecision/float128.hpp>
#endif

#include <Eigen/Core>

#include <limits>

namespace bhclone::detail {

using Decimal50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;
using Decimal100 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;
#ifdef BHCLONE_HAVE_FLOAT128
using Quad = boost::multiprecision::float128;
#else
using Quad = Decimal50;  // slower stand-in with more digits
#endif

template <class Real>
struct MultiprecisionNumTraits : Eigen::GenericNumTraits<Real> {
  using NonInteger = Real;
  using Nested = Real;
  using Literal = Real;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 4, AddCost = 16, MulCost = 32 };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace bhclone::detail

namespace Eigen {
template <>
struct NumTraits<bhclone::detail::Decimal50> : bhclone::detail::MultiprecisionNumTraits<bhclone::detail::Decimal50> {
  using Real = bhclone::detail::Decimal50;
};
template <>
struct NumTraits<bhclone::detail::Decimal100> : bhclone::detail::MultiprecisionNumTraits<bhclone::detail::Decimal100> {
  using Real = bhclone::detail::Decimal100;
};
#ifdef BHCLONE_HAVE_FLOAT128
template <>
struct NumTraits<bhclone::detail::Quad> : bhclone::detail::MultiprecisionNumTraits<bhclone::detail::Quad> {
  using Real = bhclone::detail::Quad;
};
#endif
}  // namespace Eigen
