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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhclone/errors.hpp"

namespace bhclone {

/// Single-mode bosonic modes. Sector k couples (a_k, b_-k, c_k); sector -k couples
/// (a_-k, b_k, c_-k). Modes a are outside the horizon (region I), b inside (region II),
/// c are late-time incoming modes.
enum class Mode { a_k, a_minus_k, b_k, b_minus_k, c_k, c_minus_k };

enum class Sector { k, minus_k };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::a_k: return "a_k";
    case Mode::a_minus_k: return "a_-k";
    case Mode::b_k: return "b_k";
    case Mode::b_minus_k: return "b_-k";
    case Mode::c_k: return "c_k";
    case Mode::c_minus_k: return "c_-k";
  }
  return "?";
}

struct SectorModes {
  Mode a, b, c;
};

inline SectorModes sector_modes(Sector s) {
  return s == Sector::k ? SectorModes{Mode::a_k, Mode::b_minus_k, Mode::c_k}
                        : SectorModes{Mode::a_minus_k, Mode::b_k, Mode::c_minus_k};
}

inline Sector sector_of(Mode m) {
  switch (m) {
    case Mode::a_k:
    case Mode::b_minus_k:
    case Mode::c_k:
      return Sector::k;
    default:
      return Sector::minus_k;
  }
}

/// Truncated multimode occupation basis: every mode holds 0..n_max quanta.
/// Linear index is row-major in the mode order (first mode varies slowest).
class FockSpace {
 public:
  FockSpace(std::vector<Mode> modes, int n_max) : modes_(std::move(modes)), n_max_(n_max) {
    if (n_max_ < 0) throw DomainError("n_max must be >= 0");
    if (modes_.empty()) throw DomainError("a Fock space needs at least one mode");
    for (std::size_t i = 0; i < modes_.size(); ++i)
      for (std::size_t j = i + 1; j < modes_.size(); ++j)
        if (modes_[i] == modes_[j]) throw DomainError("duplicate mode " + std::string(to_string(modes_[i])));
    strides_.assign(modes_.size(), 1);
    for (std::size_t i = modes_.size() - 1; i > 0; --i) strides_[i - 1] = strides_[i] * levels();
    size_ = strides_[0] * levels();
  }

  /// The (a, b[, c]) modes of one sector.
  static FockSpace sector(Sector s, int n_max, bool with_c = true) {
    const SectorModes m = sector_modes(s);
    return with_c ? FockSpace({m.a, m.b, m.c}, n_max) : FockSpace({m.a, m.b}, n_max);
  }

  const std::vector<Mode>& modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::size_t levels() const { return static_cast<std::size_t>(n_max_) + 1; }
  std::size_t size() const { return size_; }
  std::size_t mode_count() const { return modes_.size(); }

  std::optional<std::size_t> position(Mode m) const {
    const auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - modes_.begin());
  }

  std::size_t require(Mode m) const {
    if (auto p = position(m)) return *p;
    throw DomainError("mode " + std::string(to_string(m)) + " is not part of this Fock space");
  }

  std::size_t stride(std::size_t pos) const { return strides_[pos]; }

  int occupation(std::size_t index, std::size_t pos) const {
    return static_cast<int>((index / strides_[pos]) % levels());
  }

  std::vector<int> occupations(std::size_t index) const {
    std::vector<int> occ(modes_.size());
    for (std::size_t p = 0; p < modes_.size(); ++p) occ[p] = occupation(index, p);
    return occ;
  }

  std::size_t index(std::span<const int> occ) const {
    if (occ.size() != modes_.size()) throw DomainError("occupation tuple has wrong length");
    std::size_t i = 0;
    for (std::size_t p = 0; p < occ.size(); ++p) {
      if (occ[p] < 0 || occ[p] > n_max_) {
        throw TruncationError("occupation " + std::to_string(occ[p]) + " outside 0.." + std::to_string(n_max_));
      }
      i += static_cast<std::size_t>(occ[p]) * strides_[p];
    }
    return i;
  }

  /// True when any mode sits at the cutoff.
  bool on_boundary(std::size_t index) const {
    for (std::size_t p = 0; p < modes_.size(); ++p)
      if (occupation(index, p) == n_max_) return true;
    return false;
  }

  bool operator==(const FockSpace& o) const { return modes_ == o.modes_ && n_max_ == o.n_max_; }

 private:
  std::vector<Mode> modes_;
  int n_max_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Complex amplitudes over a FockSpace.
struct FockVector {
  FockSpace space;
  Eigen::VectorXcd amplitudes;

  explicit FockVector(FockSpace s) : space(std::move(s)), amplitudes(Eigen::VectorXcd::Zero(space.size())) {}
  FockVector(FockSpace s, Eigen::VectorXcd amps) : space(std::move(s)), amplitudes(std::move(amps)) {
    if (static_cast<std::size_t>(amplitudes.size()) != space.size()) throw DomainError("amplitude count does not match space");
  }

  static FockVector basis(const FockSpace& s, std::span<const int> occ) {
    FockVector v(s);
    v.amplitudes[static_cast<Eigen::Index>(s.index(occ))] = 1.0;
    return v;
  }
  static FockVector vacuum(const FockSpace& s) {
    FockVector v(s);
    v.amplitudes[0] = 1.0;
    return v;
  }

  double norm() const { return amplitudes.norm(); }

  /// <this|other>
  std::complex<double> inner(const FockVector& other) const {
    if (!(space == other.space)) throw DomainError("inner product across different spaces");
    return amplitudes.dot(other.amplitudes);
  }

  double mean_occupation(Mode m) const {
    const std::size_t p = space.require(m);
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) s += std::norm(amplitudes[static_cast<Eigen::Index>(i)]) * space.occupation(i, p);
    return s;
  }

  /// Probability on basis states with some mode at the cutoff; estimates the mass lost to truncation.
  double boundary_mass() const {
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
      if (space.on_boundary(i)) s += std::norm(amplitudes[static_cast<Eigen::Index>(i)]);
    return s;
  }

  /// Occupation distribution of one mode.
  std::vector<double> marginal(Mode m) const {
    const std::size_t p = space.require(m);
    std::vector<double> d(space.levels(), 0.0);
    for (std::size_t i = 0; i < space.size(); ++i) d[space.occupation(i, p)] += std::norm(amplitudes[static_cast<Eigen::Index>(i)]);
    return d;
  }
};

/// Partial trace keeping one mode: R[x, y] = sum_rest u(x, rest) conj(v(y, rest)).
/// With u == v this is the reduced density matrix of that mode.
inline Eigen::MatrixXcd reduced_density(const FockVector& u, const FockVector& v, Mode keep) {
  if (!(u.space == v.space)) throw DomainError("partial trace across different spaces");
  const FockSpace& s = u.space;
  const std::size_t p = s.require(keep);
  const std::size_t stride = s.stride(p);
  const auto levels = static_cast<Eigen::Index>(s.levels());
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(levels, levels);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::complex<double> ui = u.amplitudes[static_cast<Eigen::Index>(i)];
    if (ui == 0.0) continue;
    const int x = s.occupation(i, p);
    const std::size_t base = i - static_cast<std::size_t>(x) * stride;
    for (Eigen::Index y = 0; y < levels; ++y) {
      r(x, y) += ui * std::conj(v.amplitudes[static_cast<Eigen::Index>(base + static_cast<std::size_t>(y) * stride)]);
    }
  }
  return r;
}

}  // namespace bhclone
