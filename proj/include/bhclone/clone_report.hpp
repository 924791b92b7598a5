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

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>

namespace bhclone {

enum class Method { analytic, simulated };

inline std::string_view to_string(Method m) {
  return m == Method::analytic ? "analytic" : "simulated";
}

struct CloneDiagnostics {
  int n_max = 0;               // per-mode occupation cutoff (0 for closed forms)
  std::size_t basis_size = 0;  // dimension of one sector's truncated space
  double tail_mass = 0.0;
  // Largest change in reported values when the cutoff is raised by 4; NaN when not checked.
  double convergence_delta = std::numeric_limits<double>::quiet_NaN();
  // |closed form - explicit post-selection sum|; NaN when there is only one route.
  double closed_form_residual = std::numeric_limits<double>::quiet_NaN();
  int precision_digits = 16;
};

/// Fidelity of one of M clones made from N identical inputs.
struct CloneReport {
  int n = 1;
  int m = 1;
  double fidelity = 0.0;
  std::optional<double> anticlone_fidelity;
  double postselect_probability = 1.0;
  Method method = Method::analytic;
  CloneDiagnostics diagnostics;
};

}  // namespace bhclone
