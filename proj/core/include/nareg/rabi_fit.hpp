// Copyright 2026 The nareg Authors
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

#include <span>

namespace nareg {

/// Least-squares fit of y = offset + b cos(2 pi t / T) + c sin(2 pi t / T).
struct SinusoidFit {
    double period = 0.0;
    double offset = 0.0;
    /// Peak-to-peak amplitude, 2 sqrt(b^2 + c^2).
    double contrast = 0.0;
    double rms_residual = 0.0;
};

/// Scans the period between twice the smallest sample spacing and twice the
/// sampled span, then refines by golden-section search. Needs >= 4 samples.
SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y);

}  // namespace nareg
