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

#include "nareg/rabi_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nareg/errors.hpp"

namespace nareg {

namespace {

struct LinearFit {
    double a = 0, b = 0, c = 0;
    double sse = std::numeric_limits<double>::infinity();
};

// Normal equations for [1, cos, sin] at fixed angular frequency, solved by
// Cramer's rule.
LinearFit fit_at(std::span<const double> t, std::span<const double> y, double omega) {
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> r{};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::array<double, 3> f{1.0, std::cos(omega * t[i]), std::sin(omega * t[i])};
        for (int p = 0; p < 3; ++p) {
            r[p] += f[p] * y[i];
            for (int q = 0; q < 3; ++q) m[p][q] += f[p] * f[q];
        }
    }
    auto det3 = [](const std::array<std::array<double, 3>, 3> &a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det3(m);
    LinearFit fit;
    if (std::abs(d) < 1e-12) return fit;
    std::array<double, 3> coef{};
    for (int col = 0; col < 3; ++col) {
        auto mc = m;
        for (int row = 0; row < 3; ++row) mc[row][col] = r[row];
        coef[col] = det3(mc) / d;
    }
    fit.a = coef[0];
    fit.b = coef[1];
    fit.c = coef[2];
    fit.sse = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = y[i] - (fit.a + fit.b * std::cos(omega * t[i]) + fit.c * std::sin(omega * t[i]));
        fit.sse += e * e;
    }
    return fit;
}

}  // namespace

SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) throw ConfigError("fit: time and value arrays differ in length");
    if (t.size() < 4) throw ConfigError("fit: need at least 4 samples");

    std::vector<double> sorted(t.begin(), t.end());
    std::sort(sorted.begin(), sorted.end());
    double min_spacing = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double d = sorted[i] - sorted[i - 1];
        if (d > 0) min_spacing = std::min(min_spacing, d);
    }
    const double span = sorted.back() - sorted.front();
    if (!(span > 0)) throw ConfigError("fit: samples span zero time");

    const double two_pi = 2.0 * std::numbers::pi;
    const double omega_lo = two_pi / (2.0 * span);
    const double omega_hi = two_pi / (2.0 * min_spacing);

    constexpr int kScan = 4000;
    double best_omega = omega_lo;
    double best_sse = std::numeric_limits<double>::infinity();
    const double scan_step = (omega_hi - omega_lo) / kScan;
    for (int k = 0; k <= kScan; ++k) {
        const double w = omega_lo + k * scan_step;
        const double sse = fit_at(t, y, w).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_omega = w;
        }
    }

    double lo = std::max(omega_lo, best_omega - scan_step);
    double hi = std::min(omega_hi, best_omega + scan_step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = fit_at(t, y, x1).sse;
    double f2 = fit_at(t, y, x2).sse;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = fit_at(t, y, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = fit_at(t, y, x2).sse;
        }
    }
    const double omega = 0.5 * (lo + hi);
    const LinearFit fit = fit_at(t, y, omega);
    return {two_pi / omega, fit.a, 2.0 * std::hypot(fit.b, fit.c), std::sqrt(fit.sse / t.size())};
}

}  // namespace nareg
