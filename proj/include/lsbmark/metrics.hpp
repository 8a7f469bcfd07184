#pragma once

#include "lsbmark/image.hpp"

namespace lsbmark {

/// Fidelity of one image against another. psnr_db is +infinity when the
/// images are identical (mse == 0), where the ratio is undefined.
struct QualityScore {
    double mse = 0.0;
    double psnr_db = 0.0;

    bool finite() const;
};

/// Mean squared pixel difference. The sum of squared differences is
/// accumulated in exact 64-bit integer arithmetic and divided once, so the
/// result is identical on every platform.
double mse(const GrayImage& a, const GrayImage& b);

/// 10 * log10(255^2 / mse).
QualityScore psnr(const GrayImage& a, const GrayImage& b);

}  // namespace lsbmark
