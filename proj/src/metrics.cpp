#include "lsbmark/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lsbmark {

bool QualityScore::finite() const {
    return std::isfinite(psnr_db);
}

double mse(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) {
        throw ShapeError("image dimensions differ: " + std::to_string(a.width) + "x" +
                         std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                         std::to_string(b.height));
    }
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const std::int64_t d = std::int64_t(a.pixels[i]) - std::int64_t(b.pixels[i]);
        sum += std::uint64_t(d * d);
    }
    return double(sum) / double(a.pixel_count());
}

QualityScore psnr(const GrayImage& a, const GrayImage& b) {
    const double m = mse(a, b);
    if (m == 0.0) {
        return QualityScore{0.0, std::numeric_limits<double>::infinity()};
    }
    return QualityScore{m, 10.0 * std::log10(255.0 * 255.0 / m)};
}

}  // namespace lsbmark
