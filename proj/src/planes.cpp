#include "lsbmark/planes.hpp"

#include <algorithm>

namespace lsbmark {

Plane::Plane(int index) : index_(index) {
    if (index < 1 || index > 4) {
        throw ParamError("plane index must be in [1, 4], got " + std::to_string(index));
    }
}

PlaneSet PlaneSet::of(std::initializer_list<int> indices) {
    return of(std::vector<int>(indices));
}

PlaneSet PlaneSet::of(const std::vector<int>& indices) {
    if (indices.empty()) {
        throw ParamError("plane set must not be empty");
    }
    if (indices.size() > 2) {
        throw ParamError("plane sets of more than two planes are not supported");
    }
    std::vector<Plane> planes;
    planes.reserve(indices.size());
    for (int i : indices) {
        planes.emplace_back(i);
    }
    if (planes.size() == 2 && !(planes[0] < planes[1])) {
        throw ParamError("plane set must be strictly increasing: " + std::to_string(indices[0]) +
                         "," + std::to_string(indices[1]));
    }
    return PlaneSet(std::move(planes));
}

PlaneSet PlaneSet::parse(std::string_view text) {
    std::vector<int> indices;
    std::string current;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            if (current.size() != 1 || current[0] < '1' || current[0] > '9') {
                throw ParamError("cannot parse plane set '" + std::string(text) + "'");
            }
            indices.push_back(current[0] - '0');
            current.clear();
        } else {
            current += text[i];
        }
    }
    return of(indices);
}

int PlaneSet::max_delta() const {
    int sum = 0;
    for (const Plane& p : planes_) {
        sum += p.weight();
    }
    return sum;
}

std::string PlaneSet::to_string() const {
    std::string out;
    for (const Plane& p : planes_) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(p.index());
    }
    return out;
}

namespace {

void check_bit(int bit) {
    if (bit != 0 && bit != 1) {
        throw ParamError("bit must be 0 or 1, got " + std::to_string(bit));
    }
}

}  // namespace

int get_bit(std::uint8_t value, Plane p) {
    return (value >> (p.index() - 1)) & 1;
}

std::uint8_t set_bit(std::uint8_t value, Plane p, int bit) {
    check_bit(bit);
    const std::uint8_t w = p.weight();
    return std::uint8_t((value & ~w) | (bit ? w : 0));
}

int invert(int bit) {
    check_bit(bit);
    return 1 - bit;
}

LinearIndex shift_index(LinearIndex x) {
    if (x.value < 1) {
        throw BoundsError("linear index must be at least 1");
    }
    return LinearIndex{x.value % 2 == 0 ? x.value - 1 : x.value + 1};
}

LinearIndex shift_index(LinearIndex x, std::uint64_t pixel_count) {
    if (x.value < 1 || x.value > pixel_count) {
        throw BoundsError("linear index " + std::to_string(x.value) + " outside [1, " +
                          std::to_string(pixel_count) + "]");
    }
    LinearIndex shifted = shift_index(x);
    if (shifted.value > pixel_count) {
        throw BoundsError("shifted index " + std::to_string(shifted.value) + " outside [1, " +
                          std::to_string(pixel_count) + "]");
    }
    return shifted;
}

}  // namespace lsbmark
