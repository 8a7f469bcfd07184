#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "lsbmark/errors.hpp"
#include "lsbmark/image.hpp"

namespace lsbmark {

/// One of the four low bit planes. Index 1 is the least significant bit
/// (weight 1), index 4 has weight 8. Higher planes are rejected: writing
/// them produces plainly visible changes.
class Plane {
  public:
    explicit Plane(int index);

    int index() const { return index_; }
    std::uint8_t weight() const { return std::uint8_t(1u << (index_ - 1)); }

    bool operator==(const Plane& other) const = default;
    bool operator<(const Plane& other) const { return index_ < other.index_; }

  private:
    int index_;
};

/// Strictly increasing set of one or two planes. Pairs are the largest
/// combination supported; capacity accounting assumes this.
class PlaneSet {
  public:
    static PlaneSet of(std::initializer_list<int> indices);
    static PlaneSet of(const std::vector<int>& indices);
    /// Parses "1", "4", "1,2", "3,4", ...
    static PlaneSet parse(std::string_view text);

    const std::vector<Plane>& planes() const { return planes_; }
    std::size_t size() const { return planes_.size(); }
    Plane lowest() const { return planes_.front(); }

    /// Largest possible per-pixel intensity change when writing through
    /// this set: 1,2,4,8 for singletons, 3,5,9,6,10,12 for pairs.
    int max_delta() const;

    std::string to_string() const;  // "1" or "1,2"

    bool operator==(const PlaneSet& other) const = default;

  private:
    explicit PlaneSet(std::vector<Plane> planes) : planes_(std::move(planes)) {}
    std::vector<Plane> planes_;
};

/// Bit of `value` in plane `p`.
int get_bit(std::uint8_t value, Plane p);

/// `value` with plane `p` forced to `bit`; every other plane is untouched,
/// so the change is 0 or exactly the plane weight.
std::uint8_t set_bit(std::uint8_t value, Plane p, int bit);

/// 1 - b. Involution.
int invert(int bit);

/// The even/odd coordinate pairing: even positions move down one, odd
/// positions move up one, swapping each 1-based pair (2k-1, 2k).
LinearIndex shift_index(LinearIndex x);

/// Same map, rejecting results outside [1, pixel_count]. Only x == pixel_count
/// with an odd pixel_count can fall out of range.
LinearIndex shift_index(LinearIndex x, std::uint64_t pixel_count);

}  // namespace lsbmark
