#pragma once

#include "pflp/error.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace pflp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double squared_distance(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// A point feature (node) to be labeled. Ids are 1-based and dense.
struct PointFeature {
    std::int64_t id = 0;
    double x = 0.0;
    double y = 0.0;

    Vec2 pos() const { return {x, y}; }
    friend bool operator==(const PointFeature&, const PointFeature&) = default;
};

struct MapBounds {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    // Strictly inside (the open rectangle).
    bool contains_strictly(Vec2 p) const {
        return x_min < p.x && p.x < x_max && y_min < p.y && p.y < y_max;
    }

    void validate() const;

    friend bool operator==(const MapBounds&, const MapBounds&) = default;
};

struct LabelConfig {
    double w = 150.0;
    double h = 100.0;
    double lsd = 10.0;  // label safe distance: whitespace between labels
    double ssd = 10.0;  // screen safe distance: whitespace to the map edge
    std::int64_t k = 0; // nearest-label depth; 0 selects default_depth(m)

    // Throws ValidationError when a field is out of range or no label fits.
    void validate(const MapBounds& bounds) const;

    friend bool operator==(const LabelConfig&, const LabelConfig&) = default;
};

// Corner order used everywhere: bottom-left, bottom-right, top-left, top-right.
enum class Corner : std::uint8_t { BottomLeft = 0, BottomRight = 1, TopLeft = 2, TopRight = 3 };

struct LabelBox {
    std::int64_t id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    // Builds a box from its bottom-left corner.
    static LabelBox from_corner(std::int64_t id, double left, double bottom, double w, double h) {
        return {id, left + w / 2.0, bottom + h / 2.0, w, h};
    }

    double left() const { return cx - w / 2.0; }
    double right() const { return cx + w / 2.0; }
    double bottom() const { return cy - h / 2.0; }
    double top() const { return cy + h / 2.0; }

    Vec2 corner(Corner c) const;
    std::array<Vec2, 4> corners() const;

    friend bool operator==(const LabelBox&, const LabelBox&) = default;
};

// True iff the rectangles, each inflated by gap/2 on every side, share an
// area. Separation exactly equal to gap is not an overlap.
bool rect_overlaps(const LabelBox& a, const LabelBox& b, double gap);

// True iff p lies in b inflated by gap on every side (boundary included).
bool point_in_rect(Vec2 p, const LabelBox& b, double gap);
inline bool point_in_rect(const PointFeature& p, const LabelBox& b, double gap) {
    return point_in_rect(p.pos(), b, gap);
}

// Strict center-in-bounds constraint: x_min + w/2 < cx < x_max - w/2, same for y.
bool within_bounds(const LabelBox& b, const MapBounds& bounds);

// Closed margin check: every edge of b is at least `margin` from the map edge.
bool within_margin(const LabelBox& b, const MapBounds& bounds, double margin);

std::string to_string(const MapBounds& b);

} // namespace pflp
