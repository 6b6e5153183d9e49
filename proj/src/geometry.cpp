#include "pflp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pflp {

void MapBounds::validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
        !std::isfinite(y_max)) {
        throw ValidationError("map bounds must be finite: " + to_string(*this));
    }
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw ValidationError("map bounds are empty: " + to_string(*this));
    }
}

void LabelConfig::validate(const MapBounds& bounds) const {
    if (!(w > 0.0) || !(h > 0.0)) throw ValidationError("label width and height must be positive");
    if (!(lsd >= 0.0)) throw ValidationError("label safe distance must be >= 0");
    if (!(ssd >= 0.0)) throw ValidationError("screen safe distance must be >= 0");
    if (k < 0) throw ValidationError("nearest-label depth k must be >= 1 (or 0 for default)");
    if (w + 2.0 * ssd > bounds.width() || h + 2.0 * ssd > bounds.height()) {
        throw ValidationError("no label fits inside " + to_string(bounds) +
                              " with the given size and screen safe distance");
    }
}

Vec2 LabelBox::corner(Corner c) const {
    switch (c) {
    case Corner::BottomLeft: return {left(), bottom()};
    case Corner::BottomRight: return {right(), bottom()};
    case Corner::TopLeft: return {left(), top()};
    case Corner::TopRight: return {right(), top()};
    }
    return {cx, cy};
}

std::array<Vec2, 4> LabelBox::corners() const {
    return {corner(Corner::BottomLeft), corner(Corner::BottomRight), corner(Corner::TopLeft),
            corner(Corner::TopRight)};
}

bool rect_overlaps(const LabelBox& a, const LabelBox& b, double gap) {
    // Edge-to-edge separations along each axis; negative means interpenetration.
    const double sep_x = std::max(b.left() - a.right(), a.left() - b.right());
    const double sep_y = std::max(b.bottom() - a.top(), a.bottom() - b.top());
    return sep_x < gap && sep_y < gap;
}

bool point_in_rect(Vec2 p, const LabelBox& b, double gap) {
    return b.left() - gap <= p.x && p.x <= b.right() + gap && b.bottom() - gap <= p.y &&
           p.y <= b.top() + gap;
}

bool within_bounds(const LabelBox& b, const MapBounds& bounds) {
    return bounds.x_min + b.w / 2.0 < b.cx && b.cx < bounds.x_max - b.w / 2.0 &&
           bounds.y_min + b.h / 2.0 < b.cy && b.cy < bounds.y_max - b.h / 2.0;
}

bool within_margin(const LabelBox& b, const MapBounds& bounds, double margin) {
    return b.left() >= bounds.x_min + margin && b.right() <= bounds.x_max - margin &&
           b.bottom() >= bounds.y_min + margin && b.top() <= bounds.y_max - margin;
}

std::string to_string(const MapBounds& b) {
    std::ostringstream os;
    os << "(" << b.x_min << "," << b.x_max << ")x(" << b.y_min << "," << b.y_max << ")";
    return os.str();
}

} // namespace pflp
