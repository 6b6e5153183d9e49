#include "pflp/point_index.hpp"

#include <algorithm>
#include <cmath>

namespace pflp {

PointIndex::PointIndex(std::span<const PointFeature> points, const MapBounds& bounds,
                       double cell_w, double cell_h)
    : points_(points), bounds_(bounds), cell_w_(cell_w), cell_h_(cell_h) {
    cols_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds.width() / cell_w)));
    rows_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds.height() / cell_h)));

    std::vector<std::size_t> bucket(points.size());
    start_.assign(cols_ * rows_ + 1, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        bucket[i] = row_of(points[i].y) * cols_ + col_of(points[i].x);
        ++start_[bucket[i] + 1];
    }
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];

    order_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) order_[fill[bucket[i]]++] = i;
}

std::size_t PointIndex::col_of(double x) const {
    const double c = std::floor((x - bounds_.x_min) / cell_w_);
    if (!(c > 0.0)) return 0;
    return std::min(cols_ - 1, static_cast<std::size_t>(c));
}

std::size_t PointIndex::row_of(double y) const {
    const double r = std::floor((y - bounds_.y_min) / cell_h_);
    if (!(r > 0.0)) return 0;
    return std::min(rows_ - 1, static_cast<std::size_t>(r));
}

bool PointIndex::any_in(const LabelBox& box, double gap, std::int64_t exclude_id) const {
    const std::size_t c0 = col_of(box.left() - gap);
    const std::size_t c1 = col_of(box.right() + gap);
    const std::size_t r0 = row_of(box.bottom() - gap);
    const std::size_t r1 = row_of(box.top() + gap);
    for (std::size_t r = r0; r <= r1; ++r) {
        for (std::size_t c = c0; c <= c1; ++c) {
            const std::size_t b = r * cols_ + c;
            for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
                const PointFeature& p = points_[order_[k]];
                if (p.id != exclude_id && point_in_rect(p, box, gap)) return true;
            }
        }
    }
    return false;
}

} // namespace pflp
