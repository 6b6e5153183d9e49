#pragma once

#include "pflp/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pflp {

// Uniform bucket grid over the map for "is any point near this box" queries.
class PointIndex {
public:
    PointIndex(std::span<const PointFeature> points, const MapBounds& bounds, double cell_w,
               double cell_h);

    // True iff some point q with q.id != exclude_id satisfies point_in_rect(q, box, gap).
    bool any_in(const LabelBox& box, double gap, std::int64_t exclude_id = 0) const;

private:
    std::size_t col_of(double x) const;
    std::size_t row_of(double y) const;

    std::span<const PointFeature> points_;
    MapBounds bounds_;
    double cell_w_;
    double cell_h_;
    std::size_t cols_;
    std::size_t rows_;
    // CSR layout: bucket b holds order_[start_[b] .. start_[b+1]).
    std::vector<std::size_t> start_;
    std::vector<std::size_t> order_;
};

} // namespace pflp
