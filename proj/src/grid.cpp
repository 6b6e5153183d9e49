#include "pflp/grid.hpp"

#include "pflp/point_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace pflp {

namespace {

void require_points_inside(const MapBounds& bounds, std::span<const PointFeature> points) {
    for (const PointFeature& p : points) {
        if (!bounds.contains_strictly(p.pos())) {
            std::ostringstream os;
            os << "point " << p.id << " (" << p.x << ", " << p.y << ") is not strictly inside "
               << to_string(bounds);
            throw ValidationError(os.str());
        }
    }
}

// Labels grouped by identical center y, each row sorted by center x.
struct RowIndex {
    std::vector<double> ys;                       // ascending
    std::vector<std::vector<std::size_t>> members; // label indices, ascending cx

    explicit RowIndex(const std::vector<LabelBox>& labels) {
        std::map<double, std::vector<std::size_t>> rows;
        for (std::size_t i = 0; i < labels.size(); ++i) rows[labels[i].cy].push_back(i);
        for (auto& [y, idx] : rows) {
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return labels[a].cx < labels[b].cx;
            });
            ys.push_back(y);
            members.push_back(std::move(idx));
        }
    }

    // Rows whose center y lies in [lo, hi].
    std::pair<std::size_t, std::size_t> rows_between(double lo, double hi) const {
        const auto first = std::lower_bound(ys.begin(), ys.end(), lo);
        const auto last = std::upper_bound(ys.begin(), ys.end(), hi);
        return {static_cast<std::size_t>(first - ys.begin()),
                static_cast<std::size_t>(last - ys.begin())};
    }
};

bool overlaps_any_other(const std::vector<LabelBox>& labels, const RowIndex& rows,
                        std::size_t self, const LabelBox& moved, double lsd) {
    const double reach_y = moved.h + lsd;
    const double reach_x = moved.w + lsd;
    const auto [r0, r1] = rows.rows_between(moved.cy - reach_y, moved.cy + reach_y);
    for (std::size_t r = r0; r < r1; ++r) {
        const auto& row = rows.members[r];
        // Rows hold equal widths, so only centers within reach_x can touch.
        auto it = std::partition_point(row.begin(), row.end(), [&](std::size_t j) {
            return labels[j].cx < moved.cx - reach_x;
        });
        for (; it != row.end() && labels[*it].cx <= moved.cx + reach_x; ++it) {
            if (*it != self && rect_overlaps(moved, labels[*it], lsd)) return true;
        }
    }
    return false;
}

// Largest center x whose right edge does not pass `right`, matching it exactly
// whenever floating point allows.
double center_for_right(double right, double w) {
    double cx = right - w / 2.0;
    for (int i = 0; i < 4 && cx + w / 2.0 < right; ++i) {
        const double up = std::nextafter(cx, std::numeric_limits<double>::infinity());
        if (up + w / 2.0 > right) break;
        cx = up;
    }
    while (cx + w / 2.0 > right) cx = std::nextafter(cx, -std::numeric_limits<double>::infinity());
    return cx;
}

} // namespace

std::vector<std::string> find_conflicts(const CandidateLabelSet& cls,
                                        std::span<const PointFeature> points) {
    std::vector<std::string> out;
    const LabelConfig& cfg = cls.config;
    for (std::size_t i = 0; i < cls.labels.size(); ++i) {
        const LabelBox& a = cls.labels[i];
        if (a.id != static_cast<std::int64_t>(i + 1)) {
            out.push_back("label at position " + std::to_string(i + 1) + " has id " +
                          std::to_string(a.id));
        }
        if (!within_margin(a, cls.bounds, cfg.ssd) || (cfg.ssd > 0.0 && !within_bounds(a, cls.bounds))) {
            out.push_back("label " + std::to_string(a.id) + " violates the screen safe distance");
        }
        for (std::size_t j = i + 1; j < cls.labels.size(); ++j) {
            if (rect_overlaps(a, cls.labels[j], cfg.lsd)) {
                out.push_back("labels " + std::to_string(a.id) + " and " +
                              std::to_string(cls.labels[j].id) + " overlap");
            }
        }
        for (const PointFeature& p : points) {
            if (point_in_rect(p, a, 0.0)) {
                out.push_back("label " + std::to_string(a.id) + " contains point " +
                              std::to_string(p.id));
            }
        }
    }
    return out;
}

CandidateLabelSet generate_grid(const MapBounds& bounds, const LabelConfig& config,
                                std::span<const PointFeature> points) {
    bounds.validate();
    config.validate(bounds);
    require_points_inside(bounds, points);

    const double pitch_x = config.w + config.lsd;
    const double pitch_y = config.h + config.lsd;
    const PointIndex index(points, bounds, pitch_x, pitch_y);

    CandidateLabelSet cls{{}, config, bounds};
    for (std::int64_t r = 0;; ++r) {
        const double bottom = bounds.y_min + config.ssd + static_cast<double>(r) * pitch_y;
        if (bottom + config.h > bounds.y_max - config.ssd) break;
        for (std::int64_t c = 0;; ++c) {
            const double left = bounds.x_min + config.ssd + static_cast<double>(c) * pitch_x;
            if (left + config.w > bounds.x_max - config.ssd) break;
            const auto next_id = static_cast<std::int64_t>(cls.labels.size()) + 1;
            const LabelBox cell = LabelBox::from_corner(next_id, left, bottom, config.w, config.h);
            if (!index.any_in(cell, config.lsd)) cls.labels.push_back(cell);
        }
    }
    if (cls.labels.empty()) {
        throw EmptyGridError("no candidate label survives in " + to_string(bounds) + " with " +
                             std::to_string(points.size()) + " points");
    }
    return cls;
}

CandidateLabelSet sweep_phase(const CandidateLabelSet& cls, std::span<const PointFeature> points) {
    CandidateLabelSet out = cls;
    if (out.labels.empty() || points.empty()) return out;

    const LabelConfig& cfg = out.config;
    const double lsd = cfg.lsd;
    const RowIndex rows(out.labels);
    const PointIndex index(points, out.bounds, cfg.w + lsd, cfg.h + lsd);

    std::vector<std::size_t> by_id(points.size());
    std::iota(by_id.begin(), by_id.end(), std::size_t{0});
    std::stable_sort(by_id.begin(), by_id.end(),
                     [&](std::size_t a, std::size_t b) { return points[a].id < points[b].id; });

    std::vector<LabelBox>& labels = out.labels;
    for (std::size_t pi : by_id) {
        const PointFeature& p = points[pi];

        // Nearest eligible label to the left of p among rows whose span holds p.y.
        std::size_t best = labels.size();
        const auto [r0, r1] = rows.rows_between(p.y - cfg.h / 2.0, p.y + cfg.h / 2.0);
        for (std::size_t r = r0; r < r1; ++r) {
            const auto& row = rows.members[r];
            // Last label in the row with x_d > lsd (right edges ascend along the row).
            const auto it = std::partition_point(row.begin(), row.end(), [&](std::size_t j) {
                return p.x - labels[j].right() > lsd;
            });
            if (it == row.begin()) continue;
            const std::size_t j = *(it - 1);
            const LabelBox& b = labels[j];
            if (!(b.bottom() <= p.y && p.y <= b.top())) continue;
            const double x_d = p.x - b.right();
            if (!(lsd < x_d && x_d < lsd + cfg.w)) continue;
            if (best == labels.size() || b.right() > labels[best].right() ||
                (b.right() == labels[best].right() && b.id < labels[best].id)) {
                best = j;
            }
        }
        if (best == labels.size()) continue;

        LabelBox moved = labels[best];
        moved.cx = center_for_right(p.x - lsd, moved.w);
        if (!within_margin(moved, out.bounds, cfg.ssd)) continue;
        if (cfg.ssd > 0.0 && !within_bounds(moved, out.bounds)) continue;
        if (overlaps_any_other(labels, rows, best, moved, lsd)) continue;
        // Other points keep lsd clearance; the trigger itself must stay outside the box.
        if (index.any_in(moved, lsd, p.id) || point_in_rect(p, moved, 0.0)) continue;
        labels[best] = moved;
    }
    return out;
}

} // namespace pflp
