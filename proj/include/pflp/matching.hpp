#pragma once

#include "pflp/geometry.hpp"
#include "pflp/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pflp {

// Squared point-to-nearest-corner distances between every point and every
// candidate label. Row i belongs to point_ids[i], column j to label id j+1.
class CornerDistanceTable {
public:
    CornerDistanceTable() = default;
    CornerDistanceTable(std::span<const PointFeature> points, const CandidateLabelSet& cls);

    // Table from precomputed squared distances (rows: points, columns: label
    // ids 1..m). Corners are left at the origin and every nearest corner is
    // BottomLeft; for driving the ranking and assignment directly.
    static CornerDistanceTable from_distances(std::vector<std::int64_t> point_ids,
                                              const std::vector<std::vector<double>>& dist);

    std::size_t n() const { return point_ids_.size(); }
    std::size_t m() const { return corners_.size(); }

    std::int64_t point_id(std::size_t row) const { return point_ids_[row]; }
    const std::array<Vec2, 4>& corners(std::size_t col) const { return corners_[col]; }

    double dist(std::size_t row, std::size_t col) const { return dist_[row * m() + col]; }
    Corner nearest_corner(std::size_t row, std::size_t col) const {
        return static_cast<Corner>(corner_[row * m() + col]);
    }
    std::span<const double> row(std::size_t r) const { return {dist_.data() + r * m(), m()}; }

private:
    std::vector<std::int64_t> point_ids_;
    std::vector<std::array<Vec2, 4>> corners_;
    std::vector<double> dist_;
    std::vector<std::uint8_t> corner_;
};

CornerDistanceTable corner_distance_table(std::span<const PointFeature> points,
                                          const CandidateLabelSet& cls);

struct NlmEntry {
    std::int64_t label_id = 0;
    Corner corner = Corner::BottomLeft;
    double dist = 0.0; // squared

    friend bool operator==(const NlmEntry&, const NlmEntry&) = default;
};

// n-by-k ranking of each point's closest labels; level r (1-based) is column r-1.
// Stored level by level, since assignment walks one level across all points.
class NearestLabelMatrix {
public:
    NearestLabelMatrix(std::size_t n, std::size_t k) : n_(n), k_(k), entries_(n * k) {}

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    const NlmEntry& at(std::size_t row, std::size_t level0) const { return entries_[level0 * n_ + row]; }
    NlmEntry& at(std::size_t row, std::size_t level0) { return entries_[level0 * n_ + row]; }
    std::span<const NlmEntry> level(std::size_t level0) const { return {entries_.data() + level0 * n_, n_}; }

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<NlmEntry> entries_;
};

// min(m, max(8, ceil(m / 10)))
std::size_t default_depth(std::size_t m);

// Row i holds the k smallest distances of table row i, ascending; ties go to
// the smaller label id. Requires 1 <= k <= m.
NearestLabelMatrix build_nlm(const CornerDistanceTable& table, std::size_t k);

struct AssignedPair {
    std::int64_t point_id = 0;
    std::int64_t label_id = 0;
    Corner corner = Corner::BottomLeft;
    std::int64_t level = 0; // closeness level: rank of the label among all labels for this point
    double dist = 0.0;      // squared
    bool fallback = false;  // granted by the scan past the k-th level

    friend bool operator==(const AssignedPair&, const AssignedPair&) = default;
};

struct Assignment {
    std::vector<AssignedPair> pairs;         // ascending point id
    std::vector<std::int64_t> unassigned;    // ascending point id

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Closeness-level greedy matching. At each level the surviving entries compete;
// a contested label goes to the smaller distance, then the smaller point id.
// Granted labels are removed from every row. Points left after level k take
// the globally nearest free label; only when none is left are they unassigned.
Assignment assign_labels(const NearestLabelMatrix& nlm, const CornerDistanceTable& table);

inline bool cls_capacity_check(const CandidateLabelSet& cls, std::size_t n) { return cls.m() >= n; }

} // namespace pflp
