#pragma once

#include "pflp/geometry.hpp"
#include "pflp/grid.hpp"
#include "pflp/matching.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pflp {

// Straight leader from a point to the nearest corner of its assigned label.
struct LeaderSegment {
    std::int64_t point_id = 0;
    std::int64_t label_id = 0;
    Vec2 from;
    Vec2 to;
    Corner corner = Corner::BottomLeft;
    double length = 0.0;

    friend bool operator==(const LeaderSegment&, const LeaderSegment&) = default;
};

struct QualityReport {
    double total_leader_length = 0.0;
    double max_leader_length = 0.0;
    std::int64_t leader_label_crossings = 0;
    std::int64_t leader_leader_crossings = 0;
    std::int64_t unlabeled = 0;

    friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

// One segment per assigned pair, ordered like assignment.pairs (ascending point id).
// Throws ValidationError if a pair references an unknown point or label.
std::vector<LeaderSegment> build_leaders(const Assignment& assignment, const CandidateLabelSet& cls,
                                         std::span<const PointFeature> points);

// True iff the segment passes through the open interior of the box.
bool segment_crosses_box(Vec2 a, Vec2 b, const LabelBox& box);

// True iff the two segments cross at a single point interior to both.
bool segments_cross(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Leader/label crossings are counted against the assigned (drawn) labels only,
// excluding each leader's own target.
QualityReport score_quality(std::span<const LeaderSegment> leaders, const CandidateLabelSet& cls,
                            const Assignment& assignment);

} // namespace pflp
