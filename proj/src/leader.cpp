#include "pflp/leader.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace pflp {

std::vector<LeaderSegment> build_leaders(const Assignment& assignment, const CandidateLabelSet& cls,
                                         std::span<const PointFeature> points) {
    std::unordered_map<std::int64_t, Vec2> pos;
    pos.reserve(points.size());
    for (const PointFeature& p : points) pos.emplace(p.id, p.pos());

    std::vector<LeaderSegment> out;
    out.reserve(assignment.pairs.size());
    for (const AssignedPair& pr : assignment.pairs) {
        const auto it = pos.find(pr.point_id);
        if (it == pos.end()) {
            throw ValidationError("assignment references unknown point " + std::to_string(pr.point_id));
        }
        if (pr.label_id < 1 || static_cast<std::size_t>(pr.label_id) > cls.m()) {
            throw ValidationError("assignment references unknown label " + std::to_string(pr.label_id));
        }
        const Vec2 to = cls.label(pr.label_id).corner(pr.corner);
        out.push_back({pr.point_id, pr.label_id, it->second, to, pr.corner,
                       std::sqrt(squared_distance(it->second, to))});
    }
    return out;
}

bool segment_crosses_box(Vec2 a, Vec2 b, const LabelBox& box) {
    // Liang-Barsky clip against the closed box, then test the chord midpoint
    // against the open interior. A chord lying in an edge stays on the boundary.
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - box.left(), box.right() - a.x, a.y - box.bottom(), box.top() - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
        if (t0 > t1) return false;
    }
    if (!(t0 < t1)) return false;
    const double tm = 0.5 * (t0 + t1);
    const double mx = a.x + tm * dx;
    const double my = a.y + tm * dy;
    return box.left() < mx && mx < box.right() && box.bottom() < my && my < box.top();
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (v > 0.0) - (v < 0.0);
}

} // namespace

bool segments_cross(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const int o1 = orientation(a0, a1, b0);
    const int o2 = orientation(a0, a1, b1);
    const int o3 = orientation(b0, b1, a0);
    const int o4 = orientation(b0, b1, a1);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

QualityReport score_quality(std::span<const LeaderSegment> leaders, const CandidateLabelSet& cls,
                            const Assignment& assignment) {
    QualityReport q;
    q.unlabeled = static_cast<std::int64_t>(assignment.unassigned.size());

    std::vector<const LabelBox*> drawn;
    drawn.reserve(assignment.pairs.size());
    for (const AssignedPair& pr : assignment.pairs) drawn.push_back(&cls.label(pr.label_id));

    // Summed in ascending order so the total does not depend on input order.
    std::vector<double> lengths;
    lengths.reserve(leaders.size());
    for (const LeaderSegment& s : leaders) lengths.push_back(s.length);
    std::sort(lengths.begin(), lengths.end());
    for (double len : lengths) q.total_leader_length += len;
    if (!lengths.empty()) q.max_leader_length = lengths.back();

    for (std::size_t i = 0; i < leaders.size(); ++i) {
        const LeaderSegment& s = leaders[i];

        const double lo_x = std::min(s.from.x, s.to.x);
        const double hi_x = std::max(s.from.x, s.to.x);
        const double lo_y = std::min(s.from.y, s.to.y);
        const double hi_y = std::max(s.from.y, s.to.y);
        for (const LabelBox* box : drawn) {
            if (box->id == s.label_id) continue;
            if (box->right() <= lo_x || box->left() >= hi_x || box->top() <= lo_y ||
                box->bottom() >= hi_y) {
                continue;
            }
            if (segment_crosses_box(s.from, s.to, *box)) ++q.leader_label_crossings;
        }
        for (std::size_t j = i + 1; j < leaders.size(); ++j) {
            if (segments_cross(s.from, s.to, leaders[j].from, leaders[j].to)) ++q.leader_leader_crossings;
        }
    }
    return q;
}

} // namespace pflp
