#include "pflp/matching.hpp"

#include <algorithm>
#include <numeric>

namespace pflp {

CornerDistanceTable::CornerDistanceTable(std::span<const PointFeature> points,
                                         const CandidateLabelSet& cls) {
    point_ids_.reserve(points.size());
    for (const PointFeature& p : points) point_ids_.push_back(p.id);
    corners_.reserve(cls.m());
    for (const LabelBox& b : cls.labels) corners_.push_back(b.corners());

    const std::size_t m = corners_.size();
    dist_.resize(points.size() * m);
    corner_.resize(points.size() * m);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec2 p = points[i].pos();
        double* drow = dist_.data() + i * m;
        std::uint8_t* crow = corner_.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& c = corners_[j];
            double best = squared_distance(p, c[0]);
            std::uint8_t which = 0;
            for (std::uint8_t q = 1; q < 4; ++q) {
                const double d = squared_distance(p, c[q]);
                if (d < best) {
                    best = d;
                    which = q;
                }
            }
            drow[j] = best;
            crow[j] = which;
        }
    }
}

CornerDistanceTable CornerDistanceTable::from_distances(std::vector<std::int64_t> point_ids,
                                                       const std::vector<std::vector<double>>& dist) {
    if (dist.size() != point_ids.size()) throw ValidationError("one distance row per point required");
    const std::size_t m = dist.empty() ? 0 : dist.front().size();
    CornerDistanceTable t;
    t.point_ids_ = std::move(point_ids);
    t.corners_.assign(m, {});
    for (const auto& row : dist) {
        if (row.size() != m) throw ValidationError("distance rows must have equal length");
        t.dist_.insert(t.dist_.end(), row.begin(), row.end());
    }
    t.corner_.assign(t.dist_.size(), 0);
    return t;
}

CornerDistanceTable corner_distance_table(std::span<const PointFeature> points,
                                          const CandidateLabelSet& cls) {
    return CornerDistanceTable(points, cls);
}

std::size_t default_depth(std::size_t m) {
    return std::min(m, std::max<std::size_t>(8, (m + 9) / 10));
}

NearestLabelMatrix build_nlm(const CornerDistanceTable& table, std::size_t k) {
    if (k < 1 || k > table.m()) {
        throw ValidationError("nearest-label depth k=" + std::to_string(k) + " must lie in [1, " +
                              std::to_string(table.m()) + "]");
    }
    NearestLabelMatrix nlm(table.n(), k);
    std::vector<std::uint32_t> cols(table.m());
    for (std::size_t i = 0; i < table.n(); ++i) {
        const auto d = table.row(i);
        std::iota(cols.begin(), cols.end(), 0U);
        const auto less = [&](std::uint32_t a, std::uint32_t b) {
            return d[a] < d[b] || (d[a] == d[b] && a < b);
        };
        std::nth_element(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k - 1), cols.end(),
                         less);
        std::sort(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k), less);
        for (std::size_t r = 0; r < k; ++r) {
            const std::uint32_t j = cols[r];
            nlm.at(i, r) = {static_cast<std::int64_t>(j) + 1, table.nearest_corner(i, j), d[j]};
        }
    }
    return nlm;
}

Assignment assign_labels(const NearestLabelMatrix& nlm, const CornerDistanceTable& table) {
    const std::size_t n = nlm.n();
    const std::size_t m = table.m();
    constexpr std::size_t none = static_cast<std::size_t>(-1);

    // A label is purged from every NLM row once taken; rows keep their holes.
    std::vector<char> taken(m, 0);
    std::vector<char> labeled(n, 0);
    std::vector<std::size_t> claimant(m, none);
    std::vector<std::size_t> contested;
    Assignment out;
    std::size_t remaining = n;
    std::size_t free_count = m;

    const auto beats = [&](std::size_t row_a, std::size_t row_b, double da, double db) {
        return da < db || (da == db && table.point_id(row_a) < table.point_id(row_b));
    };

    // Unlabeled rows in ascending row order.
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});

    for (std::size_t level = 0; level < nlm.k() && remaining > 0 && free_count > 0; ++level) {
        contested.clear();
        const auto entries = nlm.level(level);
        for (std::size_t i : active) {
            const NlmEntry& e = entries[i];
            const auto j = static_cast<std::size_t>(e.label_id - 1);
            if (taken[j]) continue;
            if (claimant[j] == none) {
                claimant[j] = i;
                contested.push_back(j);
            } else if (beats(i, claimant[j], e.dist, entries[claimant[j]].dist)) {
                claimant[j] = i;
            }
        }
        std::sort(contested.begin(), contested.end());
        for (std::size_t j : contested) {
            const std::size_t i = claimant[j];
            const NlmEntry& e = nlm.at(i, level);
            out.pairs.push_back({table.point_id(i), e.label_id, e.corner,
                                 static_cast<std::int64_t>(level) + 1, e.dist, false});
            taken[j] = 1;
            labeled[i] = 1;
            claimant[j] = none;
            --remaining;
            --free_count;
        }
        if (!contested.empty()) {
            std::erase_if(active, [&](std::size_t i) { return labeled[i] != 0; });
        }
    }

    if (remaining > 0 && free_count == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!labeled[i]) out.unassigned.push_back(table.point_id(i));
        }
    } else if (remaining > 0) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (!labeled[i]) rows.push_back(i);
        }
        std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            return table.point_id(a) < table.point_id(b);
        });
        // Free labels in ascending id; a stable erase keeps the id order for ties.
        std::vector<std::size_t> free_labels;
        for (std::size_t j = 0; j < m; ++j) {
            if (!taken[j]) free_labels.push_back(j);
        }
        for (std::size_t i : rows) {
            if (free_labels.empty()) {
                out.unassigned.push_back(table.point_id(i));
                continue;
            }
            const auto d = table.row(i);
            auto best_it = free_labels.begin();
            for (auto it = free_labels.begin() + 1; it != free_labels.end(); ++it) {
                if (d[*it] < d[*best_it]) best_it = it;
            }
            const std::size_t best = *best_it;
            free_labels.erase(best_it);
            std::int64_t rank = 1;
            for (std::size_t j = 0; j < m; ++j) {
                if (d[j] < d[best] || (d[j] == d[best] && j < best)) ++rank;
            }
            out.pairs.push_back({table.point_id(i), static_cast<std::int64_t>(best) + 1,
                                 table.nearest_corner(i, best), rank, d[best], true});
            taken[best] = 1;
        }
    }

    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const AssignedPair& a, const AssignedPair& b) { return a.point_id < b.point_id; });
    std::sort(out.unassigned.begin(), out.unassigned.end());
    return out;
}

} // namespace pflp
