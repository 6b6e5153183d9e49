#pragma once

#include "pflp/geometry.hpp"
#include "pflp/grid.hpp"
#include "pflp/leader.hpp"
#include "pflp/matching.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pflp {

// Name recorded in instance headers. The seeded stream is std::mt19937_64
// (bit-exact by the C++ standard); coordinates use the top 53 bits of each
// draw, u = (draw >> 11) * 2^-53, x = x_min + u * width.
inline constexpr const char* kPrngName = "mt19937_64";

struct Instance {
    MapBounds bounds;
    std::vector<PointFeature> points; // ids 1..n in order
    std::uint64_t seed = 0;

    std::size_t n() const { return points.size(); }

    // Throws ValidationError on out-of-bounds, duplicate, or non-dense points.
    void validate() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

// n points i.i.d. uniform over the open bounds; exact coordinate collisions
// are redrawn so the result always has n distinct points.
Instance random_instance(std::size_t n, const MapBounds& bounds, std::uint64_t seed);

// Text format:
//   pflp-instance 1
//   prng mt19937_64
//   seed <u64>
//   bounds <x_min> <x_max> <y_min> <y_max>
//   n <count>
//   <id> <x> <y>          (n lines)
void write_instance(std::ostream& os, const Instance& inst);
Instance read_instance(std::istream& is, const std::string& source = "<stream>");
void save_instance(const std::filesystem::path& path, const Instance& inst);
Instance load_instance(const std::filesystem::path& path);

// Final point-to-label assignment together with the candidate set it indexes.
struct Placement {
    CandidateLabelSet cls;
    std::size_t k = 0; // nearest-label depth actually used
    Assignment assignment;
    std::vector<LeaderSegment> leaders;
    QualityReport quality;
};

// Placement dump:
//   pflp-placement 1
//   config <w> <h> <lsd> <ssd> <k>
//   bounds <x_min> <x_max> <y_min> <y_max>
//   labels <m>
//   <label_id> <cx> <cy>                                  (m lines)
//   pairs <count>
//   <point_id> <label_id> <corner_x> <corner_y> <level>   (one per assigned point)
//   unassigned <count>
//   <point_id>                                            (one per unassigned point)
//   quality <total_len> <max_len> <leader_label> <leader_leader> <unlabeled>
void write_placement(std::ostream& os, const Placement& placement);
void save_placement(const std::filesystem::path& path, const Placement& placement);

// Reading restores cls, k, assignment and quality. Leaders and pair distances
// need the point coordinates: pass the instance points to rebuild them.
Placement read_placement(std::istream& is, std::span<const PointFeature> points,
                         const std::string& source = "<stream>");
Placement load_placement(const std::filesystem::path& path, std::span<const PointFeature> points);

} // namespace pflp
