#pragma once

#include "pflp/grid.hpp"
#include "pflp/leader.hpp"
#include "pflp/matching.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace pflp {

class InconsistentSceneError : public Error {
public:
    using Error::Error;
};

struct RenderStyle {
    double label_stroke_width = 2.0;
    double leader_stroke_width = 2.0;
    double point_radius = 12.0;
    double font_size = 40.0;
    std::string label_fill = "#fff3c4";
    std::string label_stroke = "#3b3b3b";
    std::string unused_stroke = "#b0b0b0";
    std::string point_fill = "#c0392b";
    std::string leader_stroke = "#1f5fa8";
    bool show_grid = true;    // draw label rectangles at all
    bool show_unused = false; // with an assignment, also draw unassigned candidates
    bool show_points = true;
    bool show_leaders = true;
    bool show_ids = false;    // label-id text inside each drawn label

    void validate() const;
};

// Reads a JSON object whose keys are the RenderStyle field names; missing keys
// keep their defaults. Throws ParseError or ValidationError.
RenderStyle load_style(const std::filesystem::path& path);
RenderStyle parse_style(const std::string& json_text, const std::string& source = "<style>");

// Standalone SVG in map units with y pointing up (a top-level transform flips
// it for display). Elements are emitted in a fixed order: bounds frame, labels
// by id, leaders by point id, points by id. Byte-identical for identical input.
// Throws InconsistentSceneError when assignment or leaders reference labels
// missing from cls.
std::string render_scene(std::span<const PointFeature> points, const CandidateLabelSet& cls,
                         const Assignment* assignment, std::span<const LeaderSegment> leaders,
                         const RenderStyle& style);

// "<instance-id>_<stage>.svg", stage being "grid" or "final".
std::string scene_file_name(const std::string& instance_id, const std::string& stage);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace pflp
