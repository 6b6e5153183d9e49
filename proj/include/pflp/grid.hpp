#pragma once

#include "pflp/geometry.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pflp {

class EmptyGridError : public Error {
public:
    using Error::Error;
};

// The conflict-free candidate label set. Labels carry dense ids 1..m in
// emission order (row-major from the bottom-left cell).
struct CandidateLabelSet {
    std::vector<LabelBox> labels;
    LabelConfig config;
    MapBounds bounds;

    std::size_t m() const { return labels.size(); }

    // Label by 1-based id.
    const LabelBox& label(std::int64_t id) const { return labels.at(static_cast<std::size_t>(id - 1)); }
};

// Lists every violated candidate-set invariant (label/label overlap at lsd,
// label/point containment at gap 0, margin to the map edge, dense ids).
// Empty result means the set is conflict-free. O(m^2 + m*n); meant for checks.
std::vector<std::string> find_conflicts(const CandidateLabelSet& cls,
                                        std::span<const PointFeature> points);

// Row-major grid fill of the free map space. Cells within lsd of any point are
// discarded and the remaining ids renumbered densely.
// Throws EmptyGridError when nothing survives, ValidationError on bad input.
CandidateLabelSet generate_grid(const MapBounds& bounds, const LabelConfig& config,
                                std::span<const PointFeature> points);

// Sweep phase: for each point (ascending id) the nearest label to its left in
// the same row, with lsd < x_d < lsd + w, is shifted right until x_d == lsd,
// unless the shifted box would leave the ssd margin, overlap another label at
// lsd, or come within lsd of another point. m and all y values are unchanged.
CandidateLabelSet sweep_phase(const CandidateLabelSet& cls, std::span<const PointFeature> points);

} // namespace pflp
