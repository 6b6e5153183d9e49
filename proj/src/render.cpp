#include "pflp/render.hpp"

#include "pflp/numfmt.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace pflp {

namespace {

std::string num(double v) { return format_exact(v); }

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& field, const std::string& source) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
        field = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, key, e.what());
    }
}

} // namespace

void RenderStyle::validate() const {
    if (!(label_stroke_width > 0.0) || !(leader_stroke_width > 0.0) || !(point_radius > 0.0) ||
        !(font_size > 0.0)) {
        throw ValidationError("render style dimensions must be positive");
    }
}

RenderStyle parse_style(const std::string& json_text, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, 0, "json", e.what());
    }
    if (!j.is_object()) throw ParseError(source, 0, "json", "style must be a JSON object");

    RenderStyle s;
    read_field(j, "label_stroke_width", s.label_stroke_width, source);
    read_field(j, "leader_stroke_width", s.leader_stroke_width, source);
    read_field(j, "point_radius", s.point_radius, source);
    read_field(j, "font_size", s.font_size, source);
    read_field(j, "label_fill", s.label_fill, source);
    read_field(j, "label_stroke", s.label_stroke, source);
    read_field(j, "unused_stroke", s.unused_stroke, source);
    read_field(j, "point_fill", s.point_fill, source);
    read_field(j, "leader_stroke", s.leader_stroke, source);
    read_field(j, "show_grid", s.show_grid, source);
    read_field(j, "show_unused", s.show_unused, source);
    read_field(j, "show_points", s.show_points, source);
    read_field(j, "show_leaders", s.show_leaders, source);
    read_field(j, "show_ids", s.show_ids, source);
    s.validate();
    return s;
}

RenderStyle load_style(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open style '" + path.string() + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_style(buf.str(), path.string());
}

std::string render_scene(std::span<const PointFeature> points, const CandidateLabelSet& cls,
                         const Assignment* assignment, std::span<const LeaderSegment> leaders,
                         const RenderStyle& style) {
    style.validate();
    const auto m = static_cast<std::int64_t>(cls.m());
    const auto check_label = [&](std::int64_t id, const char* who) {
        if (id < 1 || id > m) {
            throw InconsistentSceneError(std::string(who) + " references label " + std::to_string(id) +
                                         " but the candidate set has " + std::to_string(m));
        }
    };

    // 0 = not drawn, 1 = assigned, 2 = plain candidate / unused
    std::vector<char> state(cls.m(), style.show_grid ? 2 : 0);
    if (assignment != nullptr) {
        for (char& s : state) s = style.show_grid && style.show_unused ? 2 : 0;
        for (const AssignedPair& pr : assignment->pairs) {
            check_label(pr.label_id, "assignment");
            if (style.show_grid) state[static_cast<std::size_t>(pr.label_id - 1)] = 1;
        }
    }
    for (const LeaderSegment& s : leaders) check_label(s.label_id, "leader");

    const MapBounds& b = cls.bounds;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(b.width()) << "\" height=\""
       << num(b.height()) << "\" viewBox=\"0 0 " << num(b.width()) << ' ' << num(b.height())
       << "\">\n";
    os << "<style>\n"
       << ".bounds{fill:none;stroke:#000000;stroke-width:" << num(style.label_stroke_width) << "}\n"
       << ".label{fill:" << style.label_fill << ";stroke:" << style.label_stroke
       << ";stroke-width:" << num(style.label_stroke_width) << "}\n"
       << ".unused{fill:none;stroke:" << style.unused_stroke << ";stroke-width:"
       << num(style.label_stroke_width) << ";stroke-dasharray:8 6}\n"
       << ".leader{stroke:" << style.leader_stroke << ";stroke-width:" << num(style.leader_stroke_width)
       << "}\n"
       << ".point{fill:" << style.point_fill << "}\n"
       << ".id{font-family:sans-serif;font-size:" << num(style.font_size)
       << "px;text-anchor:middle;dominant-baseline:central}\n"
       << "</style>\n";
    // Map units, y up: (x, y) -> (x - x_min, y_max - y).
    os << "<g transform=\"matrix(1 0 0 -1 " << num(0.0 - b.x_min) << ' ' << num(b.y_max) << ")\">\n";
    os << "<path class=\"bounds\" d=\"M" << num(b.x_min) << ' ' << num(b.y_min) << 'H'
       << num(b.x_max) << 'V' << num(b.y_max) << 'H' << num(b.x_min) << "Z\"/>\n";

    for (const LabelBox& l : cls.labels) {
        const char s = state[static_cast<std::size_t>(l.id - 1)];
        if (s == 0) continue;
        const bool plain = s == 2 && assignment != nullptr;
        os << "<rect id=\"label-" << l.id << "\" class=\"" << (plain ? "unused" : "label") << "\" x=\""
           << num(l.left()) << "\" y=\"" << num(l.bottom()) << "\" width=\"" << num(l.w)
           << "\" height=\"" << num(l.h) << "\"/>\n";
    }
    if (style.show_ids) {
        for (const LabelBox& l : cls.labels) {
            if (state[static_cast<std::size_t>(l.id - 1)] == 0) continue;
            os << "<text class=\"id\" transform=\"matrix(1 0 0 -1 " << num(l.cx) << ' ' << num(l.cy)
               << ")\">" << l.id << "</text>\n";
        }
    }
    if (style.show_leaders) {
        std::vector<const LeaderSegment*> sorted;
        for (const LeaderSegment& s : leaders) sorted.push_back(&s);
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](auto* a, auto* c) { return a->point_id < c->point_id; });
        for (const LeaderSegment* sp : sorted) {
            const LeaderSegment& s = *sp;
            os << "<line class=\"leader\" x1=\"" << num(s.from.x) << "\" y1=\"" << num(s.from.y)
               << "\" x2=\"" << num(s.to.x) << "\" y2=\"" << num(s.to.y) << "\"/>\n";
        }
    }
    if (style.show_points) {
        std::vector<const PointFeature*> sorted;
        for (const PointFeature& p : points) sorted.push_back(&p);
        std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* c) { return a->id < c->id; });
        for (const PointFeature* pp : sorted) {
            const PointFeature& p = *pp;
            os << "<circle id=\"point-" << p.id << "\" class=\"point\" cx=\"" << num(p.x) << "\" cy=\""
               << num(p.y) << "\" r=\"" << num(style.point_radius) << "\"/>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string scene_file_name(const std::string& instance_id, const std::string& stage) {
    return instance_id + "_" + stage + ".svg";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
}

} // namespace pflp
