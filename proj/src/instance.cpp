#include "pflp/instance.hpp"

#include "pflp/numfmt.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace pflp {

namespace {

// Whitespace-tokenizing line reader that remembers where it is for diagnostics.
class LineReader {
public:
    LineReader(std::istream& is, std::string source) : is_(is), source_(std::move(source)) {}

    // Next non-blank line split into tokens; empty when the input is exhausted.
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(is_, line)) {
            ++line_no_;
            std::istringstream ls(line);
            std::vector<std::string> toks;
            for (std::string t; ls >> t;) toks.push_back(std::move(t));
            if (!toks.empty()) return toks;
        }
        return {};
    }

    std::vector<std::string> expect(const std::string& field) {
        auto toks = next();
        if (toks.empty()) fail(field, "unexpected end of input (truncated file)");
        return toks;
    }

    // Line "<keyword> v1 v2 ..." with exactly `values` values after the keyword.
    std::vector<std::string> keyword(const std::string& key, std::size_t values) {
        auto toks = expect(key);
        if (toks[0] != key) fail(key, "expected '" + key + "', found '" + toks[0] + "'");
        if (toks.size() != values + 1) {
            fail(key, "expected " + std::to_string(values) + " value(s), found " +
                          std::to_string(toks.size() - 1));
        }
        return toks;
    }

    double real(const std::string& tok, const std::string& field) const {
        double v = 0.0;
        if (!parse_double(tok, v)) fail(field, "not a number: '" + tok + "'");
        return v;
    }

    template <typename Int>
    Int integer(const std::string& tok, const std::string& field) const {
        Int v{};
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            fail(field, "not an integer: '" + tok + "'");
        }
        return v;
    }

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ParseError(source_, line_no_, field, what);
    }

    const std::string& source() const { return source_; }

private:
    std::istream& is_;
    std::string source_;
    std::size_t line_no_ = 0;
};

double draw_open(std::mt19937_64& gen, double lo, double hi) {
    for (;;) {
        const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
        const double v = lo + u * (hi - lo);
        if (lo < v && v < hi) return v;
    }
}

MapBounds read_bounds(LineReader& in) {
    const auto t = in.keyword("bounds", 4);
    MapBounds b{in.real(t[1], "bounds.x_min"), in.real(t[2], "bounds.x_max"),
                in.real(t[3], "bounds.y_min"), in.real(t[4], "bounds.y_max")};
    b.validate();
    return b;
}

void write_bounds(std::ostream& os, const MapBounds& b) {
    os << "bounds " << format_exact(b.x_min) << ' ' << format_exact(b.x_max) << ' '
       << format_exact(b.y_min) << ' ' << format_exact(b.y_max) << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    return is;
}

void finish_write(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
}

} // namespace

void Instance::validate() const {
    bounds.validate();
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const PointFeature& p = points[i];
        if (p.id != static_cast<std::int64_t>(i + 1)) {
            throw ValidationError("point ids must be dense 1..n in order; position " +
                                  std::to_string(i + 1) + " has id " + std::to_string(p.id));
        }
        if (!bounds.contains_strictly(p.pos())) {
            throw ValidationError("point " + std::to_string(p.id) + " lies outside " + to_string(bounds));
        }
        if (!seen.emplace(p.x, p.y).second) {
            throw ValidationError("point " + std::to_string(p.id) + " duplicates an earlier point");
        }
    }
}

Instance random_instance(std::size_t n, const MapBounds& bounds, std::uint64_t seed) {
    bounds.validate();
    if (n < 1) throw ValidationError("instance needs at least one point");
    std::mt19937_64 gen(seed);
    Instance inst{bounds, {}, seed};
    inst.points.reserve(n);
    std::set<std::pair<double, double>> seen;
    while (inst.points.size() < n) {
        const double x = draw_open(gen, bounds.x_min, bounds.x_max);
        const double y = draw_open(gen, bounds.y_min, bounds.y_max);
        if (!seen.emplace(x, y).second) continue;
        inst.points.push_back({static_cast<std::int64_t>(inst.points.size()) + 1, x, y});
    }
    return inst;
}

void write_instance(std::ostream& os, const Instance& inst) {
    os << "pflp-instance 1\n";
    os << "prng " << kPrngName << '\n';
    os << "seed " << inst.seed << '\n';
    write_bounds(os, inst.bounds);
    os << "n " << inst.points.size() << '\n';
    for (const PointFeature& p : inst.points) {
        os << p.id << ' ' << format_exact(p.x) << ' ' << format_exact(p.y) << '\n';
    }
}

Instance read_instance(std::istream& is, const std::string& source) {
    LineReader in(is, source);
    const auto header = in.keyword("pflp-instance", 1);
    if (header[1] != "1") in.fail("version", "unsupported instance format version " + header[1]);
    const auto prng = in.keyword("prng", 1);
    if (prng[1] != kPrngName) in.fail("prng", "unsupported generator '" + prng[1] + "'");

    Instance inst;
    inst.seed = in.integer<std::uint64_t>(in.keyword("seed", 1)[1], "seed");
    inst.bounds = read_bounds(in);
    const auto n = in.integer<std::size_t>(in.keyword("n", 1)[1], "n");
    inst.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = in.expect("point");
        if (t.size() != 3) in.fail("point", "expected 'id x y'");
        inst.points.push_back({in.integer<std::int64_t>(t[0], "point.id"), in.real(t[1], "point.x"),
                               in.real(t[2], "point.y")});
    }
    if (!in.next().empty()) in.fail("point", "more point lines than n=" + std::to_string(n));
    inst.validate();
    return inst;
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
    auto os = open_out(path);
    write_instance(os, inst);
    finish_write(os, path);
}

Instance load_instance(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_instance(is, path.string());
}

void write_placement(std::ostream& os, const Placement& pl) {
    const LabelConfig& c = pl.cls.config;
    os << "pflp-placement 1\n";
    os << "config " << format_exact(c.w) << ' ' << format_exact(c.h) << ' ' << format_exact(c.lsd)
       << ' ' << format_exact(c.ssd) << ' ' << pl.k << '\n';
    write_bounds(os, pl.cls.bounds);
    os << "labels " << pl.cls.m() << '\n';
    for (const LabelBox& b : pl.cls.labels) {
        os << b.id << ' ' << format_exact(b.cx) << ' ' << format_exact(b.cy) << '\n';
    }
    os << "pairs " << pl.assignment.pairs.size() << '\n';
    for (const AssignedPair& pr : pl.assignment.pairs) {
        const Vec2 corner = pl.cls.label(pr.label_id).corner(pr.corner);
        os << pr.point_id << ' ' << pr.label_id << ' ' << format_exact(corner.x) << ' '
           << format_exact(corner.y) << ' ' << pr.level << '\n';
    }
    os << "unassigned " << pl.assignment.unassigned.size() << '\n';
    for (std::int64_t id : pl.assignment.unassigned) os << id << '\n';
    const QualityReport& q = pl.quality;
    os << "quality " << format_exact(q.total_leader_length) << ' ' << format_exact(q.max_leader_length)
       << ' ' << q.leader_label_crossings << ' ' << q.leader_leader_crossings << ' ' << q.unlabeled
       << '\n';
}

void save_placement(const std::filesystem::path& path, const Placement& placement) {
    auto os = open_out(path);
    write_placement(os, placement);
    finish_write(os, path);
}

Placement read_placement(std::istream& is, std::span<const PointFeature> points,
                         const std::string& source) {
    LineReader in(is, source);
    const auto header = in.keyword("pflp-placement", 1);
    if (header[1] != "1") in.fail("version", "unsupported placement format version " + header[1]);

    Placement pl;
    LabelConfig& c = pl.cls.config;
    const auto ct = in.keyword("config", 5);
    c.w = in.real(ct[1], "config.w");
    c.h = in.real(ct[2], "config.h");
    c.lsd = in.real(ct[3], "config.lsd");
    c.ssd = in.real(ct[4], "config.ssd");
    pl.k = in.integer<std::size_t>(ct[5], "config.k");
    c.k = static_cast<std::int64_t>(pl.k);
    pl.cls.bounds = read_bounds(in);
    c.validate(pl.cls.bounds);

    const auto m = in.integer<std::size_t>(in.keyword("labels", 1)[1], "labels");
    pl.cls.labels.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto t = in.expect("label");
        if (t.size() != 3) in.fail("label", "expected 'id cx cy'");
        const auto id = in.integer<std::int64_t>(t[0], "label.id");
        if (id != static_cast<std::int64_t>(i + 1)) in.fail("label.id", "label ids must be dense 1..m");
        pl.cls.labels.push_back({id, in.real(t[1], "label.cx"), in.real(t[2], "label.cy"), c.w, c.h});
    }

    std::unordered_map<std::int64_t, Vec2> pos;
    for (const PointFeature& p : points) pos.emplace(p.id, p.pos());

    const auto pairs = in.integer<std::size_t>(in.keyword("pairs", 1)[1], "pairs");
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto t = in.expect("pair");
        if (t.size() != 5) in.fail("pair", "expected 'point_id label_id corner_x corner_y level'");
        AssignedPair pr;
        pr.point_id = in.integer<std::int64_t>(t[0], "pair.point_id");
        pr.label_id = in.integer<std::int64_t>(t[1], "pair.label_id");
        const Vec2 corner{in.real(t[2], "pair.corner_x"), in.real(t[3], "pair.corner_y")};
        pr.level = in.integer<std::int64_t>(t[4], "pair.level");
        if (pr.label_id < 1 || static_cast<std::size_t>(pr.label_id) > m) {
            in.fail("pair.label_id", "unknown label " + t[1]);
        }
        const auto corners = pl.cls.label(pr.label_id).corners();
        std::size_t q = 0;
        while (q < 4 && !(corners[q] == corner)) ++q;
        if (q == 4) in.fail("pair.corner", "not a corner of label " + t[1]);
        pr.corner = static_cast<Corner>(q);
        pr.fallback = pl.k > 0 && pr.level > static_cast<std::int64_t>(pl.k);
        if (!points.empty()) {
            const auto it = pos.find(pr.point_id);
            if (it == pos.end()) in.fail("pair.point_id", "unknown point " + t[0]);
            pr.dist = squared_distance(it->second, corner);
        }
        pl.assignment.pairs.push_back(pr);
    }

    const auto unassigned = in.integer<std::size_t>(in.keyword("unassigned", 1)[1], "unassigned");
    for (std::size_t i = 0; i < unassigned; ++i) {
        const auto t = in.expect("unassigned");
        if (t.size() != 1) in.fail("unassigned", "expected a single point id");
        pl.assignment.unassigned.push_back(in.integer<std::int64_t>(t[0], "unassigned.point_id"));
    }

    const auto qt = in.keyword("quality", 5);
    pl.quality = {in.real(qt[1], "quality.total_leader_length"),
                  in.real(qt[2], "quality.max_leader_length"),
                  in.integer<std::int64_t>(qt[3], "quality.leader_label_crossings"),
                  in.integer<std::int64_t>(qt[4], "quality.leader_leader_crossings"),
                  in.integer<std::int64_t>(qt[5], "quality.unlabeled")};
    if (!in.next().empty()) in.fail("quality", "unexpected content after the quality line");

    if (!points.empty()) pl.leaders = build_leaders(pl.assignment, pl.cls, points);
    return pl;
}

Placement load_placement(const std::filesystem::path& path, std::span<const PointFeature> points) {
    auto is = open_in(path);
    return read_placement(is, points, path.string());
}

} // namespace pflp
