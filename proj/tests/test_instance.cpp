#include "pflp/bench.hpp"
#include "pflp/instance.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

using namespace pflp;

namespace {

const MapBounds kMap{0, 3000, 0, 4000};

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("pflp_test_" + name);
}

std::string to_text(const Instance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    return os.str();
}

Instance parse(const std::string& text) {
    std::istringstream is(text);
    return read_instance(is, "fixture");
}

const char* kSmall =
    "pflp-instance 1\n"
    "prng mt19937_64\n"
    "seed 3\n"
    "bounds 0 300 0 200\n"
    "n 2\n"
    "1 10 20\n"
    "2 30.5 40.25\n";

} // namespace

TEST(RandomInstance, PointsAreDistinctAndInside) {
    const auto inst = random_instance(25, kMap, 1);
    ASSERT_EQ(inst.n(), 25u);
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const auto& p = inst.points[i];
        EXPECT_EQ(p.id, static_cast<std::int64_t>(i + 1));
        EXPECT_TRUE(kMap.contains_strictly(p.pos()));
        EXPECT_TRUE(seen.emplace(p.x, p.y).second);
    }
    EXPECT_NO_THROW(inst.validate());
}

TEST(RandomInstance, SinglePointAndTinyBounds) {
    const auto inst = random_instance(1, MapBounds{5, 5.001, -1, -0.999}, 9);
    ASSERT_EQ(inst.n(), 1u);
    EXPECT_TRUE(inst.bounds.contains_strictly(inst.points[0].pos()));
    EXPECT_THROW(random_instance(0, kMap, 1), ValidationError);
}

TEST(RandomInstance, SeedDeterminesStream) {
    EXPECT_EQ(random_instance(300, kMap, 17), random_instance(300, kMap, 17));
    EXPECT_NE(random_instance(300, kMap, 17).points, random_instance(300, kMap, 18).points);
}

TEST(RandomInstance, GoldenFirstTenPoints) {
    // The underlying engine is the standard one: 10000th draw for the default seed.
    std::mt19937_64 engine;
    engine.discard(9999);
    ASSERT_EQ(engine(), 9981545732273789042ULL);

    const std::vector<PointFeature> golden{
        {1, 1838.053635790575, 3178.864265307863},  {2, 796.9714210095913, 1337.1887238339543},
        {3, 18.58290174504573, 560.8261299660926},  {4, 2809.3522211559616, 2267.2793996165033},
        {5, 700.3957060354498, 2136.9217912141307}, {6, 1701.2846904109238, 2410.6432048285064},
        {7, 2801.9381536950723, 2980.7671962460117}, {8, 147.9492835761601, 602.8929148121778},
        {9, 1015.7790789315501, 3769.998687300404}, {10, 2250.4893186148224, 1707.2374343045685},
    };
    EXPECT_EQ(random_instance(10, kMap, 2024).points, golden);
}

TEST(RandomInstance, QuadrantsAreBalanced) {
    const auto inst = random_instance(10000, kMap, 99);
    int q[4] = {0, 0, 0, 0};
    for (const auto& p : inst.points) q[(p.x >= 1500 ? 1 : 0) + (p.y >= 2000 ? 2 : 0)]++;
    for (int c : q) {
        EXPECT_GE(c, 2300);
        EXPECT_LE(c, 2700);
    }
}

TEST(InstanceFile, RoundTripIsExact) {
    const auto inst = random_instance(500, kMap, 123456789);
    const auto path = temp_file("roundtrip.txt");
    save_instance(path, inst);
    EXPECT_EQ(load_instance(path), inst);
    std::filesystem::remove(path);
}

TEST(InstanceFile, ParsesHandWrittenFile) {
    const auto inst = parse(kSmall);
    EXPECT_EQ(inst.seed, 3u);
    EXPECT_EQ(inst.bounds, (MapBounds{0, 300, 0, 200}));
    ASSERT_EQ(inst.n(), 2u);
    EXPECT_EQ(inst.points[1], (PointFeature{2, 30.5, 40.25}));
    EXPECT_EQ(to_text(inst), kSmall);
}

TEST(InstanceFile, TruncatedFileIsParseError) {
    std::string text = kSmall;
    text.erase(text.rfind("2 30.5"));
    try {
        parse(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "point");
        EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
    }
}

TEST(InstanceFile, MalformedFieldReportsLine) {
    std::string text = kSmall;
    text.replace(text.find("40.25"), 5, "4O.25");
    try {
        parse(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
        EXPECT_EQ(e.field(), "point.y");
    }
    EXPECT_THROW(parse("pflp-instance 2\n"), ParseError);
    EXPECT_THROW(parse(std::string(kSmall) + "3 1 1\n"), ParseError);
}

TEST(InstanceFile, OutOfBoundsPointNamesTheId) {
    std::string text = kSmall;
    text.replace(text.find("2 30.5"), 6, "2 300.0");
    try {
        parse(text);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("point 2"), std::string::npos) << e.what();
    }
}

TEST(InstanceFile, MissingFileIsIoError) {
    EXPECT_THROW(load_instance("/nonexistent/dir/x.txt"), IoError);
}

TEST(PlacementFile, RoundTripRestoresAssignment) {
    const auto inst = random_instance(120, kMap, 5);
    const auto result = solve(inst, LabelConfig{150, 100, 10, 10, 0});
    const auto& pl = result.placement;

    std::ostringstream os;
    write_placement(os, pl);
    std::istringstream is(os.str());
    const auto back = read_placement(is, inst.points, "dump");
    EXPECT_EQ(back.cls.labels, pl.cls.labels);
    EXPECT_EQ(back.cls.config.w, 150);
    EXPECT_EQ(back.k, pl.k);
    EXPECT_EQ(back.assignment, pl.assignment);
    EXPECT_EQ(back.leaders, pl.leaders);
    EXPECT_EQ(back.quality, pl.quality);

    std::ostringstream again;
    write_placement(again, back);
    EXPECT_EQ(again.str(), os.str());
}

TEST(PlacementFile, PairLineFormat) {
    const CandidateLabelSet cls{{LabelBox{1, 75, 50, 150, 100}}, LabelConfig{150, 100, 10, 0, 0},
                                MapBounds{0, 3000, 0, 4000}};
    const std::vector<PointFeature> pts{{1, 200, 50}};
    Placement pl{cls, 1, {}, {}, {}};
    pl.assignment.pairs.push_back({1, 1, Corner::BottomRight, 1, 5000, false});
    std::ostringstream os;
    write_placement(os, pl);
    EXPECT_NE(os.str().find("\npairs 1\n1 1 150 0 1\n"), std::string::npos) << os.str();

    std::string bad = os.str();
    bad.replace(bad.find("1 1 150 0 1"), 11, "1 1 151 0 1");
    std::istringstream is(bad);
    EXPECT_THROW(read_placement(is, pts), ParseError);
}
