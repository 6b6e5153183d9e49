#pragma once

#include "pflp/geometry.hpp"
#include "pflp/instance.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pflp {

// Per-solve stage durations in seconds.
//   t1: candidate positions (grid + sweep phase)
//   t2: corner distance table + nearest label matrix
//   t3: assignment
// Leader construction and quality scoring are timed separately and are not
// part of the three-way percentages. total is the wall time from the start of
// t1 to the end of leader construction.
struct StageTimings {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t_leaders = 0.0;
    double t_quality = 0.0;
    double total = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

struct SolveResult {
    Placement placement;
    StageTimings timings;
};

// Full pipeline on one instance. config.k == 0 selects default_depth(m).
// Propagates EmptyGridError; unassigned points are reported, not thrown.
SolveResult solve(const Instance& instance, const LabelConfig& config);

struct BenchConfig {
    MapBounds bounds{0.0, 3000.0, 0.0, 4000.0};
    LabelConfig label{};     // w=150, h=100, lsd=10, ssd=10, default k
    std::uint64_t seed0 = 1; // trial t uses seed0 + t
    std::size_t jobs = 1;    // concurrent trials; each solve stays single-threaded
};

struct BenchmarkRow {
    std::int64_t n = 0;
    double w = 0.0;
    double h = 0.0;
    double lsd = 0.0;
    double ssd = 0.0;
    double m = 0.0; // mean candidate count over trials
    std::int64_t trials = 0;
    double mean_total = 0.0;   // seconds
    double stddev_total = 0.0; // sample stddev; 0 for one trial
    double mean_p1 = 0.0;
    double mean_p2 = 0.0;
    double mean_p3 = 0.0;
    double label_area = 0.0; // w * h
    double map_area = 0.0;
    double area_ratio = 0.0; // label_area * m / map_area
    double mean_leader_length = 0.0;
    double mean_leader_label_crossings = 0.0;
    double mean_leader_leader_crossings = 0.0;
    double mean_unlabeled = 0.0;
};

// Runs `trials` seeded instances of size n with the given label config and
// aggregates them into one row.
BenchmarkRow run_trials(std::size_t n, const LabelConfig& label, std::size_t trials,
                        const BenchConfig& bench);

// One row per n, in the given order.
std::vector<BenchmarkRow> sweep_nodes(std::span<const std::size_t> n_list, std::size_t trials,
                                      const BenchConfig& config);

// Cartesian product h x w x n (h outermost, n innermost).
std::vector<BenchmarkRow> sweep_label_sizes(std::span<const double> h_values,
                                            std::span<const double> w_values,
                                            std::span<const std::size_t> n_list, std::size_t trials,
                                            const BenchConfig& config);

// Inclusive arithmetic range lo, lo+step, ... <= hi.
std::vector<double> value_range(double lo, double hi, double step);

const std::vector<std::string>& report_columns();
void write_report(std::ostream& os, std::span<const BenchmarkRow> rows);
void emit_report(std::span<const BenchmarkRow> rows, const std::filesystem::path& path);
std::vector<BenchmarkRow> read_report(std::istream& is, const std::string& source = "<csv>");

} // namespace pflp
