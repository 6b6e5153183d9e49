#include "pflp/bench.hpp"

#include "pflp/numfmt.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace pflp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

struct TrialResult {
    StageTimings t;
    double m = 0.0;
    QualityReport q;
};

} // namespace

SolveResult solve(const Instance& instance, const LabelConfig& config) {
    const std::span<const PointFeature> points(instance.points);
    SolveResult out;
    Placement& pl = out.placement;
    StageTimings& t = out.timings;

    const auto c0 = Clock::now();
    pl.cls = sweep_phase(generate_grid(instance.bounds, config, points), points);
    const auto c1 = Clock::now();

    pl.k = config.k > 0 ? std::min(static_cast<std::size_t>(config.k), pl.cls.m())
                        : default_depth(pl.cls.m());
    const CornerDistanceTable table = corner_distance_table(points, pl.cls);
    const NearestLabelMatrix nlm = build_nlm(table, pl.k);
    const auto c2 = Clock::now();

    pl.assignment = assign_labels(nlm, table);
    const auto c3 = Clock::now();

    pl.leaders = build_leaders(pl.assignment, pl.cls, points);
    const auto c4 = Clock::now();

    pl.quality = score_quality(pl.leaders, pl.cls, pl.assignment);
    const auto c5 = Clock::now();

    t.t1 = seconds(c0, c1);
    t.t2 = seconds(c1, c2);
    t.t3 = seconds(c2, c3);
    t.t_leaders = seconds(c3, c4);
    t.t_quality = seconds(c4, c5);
    t.total = seconds(c0, c4);
    const double staged = t.t1 + t.t2 + t.t3;
    if (staged > 0.0) {
        t.p1 = 100.0 * t.t1 / staged;
        t.p2 = 100.0 * t.t2 / staged;
        t.p3 = 100.0 * t.t3 / staged;
    }
    return out;
}

BenchmarkRow run_trials(std::size_t n, const LabelConfig& label, std::size_t trials,
                        const BenchConfig& bench) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    std::vector<TrialResult> results(trials);

    const auto run_one = [&](std::size_t i) {
        const Instance inst = random_instance(n, bench.bounds, bench.seed0 + i);
        const SolveResult r = solve(inst, label);
        results[i] = {r.timings, static_cast<double>(r.placement.cls.m()), r.placement.quality};
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min(bench.jobs, trials));
    if (jobs == 1) {
        for (std::size_t i = 0; i < trials; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < trials;) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mu);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : workers) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Aggregated in trial order so the result does not depend on scheduling.
    BenchmarkRow row;
    row.n = static_cast<std::int64_t>(n);
    row.w = label.w;
    row.h = label.h;
    row.lsd = label.lsd;
    row.ssd = label.ssd;
    row.trials = static_cast<std::int64_t>(trials);
    const double count = static_cast<double>(trials);
    for (const TrialResult& r : results) {
        row.m += r.m / count;
        row.mean_total += r.t.total / count;
        row.mean_p1 += r.t.p1 / count;
        row.mean_p2 += r.t.p2 / count;
        row.mean_p3 += r.t.p3 / count;
        row.mean_leader_length += r.q.total_leader_length / count;
        row.mean_leader_label_crossings += static_cast<double>(r.q.leader_label_crossings) / count;
        row.mean_leader_leader_crossings += static_cast<double>(r.q.leader_leader_crossings) / count;
        row.mean_unlabeled += static_cast<double>(r.q.unlabeled) / count;
    }
    if (trials > 1) {
        double ss = 0.0;
        for (const TrialResult& r : results) ss += (r.t.total - row.mean_total) * (r.t.total - row.mean_total);
        row.stddev_total = std::sqrt(ss / (count - 1.0));
    }
    row.label_area = label.w * label.h;
    row.map_area = bench.bounds.area();
    row.area_ratio = row.label_area * row.m / row.map_area;
    return row;
}

std::vector<BenchmarkRow> sweep_nodes(std::span<const std::size_t> n_list, std::size_t trials,
                                      const BenchConfig& config) {
    std::vector<BenchmarkRow> rows;
    rows.reserve(n_list.size());
    for (std::size_t n : n_list) rows.push_back(run_trials(n, config.label, trials, config));
    return rows;
}

std::vector<BenchmarkRow> sweep_label_sizes(std::span<const double> h_values,
                                            std::span<const double> w_values,
                                            std::span<const std::size_t> n_list, std::size_t trials,
                                            const BenchConfig& config) {
    if (h_values.empty() || w_values.empty() || n_list.empty()) {
        throw ValidationError("label-size sweep needs non-empty h, w and n lists");
    }
    std::vector<BenchmarkRow> rows;
    rows.reserve(h_values.size() * w_values.size() * n_list.size());
    for (double h : h_values) {
        for (double w : w_values) {
            LabelConfig label = config.label;
            label.w = w;
            label.h = h;
            for (std::size_t n : n_list) rows.push_back(run_trials(n, label, trials, config));
        }
    }
    return rows;
}

std::vector<double> value_range(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo <= hi)) throw ValidationError("range needs lo <= hi and step > 0");
    std::vector<double> out;
    // Index-based so accumulated rounding cannot drop the last value.
    for (std::size_t i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + step * 1e-9) break;
        out.push_back(v);
    }
    return out;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "n",          "w",          "h",          "lsd",
        "ssd",        "m",          "trials",     "mean_total_s",
        "stddev_total_s", "mean_p1", "mean_p2",   "mean_p3",
        "label_area", "map_area",   "area_ratio", "mean_leader_length",
        "mean_leader_label_crossings", "mean_leader_leader_crossings", "mean_unlabeled"};
    return cols;
}

void write_report(std::ostream& os, std::span<const BenchmarkRow> rows) {
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const BenchmarkRow& r : rows) {
        const double v[] = {r.w,          r.h,          r.lsd,         r.ssd,     r.m};
        os << r.n;
        for (double x : v) os << ',' << format_sig6(x);
        os << ',' << r.trials;
        const double rest[] = {r.mean_total, r.stddev_total, r.mean_p1, r.mean_p2, r.mean_p3,
                               r.label_area, r.map_area, r.area_ratio, r.mean_leader_length,
                               r.mean_leader_label_crossings, r.mean_leader_leader_crossings,
                               r.mean_unlabeled};
        for (double x : rest) os << ',' << format_sig6(x);
        os << '\n';
    }
}

void emit_report(std::span<const BenchmarkRow> rows, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open report '" + path.string() + "' for writing");
    write_report(os, rows);
    os.flush();
    if (!os) throw IoError("write to report '" + path.string() + "' failed");
}

std::vector<BenchmarkRow> read_report(std::istream& is, const std::string& source) {
    const auto& cols = report_columns();
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(is, line)) throw ParseError(source, line_no, "header", "empty report");
    {
        std::string expected;
        for (std::size_t i = 0; i < cols.size(); ++i) expected += (i ? "," : "") + cols[i];
        if (line != expected) throw ParseError(source, line_no, "header", "unexpected columns");
    }
    std::vector<BenchmarkRow> rows;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> v;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            double x = 0.0;
            if (!parse_double(cell, x)) {
                throw ParseError(source, line_no, cols[std::min(v.size(), cols.size() - 1)],
                                 "not a number: '" + cell + "'");
            }
            v.push_back(x);
        }
        if (v.size() != cols.size()) {
            throw ParseError(source, line_no, "row",
                             "expected " + std::to_string(cols.size()) + " fields, found " +
                                 std::to_string(v.size()));
        }
        BenchmarkRow r;
        r.n = static_cast<std::int64_t>(v[0]);
        r.w = v[1];
        r.h = v[2];
        r.lsd = v[3];
        r.ssd = v[4];
        r.m = v[5];
        r.trials = static_cast<std::int64_t>(v[6]);
        r.mean_total = v[7];
        r.stddev_total = v[8];
        r.mean_p1 = v[9];
        r.mean_p2 = v[10];
        r.mean_p3 = v[11];
        r.label_area = v[12];
        r.map_area = v[13];
        r.area_ratio = v[14];
        r.mean_leader_length = v[15];
        r.mean_leader_label_crossings = v[16];
        r.mean_leader_leader_crossings = v[17];
        r.mean_unlabeled = v[18];
        rows.push_back(r);
    }
    return rows;
}

} // namespace pflp
