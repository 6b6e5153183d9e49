// pflp: command line front end for grid-based point-feature label placement.
//
//   pflp gen         --n 25 --seed 7 --out inst.txt
//   pflp solve       --instance inst.txt --render --out inst_placement.txt
//   pflp bench-nodes --n-list 25,50,100,150,250,500 --trials 100 --csv nodes.csv
//   pflp bench-sizes --h-range 50:150:10 --w-range 130:200:10 --n-list 500 --csv sizes.csv
//   pflp render      --instance inst.txt --placement inst_placement.txt --out inst_final.svg
//
// Outputs without an explicit path go to $PFLP_OUT_DIR (default: current dir).
// Exit codes: 0 success, 1 validation/parse error, 2 I/O error.

#include "pflp/bench.hpp"
#include "pflp/instance.hpp"
#include "pflp/numfmt.hpp"
#include "pflp/render.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

fs::path out_dir() {
    const char* env = std::getenv("PFLP_OUT_DIR");
    return env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
}

fs::path resolve_out(const std::string& given, const std::string& fallback_name) {
    if (!given.empty()) return given;
    const fs::path dir = out_dir();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw pflp::IoError("cannot create output directory '" + dir.string() + "'");
    return dir / fallback_name;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string part; std::getline(is, part, sep);) out.push_back(part);
    return out;
}

double to_real(const std::string& s, const std::string& what) {
    double v = 0.0;
    if (!pflp::parse_double(s, v)) throw pflp::ValidationError(what + ": not a number: '" + s + "'");
    return v;
}

pflp::MapBounds parse_bounds(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 4) throw pflp::ValidationError("--bounds expects x_min,x_max,y_min,y_max");
    pflp::MapBounds b{to_real(parts[0], "--bounds"), to_real(parts[1], "--bounds"),
                      to_real(parts[2], "--bounds"), to_real(parts[3], "--bounds")};
    b.validate();
    return b;
}

std::vector<std::size_t> parse_n_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& part : split(s, ',')) {
        const double v = to_real(part, "--n-list");
        if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw pflp::ValidationError("--n-list entries must be positive integers");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw pflp::ValidationError("--n-list is empty");
    return out;
}

// "lo:hi:step", "lo:hi" (step 10) or a single value.
std::vector<double> parse_range(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) return {to_real(parts[0], what)};
    if (parts.size() != 2 && parts.size() != 3) throw pflp::ValidationError(what + " expects lo:hi[:step]");
    const double step = parts.size() == 3 ? to_real(parts[2], what) : 10.0;
    return pflp::value_range(to_real(parts[0], what), to_real(parts[1], what), step);
}

struct LabelFlags {
    double w = 150.0;
    double h = 100.0;
    double lsd = 10.0;
    double ssd = 10.0;
    std::int64_t k = 0;

    void add_to(CLI::App* app, bool with_size) {
        if (with_size) {
            // --h is the label height here, so help is long-form only.
            app->set_help_flag("--help", "Print this help message and exit");
            app->add_option("--w", w, "label width (map units)")->capture_default_str();
            app->add_option("--h", h, "label height (map units)")->capture_default_str();
        }
        app->add_option("--lsd", lsd, "label safe distance")->capture_default_str();
        app->add_option("--ssd", ssd, "screen safe distance")->capture_default_str();
        app->add_option("--k", k, "nearest-label depth (0 = min(m, max(8, ceil(m/10))))")
            ->capture_default_str();
    }

    pflp::LabelConfig config() const { return {w, h, lsd, ssd, k}; }
};

void print_rows(const std::vector<pflp::BenchmarkRow>& rows) {
    std::printf("%6s %7s %7s %8s %12s %8s %8s %8s\n", "n", "w", "h", "m", "mean_total_s", "p1%",
                "p2%", "p3%");
    for (const auto& r : rows) {
        std::printf("%6lld %7g %7g %8.1f %12.6f %8.3f %8.3f %8.3f\n", static_cast<long long>(r.n),
                    r.w, r.h, r.m, r.mean_total, r.mean_p1, r.mean_p2, r.mean_p3);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-based point-feature label placement"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    std::size_t gen_n = 25;
    std::uint64_t gen_seed = 1;
    std::string gen_bounds = "0,3000,0,4000";
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of point features")->required();
    gen->add_option("--seed", gen_seed, "64-bit seed")->capture_default_str();
    gen->add_option("--bounds", gen_bounds, "x_min,x_max,y_min,y_max")->capture_default_str();
    gen->add_option("--out", gen_out, "instance file");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "place labels for an instance");
    std::string solve_instance;
    std::string solve_out;
    bool solve_render = false;
    LabelFlags solve_flags;
    solve_cmd->add_option("--instance", solve_instance, "instance file")->required();
    solve_flags.add_to(solve_cmd, true);
    solve_cmd->add_flag("--render", solve_render, "also write <id>_grid.svg and <id>_final.svg");
    solve_cmd->add_option("--out", solve_out, "placement dump (default <id>_placement.txt)");

    // bench-nodes
    auto* bn = app.add_subcommand("bench-nodes", "node-count sweep at a fixed label size");
    std::string bn_list = "25,50,100,150,250,500";
    std::size_t bn_trials = 100;
    std::string bn_csv;
    std::string bn_bounds = "0,3000,0,4000";
    std::uint64_t bn_seed = 1;
    std::size_t bn_jobs = 1;
    LabelFlags bn_flags;
    bn->add_option("--n-list", bn_list, "comma separated node counts")->capture_default_str();
    bn->add_option("--trials", bn_trials, "trials per node count")->capture_default_str();
    bn->add_option("--csv", bn_csv, "report path (default bench_nodes.csv)");
    bn->add_option("--bounds", bn_bounds, "x_min,x_max,y_min,y_max")->capture_default_str();
    bn->add_option("--seed", bn_seed, "seed of trial 0")->capture_default_str();
    bn->add_option("--jobs", bn_jobs, "concurrent trials")->capture_default_str();
    bn_flags.add_to(bn, true);

    // bench-sizes
    auto* bs = app.add_subcommand("bench-sizes", "label-size sweep");
    std::string bs_h = "50:150:10";
    std::string bs_w = "130:200:10";
    std::string bs_list = "50,100,150,250,500";
    std::size_t bs_trials = 20;
    std::string bs_csv;
    std::string bs_bounds = "0,3000,0,4000";
    std::uint64_t bs_seed = 1;
    std::size_t bs_jobs = 1;
    LabelFlags bs_flags;
    bs->add_option("--h-range", bs_h, "lo:hi[:step] label heights")->capture_default_str();
    bs->add_option("--w-range", bs_w, "lo:hi[:step] label widths")->capture_default_str();
    bs->add_option("--n-list", bs_list, "comma separated node counts")->capture_default_str();
    bs->add_option("--trials", bs_trials, "trials per configuration")->capture_default_str();
    bs->add_option("--csv", bs_csv, "report path (default bench_sizes.csv)");
    bs->add_option("--bounds", bs_bounds, "x_min,x_max,y_min,y_max")->capture_default_str();
    bs->add_option("--seed", bs_seed, "seed of trial 0")->capture_default_str();
    bs->add_option("--jobs", bs_jobs, "concurrent trials")->capture_default_str();
    bs_flags.add_to(bs, false);

    // render
    auto* rd = app.add_subcommand("render", "render an instance and a placement dump as SVG");
    std::string rd_instance;
    std::string rd_placement;
    std::string rd_style;
    std::string rd_stage = "final";
    std::string rd_out;
    rd->add_option("--instance", rd_instance, "instance file")->required();
    rd->add_option("--placement", rd_placement, "placement dump")->required();
    rd->add_option("--style", rd_style, "JSON render style");
    rd->add_option("--stage", rd_stage, "grid or final")
        ->check(CLI::IsMember({"grid", "final"}))
        ->capture_default_str();
    rd->add_option("--out", rd_out, "SVG path (default <id>_<stage>.svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*gen) {
            const auto inst = pflp::random_instance(gen_n, parse_bounds(gen_bounds), gen_seed);
            const auto path = resolve_out(gen_out, "instance_n" + std::to_string(gen_n) + "_s" +
                                                       std::to_string(gen_seed) + ".txt");
            pflp::save_instance(path, inst);
            std::cout << "wrote " << path.string() << " (" << inst.n() << " points)\n";
        } else if (*solve_cmd) {
            const fs::path in_path(solve_instance);
            const auto inst = pflp::load_instance(in_path);
            const std::string id = in_path.stem().string();
            const auto result = pflp::solve(inst, solve_flags.config());
            const auto& pl = result.placement;
            const auto path = resolve_out(solve_out, id + "_placement.txt");
            pflp::save_placement(path, pl);
            if (solve_render) {
                const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
                const pflp::RenderStyle style;
                pflp::write_text_file(dir / pflp::scene_file_name(id, "grid"),
                                      pflp::render_scene(inst.points, pl.cls, nullptr, {}, style));
                pflp::write_text_file(dir / pflp::scene_file_name(id, "final"),
                                      pflp::render_scene(inst.points, pl.cls, &pl.assignment,
                                                         pl.leaders, style));
            }
            const auto& t = result.timings;
            std::cout << "n=" << inst.n() << " m=" << pl.cls.m() << " k=" << pl.k
                      << " assigned=" << pl.assignment.pairs.size()
                      << " unassigned=" << pl.assignment.unassigned.size() << '\n'
                      << "t1=" << t.t1 << "s t2=" << t.t2 << "s t3=" << t.t3
                      << "s leaders=" << t.t_leaders << "s total=" << t.total << "s\n"
                      << "p1=" << t.p1 << "% p2=" << t.p2 << "% p3=" << t.p3 << "%\n"
                      << "leader length total=" << pl.quality.total_leader_length
                      << " max=" << pl.quality.max_leader_length
                      << " leader/label crossings=" << pl.quality.leader_label_crossings
                      << " leader/leader crossings=" << pl.quality.leader_leader_crossings << '\n'
                      << "wrote " << path.string() << '\n';
        } else if (*bn) {
            pflp::BenchConfig cfg;
            cfg.bounds = parse_bounds(bn_bounds);
            cfg.label = bn_flags.config();
            cfg.seed0 = bn_seed;
            cfg.jobs = bn_jobs;
            const auto n_list = parse_n_list(bn_list);
            const auto rows = pflp::sweep_nodes(n_list, bn_trials, cfg);
            const auto path = resolve_out(bn_csv, "bench_nodes.csv");
            pflp::emit_report(rows, path);
            print_rows(rows);
            std::cout << "wrote " << path.string() << '\n';
        } else if (*bs) {
            pflp::BenchConfig cfg;
            cfg.bounds = parse_bounds(bs_bounds);
            cfg.label = bs_flags.config();
            cfg.seed0 = bs_seed;
            cfg.jobs = bs_jobs;
            const auto h = parse_range(bs_h, "--h-range");
            const auto w = parse_range(bs_w, "--w-range");
            const auto n_list = parse_n_list(bs_list);
            const auto rows = pflp::sweep_label_sizes(h, w, n_list, bs_trials, cfg);
            const auto path = resolve_out(bs_csv, "bench_sizes.csv");
            pflp::emit_report(rows, path);
            print_rows(rows);
            std::cout << "wrote " << path.string() << '\n';
        } else if (*rd) {
            const fs::path in_path(rd_instance);
            const auto inst = pflp::load_instance(in_path);
            const auto pl = pflp::load_placement(rd_placement, inst.points);
            const pflp::RenderStyle style = rd_style.empty() ? pflp::RenderStyle{} : pflp::load_style(rd_style);
            const std::string doc =
                rd_stage == "grid"
                    ? pflp::render_scene(inst.points, pl.cls, nullptr, {}, style)
                    : pflp::render_scene(inst.points, pl.cls, &pl.assignment, pl.leaders, style);
            const auto path = resolve_out(rd_out, pflp::scene_file_name(in_path.stem().string(), rd_stage));
            pflp::write_text_file(path, doc);
            std::cout << "wrote " << path.string() << '\n';
        }
    } catch (const pflp::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pflp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
