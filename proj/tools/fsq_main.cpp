// Command-line front end: analyze, render, census, segment.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fsq/analysis.hpp"
#include "fsq/census.hpp"
#include "fsq/render.hpp"
#include "fsq/segments.hpp"

namespace {

using namespace fsq;

constexpr int kSuccess = 0;
constexpr int kUsage = 1;
constexpr int kAnalysisError = 2;
constexpr int kViolation = 3;

DigitSet load_digit_set(const std::string& arg) {
    if (arg.find(':') != std::string::npos) {
        return parse_digit_set(arg);
    }
    std::ifstream f(arg);
    if (!f) {
        throw Error(ErrorKind::Io, "cannot read digit set file " + arg);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_digit_set(buf.str());
}

std::vector<int> parse_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad digit '" + item + "' in list " + text);
        }
    }
    return out;
}

Rgb parse_color(const std::string& hex) {
    std::string h = hex.rfind('#', 0) == 0 ? hex.substr(1) : hex;
    if (h.size() != 6 || h.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
        throw Error(ErrorKind::Parse, "colour must be RRGGBB: " + hex);
    }
    Rgb c{};
    for (int i = 0; i < 3; ++i) {
        c[i] = static_cast<std::uint8_t>(std::stoi(h.substr(2 * i, 2), nullptr, 16));
    }
    return c;
}

void print_plain(const Analysis& a, std::ostream& out) {
    out << "digit set: " << a.digits.str() << "  (n=" << a.digits.n() << ", m=" << a.digits.size() << ")\n";
    out << "intersections F_alpha:\n";
    for (FaceVector alpha : nonzero_faces()) {
        out << "  " << a.faces[alpha].str() << (a.realized[alpha.index()] ? "" : "  [offset never realized]") << "\n";
    }
    out << "connected: " << (a.dendrite.connected ? "yes" : "no") << "\n";
    out << "one-point: " << (a.dendrite.one_point ? "yes" : "no") << "\n";
    out << "dendrite: " << (a.dendrite.is_dendrite() ? "yes" : "no");
    if (!a.dendrite.is_dendrite()) {
        out << " (fails " << to_string(a.dendrite.failed) << ")";
    }
    out << "\n";
    if (!a.dendrite.cycle_witness.empty()) {
        out << "cycle:";
        for (const auto& label : a.dendrite.cycle_witness) {
            out << ' ' << label;
        }
        out << "\n";
    }
    out << "max piece intersection: "
        << (a.max_intersection ? std::to_string(*a.max_intersection) : std::string("infinite")) << "\n";
    if (a.dendrite.is_dendrite()) {
        out << "boundary type: " << to_string(a.boundary_type) << "\n";
        out << "boundary points (" << a.boundary.size() << "):";
        for (const Point& p : a.boundary) {
            out << " (" << p.str() << ")";
        }
        out << "\n";
        for (const auto& [p, o] : a.corner_orders) {
            out << "corner (" << p.str() << ") order " << o << "\n";
        }
        if (a.quadruple_free) {
            out << "quadruple-free: " << (*a.quadruple_free ? "yes" : "no") << "\n";
        }
        if (a.main_tree) {
            const auto& t = *a.main_tree;
            out << "main tree: type " << t.shape.type_id << ", shape " << t.shape.canonical;
            if (t.stabilized) {
                out << " (stable from level " << t.stabilized_at << ")";
            } else {
                out << " (inconclusive)";
            }
            out << "\n";
        }
        if (a.orders) {
            out << "max order: " << a.orders->max_order << " over " << a.orders->candidates << " points; histogram";
            for (const auto& [o, c] : a.orders->histogram) {
                out << ' ' << o << ':' << c;
            }
            out << "\n";
            for (const auto& [p, o] : a.orders->ramification_points) {
                out << "  ramification (" << p.str() << ") order " << o << "\n";
            }
        }
    }
    for (const auto& v : a.violations) {
        out << "VIOLATION " << v.code << ": " << v.message << "\n";
    }
    for (const auto& note : a.notes) {
        out << "note: " << note << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Fractal square analysis"};
    app.require_subcommand(1);

    std::string digit_arg;
    int level = 2;
    bool json = false;
    bool dot = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Classify one digit set");
    analyze_cmd->add_option("digitset", digit_arg, "\"n: x,y x,y ...\", JSON, or a file holding either")->required();
    analyze_cmd->add_option("--level", level, "Level of the order census and of the --dot graph")
        ->check(CLI::Range(1, 8));
    analyze_cmd->add_flag("--json", json, "JSON report");
    analyze_cmd->add_flag("--dot", dot, "Print the level graph in Graphviz form");

    int k = 3;
    int px = 729;
    std::string out_path;
    bool tree = false;
    bool diagram = false;
    std::string fg, bg, tree_color;
    auto* render_cmd = app.add_subcommand("render", "Draw the attractor, main tree or digit diagram");
    render_cmd->add_option("digitset", digit_arg)->required();
    render_cmd->add_option("-k", k, "Refinement level")->check(CLI::Range(0, 12));
    render_cmd->add_option("-o", out_path, "Output file (PNG, or SVG with --diagram)")->required();
    render_cmd->add_option("--px", px, "Image size in pixels")->check(CLI::Range(1, 16384));
    render_cmd->add_flag("--tree", tree, "Overlay the level-k main tree");
    render_cmd->add_flag("--diagram", diagram, "Digit diagram as SVG");
    render_cmd->add_option("--fg", fg, "Attractor colour RRGGBB");
    render_cmd->add_option("--bg", bg, "Background colour RRGGBB");
    render_cmd->add_option("--tree-color", tree_color, "Tree colour RRGGBB");

    int n = 3;
    std::string out_dir = ".";
    int jobs = 1;
    bool dendrites_only = false;
    bool allow_n5 = false;
    bool quiet = false;
    auto* census_cmd = app.add_subcommand("census", "Classify every digit set of order n");
    census_cmd->add_option("-n", n, "Order")->required()->check(CLI::Range(2, 5));
    census_cmd->add_option("--out", out_dir, "Directory for census_n<N>.csv and .json");
    census_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    census_cmd->add_flag("--dendrites-only", dendrites_only, "Keep only dendrite rows");
    census_cmd->add_flag("--allow-n5", allow_n5, "Permit the n=5 census (rows per symmetry class)");
    census_cmd->add_flag("--quiet", quiet, "No progress on standard error");

    int seg_n = 0;
    std::string d1, d2;
    auto* segment_cmd = app.add_subcommand("segment", "Intersect two one-dimensional Cantor sets");
    segment_cmd->add_option("--n", seg_n, "Order")->required()->check(CLI::Range(2, 1 << 20));
    segment_cmd->add_option("--d1", d1, "Comma-separated digits")->required();
    segment_cmd->add_option("--d2", d2, "Comma-separated digits")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*analyze_cmd) {
            DigitSet d = load_digit_set(digit_arg);
            AnalysisOptions options;
            options.order_level = level;
            Analysis a = analyze(d, options);
            if (json) {
                std::cout << to_json(a).dump(2) << "\n";
            } else {
                print_plain(a, std::cout);
            }
            if (dot) {
                std::cout << to_dot(level_graph(d, a.faces, level));
            }
            return a.violations.empty() ? kSuccess : kViolation;
        }
        if (*render_cmd) {
            DigitSet d = load_digit_set(digit_arg);
            Palette palette;
            if (!fg.empty()) {
                palette.attractor = parse_color(fg);
            }
            if (!bg.empty()) {
                palette.background = parse_color(bg);
            }
            if (!tree_color.empty()) {
                palette.tree = parse_color(tree_color);
            }
            if (diagram) {
                write_text(out_path, render_diagram(d, palette));
            } else if (tree) {
                write_bytes(out_path, encode_png(render_tree_overlay(d, k, px, palette)));
            } else {
                write_bytes(out_path, encode_png(render_attractor(d, k, px, palette)));
            }
            return kSuccess;
        }
        if (*census_cmd) {
            CensusOptions options;
            options.n = n;
            options.jobs = jobs;
            options.dendrites_only = dendrites_only;
            options.allow_n5 = allow_n5;
            if (!quiet) {
                options.progress = [](std::size_t done, std::size_t total) {
                    std::cerr << "\rclassified " << done << " / " << total << " symmetry classes" << std::flush;
                    if (done == total) {
                        std::cerr << "\n";
                    }
                };
            }
            const auto start = std::chrono::steady_clock::now();
            CensusResult r = run_census(options);
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::filesystem::create_directories(out_dir);
            const std::string stem = out_dir + "/census_n" + std::to_string(n);
            std::ostringstream csv;
            write_csv(csv, r);
            write_text(stem + ".csv", csv.str());
            auto summary = census_summary(r);
            write_text(stem + ".json", summary.dump(2) + "\n");
            std::cout << "n=" << n << ": " << r.subsets << " digit sets, " << summary["connected"] << " connected, "
                      << summary["dendrites"] << " dendrites, " << r.violations.size() << " violations, "
                      << r.inconclusive.size() << " inconclusive\n";
            std::cerr << "census took " << seconds << " s; wrote " << stem << ".csv and " << stem << ".json\n";
            for (const auto& v : r.violations) {
                std::cerr << "VIOLATION " << census_digits(n, v.canonical) << " " << v.violation.code << ": "
                          << v.violation.message << "\n";
            }
            return r.clean() ? kSuccess : kViolation;
        }
        if (*segment_cmd) {
            SegmentDigitSet a(seg_n, parse_list(d1));
            SegmentDigitSet b(seg_n, parse_list(d2));
            std::cout << segment_intersect(a, b).str() << "\n";
            return kSuccess;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return e.kind() == ErrorKind::Parse ? kUsage : kAnalysisError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAnalysisError;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
