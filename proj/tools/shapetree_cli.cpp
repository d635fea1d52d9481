// Command line front end: shape ingestion, invariant sampling, tree matching,
// descriptor extraction, and the half-ellipse verification run.
//
// Exit codes: 0 success, 2 argument or input-format problem, 3 degenerate
// shape or no usable extrema, 4 extrema-count mismatch between two shapes,
// 5 unstable frequency pair, 6 quadrature failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapetree/shapetree.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shapetree;

namespace {

SampledBoundary load_shape(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file " + path);
    // Sniff the PGM magic; anything else is treated as point-list CSV.
    char magic[2] = {0, 0};
    in.read(magic, 2);
    in.seekg(0);
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5'))
        return trace_raster_boundary(read_pgm(in));
    return parse_boundary(in);
}

SamplingMethod parse_method(const std::string& name) {
    if (name == "bisection") return SamplingMethod::bisection;
    if (name == "centroid-distance") return SamplingMethod::centroid_distance;
    if (name == "curvature-maxima") return SamplingMethod::curvature_maxima;
    throw ArgumentError("unknown sampling method \"" + name +
                        "\" (expected bisection, centroid-distance or curvature-maxima)");
}

// Weights resolution order: built-in default 1,1,1, then SHAPETREE_W1/W2/W3
// from the environment, then an explicit --weights flag.
Weights resolve_weights(const std::string& flag_value) {
    Weights w;
    auto from_env = [](const char* name, double& slot) {
        if (const char* v = std::getenv(name)) {
            try {
                slot = std::stod(v);
            } catch (const std::logic_error&) {
                throw ArgumentError(std::string("environment variable ") + name +
                                    " is not a number: \"" + v + "\"");
            }
        }
    };
    from_env("SHAPETREE_W1", w.w1);
    from_env("SHAPETREE_W2", w.w2);
    from_env("SHAPETREE_W3", w.w3);
    if (!flag_value.empty()) {
        std::istringstream ss(flag_value);
        std::string tok;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, tok, ','))
                throw ArgumentError("--weights expects w1,w2,w3, got \"" + flag_value + "\"");
            try {
                vals[i] = std::stod(tok);
            } catch (const std::logic_error&) {
                throw ArgumentError("--weights: \"" + tok + "\" is not a number");
            }
        }
        if (std::getline(ss, tok, ','))
            throw ArgumentError("--weights expects exactly three values");
        w = {vals[0], vals[1], vals[2]};
    }
    if (w.w1 < 0.0 || w.w2 < 0.0) throw ArgumentError("weights w1 and w2 must be non-negative");
    return w;
}

SamplePointSet sample_one(const SampledBoundary& b, std::size_t n, SamplingMethod method) {
    switch (method) {
        case SamplingMethod::bisection: return sample_bisection_n(b, n);
        case SamplingMethod::centroid_distance: return sample_by_distance_seed(b, n);
        case SamplingMethod::curvature_maxima: return sample_by_curvature_maxima(b, n);
    }
    throw ArgumentError("unreachable sampling method");
}

// Sample two shapes for matching. The extrema-driven methods choose the two
// seeds jointly, minimizing the arc length correspondence score over all
// extrema pairings, so corresponding points get corresponding indices.
std::pair<SamplePointSet, SamplePointSet> sample_pair(const SampledBoundary& p,
                                                      const SampledBoundary& q, std::size_t n,
                                                      SamplingMethod method) {
    if (method == SamplingMethod::bisection)
        return {sample_bisection_n(p, n), sample_bisection_n(q, n)};
    if (method == SamplingMethod::centroid_distance) {
        const ExtremaSet ep = find_absolute_extrema(centroid_distance_profile(p), ExtremeKind::maxima);
        const ExtremaSet eq = find_absolute_extrema(centroid_distance_profile(q), ExtremeKind::maxima);
        const AlignedSeeds seeds = align_extrema(ep, p.total_length(), eq, q.total_length());
        return {sample_by_distance_seed(p, n, ExtremeKind::maxima, 1e-3, seeds.seed_a),
                sample_by_distance_seed(q, n, ExtremeKind::maxima, 1e-3, seeds.seed_b)};
    }
    const ExtremaSet ep = find_local_maxima(curvature_arc_profile(p));
    const ExtremaSet eq = find_local_maxima(curvature_arc_profile(q));
    const AlignedSeeds seeds = align_extrema(ep, p.total_length(), eq, q.total_length());
    return {sample_by_curvature_maxima(p, n, 1e-3, seeds.seed_a),
            sample_by_curvature_maxima(q, n, 1e-3, seeds.seed_b)};
}

std::string csv_of_samples(const SamplePointSet& sp) {
    std::string out = "arc_position\n";
    for (const double s : sp.positions) out += format_value(s) + "\n";
    return out;
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

struct CommonFlags {
    std::string method = "centroid-distance";
    std::size_t n = 64;
    std::string out_dir;
};

int cmd_sample(const std::string& input, const CommonFlags& flags) {
    const SampledBoundary b = load_shape(input);
    const SamplePointSet sp = sample_one(b, flags.n, parse_method(flags.method));
    const fs::path out = ensure_out_dir(flags.out_dir) / (fs::path(input).stem().string() + "_samples.csv");
    atomic_write(out, csv_of_samples(sp));
    std::cout << "seed_arc=" << format_value(sp.seed_arc) << " method=" << to_string(sp.method)
              << " total_arc_length=" << format_value(b.total_length()) << "\n"
              << out.string() << "\n";
    return 0;
}

int cmd_match(const std::string& input_p, const std::string& input_q, const CommonFlags& flags,
              const std::string& weights_flag, const std::string& cost_name, std::size_t root) {
    const SampledBoundary bp = load_shape(input_p);
    const SampledBoundary bq = load_shape(input_q);
    const Weights w = resolve_weights(weights_flag);
    CostKind kind;
    if (cost_name == "tentative")
        kind = CostKind::tentative;
    else if (cost_name == "full")
        kind = CostKind::full;
    else
        throw ArgumentError("unknown cost \"" + cost_name + "\" (expected tentative or full)");

    const auto [sp, sq] = sample_pair(bp, bq, flags.n, parse_method(flags.method));
    if (sp.positions.size() != sq.positions.size())
        throw ArgumentError("sample counts differ between inputs (" +
                            std::to_string(sp.positions.size()) + " vs " +
                            std::to_string(sq.positions.size()) + ")");
    const SampledShape p = realize_samples(bp, sp);
    const SampledShape q = realize_samples(bq, sq);
    if (root >= p.size())
        throw ArgumentError("--root " + std::to_string(root) + " out of range for n = " +
                            std::to_string(p.size()));
    const MatchReport report = match_shapes(p, q, w, kind, root);

    json j;
    j["root_p"] = report.root_p;
    j["root_q"] = report.root_q;
    j["cost"] = report.cost;
    j["cost_terms"] = {report.cost_terms[0], report.cost_terms[1], report.cost_terms[2]};
    json pairs = json::array();
    for (const auto& [pi, qi] : report.pairs) pairs.push_back({pi, qi});
    j["pairs"] = pairs;

    const std::string stem =
        fs::path(input_p).stem().string() + "_vs_" + fs::path(input_q).stem().string();
    const fs::path dir = ensure_out_dir(flags.out_dir);
    const fs::path json_path = dir / (stem + "_match.json");
    const fs::path csv_path = dir / (stem + "_pairs.csv");
    atomic_write(json_path, j.dump(2) + "\n");
    std::string csv = "p_index,q_index\n";
    for (const auto& [pi, qi] : report.pairs)
        csv += std::to_string(pi) + "," + std::to_string(qi) + "\n";
    atomic_write(csv_path, csv);

    std::cout << "cost=" << format_value(report.cost) << "\n"
              << json_path.string() << "\n"
              << csv_path.string() << "\n";
    return 0;
}

int cmd_describe(const std::string& input, const CommonFlags& flags,
                 const std::string& omega_pair) {
    const SampledBoundary b = load_shape(input);
    const SamplePointSet sp = sample_one(b, flags.n, parse_method(flags.method));
    const SampledShape shape = realize_samples(b, sp);
    const CompactShapeTree tree = build_tree(shape, 0);
    const std::size_t n = shape.size();

    std::size_t m1 = 1, m2 = 2;
    if (!omega_pair.empty()) {
        std::istringstream ss(omega_pair);
        char comma = 0;
        if (!(ss >> m1 >> comma >> m2) || comma != ',' || m1 == 0 || m2 == 0)
            throw ArgumentError("--omega-pair expects two positive integers m1,m2");
    }
    auto omega_of = [&](std::size_t m) {
        return 2.0 * pi * static_cast<double>(m) / static_cast<double>(n - 1);
    };
    const double omega1 = omega_of(m1), omega2 = omega_of(m2);

    const fs::path dir = ensure_out_dir(flags.out_dir);
    const std::string stem = fs::path(input).stem().string();

    const SpatialDescriptor sd = spatial_descriptor(tree);
    std::string spatial_csv = "angle_diff,norm_modulus\n";
    for (std::size_t k = 0; k < sd.angle_diffs.size(); ++k)
        spatial_csv += format_value(sd.angle_diffs[k]) + "," + format_value(sd.norm_moduli[k]) + "\n";
    const fs::path spatial_path = dir / (stem + "_spatial.csv");
    atomic_write(spatial_path, spatial_csv);

    const std::vector<double> grid = default_omegas(n);
    auto spectrum_csv = [](const Spectrum& s) {
        std::string out = "omega,re,im\n";
        for (std::size_t i = 0; i < s.omegas.size(); ++i)
            out += format_value(s.omegas[i]) + "," + format_value(s.values[i].real()) + "," +
                   format_value(s.values[i].imag()) + "\n";
        return out;
    };
    const Spectrum angle_grid = angle_spectrum(tree, grid);
    const Spectrum modulus_grid = modulus_spectrum(tree, grid);
    const fs::path angle_path = dir / (stem + "_angle_spectrum.csv");
    const fs::path modulus_path = dir / (stem + "_modulus_spectrum.csv");
    atomic_write(angle_path, spectrum_csv(angle_grid));
    atomic_write(modulus_path, spectrum_csv(modulus_grid));

    // Ratios are computed on a dedicated two-frequency evaluation so any
    // --omega-pair works, even off the default grid.
    auto ratio_json = [&](const Spectrum& s) {
        std::complex<double> r;
        try {
            r = spectral_ratio(s, omega1, omega2);
        } catch (const UnstableFrequencyError& e) {
            // Scan upward for a denominator the ratio can stand on.
            std::string hint;
            for (std::size_t cand = m2 + 1; cand <= m2 + 16; ++cand) {
                if (cand == m1) continue;
                const Spectrum probe =
                    s.kind == Spectrum::Kind::angle
                        ? angle_spectrum(tree, {omega_of(cand)})
                        : modulus_spectrum(tree, {omega_of(cand)});
                if (std::abs(probe.values[0]) > 1e-12) {
                    hint = "; try --omega-pair " + std::to_string(m1) + "," + std::to_string(cand);
                    break;
                }
            }
            throw UnstableFrequencyError(e.what() + hint);
        }
        json j;
        j["omega1"] = omega1;
        j["omega2"] = omega2;
        j["re"] = r.real();
        j["im"] = r.imag();
        return j;
    };
    const Spectrum angle_two = angle_spectrum(tree, {omega1, omega2});
    const Spectrum modulus_two = modulus_spectrum(tree, {omega1, omega2});
    const fs::path angle_ratio_path = dir / (stem + "_angle_ratio.json");
    const fs::path modulus_ratio_path = dir / (stem + "_modulus_ratio.json");
    atomic_write(angle_ratio_path, ratio_json(angle_two).dump(2) + "\n");
    atomic_write(modulus_ratio_path, ratio_json(modulus_two).dump(2) + "\n");

    for (const fs::path& p :
         {spatial_path, angle_path, modulus_path, angle_ratio_path, modulus_ratio_path})
        std::cout << p.string() << "\n";
    return 0;
}

int cmd_verify_ellipses(const std::string& out_dir) {
    const QuadratureConfig cfg;
    const EllipseVerdict verdict = verify_ellipses(cfg);
    const fs::path dir = ensure_out_dir(out_dir);

    auto gap_csv = [&](const HalfEllipse& e1, const HalfEllipse& e2) {
        std::string out = "theta,value\n";
        for (const auto& [theta, value] : gap_curve(e1, e2, 5.0, 181, cfg))
            out += format_value(theta) + "," + format_value(value) + "\n";
        return out;
    };
    const fs::path gap37 = dir / "gap_curve_3_7.csv";
    const fs::path gap1769 = dir / "gap_curve_17_69.csv";
    atomic_write(gap37, gap_csv({3.0, 7.0}, {7.0, 3.0}));
    atomic_write(gap1769, gap_csv({17.0, 69.0}, {69.0, 17.0}));

    std::string table = "a,b,M\n";
    for (const MomentTableRow& row : protrusion_table(cfg))
        table += format_value(row.a) + "," + format_value(row.b) + "," + format_value(row.m) + "\n";
    const fs::path table_path = dir / "moment_table.csv";
    atomic_write(table_path, table);

    json j;
    j["d1"] = verdict.d1;
    j["d2"] = verdict.d2;
    j["equal_within_tol"] = verdict.equal_within_tol;
    j["m1"] = verdict.m1;
    j["m2"] = verdict.m2;
    j["m_orders_by_protrusion"] = verdict.m_orders_by_protrusion;
    const fs::path verdict_path = dir / "ellipse_verdict.json";
    atomic_write(verdict_path, j.dump(2) + "\n");

    for (const fs::path& p : {gap37, gap1769, table_path, verdict_path})
        std::cout << p.string() << "\n";
    if (!verdict.equal_within_tol || !verdict.m_orders_by_protrusion) {
        std::cerr << "error: ellipse verification failed (equal_within_tol="
                  << (verdict.equal_within_tol ? "true" : "false")
                  << ", m_orders_by_protrusion="
                  << (verdict.m_orders_by_protrusion ? "true" : "false") << ")\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact shape tree toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string input_a, input_b;
    std::string weights_flag, omega_pair;
    std::string cost_name = "tentative";
    std::size_t root = 0;

    auto add_common = [&](CLI::App* cmd, bool with_method = true) {
        if (with_method)
            cmd->add_option("--method", flags.method,
                            "Sampling method: bisection, centroid-distance or curvature-maxima");
        cmd->add_option("-n", flags.n, "Number of sample points");
        cmd->add_option("--out", flags.out_dir, "Output directory (default: current)");
    };

    CLI::App* sample = app.add_subcommand("sample", "Sample a shape boundary");
    sample->add_option("input", input_a, "Shape file (point-list CSV or PGM)")->required();
    add_common(sample);

    CLI::App* match = app.add_subcommand("match", "Match two shapes");
    match->add_option("input_p", input_a, "First shape file")->required();
    match->add_option("input_q", input_b, "Second shape file")->required();
    add_common(match);
    match->add_option("--weights", weights_flag, "Cost weights w1,w2,w3");
    match->add_option("--cost", cost_name, "Cost kind: tentative or full");
    match->add_option("--root", root, "Root sample index on the first shape");

    CLI::App* describe = app.add_subcommand("describe", "Emit invariant descriptors of a shape");
    describe->add_option("input", input_a, "Shape file")->required();
    add_common(describe);
    describe->add_option("--omega-pair", omega_pair, "Spectral ratio harmonics m1,m2");

    CLI::App* verify = app.add_subcommand("verify-ellipses", "Run the half-ellipse curvature checks");
    verify->add_option("--out", flags.out_dir, "Output directory (default: current)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sample->parsed()) return cmd_sample(input_a, flags);
        if (match->parsed()) return cmd_match(input_a, input_b, flags, weights_flag, cost_name, root);
        if (describe->parsed()) return cmd_describe(input_a, flags, omega_pair);
        if (verify->parsed()) return cmd_verify_ellipses(flags.out_dir);
    } catch (const AlignmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const UnstableFrequencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const AccuracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const DegenerateShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
