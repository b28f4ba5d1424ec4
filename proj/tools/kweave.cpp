// kweave: frame, K-frame and weaving analysis from the command line.
//
// Exit codes: 0 positive result, 1 negative certificate (not a frame / not a
// K-frame / not woven / condition fails / range not included), 2 input or
// usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kweave/example_families.hpp"
#include "kweave/report.hpp"

namespace {

using kweave::report::json;
namespace fs = std::filesystem;

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Invocation {
    std::vector<std::string> command;
    std::vector<kweave::report::InputDigest> inputs;
    std::string out_path;
    std::string csv_path;

    void track(const std::string& path) {
        inputs.push_back({path, kweave::io::sha256_hex(kweave::io::read_file(path))});
    }

    kweave::Frame frame(const std::string& path) {
        track(path);
        return kweave::io::load_frame(path);
    }

    kweave::Matrix op(const std::string& path, bool square = true) {
        track(path);
        return kweave::io::load_operator(path, square);
    }

    void emit(json result, std::optional<std::uint64_t> seed = std::nullopt) const {
        if (out_path.empty()) return;
        kweave::io::save_json(out_path, kweave::report::envelope(command, inputs, std::move(result), seed));
    }

    void csv(const kweave::WeavingReport& r) const {
        if (csv_path.empty()) return;
        std::ofstream out(csv_path);
        if (!out) throw kweave::Error(kweave::ErrorCode::BadFile, "cannot write " + csv_path);
        kweave::report::write_csv(out, r);
    }
};

kweave::KOperator make_k(const kweave::Matrix& m) {
    kweave::KOperator k(m);
    if (k.nearly_rank_deficient()) {
        std::cerr << "warning: K is nearly rank deficient (sigma_min+ = " << k.sigma_min_pos()
                  << ", sigma_max = " << k.sigma_max() << ")\n";
    }
    return k;
}

struct CertifyFlags {
    std::string mode = "exhaustive";
    std::uint64_t budget = 4096;
    std::uint64_t seed = 0;
    std::uint64_t cap = std::uint64_t{1} << 20;
    std::optional<double> threshold;

    void add_to(CLI::App* app) {
        app->add_option("--mode", mode, "exhaustive or sampled")
            ->check(CLI::IsMember({"exhaustive", "sampled"}));
        app->add_option("--budget", budget, "random partitions in sampled mode");
        app->add_option("--seed", seed, "seed for sampled mode");
        app->add_option("--cap", cap, "largest partition count evaluated exhaustively");
        app->add_option("--threshold", threshold, "woven threshold (default 1e-8*(1+upper))");
    }

    kweave::CertifyOptions options(bool keep_table) const {
        kweave::CertifyOptions o;
        o.mode = mode == "sampled" ? kweave::CertifyMode::Sampled : kweave::CertifyMode::Exhaustive;
        o.budget = budget;
        o.seed = seed;
        o.partition_cap = cap;
        o.woven_threshold = threshold;
        o.keep_table = keep_table;
        return o;
    }
};

// Falls back to sampling when the exhaustive search would exceed the cap.
template <typename Fn>
auto with_cap_fallback(kweave::CertifyOptions options, Fn&& fn) {
    try {
        return fn(options);
    } catch (const kweave::Error& e) {
        if (e.code() != kweave::ErrorCode::CapExceeded || options.mode != kweave::CertifyMode::Exhaustive) {
            throw;
        }
        std::cerr << "warning: " << e.what() << "; switching to sampled mode (budget " << options.budget
                  << ", seed " << options.seed << "). A woven verdict is then not a certificate.\n";
        options.mode = kweave::CertifyMode::Sampled;
        return fn(options);
    }
}

// files = frame files..., K operator file.
kweave::FrameFamily load_family(Invocation& inv, const std::vector<std::string>& files) {
    if (files.size() < 3) {
        throw CLI::ValidationError("files", "need at least two frame files followed by an operator file");
    }
    kweave::FrameFamily family;
    for (std::size_t i = 0; i + 1 < files.size(); ++i) family.push_back(inv.frame(files[i]));
    return family;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kweave: frames, K-frames and weaving certification"};
    app.require_subcommand(1);
    Invocation inv;
    inv.command.assign(argv, argv + argc);
    int status = kPositive;

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", inv.out_path, "write a kweave-report-v1 JSON file");
    };

    // frame-bounds
    std::string frame_path;
    auto* frame_bounds = app.add_subcommand("frame-bounds", "optimal frame bounds of a frame file");
    frame_bounds->add_option("frame", frame_path)->required();
    add_out(frame_bounds);
    frame_bounds->callback([&] {
        const auto frame = inv.frame(frame_path);
        const auto bounds = kweave::frame_bounds(frame);
        kweave::report::print(std::cout, bounds);
        inv.emit(kweave::report::to_json(bounds));
        status = kweave::is_frame(bounds) ? kPositive : kNegative;
    });

    // kframe-check
    std::string op_path;
    std::optional<double> threshold;
    auto* kframe_check = app.add_subcommand("kframe-check", "K-frame test with optimal lower bound");
    kframe_check->add_option("frame", frame_path)->required();
    kframe_check->add_option("op", op_path)->required();
    kframe_check->add_option("--threshold", threshold, "minimum acceptable lower bound");
    add_out(kframe_check);
    kframe_check->callback([&] {
        const auto frame = inv.frame(frame_path);
        const auto k = make_k(inv.op(op_path));
        const double t = threshold.value_or(kweave::default_kframe_threshold(kweave::frame_bounds(frame).upper));
        const auto r = kweave::is_kframe(frame, k, t);
        kweave::report::print(std::cout, r);
        inv.emit(kweave::report::to_json(r));
        status = r.is_kframe ? kPositive : kNegative;
    });

    // weave-certify
    std::vector<std::string> files;
    CertifyFlags flags;
    auto* certify = app.add_subcommand("weave-certify", "certify a family as K-woven or not");
    certify->add_option("files", files, "frame files followed by the K operator file")->required();
    flags.add_to(certify);
    certify->add_option("--csv", inv.csv_path, "per-partition bounds table");
    add_out(certify);
    certify->callback([&] {
        const auto family = load_family(inv, files);
        const auto k = make_k(inv.op(files.back()));
        const auto r = with_cap_fallback(flags.options(!inv.csv_path.empty()), [&](const auto& o) {
            return kweave::certify_woven(family, k, o);
        });
        kweave::report::print(std::cout, r);
        inv.csv(r);
        inv.emit(kweave::report::to_json(r), r.exhaustive ? std::nullopt : std::optional(r.seed));
        status = r.woven ? kPositive : kNegative;
    });

    // weave-transform
    std::string u_path;
    auto* transform = app.add_subcommand("weave-transform", "certify the images U·φ against UK");
    transform->add_option("files", files, "frame files followed by the K operator file")->required();
    transform->add_option("--u", u_path, "operator U")->required();
    flags.add_to(transform);
    transform->add_option("--csv", inv.csv_path, "per-partition bounds table (transformed family)");
    add_out(transform);
    transform->callback([&] {
        const auto family = load_family(inv, files);
        const auto k = make_k(inv.op(files.back()));
        const auto u = inv.op(u_path);
        const auto r = with_cap_fallback(flags.options(!inv.csv_path.empty()), [&](const auto& o) {
            return kweave::transform_weaving(family, k, u, o);
        });
        kweave::report::print(std::cout, r);
        inv.csv(r.transformed);
        inv.emit(kweave::report::to_json(r),
                 r.transformed.exhaustive ? std::nullopt : std::optional(r.transformed.seed));
        status = r.transformed.woven ? kPositive : kNegative;
    });

    // perturb-check
    std::string f2_path;
    std::optional<double> lambda, alpha, a1;
    double mu = 0.0, nu = 0.0;
    std::uint64_t perturb_seed = 0;
    std::uint64_t samples = 10000;
    bool run_certify = false;
    auto* perturb = app.add_subcommand("perturb-check", "perturbation condition for a pair of frames");
    perturb->add_option("f1", frame_path, "orthogonal frame")->required();
    perturb->add_option("f2", f2_path, "perturbed frame")->required();
    perturb->add_option("op", op_path, "K operator")->required();
    perturb->add_option("--lambda", lambda, "default: the synthesis gap ||T1 - T2||");
    perturb->add_option("--mu", mu);
    perturb->add_option("--nu", nu);
    perturb->add_option("--alpha", alpha, "default: min squared column norm of f1");
    perturb->add_option("--a1", a1, "manual lower K-frame bound of f1 (<= optimal)");
    perturb->add_option("--seed", perturb_seed, "seed for sampled verification");
    perturb->add_option("--samples", samples, "random directions when mu or nu is nonzero");
    perturb->add_flag("--certify", run_certify, "cross-check by exhaustive weaving certification");
    add_out(perturb);
    perturb->callback([&] {
        const auto f1 = inv.frame(frame_path);
        const auto f2 = inv.frame(f2_path);
        const auto k = make_k(inv.op(op_path));
        kweave::PerturbationParams params;
        params.lambda = lambda.value_or(kweave::synthesis_gap(f1, f2));
        params.mu = mu;
        params.nu = nu;
        params.alpha = alpha.value_or(kweave::check_orthogonal_alpha(f1).alpha_max);
        kweave::PerturbationOptions options{a1, perturb_seed, samples};
        const bool sampled = mu != 0.0 || nu != 0.0;
        const auto seed = sampled ? std::optional(perturb_seed) : std::nullopt;
        if (run_certify) {
            const auto r = kweave::perturbation_certify(f1, f2, k, params, options);
            kweave::report::print(std::cout, r);
            inv.emit(kweave::report::to_json(r), seed);
            status = r.report.condition_27_ok && r.report.hypotheses_ok && r.consistent ? kPositive : kNegative;
        } else {
            const auto r = kweave::perturbation_condition(f1, f2, k, params, options);
            kweave::report::print(std::cout, r);
            inv.emit(kweave::report::to_json(r), seed);
            status = r.condition_27_ok && r.hypotheses_ok ? kPositive : kNegative;
        }
    });

    // douglas
    std::string l1_path, l2_path;
    auto* douglas = app.add_subcommand("douglas", "range inclusion R(L1) in R(L2) and the minimal factor");
    douglas->add_option("l1", l1_path)->required();
    douglas->add_option("l2", l2_path)->required();
    add_out(douglas);
    douglas->callback([&] {
        const auto l1 = inv.op(l1_path, false);
        const auto l2 = inv.op(l2_path, false);
        const auto r = kweave::douglas_check(l1, l2);
        kweave::report::print(std::cout, r);
        inv.emit(kweave::report::to_json(r));
        status = r.range_included ? kPositive : kNegative;
    });

    // paper-example
    std::string example_name;
    Eigen::Index dim = 0;
    std::string emit_dir;
    auto* example = app.add_subcommand("paper-example", "generate a truncated reference weaving family");
    example->add_option("name", example_name, "example_a | example_b | example_pr2")->required();
    example->add_option("--dim", dim, "ambient dimension (>= 4)")->required();
    example->add_option("--emit", emit_dir, "directory for f1.json, f2.json, k.json [, u.json]");
    add_out(example);
    example->callback([&] {
        const auto name = kweave::parse_example_name(example_name);
        if (!name) throw CLI::ValidationError("name", "unknown example '" + example_name + "'");
        const auto family = kweave::example_family(*name, dim);
        json files = json::array();
        if (!emit_dir.empty()) {
            fs::create_directories(emit_dir);
            auto write = [&](const std::string& file, const json& doc) {
                const auto path = fs::path(emit_dir) / file;
                kweave::io::save_json(path, doc);
                files.push_back(path.string());
            };
            write("f1.json", kweave::io::frame_to_json(family.frames[0]));
            write("f2.json", kweave::io::frame_to_json(family.frames[1]));
            write("k.json", kweave::io::operator_to_json(family.k));
            if (family.u) write("u.json", kweave::io::operator_to_json(*family.u));
        }
        const auto n = family.frames.front().count();
        std::cout << example_name << ": dim=" << dim << " count=" << n << " frames=2"
                  << (family.u ? " (with U)" : "") << '\n';
        for (const auto& f : files) std::cout << "  wrote " << f.get<std::string>() << '\n';
        inv.emit({{"name", example_name}, {"dim", dim}, {"count", n}, {"files", files}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    } catch (const kweave::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return status;
}
