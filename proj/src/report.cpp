#include "kweave/report.hpp"

#include <ctime>
#include <iomanip>
#include <limits>
#include <sstream>

namespace kweave::report {

namespace {

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// JSON has no infinity; an unbounded value is written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Fixed {
    std::ostream& out;
    explicit Fixed(std::ostream& o) : out(o) { out << std::setprecision(12); }
};

void line(std::ostream& out, std::string_view key, const auto& value) {
    out << "  " << std::left << std::setw(22) << key << value << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

json to_json(const BoundsPair& bounds) { return {{"lower", bounds.lower}, {"upper", bounds.upper}}; }

json to_json(const Partition& partition) {
    json out = json::array();
    for (auto i : partition.assignment) out.push_back(i + 1);
    return out;
}

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

json to_json(const KFrameReport& r) {
    return {{"is_kframe", r.is_kframe},
            {"lower", r.lower},
            {"upper", r.upper},
            {"threshold", r.threshold},
            {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
}

json to_json(const WeavingReport& r) {
    return {{"woven", r.woven},
            {"weakly_woven", r.weakly_woven},
            {"universal_lower", r.universal_lower},
            {"universal_upper", r.universal_upper},
            {"sum_upper_bound", r.sum_upper_bound},
            {"woven_threshold", r.woven_threshold},
            {"worst_partition", to_json(r.worst_partition)},
            {"failing_partition", r.failing_partition ? to_json(*r.failing_partition) : json(nullptr)},
            {"partitions_checked", r.partitions_checked},
            {"frame_count", r.frame_count},
            {"exhaustive", r.exhaustive},
            {"verdict", r.woven ? (r.exhaustive ? "woven" : "no counterexample found") : "not woven"}};
}

json to_json(const TransformReport& r) {
    return {{"original", to_json(r.original)},
            {"transformed", to_json(r.transformed)},
            {"u_norm_sq", r.u_norm_sq},
            {"transform_bounds_hold", r.transform_bounds_hold}};
}

json to_json(const DouglasReport& r) {
    json out{{"range_included", r.range_included},
             {"lambda_sq", finite_or_null(r.lambda_sq)},
             {"factor_norm_sq", number_or_null(r.factor_norm_sq)},
             {"factor_C", nullptr}};
    if (r.factor_c) out["factor_C"] = io::operator_to_json(*r.factor_c)["rows"];
    return out;
}

json to_json(const PerturbationReport& r) {
    return {{"hypotheses_ok", r.hypotheses_ok},
            {"condition_27_ok", r.condition_27_ok},
            {"predicted_lower", number_or_null(r.predicted_lower)},
            {"predicted_upper", r.predicted_upper},
            {"lhs_27", r.lhs_27},
            {"rhs_27", r.rhs_27},
            {"verification_mode", r.verification_mode == VerificationMode::Exact ? "exact" : "sampled"},
            {"samples", r.samples},
            {"violations", r.violations},
            {"A1", r.a1},
            {"B1", r.b1},
            {"B2", r.b2},
            {"alpha_max", r.alpha_max},
            {"sigma_min_pos_K", r.sigma_min_pos}};
}

json to_json(const PerturbationCertificate& r) {
    return {{"report", to_json(r.report)}, {"measured", to_json(r.measured)}, {"consistent", r.consistent}};
}

json envelope(const std::vector<std::string>& command, const std::vector<InputDigest>& inputs,
              json result, std::optional<std::uint64_t> seed) {
    json digests = json::array();
    for (const auto& in : inputs) digests.push_back({{"path", in.path}, {"sha256", in.sha256}});
    return {{"format_version", kReportFormat},
            {"tool", "kweave"},
            {"tool_version", kToolVersion},
            {"command", command},
            {"inputs", std::move(digests)},
            {"seed", seed ? json(*seed) : json(nullptr)},
            {"result", std::move(result)},
            {"generated_at", utc_now()}};
}

std::string payload(const json& envelope) {
    json copy = envelope;
    copy.erase("generated_at");
    return copy.dump();
}

void write_csv(std::ostream& out, const WeavingReport& r) {
    out << "partition,lower,upper\n" << std::setprecision(17);
    for (const auto& row : r.table) {
        out << row.partition.digits() << ',' << row.bounds.lower << ',' << row.bounds.upper << '\n';
    }
}

std::string describe(const Partition& partition, std::size_t frames) {
    std::ostringstream out;
    for (std::size_t i = 0; i < frames; ++i) {
        if (i) out << ' ';
        out << "σ" << i + 1 << "={";
        bool first = true;
        for (std::size_t j = 0; j < partition.size(); ++j) {
            if (partition.assignment[j] != i) continue;
            if (!first) out << ',';
            out << j + 1;
            first = false;
        }
        out << '}';
    }
    return out.str();
}

void print(std::ostream& out, const BoundsPair& bounds) {
    Fixed f(out);
    out << "lower=" << bounds.lower << " upper=" << bounds.upper << '\n';
}

void print(std::ostream& out, const KFrameReport& r) {
    Fixed f(out);
    out << "K-frame check\n";
    line(out, "is_kframe", yes_no(r.is_kframe));
    line(out, "lower", r.lower);
    line(out, "upper", r.upper);
    line(out, "threshold", r.threshold);
    if (r.witness) {
        std::ostringstream w;
        w << std::setprecision(6);
        for (Eigen::Index i = 0; i < r.witness->size(); ++i) {
            const auto z = (*r.witness)(i);
            w << (i ? " " : "") << '(' << z.real() << ',' << z.imag() << ')';
        }
        line(out, "witness", w.str());
    }
}

void print(std::ostream& out, const WeavingReport& r, std::string_view title) {
    Fixed f(out);
    const std::size_t m = r.frame_count;
    out << title << " certification (" << (r.exhaustive ? "exhaustive" : "sampled") << ")\n";
    line(out, "verdict", r.woven ? (r.exhaustive ? "woven" : "no counterexample found") : "not woven");
    line(out, "weakly_woven", yes_no(r.weakly_woven));
    line(out, "universal_lower", r.universal_lower);
    line(out, "universal_upper", r.universal_upper);
    line(out, "sum_upper_bound", r.sum_upper_bound);
    line(out, "woven_threshold", r.woven_threshold);
    line(out, "partitions_checked", r.partitions_checked);
    line(out, "worst_partition", describe(r.worst_partition, m));
    if (r.failing_partition) line(out, "failing_partition", describe(*r.failing_partition, m));
    if (!r.exhaustive) line(out, "seed", r.seed);
}

void print(std::ostream& out, const TransformReport& r) {
    print(out, r.original, "original family");
    print(out, r.transformed, "transformed family (U·φ, UK)");
    Fixed f(out);
    line(out, "u_norm_sq", r.u_norm_sq);
    line(out, "bounds consistent", yes_no(r.transform_bounds_hold));
}

void print(std::ostream& out, const DouglasReport& r) {
    Fixed f(out);
    out << "Douglas range inclusion\n";
    line(out, "range_included", yes_no(r.range_included));
    line(out, "lambda_sq", std::isfinite(r.lambda_sq) ? std::to_string(r.lambda_sq) : "inf");
    if (r.factor_norm_sq) line(out, "factor_norm_sq", *r.factor_norm_sq);
}

void print(std::ostream& out, const PerturbationReport& r) {
    Fixed f(out);
    out << "perturbation condition\n";
    line(out, "hypotheses_ok", yes_no(r.hypotheses_ok));
    line(out, "verification", r.verification_mode == VerificationMode::Exact ? "exact" : "sampled");
    if (r.verification_mode == VerificationMode::Sampled) {
        line(out, "samples", r.samples);
        line(out, "violations", r.violations);
    }
    line(out, "A1", r.a1);
    line(out, "B1", r.b1);
    line(out, "B2", r.b2);
    line(out, "lhs", r.lhs_27);
    line(out, "rhs", r.rhs_27);
    line(out, "condition_ok", yes_no(r.condition_27_ok));
    if (r.predicted_lower) line(out, "predicted_lower", *r.predicted_lower);
    line(out, "predicted_upper", r.predicted_upper);
}

void print(std::ostream& out, const PerturbationCertificate& r) {
    print(out, r.report);
    print(out, r.measured, "measured");
    out << "  " << std::left << std::setw(22) << "consistent" << yes_no(r.consistent) << '\n';
}

}  // namespace kweave::report
