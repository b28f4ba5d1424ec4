#include "kweave/weaving.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

namespace kweave {

Partition Partition::from_rank(std::uint64_t rank, std::size_t n, std::uint32_t m) {
    Partition p{std::vector<std::uint32_t>(n, 0)};
    for (std::size_t j = n; j-- > 0;) {
        p.assignment[j] = static_cast<std::uint32_t>(rank % m);
        rank /= m;
    }
    return p;
}

std::string Partition::digits() const {
    std::string out;
    out.reserve(assignment.size());
    for (auto i : assignment) {
        out += i < 10 ? char('0' + i) : char('a' + (i - 10));
    }
    return out;
}

void require_weavable(const FrameFamily& frames) {
    if (frames.empty()) throw Error(ErrorCode::ShapeMismatch, "empty frame family");
    for (const auto& f : frames) {
        if (f.dim() != frames.front().dim() || f.count() != frames.front().count()) {
            throw Error(ErrorCode::ShapeMismatch,
                        "all frames in a weaving family must share dim and count");
        }
    }
}

namespace {

void require_partition(const FrameFamily& frames, const Partition& partition) {
    require_weavable(frames);
    if (static_cast<Eigen::Index>(partition.size()) != frames.front().count()) {
        throw Error(ErrorCode::ShapeMismatch, "partition length differs from frame count");
    }
    for (auto i : partition.assignment) {
        if (i >= frames.size()) throw Error(ErrorCode::ShapeMismatch, "partition names a missing frame");
    }
}

// Outer products φᵢⱼφᵢⱼ*, so a weaving's frame operator is a sum of n of them.
class WeavingEvaluator {
public:
    WeavingEvaluator(const FrameFamily& frames, const KOperator& k) : k_(k) {
        n_ = static_cast<std::size_t>(frames.front().count());
        outer_.reserve(frames.size() * n_);
        for (const auto& f : frames) {
            for (std::size_t j = 0; j < n_; ++j) {
                const auto col = f.column(static_cast<Eigen::Index>(j));
                outer_.emplace_back(col * col.adjoint());
            }
        }
    }

    BoundsPair evaluate(const Partition& p) const {
        Matrix s = outer_[p.assignment[0] * n_];
        for (std::size_t j = 1; j < n_; ++j) s += outer_[p.assignment[j] * n_ + j];
        const double upper = std::max(0.0, lambda_max(s));
        return {kframe_lower_bound(s, upper, k_), upper};
    }

private:
    const KOperator& k_;
    std::size_t n_ = 0;
    std::vector<Matrix> outer_;
};

template <typename Fn>
void parallel_for(std::uint64_t total, unsigned threads, Fn&& fn) {
    const std::uint64_t workers =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total / 64 + 1));
    if (workers == 1) {
        for (std::uint64_t r = 0; r < total; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            for (std::uint64_t r = begin; r < end; ++r) fn(r);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

Frame weaving_family(const FrameFamily& frames, const Partition& partition) {
    require_partition(frames, partition);
    Matrix m(frames.front().dim(), frames.front().count());
    for (std::size_t j = 0; j < partition.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        m.col(col) = frames[partition.assignment[j]].column(col);
    }
    return Frame(std::move(m));
}

BoundsPair weaving_bounds(const FrameFamily& frames, const Partition& partition,
                          const KOperator& k) {
    const Frame w = weaving_family(frames, partition);
    if (w.dim() != k.dim()) throw Error(ErrorCode::ShapeMismatch, "K acts on a different space");
    const Matrix s = frame_operator(w);
    const double upper = std::max(0.0, lambda_max(s));
    return {kframe_lower_bound(s, upper, k), upper};
}

double universal_upper_bound(const FrameFamily& frames) {
    require_weavable(frames);
    double sum = 0.0;
    for (const auto& f : frames) sum += frame_bounds(f).upper;
    return sum;
}

std::optional<std::uint64_t> partition_count(std::size_t n, std::size_t m, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (m != 0 && total > cap / m) return std::nullopt;
        total *= m;
    }
    if (total > cap) return std::nullopt;
    return total;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("KWEAVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

WeavingReport certify_woven(const FrameFamily& frames, const KOperator& k,
                            const CertifyOptions& options) {
    require_weavable(frames);
    if (frames.front().dim() != k.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "K acts on a different space");
    }
    if (k.is_zero()) throw Error(ErrorCode::ZeroK, "K = 0 makes every weaving vacuously a K-frame");

    const std::size_t n = static_cast<std::size_t>(frames.front().count());
    const auto m = static_cast<std::uint32_t>(frames.size());
    const unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
    const WeavingEvaluator evaluator(frames, k);

    WeavingReport report;
    report.exhaustive = options.mode == CertifyMode::Exhaustive;
    report.frame_count = m;
    report.sum_upper_bound = universal_upper_bound(frames);

    // Partitions in the order the reduction walks them. Exhaustive mode keeps
    // them implicit (rank r ↔ r-th lexicographic partition).
    std::vector<Partition> sampled;
    std::uint64_t total = 0;
    if (report.exhaustive) {
        const auto count = partition_count(n, m, options.partition_cap);
        if (!count) {
            throw Error(ErrorCode::CapExceeded,
                        std::to_string(m) + "^" + std::to_string(n) + " partitions exceed the cap of " +
                            std::to_string(options.partition_cap));
        }
        total = *count;
    } else {
        report.seed = options.seed;
        for (std::uint32_t i = 0; i < m; ++i) sampled.push_back(Partition::pure(n, i));
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::uint32_t> digit(0, m - 1);
        for (std::uint64_t b = 0; b < options.budget; ++b) {
            Partition p{std::vector<std::uint32_t>(n)};
            for (auto& a : p.assignment) a = digit(rng);
            sampled.push_back(std::move(p));
        }
        total = sampled.size();
    }
    auto partition_at = [&](std::uint64_t r) {
        return report.exhaustive ? Partition::from_rank(r, n, m) : sampled[r];
    };

    std::vector<BoundsPair> results(total);
    parallel_for(total, threads, [&](std::uint64_t r) { results[r] = evaluator.evaluate(partition_at(r)); });

    report.partitions_checked = total;
    std::uint64_t worst = 0;
    report.universal_lower = results[0].lower;
    report.universal_upper = results[0].upper;
    for (std::uint64_t r = 1; r < total; ++r) {
        const auto& b = results[r];
        report.universal_upper = std::max(report.universal_upper, b.upper);
        if (b.lower < report.universal_lower ||
            (b.lower == report.universal_lower && !report.exhaustive &&
             sampled[r] < sampled[worst])) {
            report.universal_lower = b.lower;
            worst = r;
        }
    }
    report.worst_partition = partition_at(worst);
    report.woven_threshold =
        options.woven_threshold.value_or(1e-8 * (1.0 + report.universal_upper));

    std::optional<std::uint64_t> failing;
    report.weakly_woven = true;
    for (std::uint64_t r = 0; r < total; ++r) {
        if (results[r].lower < report.woven_threshold) report.weakly_woven = false;
        if (results[r].lower <= report.woven_threshold) {
            if (!failing || (!report.exhaustive && sampled[r] < sampled[*failing])) failing = r;
        }
    }
    if (failing) report.failing_partition = partition_at(*failing);
    report.woven = report.universal_lower > report.woven_threshold;

    if (options.keep_table) {
        report.table.reserve(total);
        for (std::uint64_t r = 0; r < total; ++r) report.table.push_back({partition_at(r), results[r]});
    }
    return report;
}

TransformReport transform_weaving(const FrameFamily& frames, const KOperator& k, const Matrix& u,
                                  const CertifyOptions& options) {
    require_weavable(frames);
    if (u.rows() != u.cols() || u.rows() != k.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "U must be square and act on K's space");
    }
    const KOperator uk(u * k.matrix());
    if (uk.is_zero()) throw Error(ErrorCode::ZeroK, "UK is numerically zero");

    FrameFamily images;
    images.reserve(frames.size());
    for (const auto& f : frames) images.push_back(apply_operator(u, f));

    TransformReport out;
    out.original = certify_woven(frames, k, options);
    out.transformed = certify_woven(images, uk, options);
    const double u_norm = operator_norm(u);
    out.u_norm_sq = u_norm * u_norm;
    out.transform_bounds_hold =
        out.transformed.universal_upper <= out.original.universal_upper * out.u_norm_sq + 1e-8 &&
        (!out.original.woven ||
         out.transformed.universal_lower >= out.original.universal_lower - 1e-8);
    return out;
}

}  // namespace kweave
