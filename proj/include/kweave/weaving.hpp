#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kweave/kframe.hpp"

namespace kweave {

/// assignment[j] = i puts index j in σᵢ. Frame indices are 0-based here;
/// file formats and human output use 1-based indices.
struct Partition {
    std::vector<std::uint32_t> assignment;

    std::size_t size() const noexcept { return assignment.size(); }
    bool operator==(const Partition&) const = default;
    /// Lexicographic with index 0 most significant.
    auto operator<=>(const Partition&) const = default;

    static Partition pure(std::size_t n, std::uint32_t frame) {
        return {std::vector<std::uint32_t>(n, frame)};
    }
    /// The `rank`-th partition in lexicographic order (base-m digits, index 0
    /// most significant).
    static Partition from_rank(std::uint64_t rank, std::size_t n, std::uint32_t m);

    /// Base-m digit string, index 0 first ("0110" for m = 2).
    std::string digits() const;
};

using FrameFamily = std::vector<Frame>;

/// Throws ShapeMismatch unless the family is nonempty and all frames share
/// dim and count.
void require_weavable(const FrameFamily& frames);

/// The weaving ∪ᵢ{φᵢⱼ}_{j∈σᵢ} in index order: column j comes from frame
/// assignment[j]. Its synthesis matrix is M_σ.
Frame weaving_family(const FrameFamily& frames, const Partition& partition);

/// (optimal lower K-frame bound, λmax of the frame operator) of one weaving.
BoundsPair weaving_bounds(const FrameFamily& frames, const Partition& partition,
                          const KOperator& k);

/// Σᵢ upper frame bound of Fᵢ, a universal upper bound for every weaving.
double universal_upper_bound(const FrameFamily& frames);

enum class CertifyMode { Exhaustive, Sampled };

struct CertifyOptions {
    CertifyMode mode = CertifyMode::Exhaustive;
    /// Random partitions drawn in sampled mode (the m pure partitions are
    /// always added).
    std::uint64_t budget = 4096;
    std::uint64_t seed = 0;
    std::uint64_t partition_cap = std::uint64_t{1} << 20;
    /// 0 = hardware concurrency.
    unsigned threads = 0;
    /// Defaults to 1e-8·(1 + universal_upper).
    std::optional<double> woven_threshold;
    /// Keep one (partition, lower, upper) row per evaluated partition.
    bool keep_table = false;
};

struct PartitionBounds {
    Partition partition;
    BoundsPair bounds;
};

struct WeavingReport {
    bool woven = false;
    /// Every evaluated weaving passes the K-frame test at woven_threshold.
    bool weakly_woven = false;
    double universal_lower = 0.0;
    /// Max over evaluated weavings of λmax(S_σ).
    double universal_upper = 0.0;
    /// Σᵢ Bᵢ.
    double sum_upper_bound = 0.0;
    double woven_threshold = 0.0;
    Partition worst_partition;
    std::optional<Partition> failing_partition;
    std::uint64_t partitions_checked = 0;
    std::size_t frame_count = 0;
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::vector<PartitionBounds> table;
};

/// m^n, or nullopt when it exceeds `cap` (or overflows).
std::optional<std::uint64_t> partition_count(std::size_t n, std::size_t m, std::uint64_t cap);

/// Universal K-frame bounds over all (exhaustive) or sampled weavings.
/// Exhaustive mode throws CapExceeded beyond options.partition_cap. A sampled
/// "woven" verdict only means no counterexample was found.
WeavingReport certify_woven(const FrameFamily& frames, const KOperator& k,
                            const CertifyOptions& options = {});

struct TransformReport {
    WeavingReport original;
    WeavingReport transformed;
    /// ‖U*‖²
    double u_norm_sq = 0.0;
    /// transformed.universal_upper ≤ original.universal_upper·‖U*‖², and when
    /// the original family is woven, transformed.universal_lower ≥
    /// original.universal_lower (both up to 1e-8).
    bool transform_bounds_hold = false;
};

/// Certifies {U φᵢⱼ} against UK and compares with the original family.
/// Throws ZeroK when UK is numerically zero.
TransformReport transform_weaving(const FrameFamily& frames, const KOperator& k, const Matrix& u,
                                  const CertifyOptions& options = {});

/// Worker count from KWEAVE_THREADS, falling back to hardware concurrency.
unsigned default_thread_count();

}  // namespace kweave
