#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kweave/io.hpp"
#include "kweave/perturbation.hpp"

namespace kweave::report {

using json = nlohmann::json;

inline constexpr std::string_view kReportFormat = "kweave-report-v1";
inline constexpr std::string_view kToolVersion = "1.0.0";

json to_json(const BoundsPair& bounds);
json to_json(const Partition& partition);  // 1-based frame indices
json to_json(const Vector& v);             // list of [re, im]
json to_json(const KFrameReport& r);
json to_json(const WeavingReport& r);
json to_json(const TransformReport& r);
json to_json(const DouglasReport& r);
json to_json(const PerturbationReport& r);
json to_json(const PerturbationCertificate& r);

struct InputDigest {
    std::string path;
    std::string sha256;
};

/// ReportFileV1 envelope. `generated_at` is the only field that varies
/// between identical runs.
json envelope(const std::vector<std::string>& command, const std::vector<InputDigest>& inputs,
              json result, std::optional<std::uint64_t> seed);

/// The envelope without `generated_at`, serialized.
std::string payload(const json& envelope);

/// One row per evaluated partition: partition,lower,upper.
void write_csv(std::ostream& out, const WeavingReport& r);

/// Aligned human-readable text.
void print(std::ostream& out, const BoundsPair& bounds);
void print(std::ostream& out, const KFrameReport& r);
void print(std::ostream& out, const WeavingReport& r, std::string_view title = "weaving");
void print(std::ostream& out, const TransformReport& r);
void print(std::ostream& out, const DouglasReport& r);
void print(std::ostream& out, const PerturbationReport& r);
void print(std::ostream& out, const PerturbationCertificate& r);

/// {1,3,4} style listing of σᵢ for each frame i.
std::string describe(const Partition& partition, std::size_t frames);

}  // namespace kweave::report
