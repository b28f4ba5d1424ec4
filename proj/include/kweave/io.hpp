#pragma once

// JSON interchange: kweave-frame-v1 and kweave-op-v1 files. Complex entries
// are written as explicit [re, im] pairs.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "kweave/frame.hpp"

namespace kweave::io {

using json = nlohmann::json;

inline constexpr std::string_view kFrameFormat = "kweave-frame-v1";
inline constexpr std::string_view kOperatorFormat = "kweave-op-v1";

json frame_to_json(const Frame& frame);
Frame frame_from_json(const json& doc);

/// `rows` holds the matrix row by row. Squareness is enforced unless
/// `require_square` is false (rectangular operators between different spaces).
json operator_to_json(const Matrix& op);
Matrix operator_from_json(const json& doc, bool require_square = true);

Frame load_frame(const std::filesystem::path& path);
Matrix load_operator(const std::filesystem::path& path, bool require_square = true);
void save_json(const std::filesystem::path& path, const json& doc);

std::string read_file(const std::filesystem::path& path);
/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace kweave::io
