#include "kweave/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kweave::io {

namespace {

json entry_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex entry_from_json(const json& pair, const std::string& where) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw Error(ErrorCode::BadFile, where + ": expected an [re, im] pair");
    }
    const Complex z(pair[0].get<double>(), pair[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::BadFile, where + ": non-finite entry");
    }
    return z;
}

void require_format(const json& doc, std::string_view expected) {
    if (!doc.is_object() || !doc.contains("format_version") ||
        doc["format_version"] != std::string(expected)) {
        throw Error(ErrorCode::BadFile, "format_version must be \"" + std::string(expected) + "\"");
    }
}

std::size_t count_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0) {
        throw Error(ErrorCode::BadFile, std::string("missing or invalid \"") + key + "\"");
    }
    return doc[key].get<std::size_t>();
}

}  // namespace

json frame_to_json(const Frame& frame) {
    json vectors = json::array();
    for (Eigen::Index k = 0; k < frame.count(); ++k) {
        json column = json::array();
        for (Eigen::Index i = 0; i < frame.dim(); ++i) column.push_back(entry_to_json(frame.vectors()(i, k)));
        vectors.push_back(std::move(column));
    }
    return {{"format_version", kFrameFormat},
            {"dim", frame.dim()},
            {"count", frame.count()},
            {"vectors", std::move(vectors)}};
}

Frame frame_from_json(const json& doc) {
    require_format(doc, kFrameFormat);
    const auto dim = count_field(doc, "dim");
    const auto count = count_field(doc, "count");
    if (dim < 1 || count < 1) throw Error(ErrorCode::BadFile, "dim and count must be >= 1");
    const json& vectors = doc.value("vectors", json());
    if (!vectors.is_array() || vectors.size() != count) {
        throw Error(ErrorCode::BadFile, "\"vectors\" must list exactly count columns");
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k) {
        const json& column = vectors[k];
        if (!column.is_array() || column.size() != dim) {
            throw Error(ErrorCode::BadFile, "column " + std::to_string(k + 1) + " must have dim entries");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                entry_from_json(column[i], "vectors[" + std::to_string(k) + "][" + std::to_string(i) + "]");
        }
    }
    return Frame(std::move(m));
}

json operator_to_json(const Matrix& op) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < op.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < op.cols(); ++j) row.push_back(entry_to_json(op(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"format_version", kOperatorFormat}, {"dim", op.rows()}, {"rows", std::move(rows)}};
}

Matrix operator_from_json(const json& doc, bool require_square) {
    require_format(doc, kOperatorFormat);
    const auto dim = count_field(doc, "dim");
    const json& rows = doc.value("rows", json());
    if (dim < 1 || !rows.is_array() || rows.size() != dim) {
        throw Error(ErrorCode::BadFile, "\"rows\" must list exactly dim rows");
    }
    const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
    if (cols < 1) throw Error(ErrorCode::BadFile, "rows must be nonempty arrays");
    if (require_square && cols != dim) throw Error(ErrorCode::BadFile, "operator must be square");
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols) {
            throw Error(ErrorCode::BadFile, "row " + std::to_string(i + 1) + " has the wrong length");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                entry_from_json(rows[i][j], "rows[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    return m;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::BadFile, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

json parse_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadFile, path.string() + ": " + e.what());
    }
}

}  // namespace

Frame load_frame(const std::filesystem::path& path) { return frame_from_json(parse_file(path)); }

Matrix load_operator(const std::filesystem::path& path, bool require_square) {
    return operator_from_json(parse_file(path), require_square);
}

void save_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadFile, "cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

}  // namespace kweave::io
