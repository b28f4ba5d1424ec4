#include "kweave/example_families.hpp"

#include <string>

namespace kweave {

namespace {

// Frame whose j-th vector (1-based) is e_{basis(j)}, or 0 when basis(j) == 0.
template <typename Pattern>
Frame coordinate_frame(Eigen::Index dim, Eigen::Index count, Pattern basis) {
    Matrix m = Matrix::Zero(dim, count);
    for (Eigen::Index j = 1; j <= count; ++j) {
        const Eigen::Index e = basis(j);
        if (e > 0) m(e - 1, j - 1) = 1.0;
    }
    return Frame(std::move(m));
}

}  // namespace

std::optional<ExampleName> parse_example_name(std::string_view name) {
    if (name == "example_a") return ExampleName::A;
    if (name == "example_b") return ExampleName::B;
    if (name == "example_pr2") return ExampleName::Pr2;
    return std::nullopt;
}

std::string_view to_string(ExampleName name) {
    switch (name) {
        case ExampleName::A: return "example_a";
        case ExampleName::B: return "example_b";
        case ExampleName::Pr2: return "example_pr2";
    }
    return "unknown";
}

Matrix coordinate_projection(Eigen::Index dim, Eigen::Index first) {
    Matrix p = Matrix::Zero(dim, dim);
    for (Eigen::Index i = first; i <= dim; ++i) p(i - 1, i - 1) = 1.0;
    return p;
}

ExampleFamily example_family(ExampleName name, Eigen::Index dim) {
    if (dim < 4) throw Error(ErrorCode::DimTooSmall, "examples need dim >= 4, got " + std::to_string(dim));
    ExampleFamily out;
    out.k = coordinate_projection(dim, 2);
    switch (name) {
        case ExampleName::A: {
            const Eigen::Index n = 2 * dim - 1;
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) {
                return j % 2 == 0 ? j / 2 + 1 : Eigen::Index{0};
            }));
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) {
                return j == 1 ? Eigen::Index{0} : j / 2 + 1;
            }));
            break;
        }
        case ExampleName::B: {
            const Eigen::Index n = dim + 1;
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) -> Eigen::Index {
                if (j <= 2) return j;
                return j == 3 ? 0 : j - 1;
            }));
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) -> Eigen::Index {
                if (j == 1) return 1;
                if (j == 2) return 0;
                return j == 3 ? 2 : j - 1;
            }));
            break;
        }
        case ExampleName::Pr2: {
            const Eigen::Index n = 2 * dim - 1;
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) {
                return j % 2 == 1 ? (j + 1) / 2 : Eigen::Index{0};
            }));
            out.frames.push_back(coordinate_frame(dim, n, [](Eigen::Index j) -> Eigen::Index {
                if (j <= 4) return j % 2 == 0 ? j / 2 : 0;
                return (j + 1) / 2;
            }));
            out.u = coordinate_projection(dim, 3);
            break;
        }
    }
    return out;
}

}  // namespace kweave
