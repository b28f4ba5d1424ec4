#pragma once

#include <optional>
#include <string_view>

#include "kweave/weaving.hpp"

namespace kweave {

/// Finite truncations of the standard weaving examples on ℓ²(ℕ):
///   example_a   Φ = {0,e₂,0,e₃,0,…},  Ψ = {0,e₂,e₂,e₃,e₃,…}          n = 2d−1
///   example_b   Φ = {e₁,e₂,0,e₃,e₄,…}, Ψ = {e₁,0,e₂,e₃,e₄,…}         n = d+1
///   example_pr2 Φ = {e₁,0,e₂,0,e₃,0,…}, Ψ = {0,e₁,0,e₂,e₃,e₃,e₄,e₄,…} n = 2d−1
/// Each is cut at the shortest prefix whose last listed vector is e_d in
/// both frames. K projects onto span{e₂..e_d}; example_pr2 also carries U,
/// the projection onto span{e₃..e_d}.
enum class ExampleName { A, B, Pr2 };

std::optional<ExampleName> parse_example_name(std::string_view name);
std::string_view to_string(ExampleName name);

struct ExampleFamily {
    FrameFamily frames;
    Matrix k;
    std::optional<Matrix> u;
};

/// Throws DimTooSmall for dim < 4.
ExampleFamily example_family(ExampleName name, Eigen::Index dim);

/// Orthogonal projection onto span{e_first..e_dim} (1-based).
Matrix coordinate_projection(Eigen::Index dim, Eigen::Index first);

}  // namespace kweave
