#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kweave/weaving.hpp"

namespace kweave {

/// Perturbation constants: ‖Σaⱼ(φ₁ⱼ − φ₂ⱼ)‖ ≤ λ‖a‖ + μ‖Σaⱼφ₁ⱼ‖ + ν‖Σaⱼφ₂ⱼ‖,
/// and α with ‖φ₁ⱼ‖² ≥ α > 0.
struct PerturbationParams {
    double lambda = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
};

struct OrthogonalityCheck {
    bool orthogonal = false;
    /// min over nonzero columns of ‖φ₁ⱼ‖²; 0 if every column is zero.
    double alpha_max = 0.0;
};

/// Pairwise orthogonality up to 1e-9·(max column norm²). A zero column fails
/// the check.
OrthogonalityCheck check_orthogonal_alpha(const Frame& f1);

/// ‖T¹ − T²‖: the smallest λ that satisfies the perturbation inequality with
/// μ = ν = 0.
double synthesis_gap(const Frame& f1, const Frame& f2);

enum class VerificationMode { Exact, Sampled };

struct PerturbationReport {
    /// The perturbation inequality was verified (exactly or on samples).
    bool hypotheses_ok = false;
    bool condition_27_ok = false;
    std::optional<double> predicted_lower;
    double predicted_upper = 0.0;
    double lhs_27 = 0.0;
    double rhs_27 = 0.0;
    VerificationMode verification_mode = VerificationMode::Exact;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    double a1 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double alpha_max = 0.0;
    double sigma_min_pos = 0.0;
};

struct PerturbationOptions {
    /// Smaller manual A₁; must not exceed the optimal lower K-frame bound.
    std::optional<double> a1_override;
    std::uint64_t seed = 0;
    std::uint64_t samples = 10000;
};

/// Hypothesis checks, both sides of the sufficient condition and the
/// predicted universal bounds. Throws HypothesesViolated naming the failed
/// hypothesis (orthogonality, α, A₁).
PerturbationReport perturbation_condition(const Frame& f1, const Frame& f2, const KOperator& k,
                                          const PerturbationParams& params,
                                          const PerturbationOptions& options = {});

/// Predicted lower bound [√(αA₁) − lhs]²/(B₁+B₂) from the pieces; nullopt
/// when lhs ≥ rhs (strict with a 1e-12 relative margin).
std::optional<double> predicted_lower_bound(double lhs, double rhs, double b1, double b2);

struct PerturbationCertificate {
    PerturbationReport report;
    WeavingReport measured;
    bool consistent = false;
};

/// Runs exhaustive weaving certification next to the predicted bounds.
PerturbationCertificate perturbation_certify(const Frame& f1, const Frame& f2, const KOperator& k,
                                             const PerturbationParams& params,
                                             const PerturbationOptions& options = {},
                                             const CertifyOptions& certify = {});

}  // namespace kweave
