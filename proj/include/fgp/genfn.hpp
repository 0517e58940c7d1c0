#ifndef FGP_GENFN_HPP
#define FGP_GENFN_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fgp {

enum class GenFnKind {
    entropy,   // G(x) = -sum x_i log x_i
    quadratic, // G(x) = 1 - 0.5 * sum x_i^2
};

/// A concave generating function together with the positive constant it is
/// divided by. Runs calibrate the constant so that G(initial weights) == 1,
/// which puts multiplicative and additive wealth on the same starting value.
struct GenFnSpec {
    GenFnKind kind = GenFnKind::entropy;
    double normalization = 1.0;
};

/// Value and gradient of the (normalized) generating function at one point.
struct GenFnEval {
    double value = 0.0;
    std::vector<double> grad;
};

/// Evaluate value and gradient at a point of the open simplex. Requires every
/// component > 0 and the components to sum to 1 within 1e-9; both are
/// NumericError otherwise. Evaluation order is fixed (index order), so equal
/// inputs give bitwise-equal results.
GenFnEval evaluate(const GenFnSpec& spec, std::span<const double> x);

/// Return a copy of `spec` whose normalization is the *unnormalized* value at
/// x0, so that evaluate(result, x0).value == 1.
GenFnSpec calibrate_normalization(GenFnSpec spec, std::span<const double> x0);

std::optional<GenFnKind> parse_genfn_kind(std::string_view s);
std::string_view to_string(GenFnKind kind);

} // namespace fgp

#endif
