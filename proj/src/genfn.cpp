#include "fgp/genfn.hpp"

#include <cmath>
#include <string>

#include "fgp/errors.hpp"

namespace fgp {

namespace {

void require_open_simplex(std::span<const double> x) {
    if (x.empty()) throw NumericError("generating function evaluated on an empty weight vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i]))
            throw NumericError("weight " + std::to_string(i) + " not in the open simplex (must be finite and > 0)");
        sum += x[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw NumericError("weights must sum to 1 within 1e-9, got sum = " + std::to_string(sum));
}

double unnormalized_value(GenFnKind kind, std::span<const double> x) {
    double acc = 0.0;
    switch (kind) {
    case GenFnKind::entropy:
        for (const double xi : x) acc -= xi * std::log(xi);
        return acc;
    case GenFnKind::quadratic:
        for (const double xi : x) acc += xi * xi;
        return 1.0 - 0.5 * acc;
    }
    throw NumericError("unknown generating function kind");
}

} // namespace

GenFnEval evaluate(const GenFnSpec& spec, std::span<const double> x) {
    require_open_simplex(x);
    if (!(spec.normalization > 0.0) || !std::isfinite(spec.normalization))
        throw NumericError("generating function normalization must be finite and > 0");

    GenFnEval eval;
    eval.value = unnormalized_value(spec.kind, x) / spec.normalization;
    eval.grad.resize(x.size());
    switch (spec.kind) {
    case GenFnKind::entropy:
        for (std::size_t i = 0; i < x.size(); ++i) eval.grad[i] = (-std::log(x[i]) - 1.0) / spec.normalization;
        break;
    case GenFnKind::quadratic:
        for (std::size_t i = 0; i < x.size(); ++i) eval.grad[i] = -x[i] / spec.normalization;
        break;
    }
    if (!std::isfinite(eval.value)) throw NumericError("generating function value is not finite");
    return eval;
}

GenFnSpec calibrate_normalization(GenFnSpec spec, std::span<const double> x0) {
    require_open_simplex(x0);
    const double g0 = unnormalized_value(spec.kind, x0);
    if (!(g0 > 0.0) || !std::isfinite(g0))
        throw NumericError("cannot calibrate: unnormalized generating function value at the initial weights is " +
                           std::to_string(g0) + ", need > 0");
    spec.normalization = g0;
    return spec;
}

std::optional<GenFnKind> parse_genfn_kind(std::string_view s) {
    if (s == "entropy") return GenFnKind::entropy;
    if (s == "quadratic") return GenFnKind::quadratic;
    return std::nullopt;
}

std::string_view to_string(GenFnKind kind) {
    switch (kind) {
    case GenFnKind::entropy: return "entropy";
    case GenFnKind::quadratic: return "quadratic";
    }
    return "?";
}

} // namespace fgp
