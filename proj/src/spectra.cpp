#include "geocensus/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "geocensus/arith.hpp"
#include "geocensus/errors.hpp"

namespace geocensus {

GeodesicClass GeodesicClass::from_trace(const Integer& trace)
{
    QuadOrder order = order_from_lambda(trace);
    QuadField field = order.field();
    return {trace, trace_to_length(trace), std::move(field), std::move(order)};
}

SpectrumSpec SpectrumSpec::from_traces(std::vector<Integer> traces)
{
    if (traces.empty()) {
        throw DomainError("a spectrum needs at least one length");
    }
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    SpectrumSpec spec;
    for (const auto& t : traces) {
        spec.classes_.push_back(GeodesicClass::from_trace(t));
    }
    return spec;
}

std::vector<Integer> SpectrumSpec::traces() const
{
    std::vector<Integer> out;
    for (const auto& c : classes_) {
        out.push_back(c.trace);
    }
    return out;
}

std::vector<QuadField> SpectrumSpec::embedding_fields() const
{
    std::vector<QuadField> fields;
    for (const auto& c : classes_) {
        fields.push_back(c.field);
    }
    std::sort(fields.begin(), fields.end());
    fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
    return fields;
}

double trace_to_length(const Integer& t)
{
    if (t <= 2) {
        throw DomainError("trace " + t.get_str() + " is not hyperbolic (need t >= 3)");
    }
    const long double x = static_cast<long double>(t.get_d());
    return static_cast<double>(2.0L * std::log((x + std::sqrt(x * x - 4.0L)) / 2.0L));
}

Integer length_to_trace(double length, double tol)
{
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError(fmt::format("geodesic length must be positive, got {}", length));
    }
    if (!(tol > 0.0)) {
        throw DomainError("length tolerance must be positive");
    }
    const long double x = 2.0L * std::cosh(static_cast<long double>(length) / 2.0L);
    const long double nearest = std::round(x);
    if (nearest < 3.0L || std::fabs(x - nearest) > tol) {
        throw NotRealizable(0, length,
                            fmt::format("length {} has 2cosh(l/2) = {:.12g}, not within {} of a trace >= 3",
                                        length, static_cast<double>(x), tol));
    }
    Integer t;
    mpz_set_d(t.get_mpz_t(), static_cast<double>(nearest));
    return t;
}

InvariantTraceData invariant_trace_data(const Integer& t)
{
    if (t < 3) {
        throw DomainError("trace " + t.get_str() + " is not hyperbolic (need t >= 3)");
    }
    Integer t_sq = t * t - 2;
    return {t_sq, QuadField::from_radicand(t_sq * t_sq - 4)};
}

QuadField embedding_field(const Integer& t)
{
    if (t < 3) {
        throw DomainError("trace " + t.get_str() + " is not hyperbolic (need t >= 3)");
    }
    return QuadField::from_radicand(t * t - 4);
}

SpectrumSpec spectrum_from_inputs(const SpectrumInputs& inputs)
{
    std::vector<Integer> traces;
    for (std::size_t i = 0; i < inputs.lengths.size(); ++i) {
        try {
            traces.push_back(length_to_trace(inputs.lengths[i], inputs.tol));
        } catch (const NotRealizable& e) {
            throw NotRealizable(i, inputs.lengths[i], fmt::format("lengths[{}]: {}", i, e.what()));
        } catch (const DomainError& e) {
            throw DomainError(fmt::format("lengths[{}]: {}", i, e.what()));
        }
    }
    for (std::size_t i = 0; i < inputs.traces.size(); ++i) {
        if (inputs.traces[i] < 3) {
            throw DomainError(fmt::format("traces[{}]: {} is not hyperbolic (need t >= 3)", i,
                                          inputs.traces[i].get_str()));
        }
        traces.push_back(inputs.traces[i]);
    }
    for (std::size_t i = 0; i < inputs.radicands.size(); ++i) {
        try {
            traces.push_back(norm_one_unit(QuadOrder::maximal(field_from_d(inputs.radicands[i]))));
        } catch (const DomainError& e) {
            throw DomainError(fmt::format("radicands[{}]: {}", i, e.what()));
        }
    }
    return SpectrumSpec::from_traces(std::move(traces));
}

} // namespace geocensus
