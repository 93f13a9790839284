#pragma once

#include <vector>

#include "geocensus/integer.hpp"
#include "geocensus/quad_field.hpp"

namespace geocensus {

constexpr double kDefaultLengthTolerance = 1e-9;

/// A closed geodesic over Q, keyed by its (positive) trace.
struct GeodesicClass {
    Integer trace;
    double length = 0.0;
    QuadField field; // Q(lambda)
    QuadOrder order; // Z[lambda]

    static GeodesicClass from_trace(const Integer& trace);
};

/// The finite set S of prescribed lengths, deduplicated and sorted by trace.
class SpectrumSpec {
public:
    /// Throws DomainError when `traces` is empty or holds a value below 3.
    static SpectrumSpec from_traces(std::vector<Integer> traces);

    const std::vector<GeodesicClass>& classes() const noexcept { return classes_; }
    std::vector<Integer> traces() const;
    /// Distinct fields Q(lambda), ascending by radicand. Several traces can
    /// share a field.
    std::vector<QuadField> embedding_fields() const;

private:
    std::vector<GeodesicClass> classes_;
};

struct SpectrumInputs {
    std::vector<double> lengths;
    std::vector<Integer> traces;
    std::vector<Integer> radicands;
    double tol = kDefaultLengthTolerance;
};

struct InvariantTraceData {
    Integer trace_of_square; // t^2 - 2
    QuadField field_of_square;
};

/// 2 arccosh(t/2). Throws DomainError for t <= 2.
double trace_to_length(const Integer& t);

/// The integer trace t >= 3 with |2 cosh(l/2) - t| <= tol.
/// Throws NotRealizable (index 0) when there is none.
Integer length_to_trace(double length, double tol = kDefaultLengthTolerance);

InvariantTraceData invariant_trace_data(const Integer& t);

/// Q(sqrt(squarefree(t^2 - 4))).
QuadField embedding_field(const Integer& t);

/// Resolves lengths, traces and field radicands to one spec. A radicand d
/// stands for the fundamental norm-one unit of the maximal order of Q(sqrt(d)).
/// NotRealizable carries the index of the offending length.
SpectrumSpec spectrum_from_inputs(const SpectrumInputs& inputs);

} // namespace geocensus
