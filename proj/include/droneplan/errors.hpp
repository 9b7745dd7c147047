#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace droneplan {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A motion sample contains non-finite or out-of-range values.
class InvalidSampleError : public Error {
public:
  using Error::Error;
};

/// Negative duration passed to an energy computation.
class InvalidDurationError : public Error {
public:
  using Error::Error;
};

/// Fewer telemetry samples than coefficients to fit.
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

/// The regression design matrix is rank deficient; carries the names of the
/// dependent feature columns.
class DegenerateDesignError : public Error {
public:
  DegenerateDesignError(const std::string& what, std::vector<std::string> columns)
      : Error(what), dependent_columns(std::move(columns)) {}
  std::vector<std::string> dependent_columns;
};

/// The cruise power model produced a non-positive energy rate; the scenario
/// must be rejected because every edge rate is required to be positive.
class NonPhysicalRateError : public Error {
public:
  using Error::Error;
};

/// A site lies beyond half the usable range from every charging station.
class InfeasibleSiteError : public Error {
public:
  InfeasibleSiteError(const std::string& what, std::string site)
      : Error(what), site_id(std::move(site)) {}
  std::string site_id;
};

/// Scenario admits no feasible mission plan (unreachable pairs, or the tour
/// cannot be kept inside the battery envelope).
class InfeasibleScenarioError : public Error {
public:
  using Error::Error;
};

/// Input file or argument could not be parsed.
class MalformedInputError : public Error {
public:
  using Error::Error;
};

/// Graph is disconnected; no spanning tree exists.
class NoSpanningTreeError : public Error {
public:
  using Error::Error;
};

/// Multigraph has an odd-degree vertex or a disconnected edge support.
class NotEulerianError : public Error {
public:
  using Error::Error;
};

/// A caller violated an internal precondition (e.g. odd matching subset).
class ContractViolationError : public Error {
public:
  using Error::Error;
};

/// A flight plan references unknown locations or is structurally invalid.
class MalformedPlanError : public Error {
public:
  using Error::Error;
};

/// Plan stays infeasible even with a full recharge at every station visit.
class CannotFixError : public Error {
public:
  using Error::Error;
};

/// The greedy benchmark policy ran into a dead end.
class BenchmarkFailedError : public Error {
public:
  using Error::Error;
};

/// Instance exceeds the exhaustive planner's size limits.
class RefuseToRunError : public Error {
public:
  using Error::Error;
};

/// Scenario generation parameters cannot be satisfied.
class GenerationError : public Error {
public:
  using Error::Error;
};

}  // namespace droneplan
