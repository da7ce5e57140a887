#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reconet {

// Root of every error this library throws.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Net construction rejected; the message names the first violated condition.
struct StructuralError : EngineError {
  using EngineError::EngineError;
};

struct UnknownTransition : EngineError {
  using EngineError::EngineError;
};

struct UnknownPlace : EngineError {
  using EngineError::EngineError;
};

struct NotEnabled : EngineError {
  NotEnabled(const std::string& transition, const std::string& blocking_place,
             std::size_t step = kNoStep);
  static constexpr std::size_t kNoStep = static_cast<std::size_t>(-1);
  std::string transition;
  std::string blocking_place;  // empty when unknown
  std::size_t step;            // index within a sequence, kNoStep otherwise
};

struct DimensionMismatch : EngineError {
  using EngineError::EngineError;
};

// State equation produced a place count below zero.
struct NegativeResult : EngineError {
  using EngineError::EngineError;
};

struct AlreadyRefined : EngineError {
  using EngineError::EngineError;
};

struct CyclicRefinement : EngineError {
  using EngineError::EngineError;
};

// Malformed rewriting rule caught at construction time.
struct RuleError : EngineError {
  using EngineError::EngineError;
};

struct UnknownRule : EngineError {
  using EngineError::EngineError;
};

struct NotApplicable : EngineError {
  using EngineError::EngineError;
};

// A deleted place held tokens but the rule names no transfer target.
struct OrphanedTokens : EngineError {
  OrphanedTokens(const std::string& rule_id, const std::string& place);
  std::string rule_id;
  std::string place;
};

struct IdMismatch : EngineError {
  using EngineError::EngineError;
};

struct UnknownService : EngineError {
  using EngineError::EngineError;
};

struct FragmentNotFound : EngineError {
  using EngineError::EngineError;
};

struct ChannelClosed : EngineError {
  using EngineError::EngineError;
};

struct InvalidStatus : EngineError {
  using EngineError::EngineError;
};

// A reaction could not enact its rewriting rule; wraps the reconfig error.
struct RuleApplicationFailed : EngineError {
  using EngineError::EngineError;
};

struct ParseError : EngineError {
  using EngineError::EngineError;
};

struct ValidationError : EngineError {
  using EngineError::EngineError;
};

// Bounded exploration ended without a verdict.
struct BoundExceeded : EngineError {
  using EngineError::EngineError;
};

}  // namespace reconet
