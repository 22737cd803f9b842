#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmvf {

enum class ErrorCode {
	// input validation
	ParseError,
	InvalidArgument,
	NotSquare,
	DimensionMismatch,
	DiagonalNotTwo,
	PositiveOffDiagonal,
	ZeroPatternAsymmetric,
	Decomposable,
	RankMismatch,
	NotAUnit,
	ZeroScale,
	ZeroDiagonal,
	BadNormalizedEntry,
	SumMismatch,
	ExclusionViolated,
	UnsupportedType,
	ZeroIndex,
	TooLarge,
	PreconditionViolated,
	// internal invariants; these indicate a bug, not bad input
	ClosureDiverged,
	NormalizationImpossible,
	NotProportional,
	IdentityViolated,
};

const char *error_code_name(ErrorCode code);

/// True for codes that signal a broken internal invariant rather than bad input.
bool is_internal(ErrorCode code);

/// Exception thrown by every module. `indices()` holds the 0-based positions
/// the failure refers to; `what()` reports them 1-based.
class Error : public std::runtime_error
{
  public:
	Error(ErrorCode code, std::string message, std::vector<std::size_t> indices = {});

	ErrorCode code() const noexcept { return code_; }
	const std::vector<std::size_t> &indices() const noexcept { return indices_; }

  private:
	ErrorCode code_;
	std::vector<std::size_t> indices_;
};

} // namespace kmvf
