#pragma once

#include "kmvf/cartan.hpp"
#include "kmvf/matrix.hpp"

#include <json.hpp>

#include <set>
#include <span>
#include <utility>
#include <vector>

namespace kmvf {

/// Which of the two global orientations of the Dynkin diagram a solution
/// matrix realizes. Forward means A'(o_k, o_{k+1}) = -1 along the classified
/// path or cycle order o (the bidiagonal/cyclic "upper" pattern); Backward is
/// its transpose. A_1 and A^(1)_1 have a single, symmetric normalized form.
enum class Orientation
{
	Symmetric,
	Forward,
	Backward,
};

/// A rational matrix A whose normalized form A'(i,j) = A(i,j)/A(j,j) satisfies
/// the solution-matrix conditions for a given GCM. Only obtainable through
/// validate_solution_matrix, the enumerator, or the actions below, so every
/// instance is valid for the matrix it was checked against.
class SolutionMatrix
{
  public:
	const RationalMatrix &matrix() const noexcept { return a_; }
	const RationalMatrix &normalized() const noexcept { return normalized_; }
	const std::vector<Rational> &diag() const noexcept { return diag_; }
	/// {(i,j) : A(j,i)/A(i,i) = -1}, 0-based.
	const std::set<std::pair<std::size_t, std::size_t>> &incidence() const noexcept { return incidence_; }
	Orientation orientation() const noexcept { return orientation_; }
	/// +1 for Forward and Symmetric, -1 for Backward.
	int epsilon() const noexcept { return orientation_ == Orientation::Backward ? -1 : 1; }
	std::size_t rank() const noexcept { return a_.rows(); }

	bool operator==(const SolutionMatrix &other) const { return a_ == other.a_; }

  private:
	SolutionMatrix(RationalMatrix a, Orientation orientation);

	friend SolutionMatrix validate_solution_matrix(const Gcm &n, const RationalMatrix &a);
	friend SolutionMatrix scale(const SolutionMatrix &a, std::span<const Rational> d);
	friend SolutionMatrix transpose_involution(const SolutionMatrix &a);
	friend std::vector<SolutionMatrix> normalized_solution_matrices(const Gcm &n);

	RationalMatrix a_;
	RationalMatrix normalized_;
	std::vector<Rational> diag_;
	std::set<std::pair<std::size_t, std::size_t>> incidence_;
	Orientation orientation_;
};

/// Normalized solution matrices read off the classified diagram: none for
/// Other, one for A_1 and A^(1)_1, otherwise the Forward orientation followed
/// by its transpose. Entries use the input labeling of N.
/// Throws Decomposable.
std::vector<SolutionMatrix> normalized_solution_matrices(const Gcm &n);

/// A(i,j) -> d_j A(i,j). Throws ZeroScale.
SolutionMatrix scale(const SolutionMatrix &a, std::span<const Rational> d);

/// A(i,j) -> A(j,i) / (A(i,i) A(j,j)): the plain transpose on normalized
/// matrices, and on a scaled one the matrix whose fields are
/// (-delta_{-1}, ..., -delta_{-r}, -delta_1, ..., -delta_r). The plain
/// transpose of a scaled matrix is in general not a solution matrix.
SolutionMatrix transpose_involution(const SolutionMatrix &a);

/// Checks, in order: nonzero diagonal (ZeroDiagonal), off-diagonal normalized
/// entries in {0,-1} (BadNormalizedEntry), A'(i,j) + A'(j,i) = n(j,i)
/// for every ordered pair (SumMismatch), and the row/column exclusion of -1 entries
/// (ExclusionViolated(i,j,k) where k is the offending second index).
SolutionMatrix validate_solution_matrix(const Gcm &n, const RationalMatrix &a);

/// Normalized pattern with -1 at (o_k, o_{k+1}) for the classified order
/// (and at (o_last, o_0) for a cycle). Only meaningful for A types with r >= 2.
RationalMatrix forward_pattern(const CartanType &type, std::size_t r);

std::string to_string(Orientation o);

nlohmann::json to_json(const RationalMatrix &m);
RationalMatrix rational_matrix_from_json(const nlohmann::json &j);

/// {matrix, normalized, diag, incidence (1-based pairs), orientation, epsilon}
nlohmann::json to_json(const SolutionMatrix &a);

} // namespace kmvf
