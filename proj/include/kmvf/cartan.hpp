#pragma once

#include "kmvf/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kmvf {

/// A validated generalized Cartan matrix: n(i,i) = 2, n(i,j) <= 0 off the
/// diagonal, and n(i,j) = 0 exactly when n(j,i) = 0.
class Gcm
{
  public:
	const IntMatrix &matrix() const noexcept { return n_; }
	std::int64_t operator()(std::size_t i, std::size_t j) const { return n_(i, j); }

	/// Size r of the matrix.
	std::size_t rank() const noexcept { return n_.rows(); }
	/// r - rank(N) over the rationals.
	std::size_t corank() const noexcept { return corank_; }

	bool operator==(const Gcm &other) const { return n_ == other.n_; }

  private:
	Gcm(IntMatrix n, std::size_t corank) : n_(std::move(n)), corank_(corank) {}
	friend Gcm validate_gcm(const IntMatrix &m);

	IntMatrix n_;
	std::size_t corank_ = 0;
};

Gcm validate_gcm(const IntMatrix &m);

/// Connectivity of the graph with an edge {i,j} whenever n(i,j) != 0.
bool is_indecomposable(const Gcm &n);

/// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
std::vector<std::vector<std::size_t>> connected_components(const Gcm &n);

enum class CartanKind
{
	FiniteA, // A_r, a path
	AffineA, // A^(1)_{r-1}, a cycle (or the double edge for r = 2)
	Other,
};

struct DynkinEdge
{
	std::size_t i = 0, j = 0;  // i < j, 0-based
	std::int64_t multiplicity = 0; // n(i,j) * n(j,i)

	bool operator==(const DynkinEdge &) const = default;
};

struct CartanType
{
	CartanKind kind = CartanKind::Other;
	/// Subscript of the type: r for A_r, r-1 for A^(1)_{r-1}; 0 for Other.
	std::size_t index = 0;
	std::vector<DynkinEdge> edges;
	/// Vertices along the path or cycle (0-based). For a path it starts at the
	/// smaller endpoint; for a cycle it starts at vertex 0, which is the affine
	/// node, and continues to its smaller neighbour. Empty for Other.
	std::vector<std::size_t> order;

	/// "A3", "A2^(1)" or "Other".
	std::string name() const;
};

/// Decides between A_r, A^(1)_{r-1} and everything else.
/// Throws Decomposable when the diagram is disconnected.
CartanType classify(const Gcm &n);

/// Built-in matrices: "A<r>", "A<k>affine" (rank k+1), "B2", "C2", "G2",
/// "D4", "F4".
IntMatrix named_cartan_matrix(std::string_view name);

IntMatrix cartan_matrix_finite_a(std::size_t r);
/// Matrix of A^(1)_{k}; it has k+1 rows.
IntMatrix cartan_matrix_affine_a(std::size_t k);

/// Accepts either a JSON array of integer arrays or whitespace separated rows,
/// one row per line.
IntMatrix parse_int_matrix(std::string_view text);

} // namespace kmvf
