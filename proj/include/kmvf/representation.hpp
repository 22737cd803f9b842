#pragma once

#include "kmvf/cartan.hpp"
#include "kmvf/solution.hpp"
#include "kmvf/vectorfield.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kmvf {

/// Cartan subalgebra data for an A-type GCM: the table alpha(a, j) = alpha_j(H_a)
/// over the r + s generators H_a, and the dual basis H'_j of h' modulo the centre.
/// For affine types the extra generator d satisfies alpha_j(d) = [j == affine node],
/// the affine node being vertex 0.
class CartanData
{
  public:
	const Gcm &gcm() const noexcept { return gcm_; }
	const CartanType &type() const noexcept { return type_; }
	/// (r+s) x r.
	const RationalMatrix &alpha() const noexcept { return alpha_; }
	/// primed()[j] holds the coefficients of H'_j on H_1..H_{r+s}.
	const std::vector<std::vector<Rational>> &primed() const noexcept { return primed_; }

	std::size_t rank() const noexcept { return gcm_.rank(); }
	std::size_t corank() const noexcept { return gcm_.corank(); }
	std::size_t num_cartan_generators() const noexcept { return alpha_.rows(); }
	std::optional<std::size_t> affine_node() const;
	bool is_affine() const noexcept { return type_.kind == CartanKind::AffineA; }

	/// Basis of Z = intersection of ker alpha_j, as coefficient vectors on H_a.
	std::vector<std::vector<Rational>> center_basis() const;

	/// "H1".."Hr", then "d" for the extension generator.
	std::string h_name(std::size_t a) const;

  private:
	CartanData(Gcm gcm, CartanType type, RationalMatrix alpha, std::vector<std::vector<Rational>> primed);
	friend CartanData build_cartan_data(const Gcm &n);

	Gcm gcm_;
	CartanType type_;
	RationalMatrix alpha_;
	std::vector<std::vector<Rational>> primed_;
};

/// Throws UnsupportedType unless N is A_r or A^(1)_{r-1}.
CartanData build_cartan_data(const Gcm &n);

/// Constant fields delta_i and delta_{-i}, as derivations.
struct Deltas
{
	std::vector<Derivation> plus;
	std::vector<Derivation> minus;
};

/// delta_i = sum_j A(j,i) D_j, delta_{-i} = -sum_j A(i,j)/(A(i,i) A(j,j)) D_j.
Deltas build_deltas(const CartanData &cd, const SolutionMatrix &a);

/// Generator images of one member of a discrete family:
/// F(H_a) = sum_j alpha_j(H_a) D_j/n_j, F(X_i) = z_i^{n_i} delta_i, F(X_{-i}) = z_i^{-n_i} delta_{-i},
/// with D_j replaced by D_j/n_j inside the deltas.
struct Representation
{
	CartanData cartan;
	RationalMatrix a;
	std::vector<std::int64_t> n;
	std::vector<Derivation> h_images;
	std::vector<Derivation> x_plus;
	std::vector<Derivation> x_minus;
	Deltas deltas;

	std::size_t rank() const noexcept { return cartan.rank(); }
};

/// Throws ZeroIndex(i) for n_i = 0 and DimensionMismatch for |n| != r.
Representation build_representation(const CartanData &cd, const SolutionMatrix &a, std::span<const std::int64_t> n);

/// Same formulas for an arbitrary matrix with nonzero diagonal; used to probe
/// matrices that are not solution matrices.
Representation build_representation_unchecked(const CartanData &cd, const RationalMatrix &a,
                                              std::span<const std::int64_t> n);

/// The same family obtained the long way round: rescale F on the dual basis
/// H'_j by 1/n_j, kill the centre, take delta_i as the element of Im F_n with
/// alpha_k(delta_i) = A(k,i) and delta_{-i} = (-F_n(H_i) + delta_i/A(i,i))/A(i,i).
Representation build_representation_via_primed_basis(const CartanData &cd, const SolutionMatrix &a,
                                                     std::span<const std::int64_t> n);

/// sum_j c_j D_j / n_j.
Derivation scaled_constant_field(std::span<const Rational> c, std::span<const std::int64_t> n);

struct RelationCheck
{
	char relation = 'a';
	std::vector<std::size_t> indices;
	std::string label; // e.g. "[X1,X-2]" or "ad(X1)^2(X2)"
	Derivation residual;

	bool passed() const { return residual.is_zero(); }
};

struct RelationReport
{
	std::vector<RelationCheck> checks;

	bool all_passed() const;
	std::size_t count(char relation) const;
	std::vector<RelationCheck> failures() const;
};

/// Symbolic check of the defining relations:
/// (a) [H_a, H_b] = 0; (b) [X_i, X_{-j}] = delta_ij H_i;
/// (c) [H_a, X_{+-j}] = +-alpha_j(H_a) X_{+-j};
/// (d), (e) ad(X_{+-i})^{1-n(i,j)} (X_{+-j}) = 0 for i != j.
RelationReport verify_relations(const Representation &rep);

struct KernelReport
{
	bool affine = false;
	/// Images of a basis of the centre Z; all zero when Ker F = Z.
	std::vector<Derivation> center_images;
	/// F(H_1 + ... + H_r).
	Derivation sum_image{1};
	/// F(H'_j); these must be independent and equal to D_j / n_j.
	std::vector<Derivation> primed_images;
	bool center_vanishes = false;
	bool primed_independent = false;
	bool primed_are_scaled_basis = false;

	bool passed() const { return center_vanishes && primed_independent && primed_are_scaled_basis; }
};

KernelReport kernel_check(const Representation &rep);

/// Generator names in output order: H..., d, X1..Xr, X-1..X-r.
std::vector<std::string> generator_names(const Representation &rep);
const Derivation &generator_image(const Representation &rep, std::size_t index);

/// LaTeX in D_j/n_j notation, e.g. `z_1^{n_1}\left(\frac{D_1}{n_1}-\frac{D_2}{n_2}\right)`.
/// Coordinates are labeled from index_base.
std::string to_latex(const Derivation &d, std::span<const std::int64_t> n, std::size_t index_base);

std::string to_text(const Representation &rep);
/// Affine types are labeled from 0 (affine node 0), finite types from 1.
std::string to_latex(const Representation &rep);
nlohmann::ordered_json to_json(const Representation &rep);
/// Rebuilds the Cartan data from the stored matrix and takes the generator
/// images verbatim from the document.
Representation representation_from_json(const nlohmann::json &j);

nlohmann::ordered_json to_json(const RelationReport &report);
nlohmann::ordered_json to_json(const KernelReport &report);

} // namespace kmvf
