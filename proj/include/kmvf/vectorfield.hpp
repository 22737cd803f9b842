#pragma once

#include "kmvf/laurent.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kmvf {

/// Vector field on the r-torus, D = sum_j q_j D_j with D_j = z_j d/dz_j.
/// Der(L_r) is free on D_1..D_r, so the coefficients q_j determine D.
class Derivation
{
  public:
	explicit Derivation(std::size_t rank);
	explicit Derivation(std::vector<LaurentPoly> coords);

	/// D_j for 0-based j.
	static Derivation basis(std::size_t rank, std::size_t j);
	/// sum_j c_j D_j.
	static Derivation constant(std::span<const Rational> c);

	std::size_t rank() const noexcept { return coords_.size(); }
	const std::vector<LaurentPoly> &coords() const noexcept { return coords_; }
	const LaurentPoly &coord(std::size_t j) const { return coords_.at(j); }

	bool is_zero() const;
	/// Coefficients c_j if every q_j is a constant.
	std::optional<std::vector<Rational>> constant_coords() const;

	Derivation &operator+=(const Derivation &other);
	Derivation &operator-=(const Derivation &other);
	Derivation &operator*=(const Rational &c);
	/// Multiplication by a function, f * D.
	Derivation &operator*=(const LaurentPoly &f);

	friend Derivation operator+(Derivation a, const Derivation &b) { return a += b; }
	friend Derivation operator-(Derivation a, const Derivation &b) { return a -= b; }
	friend Derivation operator-(Derivation a) { return a *= Rational(-1); }
	friend Derivation operator*(const Rational &c, Derivation a) { return a *= c; }
	friend Derivation operator*(const LaurentPoly &f, Derivation a) { return a *= f; }

	bool operator==(const Derivation &) const = default;

  private:
	void check_rank(const Derivation &other) const;

	std::vector<LaurentPoly> coords_;
};

/// D(f).
LaurentPoly apply(const Derivation &d, const LaurentPoly &f);

/// [D, E]; coordinate k is D(p_k) - E(q_k).
Derivation bracket(const Derivation &d, const Derivation &e);

/// ad(D)^k (E), k >= 1.
Derivation ad_pow(const Derivation &d, unsigned k, const Derivation &e);

/// alpha(H) where v_alpha = z^alpha and H = sum_j h_j D_j is constant.
Rational pair(const Monomial &alpha, std::span<const Rational> h);

/// v_alpha * H as a derivation.
Derivation weighted_field(const Monomial &alpha, std::span<const Rational> h);

/// [v_a H, v_b H'] = v_{a+b} (b(H) H' - a(H') H).
Derivation bracket_closed_form(const Monomial &alpha, std::span<const Rational> h, const Monomial &beta,
                               std::span<const Rational> h2);

/// ad(v_a H)^k (v_b H') in closed form:
/// v_{b+ka} ( prod_{i<k} (b+ia)(H) H' - k a(H') prod_{i<k-1} (b+ia)(H) H ).
Derivation ad_pow_closed_form(const Monomial &alpha, std::span<const Rational> h, unsigned k, const Monomial &beta,
                              std::span<const Rational> h2);

/// Removes coordinate k and the variable z_k; every coefficient must be free of z_k.
Derivation drop_coordinate(const Derivation &d, std::size_t k);

enum class FieldBasis
{
	Logarithmic, // z1^2*D2
	Partial,     // z1^2*z2*d/dz2
};

std::string to_string(const Derivation &d, FieldBasis basis = FieldBasis::Logarithmic);

/// Coefficients of d/dz_j: q_j * z_j.
std::vector<LaurentPoly> partial_coords(const Derivation &d);

/// JSON list of the r coordinate polynomials in text syntax.
nlohmann::json to_json(const Derivation &d);
Derivation derivation_from_json(const nlohmann::json &j, std::size_t rank);

/// Linear span of derivations over Q, kept in echelon form.
class DerivationSpan
{
  public:
	explicit DerivationSpan(std::size_t rank) : rank_(rank) {}

	/// Adds d if it is independent of the current span; returns whether it was.
	bool insert(const Derivation &d);
	bool contains(const Derivation &d) const;
	std::size_t dimension() const noexcept { return rows_.size(); }

  private:
	using Key = std::pair<std::size_t, Monomial>;
	using Vector = std::map<Key, Rational>;

	Vector flatten(const Derivation &d) const;
	void reduce(Vector &v) const;

	std::size_t rank_;
	std::map<Key, Vector> rows_; // pivot key -> row with pivot coefficient 1
};

} // namespace kmvf
