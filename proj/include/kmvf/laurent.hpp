#pragma once

#include "kmvf/scalar.hpp"

#include <json.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kmvf {

/// Exponent vector of z_1^{e_1} ... z_r^{e_r}; entries may be negative.
struct Monomial
{
	std::vector<std::int64_t> exps;

	std::size_t rank() const noexcept { return exps.size(); }
	bool is_one() const;

	friend Monomial operator*(const Monomial &a, const Monomial &b);
	auto operator<=>(const Monomial &) const = default;
	bool operator==(const Monomial &) const = default;
};

/// Element of Q[z_1^{+-1}, ..., z_r^{+-1}]. Terms are kept canonical: no zero
/// coefficients, ordered by exponent vector (lexicographically descending),
/// so structural equality is ring equality.
class LaurentPoly
{
  public:
	using Terms = std::map<Monomial, Rational, std::greater<>>;

	explicit LaurentPoly(std::size_t rank) : rank_(rank) {}

	static LaurentPoly constant(std::size_t rank, const Rational &c);
	/// z_j for 0-based j.
	static LaurentPoly variable(std::size_t rank, std::size_t j);
	static LaurentPoly monomial(Monomial m, const Rational &c = 1);

	std::size_t rank() const noexcept { return rank_; }
	const Terms &terms() const noexcept { return terms_; }
	std::size_t size() const noexcept { return terms_.size(); }
	bool is_zero() const noexcept { return terms_.empty(); }
	/// Units of the ring are exactly the single nonzero terms.
	bool is_unit() const noexcept { return terms_.size() == 1; }
	bool is_constant() const;
	/// Coefficient of z^m (zero if absent).
	Rational coefficient(const Monomial &m) const;

	/// Adds c*z^m, dropping the term if it cancels.
	void add_term(const Monomial &m, const Rational &c);

	LaurentPoly &operator+=(const LaurentPoly &other);
	LaurentPoly &operator-=(const LaurentPoly &other);
	LaurentPoly &operator*=(const LaurentPoly &other);
	LaurentPoly &operator*=(const Rational &c);

	friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
	friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
	friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
	friend LaurentPoly operator*(LaurentPoly a, const Rational &c) { return a *= c; }
	friend LaurentPoly operator*(const Rational &c, LaurentPoly a) { return a *= c; }
	friend LaurentPoly operator-(LaurentPoly a);

	bool operator==(const LaurentPoly &other) const = default;

  private:
	void check_rank(const LaurentPoly &other) const;

	std::size_t rank_;
	Terms terms_;
};

/// Inverse of a unit; throws NotAUnit otherwise.
LaurentPoly invert(const LaurentPoly &p);

/// p^m; negative m requires a unit.
LaurentPoly power(const LaurentPoly &p, std::int64_t m);

/// Text form such as `3/2*z1^2*z2^-1 + z3`.
std::string to_string(const LaurentPoly &p);

/// Parses the text form; variables are z1..z<rank>.
LaurentPoly parse_laurent(std::string_view text, std::size_t rank);

/// [{"coeff": "p/q", "exps": [...]}, ...]
nlohmann::json to_json(const LaurentPoly &p);
LaurentPoly laurent_from_json(const nlohmann::json &j, std::size_t rank);

} // namespace kmvf
