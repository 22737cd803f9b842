#include "kmvf/vectorfield.hpp"

#include "kmvf/error.hpp"

namespace kmvf {

Derivation::Derivation(std::size_t rank) : coords_(rank, LaurentPoly(rank)) {}

Derivation::Derivation(std::vector<LaurentPoly> coords) : coords_(std::move(coords))
{
	for (auto &q : coords_)
		if (q.rank() != coords_.size())
			throw Error(ErrorCode::RankMismatch, "coefficient rank differs from number of coordinates");
}

Derivation Derivation::basis(std::size_t rank, std::size_t j)
{
	if (j >= rank)
		throw Error(ErrorCode::InvalidArgument, "basis index out of range", {j});
	Derivation d(rank);
	d.coords_[j] = LaurentPoly::constant(rank, 1);
	return d;
}

Derivation Derivation::constant(std::span<const Rational> c)
{
	Derivation d(c.size());
	for (std::size_t j = 0; j < c.size(); ++j)
		d.coords_[j] = LaurentPoly::constant(c.size(), c[j]);
	return d;
}

bool Derivation::is_zero() const
{
	for (auto &q : coords_)
		if (!q.is_zero())
			return false;
	return true;
}

std::optional<std::vector<Rational>> Derivation::constant_coords() const
{
	std::vector<Rational> c;
	c.reserve(coords_.size());
	const Monomial one{std::vector<std::int64_t>(coords_.size(), 0)};
	for (auto &q : coords_)
	{
		if (!q.is_constant())
			return std::nullopt;
		c.push_back(q.coefficient(one));
	}
	return c;
}

void Derivation::check_rank(const Derivation &other) const
{
	if (rank() != other.rank())
		throw Error(ErrorCode::RankMismatch,
		            "derivations of rank " + std::to_string(rank()) + " and " + std::to_string(other.rank()));
}

Derivation &Derivation::operator+=(const Derivation &other)
{
	check_rank(other);
	for (std::size_t j = 0; j < coords_.size(); ++j)
		coords_[j] += other.coords_[j];
	return *this;
}

Derivation &Derivation::operator-=(const Derivation &other)
{
	check_rank(other);
	for (std::size_t j = 0; j < coords_.size(); ++j)
		coords_[j] -= other.coords_[j];
	return *this;
}

Derivation &Derivation::operator*=(const Rational &c)
{
	for (auto &q : coords_)
		q *= c;
	return *this;
}

Derivation &Derivation::operator*=(const LaurentPoly &f)
{
	if (f.rank() != rank())
		throw Error(ErrorCode::RankMismatch, "function rank differs from derivation rank");
	for (auto &q : coords_)
		q *= f;
	return *this;
}

LaurentPoly apply(const Derivation &d, const LaurentPoly &f)
{
	if (d.rank() != f.rank())
		throw Error(ErrorCode::RankMismatch, "derivation and function ranks differ");
	LaurentPoly out(f.rank());
	for (std::size_t j = 0; j < d.rank(); ++j)
	{
		auto &q = d.coord(j);
		if (q.is_zero())
			continue;
		LaurentPoly dj(f.rank());
		for (auto &[m, c] : f.terms())
			if (m.exps[j] != 0)
				dj.add_term(m, c * Rational(m.exps[j]));
		if (!dj.is_zero())
			out += q * dj;
	}
	return out;
}

Derivation bracket(const Derivation &d, const Derivation &e)
{
	if (d.rank() != e.rank())
		throw Error(ErrorCode::RankMismatch, "bracket of derivations of different rank");
	std::vector<LaurentPoly> coords;
	coords.reserve(d.rank());
	for (std::size_t k = 0; k < d.rank(); ++k)
		coords.push_back(apply(d, e.coord(k)) - apply(e, d.coord(k)));
	return Derivation(std::move(coords));
}

Derivation ad_pow(const Derivation &d, unsigned k, const Derivation &e)
{
	if (k == 0)
		throw Error(ErrorCode::InvalidArgument, "ad power must be at least 1");
	Derivation out = e;
	for (unsigned i = 0; i < k; ++i)
		out = bracket(d, out);
	return out;
}

Rational pair(const Monomial &alpha, std::span<const Rational> h)
{
	if (alpha.rank() != h.size())
		throw Error(ErrorCode::RankMismatch, "weight and field ranks differ");
	Rational s = 0;
	for (std::size_t j = 0; j < h.size(); ++j)
		s += Rational(alpha.exps[j]) * h[j];
	return s;
}

Derivation weighted_field(const Monomial &alpha, std::span<const Rational> h)
{
	return LaurentPoly::monomial(alpha) * Derivation::constant(h);
}

Derivation bracket_closed_form(const Monomial &alpha, std::span<const Rational> h, const Monomial &beta,
                               std::span<const Rational> h2)
{
	return ad_pow_closed_form(alpha, h, 1, beta, h2);
}

Derivation ad_pow_closed_form(const Monomial &alpha, std::span<const Rational> h, unsigned k, const Monomial &beta,
                              std::span<const Rational> h2)
{
	if (k == 0)
		throw Error(ErrorCode::InvalidArgument, "ad power must be at least 1");
	// prods[i] = prod_{l<i} (beta + l alpha)(H)
	std::vector<Rational> prods{Rational(1)};
	Monomial shifted = beta;
	for (unsigned i = 0; i < k; ++i)
	{
		prods.push_back(prods.back() * pair(shifted, h));
		shifted = shifted * alpha;
	}
	const Rational c_h2 = prods[k];
	const Rational c_h = -Rational(k) * pair(alpha, h2) * prods[k - 1];

	std::vector<Rational> field(h.size());
	for (std::size_t j = 0; j < h.size(); ++j)
		field[j] = c_h2 * h2[j] + c_h * h[j];
	return weighted_field(shifted, field);
}

Derivation drop_coordinate(const Derivation &d, std::size_t k)
{
	const std::size_t r = d.rank();
	if (k >= r || r < 2)
		throw Error(ErrorCode::InvalidArgument, "cannot drop coordinate", {k});
	std::vector<LaurentPoly> coords;
	for (std::size_t j = 0; j < r; ++j)
	{
		if (j == k)
			continue;
		LaurentPoly q(r - 1);
		for (auto &[m, c] : d.coord(j).terms())
		{
			if (m.exps[k] != 0)
				throw Error(ErrorCode::InvalidArgument, "coefficient depends on the dropped variable", {k});
			Monomial reduced = m;
			reduced.exps.erase(reduced.exps.begin() + static_cast<std::ptrdiff_t>(k));
			q.add_term(reduced, c);
		}
		coords.push_back(std::move(q));
	}
	return Derivation(std::move(coords));
}

std::vector<LaurentPoly> partial_coords(const Derivation &d)
{
	std::vector<LaurentPoly> out;
	for (std::size_t j = 0; j < d.rank(); ++j)
		out.push_back(d.coord(j) * LaurentPoly::variable(d.rank(), j));
	return out;
}

std::string to_string(const Derivation &d, FieldBasis basis)
{
	auto coords = basis == FieldBasis::Logarithmic ? d.coords() : partial_coords(d);
	std::string s;
	for (std::size_t j = 0; j < coords.size(); ++j)
	{
		auto &q = coords[j];
		if (q.is_zero())
			continue;
		const std::string symbol =
		    basis == FieldBasis::Logarithmic ? "D" + std::to_string(j + 1) : "d/dz" + std::to_string(j + 1);
		bool negative = false;
		std::string factor;
		if (q.size() == 1)
		{
			auto [m, c] = *q.terms().begin();
			negative = c < 0;
			auto body = to_string(LaurentPoly::monomial(m, abs(c)));
			if (body != "1")
				factor = body + "*";
		}
		else
			factor = "(" + to_string(q) + ")*";
		if (s.empty())
			s = negative ? "-" : "";
		else
			s += negative ? " - " : " + ";
		s += factor + symbol;
	}
	return s.empty() ? "0" : s;
}

nlohmann::json to_json(const Derivation &d)
{
	auto out = nlohmann::json::array();
	for (auto &q : d.coords())
		out.push_back(to_string(q));
	return out;
}

Derivation derivation_from_json(const nlohmann::json &j, std::size_t rank)
{
	if (!j.is_array() || j.size() != rank)
		throw Error(ErrorCode::ParseError, "derivation must be a list of " + std::to_string(rank) + " coordinates");
	std::vector<LaurentPoly> coords;
	for (auto &q : j)
		coords.push_back(laurent_from_json(q, rank));
	return Derivation(std::move(coords));
}

DerivationSpan::Vector DerivationSpan::flatten(const Derivation &d) const
{
	if (d.rank() != rank_)
		throw Error(ErrorCode::RankMismatch, "derivation rank differs from span rank");
	Vector v;
	for (std::size_t k = 0; k < d.rank(); ++k)
		for (auto &[m, c] : d.coord(k).terms())
			v.emplace(Key{k, m}, c);
	return v;
}

void DerivationSpan::reduce(Vector &v) const
{
	std::optional<Key> bound;
	while (true)
	{
		auto pos = bound ? v.lower_bound(*bound) : v.end();
		if (pos == v.begin())
			break;
		--pos;
		Key key = pos->first;
		if (auto row = rows_.find(key); row != rows_.end())
		{
			Rational c = pos->second;
			for (auto &[k, x] : row->second)
			{
				auto [it, inserted] = v.try_emplace(k, -c * x);
				if (!inserted)
				{
					it->second -= c * x;
					if (it->second == 0)
						v.erase(it);
				}
			}
		}
		bound = key;
	}
}

bool DerivationSpan::insert(const Derivation &d)
{
	auto v = flatten(d);
	reduce(v);
	if (v.empty())
		return false;
	auto pivot = std::prev(v.end());
	Rational inv = 1 / pivot->second;
	for (auto &entry : v)
		entry.second *= inv;
	Key key = pivot->first;
	rows_.emplace(std::move(key), std::move(v));
	return true;
}

bool DerivationSpan::contains(const Derivation &d) const
{
	auto v = flatten(d);
	reduce(v);
	return v.empty();
}

} // namespace kmvf
