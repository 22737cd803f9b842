#include "kmvf/laurent.hpp"

#include "kmvf/error.hpp"

#include <algorithm>
#include <cctype>

namespace kmvf {

bool Monomial::is_one() const
{
	return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

Monomial operator*(const Monomial &a, const Monomial &b)
{
	if (a.rank() != b.rank())
		throw Error(ErrorCode::RankMismatch, "monomial ranks differ");
	Monomial m = a;
	for (std::size_t j = 0; j < m.exps.size(); ++j)
		m.exps[j] += b.exps[j];
	return m;
}

LaurentPoly LaurentPoly::constant(std::size_t rank, const Rational &c)
{
	LaurentPoly p(rank);
	p.add_term(Monomial{std::vector<std::int64_t>(rank, 0)}, c);
	return p;
}

LaurentPoly LaurentPoly::variable(std::size_t rank, std::size_t j)
{
	if (j >= rank)
		throw Error(ErrorCode::InvalidArgument, "variable index out of range", {j});
	Monomial m{std::vector<std::int64_t>(rank, 0)};
	m.exps[j] = 1;
	return monomial(std::move(m));
}

LaurentPoly LaurentPoly::monomial(Monomial m, const Rational &c)
{
	LaurentPoly p(m.rank());
	p.add_term(m, c);
	return p;
}

bool LaurentPoly::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational LaurentPoly::coefficient(const Monomial &m) const
{
	auto it = terms_.find(m);
	return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Monomial &m, const Rational &c)
{
	if (m.rank() != rank_)
		throw Error(ErrorCode::RankMismatch, "term rank differs from polynomial rank");
	if (c == 0)
		return;
	auto [it, inserted] = terms_.try_emplace(m, c);
	if (!inserted)
	{
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

void LaurentPoly::check_rank(const LaurentPoly &other) const
{
	if (rank_ != other.rank_)
		throw Error(ErrorCode::RankMismatch,
		            "ranks " + std::to_string(rank_) + " and " + std::to_string(other.rank_));
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &other)
{
	check_rank(other);
	for (auto &[m, c] : other.terms_)
		add_term(m, c);
	return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &other)
{
	check_rank(other);
	for (auto &[m, c] : other.terms_)
		add_term(m, -c);
	return *this;
}

LaurentPoly &LaurentPoly::operator*=(const LaurentPoly &other) { return *this = *this * other; }

LaurentPoly &LaurentPoly::operator*=(const Rational &c)
{
	if (c == 0)
		terms_.clear();
	else
		for (auto &term : terms_)
			term.second *= c;
	return *this;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
{
	a.check_rank(b);
	LaurentPoly out(a.rank_);
	for (auto &[ma, ca] : a.terms_)
		for (auto &[mb, cb] : b.terms_)
			out.add_term(ma * mb, ca * cb);
	return out;
}

LaurentPoly operator-(LaurentPoly a)
{
	for (auto &term : a.terms_)
		term.second = -term.second;
	return a;
}

LaurentPoly invert(const LaurentPoly &p)
{
	if (!p.is_unit())
		throw Error(ErrorCode::NotAUnit, "'" + to_string(p) + "' is not a single nonzero term");
	auto &[m, c] = *p.terms().begin();
	Monomial inv = m;
	for (auto &e : inv.exps)
		e = -e;
	return LaurentPoly::monomial(std::move(inv), 1 / c);
}

LaurentPoly power(const LaurentPoly &p, std::int64_t m)
{
	if (m < 0)
		return power(invert(p), -m);
	LaurentPoly result = LaurentPoly::constant(p.rank(), 1);
	LaurentPoly base = p;
	while (m > 0)
	{
		if (m & 1)
			result *= base;
		m >>= 1;
		if (m)
			base *= base;
	}
	return result;
}

namespace {

// Term body without sign: "3/2*z1^2*z2^-1", "z1", "5".
std::string term_body(const Monomial &m, const Rational &abs_c)
{
	std::string s;
	const bool unit_coeff = abs_c == 1;
	if (!unit_coeff || m.is_one())
		s = to_string(abs_c);
	for (std::size_t j = 0; j < m.exps.size(); ++j)
	{
		if (m.exps[j] == 0)
			continue;
		if (!s.empty())
			s += '*';
		s += 'z' + std::to_string(j + 1);
		if (m.exps[j] != 1)
			s += '^' + std::to_string(m.exps[j]);
	}
	return s;
}

class Parser
{
  public:
	Parser(std::string_view text, std::size_t rank) : text_(text), rank_(rank) {}

	LaurentPoly parse()
	{
		LaurentPoly result(rank_);
		skip_ws();
		if (at_end())
			fail("empty expression");
		bool first = true;
		while (!at_end())
		{
			int sign = 1;
			if (peek() == '+' || peek() == '-')
			{
				sign = peek() == '-' ? -1 : 1;
				++pos_;
				skip_ws();
			}
			else if (!first)
				fail("expected '+' or '-'");
			result += parse_term() * Rational(sign);
			first = false;
			skip_ws();
		}
		return result;
	}

  private:
	LaurentPoly parse_term()
	{
		LaurentPoly term = LaurentPoly::constant(rank_, 1);
		while (true)
		{
			skip_ws();
			term *= parse_factor();
			skip_ws();
			if (!at_end() && peek() == '*')
			{
				++pos_;
				continue;
			}
			return term;
		}
	}

	LaurentPoly parse_factor()
	{
		if (at_end())
			fail("unexpected end of input");
		if (peek() == '(')
		{
			std::size_t close = pos_, depth = 0;
			for (; close < text_.size(); ++close)
			{
				if (text_[close] == '(')
					++depth;
				else if (text_[close] == ')' && --depth == 0)
					break;
			}
			if (close == text_.size())
				fail("unbalanced parenthesis");
			auto inner = Parser(text_.substr(pos_ + 1, close - pos_ - 1), rank_).parse();
			pos_ = close + 1;
			return inner;
		}
		if (peek() == 'z')
		{
			++pos_;
			auto j = read_unsigned();
			if (j < 1 || j > rank_)
				fail("variable z" + std::to_string(j) + " outside z1..z" + std::to_string(rank_));
			std::int64_t e = 1;
			skip_ws();
			if (!at_end() && peek() == '^')
			{
				++pos_;
				skip_ws();
				e = read_signed();
			}
			Monomial m{std::vector<std::int64_t>(rank_, 0)};
			m.exps[j - 1] = e;
			return LaurentPoly::monomial(std::move(m));
		}
		if (std::isdigit(static_cast<unsigned char>(peek())))
		{
			auto start = pos_;
			while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/'))
				++pos_;
			return LaurentPoly::constant(rank_, parse_rational(text_.substr(start, pos_ - start)));
		}
		fail(std::string("unexpected character '") + peek() + "'");
	}

	std::int64_t read_signed()
	{
		std::int64_t sign = 1;
		if (!at_end() && (peek() == '-' || peek() == '+'))
		{
			sign = peek() == '-' ? -1 : 1;
			++pos_;
		}
		if (!at_end() && peek() == '(')
		{
			++pos_;
			auto v = read_signed();
			skip_ws();
			if (at_end() || peek() != ')')
				fail("expected ')'");
			++pos_;
			return sign * v;
		}
		return sign * static_cast<std::int64_t>(read_unsigned());
	}

	std::size_t read_unsigned()
	{
		if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
			fail("expected digits");
		std::size_t v = 0;
		while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
			v = v * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
		return v;
	}

	[[noreturn]] void fail(const std::string &what) const
	{
		throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
	}

	void skip_ws()
	{
		while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
			++pos_;
	}
	bool at_end() const { return pos_ >= text_.size(); }
	char peek() const { return text_[pos_]; }

	std::string_view text_;
	std::size_t rank_;
	std::size_t pos_ = 0;
};

} // namespace

std::string to_string(const LaurentPoly &p)
{
	if (p.is_zero())
		return "0";
	std::string s;
	for (auto &[m, c] : p.terms())
	{
		const bool neg = c < 0;
		if (s.empty())
			s = neg ? "-" : "";
		else
			s += neg ? " - " : " + ";
		s += term_body(m, abs(c));
	}
	return s;
}

LaurentPoly parse_laurent(std::string_view text, std::size_t rank) { return Parser(text, rank).parse(); }

nlohmann::json to_json(const LaurentPoly &p)
{
	auto out = nlohmann::json::array();
	for (auto &[m, c] : p.terms())
		out.push_back({{"coeff", to_string(c)}, {"exps", m.exps}});
	return out;
}

LaurentPoly laurent_from_json(const nlohmann::json &j, std::size_t rank)
{
	if (j.is_string())
		return parse_laurent(j.get<std::string>(), rank);
	if (!j.is_array())
		throw Error(ErrorCode::ParseError, "polynomial must be a term list or a string");
	LaurentPoly p(rank);
	for (auto &term : j)
	{
		if (!term.contains("coeff") || !term.contains("exps"))
			throw Error(ErrorCode::ParseError, "term needs 'coeff' and 'exps'");
		auto &c = term.at("coeff");
		Rational q = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<std::int64_t>());
		Monomial m{term.at("exps").get<std::vector<std::int64_t>>()};
		if (m.rank() != rank)
			throw Error(ErrorCode::RankMismatch, "term has " + std::to_string(m.rank()) + " exponents");
		p.add_term(m, q);
	}
	return p;
}

} // namespace kmvf
