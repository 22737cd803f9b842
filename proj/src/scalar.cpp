#include "kmvf/scalar.hpp"

#include "kmvf/error.hpp"

#include <cctype>
#include <charconv>

namespace kmvf {

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

bool is_integer_literal(std::string_view s)
{
	if (!s.empty() && (s.front() == '-' || s.front() == '+'))
		s.remove_prefix(1);
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

std::vector<std::string_view> split_commas(std::string_view text)
{
	std::vector<std::string_view> parts;
	while (true)
	{
		auto pos = text.find(',');
		parts.push_back(trim(text.substr(0, pos)));
		if (pos == std::string_view::npos)
			break;
		text.remove_prefix(pos + 1);
	}
	return parts;
}

} // namespace

const char *error_code_name(ErrorCode code)
{
	switch (code)
	{
	case ErrorCode::ParseError: return "ParseError";
	case ErrorCode::InvalidArgument: return "InvalidArgument";
	case ErrorCode::NotSquare: return "NotSquare";
	case ErrorCode::DimensionMismatch: return "DimensionMismatch";
	case ErrorCode::DiagonalNotTwo: return "DiagonalNotTwo";
	case ErrorCode::PositiveOffDiagonal: return "PositiveOffDiagonal";
	case ErrorCode::ZeroPatternAsymmetric: return "ZeroPatternAsymmetric";
	case ErrorCode::Decomposable: return "Decomposable";
	case ErrorCode::RankMismatch: return "RankMismatch";
	case ErrorCode::NotAUnit: return "NotAUnit";
	case ErrorCode::ZeroScale: return "ZeroScale";
	case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
	case ErrorCode::BadNormalizedEntry: return "BadNormalizedEntry";
	case ErrorCode::SumMismatch: return "SumMismatch";
	case ErrorCode::ExclusionViolated: return "ExclusionViolated";
	case ErrorCode::UnsupportedType: return "UnsupportedType";
	case ErrorCode::ZeroIndex: return "ZeroIndex";
	case ErrorCode::TooLarge: return "TooLarge";
	case ErrorCode::PreconditionViolated: return "PreconditionViolated";
	case ErrorCode::ClosureDiverged: return "ClosureDiverged";
	case ErrorCode::NormalizationImpossible: return "NormalizationImpossible";
	case ErrorCode::NotProportional: return "NotProportional";
	case ErrorCode::IdentityViolated: return "IdentityViolated";
	}
	return "Unknown";
}

bool is_internal(ErrorCode code)
{
	switch (code)
	{
	case ErrorCode::ClosureDiverged:
	case ErrorCode::NormalizationImpossible:
	case ErrorCode::NotProportional:
	case ErrorCode::IdentityViolated:
		return true;
	default:
		return false;
	}
}

static std::string decorate(ErrorCode code, const std::string &message, const std::vector<std::size_t> &indices)
{
	std::string s = error_code_name(code);
	if (!indices.empty())
	{
		s += '(';
		for (std::size_t k = 0; k < indices.size(); ++k)
		{
			if (k)
				s += ',';
			s += std::to_string(indices[k] + 1);
		}
		s += ')';
	}
	if (!message.empty())
		s += ": " + message;
	return s;
}

Error::Error(ErrorCode code, std::string message, std::vector<std::size_t> indices)
    : std::runtime_error(decorate(code, message, indices)), code_(code), indices_(std::move(indices))
{
}

Rational parse_rational(std::string_view text)
{
	auto s = trim(text);
	auto slash = s.find('/');
	auto num = trim(s.substr(0, slash));
	auto den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
	if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
		throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
	if (num.front() == '+')
		num.remove_prefix(1);
	mpz_class p(std::string(num), 10), q(std::string(den), 10);
	if (q == 0)
		throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
	Rational r(p, q);
	r.canonicalize();
	return r;
}

std::string to_string(const Rational &q) { return q.get_str(); }

std::vector<Rational> parse_rational_list(std::string_view text)
{
	std::vector<Rational> out;
	for (auto part : split_commas(text))
		out.push_back(parse_rational(part));
	return out;
}

std::vector<std::int64_t> parse_integer_list(std::string_view text)
{
	std::vector<std::int64_t> out;
	for (auto part : split_commas(text))
	{
		std::int64_t v = 0;
		if (!part.empty() && part.front() == '+')
			part.remove_prefix(1);
		auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
		if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
			throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(part) + "'");
		out.push_back(v);
	}
	return out;
}

} // namespace kmvf
