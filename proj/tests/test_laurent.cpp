#include "kmvf/error.hpp"
#include "kmvf/laurent.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace kmvf;
using testing::evaluate;

namespace {

LaurentPoly P(const char *text, std::size_t rank = 2)
{
	return parse_laurent(text, rank);
}

} // namespace

TEST_CASE("ring operations on small examples", "[laurent]")
{
	CHECK((P("z1 + z2") * P("z1 - z2")) == P("z1^2 - z2^2"));
	CHECK(P("3*z1 - z2") + LaurentPoly(2) == P("3*z1 - z2"));
	CHECK(P("1/2*z1") * P("2*z1^-1") == LaurentPoly::constant(2, 1));
	CHECK((P("z1") - P("z1")).is_zero());
	CHECK(Rational(3) * P("z2") == P("3*z2"));
	CHECK_THROWS_AS(P("z1") + LaurentPoly(3), Error);
}

TEST_CASE("units and inverses", "[laurent]")
{
	CHECK(invert(P("3*z1*z2^-2")) == P("1/3*z1^-1*z2^2"));
	CHECK(invert(LaurentPoly::constant(2, 1)) == LaurentPoly::constant(2, 1));
	try
	{
		invert(P("z1 + 1"));
		FAIL("no error");
	}
	catch (const Error &e)
	{
		CHECK(e.code() == ErrorCode::NotAUnit);
	}
	CHECK_THROWS_AS(invert(LaurentPoly(2)), Error);
}

TEST_CASE("powers", "[laurent]")
{
	CHECK(power(P("z1*z2"), 3) == P("z1^3*z2^3"));
	CHECK(power(P("2*z1"), -1) == P("1/2*z1^-1"));
	CHECK(power(P("z1 + 1"), 2) == P("z1^2 + 2*z1 + 1"));
	CHECK(power(P("z1 + z2"), 0) == LaurentPoly::constant(2, 1));
	CHECK_THROWS_AS(power(P("z1 + 1"), -2), Error);
}

TEST_CASE("text syntax", "[laurent]")
{
	CHECK(to_string(P("3/2*z1^2*z2^-1 + z3", 3)) == "3/2*z1^2*z2^-1 + z3");
	CHECK(to_string(LaurentPoly(2)) == "0");
	CHECK(to_string(P("z2 - z1")) == "-z1 + z2");
	CHECK(to_string(P("-(z1 + 2)*z2")) == "-z1*z2 - 2*z2");
	CHECK(P("(z1 + 1)*(z1 - 1)") == P("z1^2 - 1"));
	CHECK(P("((z1))") == P("z1"));
	CHECK_THROWS_AS(P("z3"), Error);
	CHECK_THROWS_AS(P("z1 +"), Error);
	CHECK_THROWS_AS(P("z1^"), Error);
	CHECK_THROWS_AS(P("(z1"), Error);
	CHECK_THROWS_AS(P("1/0"), Error);
}

TEST_CASE("ring axioms on random sparse polynomials", "[laurent][property]")
{
	testing::Rng rng(314159);
	for (int trial = 0; trial < 300; ++trial)
	{
		const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
		auto p = testing::random_poly(rng, r);
		auto q = testing::random_poly(rng, r);
		auto s = testing::random_poly(rng, r);
		CHECK((p + q) + s == p + (q + s));
		CHECK(p + q == q + p);
		CHECK((p * q) * s == p * (q * s));
		CHECK(p * q == q * p);
		CHECK(p * (q + s) == p * q + p * s);
		CHECK(p - p == LaurentPoly(r));
		const auto pq = p * q;
		for (auto &[m, c] : pq.terms())
			CHECK(c != 0);
	}
}

TEST_CASE("evaluation at rational points is a ring homomorphism", "[laurent][property]")
{
	testing::Rng rng(2718);
	for (int trial = 0; trial < 200; ++trial)
	{
		const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
		auto p = testing::random_poly(rng, r);
		auto q = testing::random_poly(rng, r);
		std::vector<Rational> x(r);
		for (auto &v : x)
			v = testing::random_rational(rng);
		CHECK(evaluate(p * q, x) == evaluate(p, x) * evaluate(q, x));
		CHECK(evaluate(p + q, x) == evaluate(p, x) + evaluate(q, x));
		const auto e = testing::uniform(rng, 0, 4);
		Rational expected = 1;
		for (std::int64_t k = 0; k < e; ++k)
			expected *= evaluate(p, x);
		CHECK(evaluate(power(p, e), x) == expected);
	}
}

TEST_CASE("unit inverses and power laws", "[laurent][property]")
{
	testing::Rng rng(99);
	for (int trial = 0; trial < 100; ++trial)
	{
		const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
		auto u = testing::random_unit(rng, r);
		CHECK(invert(u) * u == LaurentPoly::constant(r, 1));
		const auto a = testing::uniform(rng, -5, 5);
		const auto b = testing::uniform(rng, -5, 5);
		CHECK(power(u, a) * power(u, b) == power(u, a + b));
	}
}

TEST_CASE("serialization round trips", "[laurent][property]")
{
	testing::Rng rng(4242);
	for (int trial = 0; trial < 200; ++trial)
	{
		const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
		auto p = testing::random_poly(rng, r, 6);
		CHECK(parse_laurent(to_string(p), r) == p);
		CHECK(laurent_from_json(to_json(p), r) == p);
		CHECK(laurent_from_json(nlohmann::json(to_string(p)), r) == p);
	}
}

TEST_CASE("json term list layout", "[laurent]")
{
	auto j = to_json(P("-3/2*z1^2*z2^-1"));
	REQUIRE(j.size() == 1);
	CHECK(j[0]["coeff"] == "-3/2");
	CHECK(j[0]["exps"] == nlohmann::json::array({2, -1}));
}
