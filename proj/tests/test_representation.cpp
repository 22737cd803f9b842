#include "kmvf/representation.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace kmvf;
using namespace kmvf::testing;

namespace {

Gcm G(const char *name)
{
	return validate_gcm(named_cartan_matrix(name));
}

LaurentPoly P(const char *text, std::size_t rank)
{
	return parse_laurent(text, rank);
}

Derivation D(std::size_t rank, std::size_t j)
{
	return Derivation::basis(rank, j);
}

Representation make(const char *name, std::size_t sm, std::vector<Rational> diag, std::vector<std::int64_t> n)
{
	auto g = G(name);
	auto cd = build_cartan_data(g);
	auto a = normalized_solution_matrices(g).at(sm);
	if (!diag.empty())
		a = scale(a, diag);
	return build_representation(cd, a, n);
}

std::vector<IntMatrix> supported_types(std::size_t max_rank)
{
	std::vector<IntMatrix> out;
	for (std::size_t r = 1; r <= max_rank; ++r)
		out.push_back(cartan_matrix_finite_a(r));
	for (std::size_t r = 2; r <= max_rank; ++r)
		out.push_back(cartan_matrix_affine_a(r - 1));
	return out;
}

std::vector<std::int64_t> random_indices(Rng &rng, std::size_t r)
{
	static const std::int64_t choices[] = {-2, -1, 1, 2};
	std::vector<std::int64_t> n(r);
	for (auto &x : n)
		x = choices[uniform(rng, 0, 3)];
	return n;
}

} // namespace

TEST_CASE("Cartan data", "[representation]")
{
	auto a2 = build_cartan_data(G("A2"));
	REQUIRE(a2.primed().size() == 2);
	CHECK(a2.primed()[0] == std::vector<Rational>{Rational(2, 3), Rational(1, 3)});
	CHECK(a2.primed()[1] == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
	CHECK(a2.alpha() == to_rational(cartan_matrix_finite_a(2)));
	CHECK(a2.center_basis().empty());

	auto a1 = build_cartan_data(G("A1"));
	CHECK(a1.primed()[0] == std::vector<Rational>{Rational(1, 2)});

	auto aff = build_cartan_data(G("A1affine"));
	REQUIRE(aff.alpha().rows() == 3);
	CHECK(aff.alpha()(2, 0) == 1);
	CHECK(aff.alpha()(2, 1) == 0);
	CHECK(aff.affine_node() == std::optional<std::size_t>(0));
	CHECK(aff.h_name(2) == "d");
	auto z = aff.center_basis();
	REQUIRE(z.size() == 1);
	CHECK(z[0][0] == z[0][1]);
	CHECK(z[0][2] == 0);

	CHECK_THROWS_AS(build_cartan_data(G("B2")), Error);
	CHECK_THROWS_AS(build_cartan_data(validate_gcm(IntMatrix{{2, 0}, {0, 2}})), Error);
}

TEST_CASE("alpha values and primed basis", "[representation][property]")
{
	for (auto &m : supported_types(5))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		for (std::size_t i = 0; i < g.rank(); ++i)
			for (std::size_t j = 0; j < g.rank(); ++j)
				CHECK(cd.alpha()(i, j) == g(i, j));
		CHECK(rank(cd.alpha()) == g.rank());
		for (std::size_t j = 0; j < g.rank(); ++j)
			for (std::size_t k = 0; k < g.rank(); ++k)
			{
				Rational v = 0;
				for (std::size_t a = 0; a < cd.num_cartan_generators(); ++a)
					v += cd.primed()[j][a] * cd.alpha()(a, k);
				CHECK(v == (j == k ? 1 : 0));
			}
	}
}

TEST_CASE("constant fields delta", "[representation]")
{
	auto g = G("A1");
	auto cd = build_cartan_data(g);
	std::vector<Rational> lambda{Rational(5, 2)};
	auto d = build_deltas(cd, scale(normalized_solution_matrices(g)[0], lambda));
	CHECK(d.plus[0] == Rational(5, 2) * D(1, 0));
	CHECK(d.minus[0] == Rational(-2, 5) * D(1, 0));

	auto a2 = G("A2");
	auto d2 = build_deltas(build_cartan_data(a2), normalized_solution_matrices(a2)[0]);
	CHECK(d2.plus[0] == D(2, 0));
	CHECK(d2.plus[1] == D(2, 1) - D(2, 0));

	Rng rng(31);
	for (auto &m : supported_types(4))
	{
		auto n = validate_gcm(m);
		auto cd = build_cartan_data(n);
		for (auto base : normalized_solution_matrices(n))
		{
			std::vector<Rational> s(n.rank());
			for (auto &x : s)
				x = random_rational(rng);
			auto a = scale(base, s);
			auto deltas = build_deltas(cd, a);
			const auto &A = a.matrix();
			for (std::size_t i = 0; i < n.rank(); ++i)
				for (std::size_t j = 0; j < n.rank(); ++j)
				{
					CHECK(deltas.plus[i].coord(j) == LaurentPoly::constant(n.rank(), A(j, i)));
					CHECK(deltas.minus[j].coord(i) == LaurentPoly::constant(n.rank(), -A(j, i) / (A(i, i) * A(j, j))));
				}
		}
	}
}

TEST_CASE("sl(2) family", "[representation]")
{
	auto rep = make("A1", 0, {}, {1});
	CHECK(rep.h_images[0] == Rational(2) * D(1, 0));
	CHECK(rep.x_plus[0] == P("z1", 1) * D(1, 0));
	CHECK(rep.x_minus[0] == P("-z1^-1", 1) * D(1, 0));

	for (std::int64_t n : {-3, -1, 2, 5})
	{
		auto r = make("A1", 0, {}, {n});
		const Rational inv = Rational(1) / Rational(static_cast<long>(n));
		CHECK(r.x_plus[0] == LaurentPoly::monomial(Monomial{{n}}, inv) * D(1, 0));
		// In d/dz form: (1/n) z^{n+1} d/dz.
		CHECK(partial_coords(r.x_plus[0])[0] == LaurentPoly::monomial(Monomial{{n + 1}}, inv));
	}
}

TEST_CASE("sl(3) family, forward orientation", "[representation]")
{
	auto rep = make("A2", 0, {}, {1, 1});
	CHECK(rep.h_images[0] == Rational(2) * D(2, 0) - D(2, 1));
	CHECK(rep.x_plus[1] == P("z2", 2) * (D(2, 1) - D(2, 0)));
	CHECK(rep.x_minus[1] == P("-z2^-1", 2) * D(2, 1));
}

TEST_CASE("index and size errors", "[representation]")
{
	auto g = G("A2");
	auto cd = build_cartan_data(g);
	auto a = normalized_solution_matrices(g)[0];
	std::vector<std::int64_t> zero{1, 0};
	try
	{
		build_representation(cd, a, zero);
		FAIL("no error");
	}
	catch (const Error &e)
	{
		CHECK(e.code() == ErrorCode::ZeroIndex);
		CHECK(e.indices() == std::vector<std::size_t>{1});
	}
	std::vector<std::int64_t> short_n{1};
	CHECK_THROWS_AS(build_representation(cd, a, short_n), Error);
}

TEST_CASE("relation report on a valid and a tampered matrix", "[representation]")
{
	auto rep = make("A2", 0, {}, {1, 1});
	auto report = verify_relations(rep);
	CHECK(report.all_passed());
	CHECK(report.count('a') == 1);
	CHECK(report.count('b') == 4);
	CHECK(report.count('c') == 8);
	CHECK(report.count('d') == 2);
	CHECK(report.count('e') == 2);

	auto g = G("A2");
	RationalMatrix tampered{{1, -1}, {-2, 1}};
	std::vector<std::int64_t> ones{1, 1};
	auto bad = build_representation_unchecked(build_cartan_data(g), tampered, ones);
	auto bad_report = verify_relations(bad);
	CHECK_FALSE(bad_report.all_passed());
	bool off_diagonal_b = false;
	for (auto &f : bad_report.failures())
	{
		CHECK(f.relation != 'a');
		if (f.relation == 'b' && f.indices == std::vector<std::size_t>{0, 1})
			off_diagonal_b = f.label == "[X1,X-2]";
	}
	CHECK(off_diagonal_b);
}

TEST_CASE("relations hold across types, orientations, scalings and indices", "[representation][property]")
{
	Rng rng(4711);
	for (auto &m : supported_types(4))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		for (auto base : normalized_solution_matrices(g))
			for (int trial = 0; trial < 6; ++trial)
			{
				std::vector<Rational> s(g.rank());
				for (auto &x : s)
					x = random_rational(rng);
				auto n = random_indices(rng, g.rank());
				auto rep = build_representation(cd, scale(base, s), n);
				auto report = verify_relations(rep);
				INFO(cd.type().name() << " " << to_text(rep));
				CHECK(report.all_passed());
				CHECK(kernel_check(rep).passed());
			}
	}
}

TEST_CASE("weights of the positive generators", "[representation][property]")
{
	Rng rng(17);
	for (auto &m : supported_types(4))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		for (auto base : normalized_solution_matrices(g))
		{
			auto n = random_indices(rng, g.rank());
			std::vector<std::int64_t> ones(g.rank(), 1);
			for (const auto &index : {ones, n})
			{
				auto rep = build_representation(cd, base, index);
				for (std::size_t a = 0; a < cd.num_cartan_generators(); ++a)
					for (std::size_t i = 0; i < g.rank(); ++i)
					{
						Monomial zi{std::vector<std::int64_t>(g.rank(), 0)};
						zi.exps[i] = index[i];
						auto f = LaurentPoly::monomial(zi);
						CHECK(apply(rep.h_images[a], f) == cd.alpha()(a, i) * f);
					}
			}
		}
	}
}

TEST_CASE("transpose and scaling act on the deltas", "[representation][property]")
{
	Rng rng(23);
	for (auto &m : supported_types(4))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		const std::size_t r = g.rank();
		for (auto base : normalized_solution_matrices(g))
		{
			std::vector<Rational> s(r);
			for (auto &x : s)
				x = random_rational(rng);
			auto a = scale(base, s);
			auto n = random_indices(rng, r);
			auto rep = build_representation(cd, a, n);
			auto rep_t = build_representation(cd, transpose_involution(a), n);
			for (std::size_t i = 0; i < r; ++i)
			{
				CHECK(rep_t.deltas.plus[i] == -rep.deltas.minus[i]);
				CHECK(rep_t.deltas.minus[i] == -rep.deltas.plus[i]);
			}

			std::vector<Rational> d(r);
			for (auto &x : d)
				x = random_rational(rng);
			auto rep_s = build_representation(cd, scale(a, d), n);
			for (std::size_t i = 0; i < r; ++i)
			{
				CHECK(rep_s.x_plus[i] == d[i] * rep.x_plus[i]);
				CHECK(rep_s.x_minus[i] == (Rational(1) / d[i]) * rep.x_minus[i]);
			}
			CHECK(rep_s.h_images == rep.h_images);
		}
	}
}

TEST_CASE("the dual-basis construction gives the same family", "[representation][property]")
{
	Rng rng(29);
	for (auto &m : supported_types(4))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		for (auto base : normalized_solution_matrices(g))
			for (int trial = 0; trial < 4; ++trial)
			{
				std::vector<Rational> s(g.rank());
				for (auto &x : s)
					x = random_rational(rng);
				auto a = scale(base, s);
				auto n = random_indices(rng, g.rank());
				auto direct = build_representation(cd, a, n);
				auto dual = build_representation_via_primed_basis(cd, a, n);
				CHECK(dual.h_images == direct.h_images);
				CHECK(dual.x_plus == direct.x_plus);
				CHECK(dual.x_minus == direct.x_minus);
			}
	}
}

TEST_CASE("kernel identities", "[representation]")
{
	auto aff2 = make("A1affine", 0, {}, {1, 1});
	auto k2 = kernel_check(aff2);
	CHECK(k2.affine);
	CHECK(k2.sum_image.is_zero());
	CHECK(aff2.h_images[0] + aff2.h_images[1] == Derivation(2));
	CHECK(k2.passed());

	auto aff3 = make("A2affine", 1, {2, 3, 5}, {1, -2, 2});
	CHECK(kernel_check(aff3).sum_image.is_zero());
	CHECK(kernel_check(aff3).passed());

	auto sl3 = make("A2", 0, {}, {1, 1});
	auto k3 = kernel_check(sl3);
	CHECK_FALSE(k3.affine);
	CHECK(k3.center_images.empty());
	CHECK(k3.primed_independent);
	DerivationSpan span(2);
	CHECK(span.insert(sl3.h_images[0]));
	CHECK(span.insert(sl3.h_images[1]));
}

TEST_CASE("json round trip and tamper detection", "[representation]")
{
	Rng rng(37);
	for (auto &m : supported_types(4))
	{
		auto g = validate_gcm(m);
		auto cd = build_cartan_data(g);
		for (auto base : normalized_solution_matrices(g))
		{
			auto n = random_indices(rng, g.rank());
			auto rep = build_representation(cd, base, n);
			auto doc = nlohmann::json::parse(to_json(rep).dump());
			auto back = representation_from_json(doc);
			CHECK(back.h_images == rep.h_images);
			CHECK(back.x_plus == rep.x_plus);
			CHECK(back.x_minus == rep.x_minus);
			CHECK(verify_relations(back).all_passed());
		}
	}

	auto rep = make("A2", 0, {}, {1, 1});
	auto doc = nlohmann::json::parse(to_json(rep).dump());
	for (auto &gen : doc["generators"])
		if (gen["name"] == "X2")
			gen["coords"][0] = "-2*z2";
	CHECK_FALSE(verify_relations(representation_from_json(doc)).all_passed());

	auto missing = nlohmann::json::parse(to_json(rep).dump());
	missing["generators"].erase(0);
	CHECK_THROWS_AS(representation_from_json(missing), Error);
}

TEST_CASE("text and LaTeX output", "[representation]")
{
	auto rep = make("A2", 0, {}, {1, 1});
	auto text = to_text(rep);
	CHECK(text.find("H1 -> 2*D1 - D2") != std::string::npos);
	CHECK(text.find("X2 -> -z2*D1 + z2*D2") != std::string::npos);

	auto tex = to_latex(rep);
	CHECK(tex.find("H_1 &\\mapsto 2\\frac{D_1}{n_1}-\\frac{D_2}{n_2}") != std::string::npos);
	CHECK(tex.find("X_2 &\\mapsto z_2^{n_2}\\left(-\\frac{D_1}{n_1}+\\frac{D_2}{n_2}\\right)") != std::string::npos);
	CHECK(tex.find("X_{-2} &\\mapsto z_2^{-n_2}\\left(-\\frac{D_2}{n_2}\\right)") != std::string::npos);

	auto aff = make("A1affine", 0, {}, {1, 1});
	auto atex = to_latex(aff);
	CHECK(atex.find("d &\\mapsto \\frac{D_0}{n_0}") != std::string::npos);
	CHECK(atex.find("H_0 &\\mapsto 2\\frac{D_0}{n_0}-2\\frac{D_1}{n_1}") != std::string::npos);

	std::vector<std::int64_t> n{2, 3};
	CHECK(to_latex(Rational(1, 2) * D(2, 0), n, 1) == "\\frac{D_1}{n_1}");
	CHECK(to_latex(Derivation(2), n, 1) == "0");
}
