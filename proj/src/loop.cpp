#include "kmvf/loop.hpp"

#include <charconv>

namespace kmvf {

MRange parse_m_range(std::string_view text)
{
	auto colon = text.find(':');
	if (colon == std::string_view::npos)
		throw Error(ErrorCode::ParseError, "range must look like lo:hi");
	auto number = [&](std::string_view s) {
		std::int64_t v = 0;
		auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (ec != std::errc() || p != s.data() + s.size() || s.empty())
			throw Error(ErrorCode::ParseError, "bad range bound '" + std::string(s) + "'");
		return v;
	};
	MRange r{number(text.substr(0, colon)), number(text.substr(colon + 1))};
	if (r.lo > r.hi)
		throw Error(ErrorCode::InvalidArgument, "empty range");
	return r;
}

namespace {

std::vector<std::size_t> finite_nodes_of(const Representation &rep)
{
	if (!rep.cartan.is_affine())
		throw Error(ErrorCode::UnsupportedType, "loop structure needs an affine type");
	const auto &order = rep.cartan.type().order;
	return {order.begin() + 1, order.end()};
}

} // namespace

std::vector<Derivation> finite_part_closure(const Representation &rep, std::size_t max_dim)
{
	const std::size_t r = rep.rank();
	std::vector<Derivation> gens;
	for (auto i : finite_nodes_of(rep))
	{
		gens.push_back(rep.x_plus[i]);
		gens.push_back(rep.x_minus[i]);
	}

	DerivationSpan span(r);
	std::vector<Derivation> basis;
	auto add = [&](const Derivation &d) {
		if (!span.insert(d))
			return;
		basis.push_back(d);
		if (basis.size() > max_dim)
			throw Error(ErrorCode::ClosureDiverged,
			            "generated algebra exceeds dimension " + std::to_string(max_dim));
	};
	for (auto &g : gens)
		add(g);
	// The span is closed once ad(generator) maps it into itself.
	for (std::size_t k = 0; k < basis.size(); ++k)
		for (auto &g : gens)
			add(bracket(g, basis[k]));
	return basis;
}

HighestRootVectors highest_root_vectors(const Representation &rep)
{
	auto nodes = finite_nodes_of(rep);
	const std::size_t r = rep.rank();
	HighestRootVectors v{rep.x_plus[nodes.back()], rep.x_minus[nodes.back()], Rational(1), Derivation(r)};
	for (std::size_t k = nodes.size() - 1; k-- > 0;)
	{
		v.plus = bracket(rep.x_plus[nodes[k]], v.plus);
		v.minus = bracket(rep.x_minus[nodes[k]], v.minus);
	}
	for (auto i : nodes)
		v.h_phi += rep.h_images[i];

	auto b = bracket(v.plus, v.minus);
	std::optional<Rational> lambda;
	for (std::size_t j = 0; j < r && !lambda; ++j)
		for (auto &[m, c] : b.coord(j).terms())
		{
			Rational target = v.h_phi.coord(j).coefficient(m);
			if (target == 0)
				throw Error(ErrorCode::NormalizationImpossible, "[X_phi, X_-phi] is not a multiple of H_phi");
			lambda = c / target;
			break;
		}
	if (!lambda || *lambda == 0 || b != *lambda * v.h_phi)
		throw Error(ErrorCode::NormalizationImpossible, "[X_phi, X_-phi] is not a nonzero multiple of H_phi");
	v.scale = Rational(1) / *lambda;
	v.minus *= v.scale;
	return v;
}

LaurentPoly extract_T(const Derivation &target, const Derivation &base)
{
	for (std::size_t k = 0; k < base.rank(); ++k)
	{
		if (!base.coord(k).is_unit())
			continue;
		LaurentPoly t = target.coord(k) * invert(base.coord(k));
		if (t * base != target)
			break;
		return t;
	}
	throw Error(ErrorCode::NotProportional, "field is not a Laurent multiple of the reference field");
}

bool LoopCertificate::passed() const
{
	for (auto &c : checks)
		if (!c.passed)
			return false;
	return !checks.empty();
}

LoopCertificate verify_loop_law(const Representation &rep, MRange range)
{
	const std::size_t r = rep.rank();
	const std::size_t affine = rep.cartan.affine_node().value_or(0);
	LoopCertificate cert;
	cert.finite_nodes = finite_nodes_of(rep);
	cert.sl_basis = finite_part_closure(rep, r * r - 1);
	cert.phi = highest_root_vectors(rep);
	cert.T = extract_T(rep.x_plus[affine], cert.phi.minus);
	cert.T_from_minus = extract_T(cert.phi.plus, rep.x_minus[affine]);

	auto check = [&](std::string label, bool ok) { cert.checks.push_back({std::move(label), ok}); };
	check("finite part has dimension " + std::to_string(r * r - 1), cert.sl_basis.size() == r * r - 1);
	check("T is a unit", cert.T.is_unit());
	check("F(X-0) = T^-1 X_phi", cert.T_from_minus == cert.T);
	check("F(H0) = -F(H_phi)", rep.h_images[affine] + cert.phi.h_phi == Derivation(r));
	if (rep.h_images.size() > r)
	{
		auto d0 = Derivation::basis(r, affine);
		d0 *= Rational(1) / Rational(static_cast<long>(rep.n[affine]));
		check("F(d) = D0/n0", rep.h_images[r] == d0);
		check("F(d)(T) = T", apply(rep.h_images[r], cert.T) == cert.T);
	}
	bool invariant = true;
	for (auto &s : cert.sl_basis)
		invariant = invariant && apply(s, cert.T).is_zero();
	check("finite part annihilates T", invariant);

	std::vector<LaurentPoly> powers;
	for (auto m = range.lo; m <= range.hi; ++m)
		powers.push_back(power(cert.T, m));
	std::vector<LaurentPoly> sum_powers;
	for (auto m = 2 * range.lo; m <= 2 * range.hi; ++m)
		sum_powers.push_back(power(cert.T, m));

	bool law = true;
	for (std::size_t a = 0; a < cert.sl_basis.size() && law; ++a)
		for (std::size_t b = 0; b < cert.sl_basis.size() && law; ++b)
		{
			const auto &A = cert.sl_basis[a];
			const auto &B = cert.sl_basis[b];
			const auto ab = bracket(A, B);
			for (std::size_t m = 0; m < powers.size() && law; ++m)
			{
				const auto tA = powers[m] * A;
				for (std::size_t n = 0; n < powers.size() && law; ++n)
					law = bracket(tA, powers[n] * B) == sum_powers[m + n] * ab;
			}
		}
	check("[T^m A, T^n B] = T^(m+n) [A, B] for m, n in [" + std::to_string(range.lo) + ", " +
	          std::to_string(range.hi) + "]",
	      law);
	return cert;
}

RestrictionReport finite_restriction_check(const Representation &rep)
{
	RestrictionReport report;
	const std::size_t r = rep.rank();
	const std::size_t affine = rep.cartan.affine_node().value_or(0);
	finite_nodes_of(rep);

	std::vector<std::size_t> keep;
	for (std::size_t i = 0; i < r; ++i)
		if (i != affine)
			keep.push_back(i);
	const std::size_t k = keep.size();
	IntMatrix sub_n(k, k);
	RationalMatrix sub_a(k, k);
	std::vector<std::int64_t> sub_index;
	for (std::size_t p = 0; p < k; ++p)
	{
		sub_index.push_back(rep.n[keep[p]]);
		for (std::size_t q = 0; q < k; ++q)
		{
			sub_n(p, q) = rep.cartan.gcm()(keep[p], keep[q]);
			sub_a(p, q) = rep.a(keep[p], keep[q]);
		}
	}

	auto sub_cd = build_cartan_data(validate_gcm(sub_n));
	std::optional<SolutionMatrix> sm;
	try
	{
		sm = validate_solution_matrix(sub_cd.gcm(), sub_a);
	}
	catch (const Error &e)
	{
		report.mismatches.push_back(std::string("principal submatrix is not a solution matrix: ") + e.what());
		return report;
	}
	auto finite = build_representation(sub_cd, *sm, sub_index);

	auto compare = [&](const std::string &name, const Derivation &full, const Derivation &expected) {
		auto restricted = drop_coordinate(full, affine);
		if (restricted != expected)
			report.mismatches.push_back(name + ": " + to_string(restricted) + " != " + to_string(expected));
	};
	for (std::size_t p = 0; p < k; ++p)
	{
		const auto label = std::to_string(keep[p] + 1);
		compare("H" + label, rep.h_images[keep[p]], finite.h_images[p]);
		compare("X" + label, rep.x_plus[keep[p]], finite.x_plus[p]);
		compare("X-" + label, rep.x_minus[keep[p]], finite.x_minus[p]);
	}
	return report;
}

nlohmann::ordered_json to_json(const LoopCertificate &cert)
{
	nlohmann::ordered_json j;
	auto nodes = nlohmann::ordered_json::array();
	for (auto i : cert.finite_nodes)
		nodes.push_back(i + 1);
	j["finite_nodes"] = nodes;
	j["finite_dimension"] = cert.sl_basis.size();
	j["T"] = to_string(cert.T);
	j["X_phi"] = to_string(cert.phi.plus);
	j["X_minus_phi"] = to_string(cert.phi.minus);
	j["normalization"] = to_string(cert.phi.scale);
	auto checks = nlohmann::ordered_json::array();
	for (auto &c : cert.checks)
		checks.push_back({{"check", c.label}, {"passed", c.passed}});
	j["checks"] = checks;
	j["passed"] = cert.passed();
	return j;
}

} // namespace kmvf
