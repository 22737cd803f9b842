#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kmvf {

// Coefficient field. Everything in the library is written against this alias;
// swapping in another exact field (e.g. Gaussian rationals) only needs the
// parse/print helpers below.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" with arbitrary-size integers.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational &q);

std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<std::int64_t> parse_integer_list(std::string_view text);

} // namespace kmvf
