// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace reebc {

// Exact rational scalar used throughout the range-plane geometry.
using Rat = mpq_class;

// Builds a canonical rational from integer numerator/denominator.
Rat make_rat(long num, long den = 1);
Rat make_rat(const mpz_class& num, const mpz_class& den);

// Lossless conversion of a finite double.
Rat rat_from_double(double v);

double to_double(const Rat& v);

// Parses a decimal literal ("-1.25", "3e-2") or a fraction ("11/21").
// Returns std::nullopt on malformed input.
std::optional<Rat> parse_number(std::string_view text);

// Shortest decimal string that is exactly the value, when the denominator
// is of the form 2^a*5^b; std::nullopt otherwise.
std::optional<std::string> exact_decimal(const Rat& v);

// "num/den" when no exact decimal exists, the decimal otherwise. Round-trips
// through parse_number.
std::string number_string(const Rat& v);

// 17-significant-digit decimal of the double approximation; deterministic.
std::string approx_decimal(const Rat& v);

std::size_t hash_rat(const Rat& v);

inline std::size_t hash_combine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace reebc
