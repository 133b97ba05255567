// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "reebc/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace reebc {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  Rat r;
  mpq_set_d(r.get_mpq_t(), v);
  return r;
}

double to_double(const Rat& v) { return mpq_get_d(v.get_mpq_t()); }

std::optional<Rat> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (num.empty() || den.empty()) return std::nullopt;
    mpz_class n, d;
    if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0) return std::nullopt;
    if (mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0) return std::nullopt;
    if (d == 0) return std::nullopt;
    return make_rat(n, d);
  }

  // [+-]digits[.digits][(e|E)[+-]digits]
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_len = 0, exponent = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac_len;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) return std::nullopt;
    long e = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      if (e > 100000) return std::nullopt;
    }
    exponent = eneg ? -e : e;
  }
  if (i != text.size()) return std::nullopt;

  mpz_class mant;
  if (digits.empty()) digits = "0";
  mpz_set_str(mant.get_mpz_t(), digits.c_str(), 10);
  if (neg) mant = -mant;
  long pow10 = exponent - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(pow10)));
  if (pow10 >= 0) return make_rat(mant * scale, mpz_class(1));
  return make_rat(mant, scale);
}

std::optional<std::string> exact_decimal(const Rat& v) {
  mpz_class den = v.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_even_p(den.get_mpz_t())) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  unsigned long k = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
  mpz_class scaled = v.get_num() * scale / v.get_den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  std::string out;
  if (k == 0) {
    out = s;
  } else {
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    out = s.substr(0, s.size() - k) + "." + s.substr(s.size() - k);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return (neg ? "-" : "") + out;
}

std::string number_string(const Rat& v) {
  if (auto d = exact_decimal(v)) return *d;
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string approx_decimal(const Rat& v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", to_double(v));
  return buf;
}

std::size_t hash_rat(const Rat& v) {
  auto hash_mpz = [](const mpz_class& z) {
    std::size_t h = z < 0 ? 0x12345 : 0x6789a;
    const mpz_srcptr p = z.get_mpz_t();
    std::size_t n = mpz_size(p);
    for (std::size_t i = 0; i < n; ++i) h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, i)));
    return h;
  };
  return hash_combine(hash_mpz(v.get_num()), hash_mpz(v.get_den()));
}

}  // namespace reebc
