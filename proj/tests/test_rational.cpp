#include "doctest.h"
#include "reebc/rational.hpp"

using namespace reebc;

TEST_CASE("decimal parsing is exact") {
  CHECK(*parse_number("0.1") == make_rat(1, 10));
  CHECK(*parse_number("-1.25") == make_rat(-5, 4));
  CHECK(*parse_number("3") == make_rat(3));
  CHECK(*parse_number("2e-2") == make_rat(1, 50));
  CHECK(*parse_number("1.5e3") == make_rat(1500));
  CHECK(*parse_number("11/21") == make_rat(11, 21));
  CHECK(*parse_number("-6/4") == make_rat(-3, 2));
  CHECK(!parse_number("abc"));
  CHECK(!parse_number(""));
  CHECK(!parse_number("1.2.3"));
  CHECK(!parse_number("1/0"));
}

TEST_CASE("number_string round-trips") {
  for (const Rat& v : {make_rat(1, 3), make_rat(-7, 20), make_rat(0), make_rat(123456789, 64),
                       rat_from_double(0.1)}) {
    auto s = number_string(v);
    auto back = parse_number(s);
    REQUIRE(back);
    CHECK(*back == v);
  }
  CHECK(number_string(make_rat(-5, 4)) == "-1.25");
  CHECK(number_string(make_rat(1, 3)) == "1/3");
}

TEST_CASE("double conversion is lossless") {
  double v = 0.1;
  CHECK(to_double(rat_from_double(v)) == v);
  CHECK(rat_from_double(0.5) == make_rat(1, 2));
}

TEST_CASE("canonicalization makes equal values identical") {
  Rat a = make_rat(2, 6), b = make_rat(1, 3);
  CHECK(a == b);
  CHECK(hash_rat(a) == hash_rat(b));
}
