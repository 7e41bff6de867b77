#include <catch2/catch_amalgamated.hpp>

#include "linsand/error.hpp"
#include "linsand/field.hpp"

using namespace linsand;

namespace {
  Errc code_of(auto&& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no exception");
    return Errc::assertion_failure;
  }
}  // namespace

TEST_CASE("prime fields", "[field]") {
  auto f2 = Field::make(2);
  CHECK(f2.q() == 2);
  CHECK(f2.inv(1) == 1);
  CHECK(f2.elements() == std::vector<Elem>{0, 1});

  auto f3 = Field::make(3);
  CHECK(f3.add(2, 2) == 1);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f3.neg(1) == 2);
  CHECK(f3.elements() == std::vector<Elem>{0, 1, 2});
}

TEST_CASE("GF(4) uses x^2 + x + 1", "[field]") {
  auto f4 = Field::make(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});
  CHECK(f4.mul(2, 2) == 3);  // x * x = x + 1
  CHECK(f4.elements() == std::vector<Elem>{0, 1, 2, 3});
  CHECK(f4.literal() == "2^2");
}

TEST_CASE("default moduli are least by encoding", "[field]") {
  CHECK(default_modulus(2, 3) == std::vector<unsigned>{1, 1, 0, 1});
  CHECK(default_modulus(3, 2) == std::vector<unsigned>{1, 0, 1});
}

TEST_CASE("construction errors", "[field]") {
  CHECK(code_of([] { Field::make(4); }) == Errc::non_prime_characteristic);
  CHECK(code_of([] { Field::make(2, 2, std::vector<unsigned>{1, 0, 1}); })
        == Errc::reducible_modulus);
  CHECK(code_of([] { Field::make(2).inv(0); }) == Errc::divide_by_zero);
  CHECK(code_of([] { is_irreducible(2, {1, 1, 0}); }) == Errc::non_monic);
}

TEST_CASE("irreducibility", "[field]") {
  CHECK(is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(is_irreducible(3, {0, 1}));
  CHECK(is_irreducible(2, {1, 1, 0, 1}));
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));  // x^2 - 1
}

TEST_CASE("literals", "[field]") {
  CHECK(Field::parse("3").q() == 3);
  CHECK(Field::parse("2^2") == Field::make(2, 2));
  CHECK(Field::parse("4") == Field::make(2, 2));
  CHECK(Field::parse("9").p() == 3);
  auto pinned = Field::parse("2^3/1,0,1,1");
  CHECK(pinned.modulus() == std::vector<unsigned>{1, 0, 1, 1});
  CHECK(pinned.literal() == "2^3/1,0,1,1");
  CHECK(Field::parse(pinned.literal()) == pinned);
  CHECK(code_of([] { Field::parse("6"); }) == Errc::non_prime_characteristic);
  CHECK(code_of([] { Field::parse("x"); }) == Errc::parse_error);
}

TEST_CASE("field axioms for q <= 9", "[field]") {
  for (auto lit : {"2", "3", "4", "5", "7", "8", "9", "2^3/1,0,1,1"}) {
    auto f = Field::parse(lit);
    auto q = f.q();
    INFO("GF(" << lit << ")");
    for (unsigned a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.pow(a, q) == a);
      if (a) {
        CHECK(f.mul(a, f.inv(a)) == 1);
      }
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (unsigned c = 0; c < q; ++c) {
          REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field isomorphisms across moduli", "[field]") {
  auto a   = Field::make(2, 3);
  auto b   = Field::parse("2^3/1,0,1,1");
  auto map = field_isomorphism(a, b);
  REQUIRE(map);
  for (unsigned x = 0; x < 8; ++x) {
    for (unsigned y = 0; y < 8; ++y) {
      CHECK((*map)[a.mul(x, y)] == b.mul((*map)[x], (*map)[y]));
      CHECK((*map)[a.add(x, y)] == b.add((*map)[x], (*map)[y]));
    }
  }
  CHECK_FALSE(field_isomorphism(Field::make(2), Field::make(3)));
}
