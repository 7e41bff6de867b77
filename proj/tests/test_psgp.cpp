#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "linsand/error.hpp"
#include "linsand/psgp.hpp"

using namespace linsand;

namespace {
  Field const F2 = Field::make(2);
  Field const F3 = Field::make(3);

  size_t code(Matrix const& x) {
    return x.encode();
  }
}  // namespace

TEST_CASE("identity sandwich reproduces the local semigroup", "[psgp]") {
  MatrixPartialSemigroup s(F2, {2});
  auto                   e = s.identity(0);
  REQUIRE(e);
  auto a = build_sandwich(s, 0, 0, *e);
  auto b = local_semigroup(s, 0);
  CHECK(a.prod == b.prod);
}

TEST_CASE("zero sandwich gives a zero semigroup", "[psgp]") {
  MatrixPartialSemigroup s(F2, {2, 2});
  auto                   t = build_sandwich(s, 0, 1, 0);
  REQUIRE(t.n == 16);
  for (auto p : t.prod) {
    REQUIRE(p == 0);
  }
  auto g = brute_green(t);
  CHECK(num_classes(g.D) == 16);
  for (size_t x = 0; x < 16; ++x) {
    CHECK(g.regular[x] == (x == 0));
  }
}

TEST_CASE("J-sandwich table agrees with direct products", "[psgp]") {
  MatrixPartialSemigroup s(F2, {2, 2});
  auto                   j = Matrix::corner_identity(F2, 2, 2, 1);
  auto                   t = build_sandwich(s, 0, 1, code(j));
  for (size_t x = 0; x < 16; ++x) {
    for (size_t y = 0; y < 16; ++y) {
      auto X = Matrix::decode(F2, 2, 2, x), Y = Matrix::decode(F2, 2, 2, y);
      REQUIRE(t(x, y) == code(X * j * Y));
    }
  }
  CHECK_FALSE(find_nonassociative(t));
}

TEST_CASE("bad sandwich element", "[psgp]") {
  MatrixPartialSemigroup s(F2, {2, 3});
  try {
    build_sandwich(s, 0, 1, 1u << 10);
    FAIL("accepted");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::bad_sandwich_element);
  }
}

TEST_CASE("brute Green's data", "[psgp]") {
  SECTION("cyclic group") {
    SemigroupTable t{3, {0, 1, 2, 1, 2, 0, 2, 0, 1}};
    auto           g = brute_green(t);
    CHECK(num_classes(g.H) == 1);
    CHECK(num_classes(g.D) == 1);
    CHECK(num_classes(g.J) == 1);
    CHECK(std::all_of(g.regular.begin(), g.regular.end(), [](bool b) { return b; }));
  }
  SECTION("M_2(GF(2))") {
    MatrixPartialSemigroup s(F2, {2});
    auto                   g = brute_green(local_semigroup(s, 0));
    CHECK(num_classes(g.D) == 3);
    std::map<std::uint32_t, size_t> sizes;
    for (auto d : g.D) {
      ++sizes[d];
    }
    std::multiset<size_t> got;
    for (auto const& [k, v] : sizes) {
      got.insert(v);
    }
    CHECK(got == std::multiset<size_t>{1, 6, 9});
    CHECK(canonical_partition(g.D) == canonical_partition(g.J));
  }
  SECTION("budget") {
    MatrixPartialSemigroup s(F2, {3, 2});
    auto                   t = build_sandwich(s, 0, 1, 0, 64);
    CHECK_THROWS_AS(brute_green(t, 32), Error);
  }
}

TEST_CASE("table partial semigroups", "[psgp]") {
  // Two objects: e (0->0), f (1->1), x (0->1); e x = x, x f = x.
  auto t = TablePartialSemigroup::parse(
      "3\n"
      "0 -1 2\n"
      "-1 1 -1\n"
      "-1 2 -1\n");
  CHECK(t.num_objects() == 2);
  CHECK(t.identity(0).has_value());
  CHECK(t.identity(1).has_value());
  CHECK_THROWS_AS(TablePartialSemigroup::parse("2\n0 1\n"), Error);
  // Non-associative: x * x = y, y * x = x, x * y = y.
  CHECK_THROWS_AS(TablePartialSemigroup::parse("2\n1 1\n0 1\n"), Error);
}

TEST_CASE("sandwich Green's theorem on matrices", "[psgp]") {
  SECTION("GF(2), 2x2, rank 1") {
    MatrixPartialSemigroup s(F2, {2, 2});
    auto rep = verify_green_sij(s, 0, 1, code(Matrix::corner_identity(F2, 2, 2, 1)));
    INFO((rep.failures.empty() ? "" : rep.failures.front()));
    CHECK(rep.ok);
  }
  SECTION("identity sandwich") {
    MatrixPartialSemigroup s(F2, {2});
    auto                   rep = verify_green_sij(s, 0, 0, *s.identity(0));
    CHECK(rep.ok);
  }
  SECTION("GF(3), 2x3, rank 1") {
    MatrixPartialSemigroup s(F3, {2, 3});
    auto rep = verify_green_sij(s, 0, 1, code(Matrix::corner_identity(F3, 3, 2, 1)));
    INFO((rep.failures.empty() ? "" : rep.failures.front()));
    CHECK(rep.ok);
  }
}

TEST_CASE("corner monoids", "[psgp]") {
  MatrixPartialSemigroup s(F2, {2, 3});
  for (size_t r = 0; r <= 2; ++r) {
    auto a = Matrix::corner_identity(F2, 3, 2, r);
    auto b = inner_inverse(a);
    auto rep = verify_corner_laws(s, 0, 1, code(a), code(b));
    INFO((rep.failures.empty() ? "" : rep.failures.front()));
    CHECK(rep.ok);
  }
  auto a   = Matrix(F2, 3, 2, {1, 1, 0, 1, 1, 0});
  auto rep = verify_corner_laws(s, 0, 1, code(a), code(inner_inverse(a)));
  CHECK(rep.ok);
}
