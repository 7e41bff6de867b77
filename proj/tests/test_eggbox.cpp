#include <catch2/catch_amalgamated.hpp>

#include "linsand/eggbox.hpp"
#include "linsand/error.hpp"

using namespace linsand;

namespace {
  Field const F2 = Field::make(2);
  Field const F3 = Field::make(3);
}  // namespace

TEST_CASE("scopes parse", "[eggbox]") {
  CHECK(EggboxScope::parse("all").kind == EggboxScope::Kind::all);
  CHECK(EggboxScope::parse("reg").kind == EggboxScope::Kind::reg);
  CHECK(EggboxScope::parse("dclass:2").s == 2);
  CHECK(EggboxScope::parse("mdclass:1").kind == EggboxScope::Kind::mdclass);
  CHECK_THROWS_AS(EggboxScope::parse("dclass"), Error);
  CHECK_THROWS_AS(EggboxScope::parse("reg:1"), Error);
  CHECK_THROWS_AS(EggboxScope::parse("mdclass:x"), Error);
}

TEST_CASE("ordinary D-class of rank 1 in M_23(GF(3))", "[eggbox]") {
  auto ctx = SandwichContext::normalized(F3, 2, 3, 1);
  auto rep = eggbox(ctx, EggboxScope::parse("mdclass:1"));
  REQUIRE(rep.dclasses.size() == 1);
  auto const& d = rep.dclasses[0];
  CHECK(d.row_keys.size() == 4);
  CHECK(d.col_keys.size() == 13);
  CHECK(d.cells.size() == 52);
  CHECK(d.h_size == 2);
  CHECK(d.size == 104);
  auto csv = to_csv(rep);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 53);
  CHECK(csv.rfind("s,rKey,lKey,size,isGroup,nIdempotents\n", 0) == 0);
}

TEST_CASE("regular D-classes", "[eggbox]") {
  auto ctx = SandwichContext::normalized(F3, 2, 3, 1);
  auto rep = eggbox(ctx, EggboxScope::parse("reg"));
  REQUIRE(rep.dclasses.size() == 2);
  CHECK(rep.dclasses[0].size == 1);
  CHECK(rep.dclasses[0].cells.size() == 1);
  auto const& d = rep.dclasses[1];
  CHECK(d.row_keys.size() == 3);
  CHECK(d.col_keys.size() == 9);
  CHECK(d.h_size == 2);
  CHECK(d.size == 54);
  CHECK(d.regular);
  CHECK(rep.order == std::vector<std::pair<size_t, size_t>>{{0, 1}});
  // Top class is a rectangular group: every cell is a group.
  for (auto const& c : d.cells) {
    CHECK(c.is_group);
    CHECK(c.idempotents == 1);
  }
}

TEST_CASE("regular classes form a chain", "[eggbox]") {
  auto rep = eggbox(SandwichContext::normalized(F2, 3, 3, 2), EggboxScope::parse("reg"));
  REQUIRE(rep.dclasses.size() == 3);
  CHECK(rep.order == std::vector<std::pair<size_t, size_t>>{{0, 1}, {1, 2}});
  auto dot = to_dot(rep);
  CHECK(dot.find("d1 -> d0;") != std::string::npos);
  CHECK(dot.find("d2 -> d1;") != std::string::npos);
  CHECK(dot.find("cluster_2") != std::string::npos);
}

TEST_CASE("all classes", "[eggbox]") {
  auto ctx = SandwichContext::normalized(F2, 2, 2, 1);
  auto rep = eggbox(ctx, EggboxScope::parse("all"));
  std::uint64_t total = 0;
  for (auto const& d : rep.dclasses) {
    total += d.size;
  }
  CHECK(total == 16);
  // O, D_1 (4), and 11 non-regular classes.
  size_t regular = 0;
  for (auto const& d : rep.dclasses) {
    regular += d.regular;
  }
  CHECK(regular == 2);
  // The 6 invertible matrices are maximal: no edge leaves them upwards.
  for (auto const& [lo, hi] : rep.order) {
    CHECK(rep.dclasses[lo].s <= rep.dclasses[hi].s);
  }
}

TEST_CASE("zero semigroup", "[eggbox]") {
  auto rep = eggbox(SandwichContext::normalized(F2, 2, 2, 0), EggboxScope::parse("reg"));
  REQUIRE(rep.dclasses.size() == 1);
  CHECK(rep.dclasses[0].cells.size() == 1);
  CHECK(rep.order.empty());
  auto dot = to_dot(rep);
  CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("serialization is stable", "[eggbox]") {
  auto ctx = SandwichContext::normalized(F2, 2, 3, 1);
  auto a   = eggbox(ctx, EggboxScope::parse("all"));
  auto b   = eggbox(ctx, EggboxScope::parse("all"));
  CHECK(to_json(a) == to_json(b));
  CHECK(to_dot(a) == to_dot(b));
  CHECK(to_csv(a) == to_csv(b));
  auto js = to_json(eggbox(SandwichContext::normalized(F2, 2, 2, 1), EggboxScope::parse("reg")));
  CHECK(js.find("\"nR\": 2") != std::string::npos);
  CHECK(js.find("\"order\"") != std::string::npos);
}
