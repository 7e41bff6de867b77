#include <catch2/catch_amalgamated.hpp>

#include "linsand/error.hpp"
#include "linsand/generators.hpp"

using namespace linsand;

namespace {
  Field const F2 = Field::make(2);
  Field const F3 = Field::make(3);

  Matrix mat(Field const& f, size_t m, size_t n, std::vector<Elem> e) {
    return Matrix(f, m, n, std::move(e));
  }

  Errc code_of(auto&& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.code();
    }
    return Errc::assertion_failure;
  }

  void check_report(SandwichContext const& ctx, GenSetReport const& rep, unsigned expect) {
    INFO(ctx.describe() << " " << rep.target.to_string());
    CHECK(rep.gens.size() == expect);
    CHECK(rep.formula_size == expect);
    CHECK(rep.certified);
    CHECK(rep.closure_size == rep.target_size);
    auto nec = necessity_check(ctx, rep);
    INFO((nec.failures.empty() ? "" : nec.failures.front()));
    CHECK(nec.ok);
  }
}  // namespace

TEST_CASE("closure", "[generators]") {
  auto ctx = SandwichContext::normalized(F2, 2, 2, 1);
  CHECK(closure(ctx, {}).empty());
  auto o = closure(ctx, {Matrix(F2, 2, 2)});
  REQUIRE(o.size() == 1);
  CHECK(o[0].is_zero());
  CHECK(closure(ctx, enumerate_matrices(F2, 2, 2, 2)).size() == 16);
  CHECK(code_of([&] { closure(ctx, enumerate_matrices(F2, 2, 2, 2), 8); })
        == Errc::budget_exceeded);
}

TEST_CASE("GL generators", "[generators]") {
  auto g31 = gl_genset(F3, 1);
  REQUIRE(g31.gens.size() == 1);
  CHECK(g31.gens[0] == mat(F3, 1, 1, {2}));
  auto g21 = gl_genset(F2, 1);
  REQUIRE(g21.gens.size() == 1);
  CHECK(g21.gens[0] == mat(F2, 1, 1, {1}));
  for (auto const& f : {F2, F3, Field::make(2, 2)}) {
    for (size_t s = 2; s <= (f.q() == 4 ? 2u : 3u); ++s) {
      auto g = gl_genset(f, s);
      INFO("q=" << f.q() << " s=" << s);
      CHECK(g.gens.size() == 2);
      CHECK(g.minimal);
      CHECK(BigInt(closure_ordinary(g.gens).size()) == gl_order(f.q(), s));
    }
  }
}

TEST_CASE("factorization step", "[generators]") {
  auto c = SandwichContext::normalized(F2, 2, 2, 1);
  auto [y, z] = ind_step_factor(c, Matrix(F2, 2, 2));
  CHECK(rank(y) == 2);
  CHECK(rank(z) == 1);
  CHECK(c.star_normalized(y, z).is_zero());

  auto d  = SandwichContext::normalized(F3, 2, 3, 1);
  auto x  = mat(F3, 2, 3, {1, 0, 0, 0, 0, 0});
  auto yz = ind_step_factor(d, x);
  CHECK(d.star_normalized(yz.first, yz.second) == x);

  CHECK(code_of([&] { ind_step_factor(d, mat(F3, 2, 3, {1, 0, 0, 0, 1, 0})); })
        == Errc::precondition_violation);
  CHECK(code_of([] {
          ind_step_factor(SandwichContext::normalized(F2, 2, 2, 2), Matrix(F2, 2, 2));
        }) == Errc::degenerate_case);

  // Every legal input, across shapes.
  for (size_t m = 1; m <= 3; ++m) {
    for (size_t n = 1; n <= 3; ++n) {
      for (size_t r = 0; r <= std::min(m, n); ++r) {
        if (r == m && m == n) {
          continue;
        }
        auto ctx = SandwichContext::normalized(F2, m, n, r);
        for_each_matrix(F2, m, n, [&](Matrix const& a) {
          auto s = rank(a);
          if (s < std::min(m, n) && s <= r) {
            auto [p, q] = ind_step_factor(ctx, a);
            REQUIRE(ctx.star_normalized(p, q) == a);
          }
        });
      }
    }
  }
}

TEST_CASE("idempotent generators of ideals of M_r", "[generators]") {
  for (auto const& f : {F2, F3}) {
    for (size_t r = 1; r <= 3; ++r) {
      for (size_t s = 0; s < r; ++s) {
        auto g = idempotent_generators(f, r, s);
        INFO("q=" << f.q() << " r=" << r << " s=" << s);
        CHECK(BigInt(g.size()) == q_binomial(f.q(), r, s));
        BigInt want = 0;
        for (size_t t = 0; t <= s; ++t) {
          want += mmn_dclass_counts(f.q(), r, r, t).size;
        }
        CHECK(BigInt(closure_ordinary(g).size()) == want);
        for (auto const& e : g) {
          CHECK(e * e == e);
          CHECK(rank(e) == s);
        }
      }
    }
  }
}

TEST_CASE("generating sets", "[generators]") {
  auto c221 = SandwichContext::normalized(F2, 2, 2, 1);
  check_report(c221, genset_full(c221), 6);
  check_report(c221, genset_reg(c221), 3);
  check_report(c221, genset_idem(c221), 3);
  CHECK(genset_idem(c221).target_size == 5);

  auto c232 = SandwichContext::normalized(F2, 2, 3, 2);
  auto full = genset_full(c232);
  check_report(c232, full, 7);
  CHECK(full.closure_size == 64);
  check_report(c232, genset_ideal(c232, 1), 6);
  check_report(c232, genset_ideal(c232, 0), 1);

  auto c322 = SandwichContext::normalized(F2, 3, 2, 2);
  check_report(c322, genset_full(c322), 7);

  auto c321 = SandwichContext::normalized(F2, 3, 2, 1);
  check_report(c321, genset_reg(c321), 5);
  check_report(c321, genset_idem(c321), 5);

  auto c3231 = SandwichContext::normalized(F3, 2, 3, 1);
  auto f3    = genset_full(c3231);
  CHECK(f3.certified);
  CHECK(f3.closure_size == 729);
  CHECK(BigInt(f3.gens.size()) == mmn_dclass_counts(3, 2, 3, 2).size);

  for (auto const& g : genset_idem(c232).gens) {
    CHECK(c232.star_normalized(g, g) == g);
  }
  for (auto const& g : genset_ideal(c232, 1).gens) {
    CHECK(c232.star_normalized(g, g) == g);
  }
}

TEST_CASE("unsupported parameters", "[generators]") {
  auto c = SandwichContext::normalized(F2, 2, 2, 2);
  CHECK(code_of([&] { genset_full(c); }) == Errc::unsupported_parameters);
  auto z = SandwichContext::normalized(F2, 2, 2, 0);
  CHECK(code_of([&] { genset_reg(z); }) == Errc::unsupported_parameters);
  CHECK(code_of([&] { genset_idem(z); }) == Errc::unsupported_parameters);
}

TEST_CASE("necessity", "[generators]") {
  auto c = SandwichContext::normalized(F2, 2, 2, 1);
  std::vector<Matrix> low;
  for_each_matrix(F2, 2, 2, [&](Matrix const& x) {
    if (rank(x) <= 1) {
      low.push_back(x);
    }
  });
  CHECK(closure(c, low).size() == 10);

  // A redundant generator is caught: O = A * A.
  GenSetReport bad;
  bad.target = RankTarget::parse("ideal:0");
  bad.gens   = {mat(F2, 2, 2, {0, 1, 0, 0}), Matrix(F2, 2, 2)};
  CHECK_FALSE(necessity_check(c, bad).ok);
}
