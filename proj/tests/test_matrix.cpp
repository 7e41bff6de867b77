#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "linsand/error.hpp"
#include "linsand/matrix.hpp"

using namespace linsand;

namespace {
  Field const F2 = Field::make(2);
  Field const F3 = Field::make(3);

  Matrix mat(Field const& f, size_t m, size_t n, std::vector<Elem> e) {
    return Matrix(f, m, n, std::move(e));
  }
}  // namespace

TEST_CASE("products", "[matrix]") {
  auto x = mat(F3, 2, 3, {1, 0, 0, 0, 0, 0});
  CHECK(Matrix::identity(F3, 2) * x == x);
  CHECK(x * Matrix::corner_identity(F3, 3, 2, 1) == mat(F3, 2, 2, {1, 0, 0, 0}));
  try {
    (void) (x * x);
    FAIL("expected DimensionMismatch");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
}

TEST_CASE("rref", "[matrix]") {
  auto z  = Matrix(F2, 2, 3);
  auto rz = rref(z);
  CHECK(rz.R == z);
  CHECK(rz.T == Matrix::identity(F2, 2));
  CHECK(rz.pivots.empty());

  auto r = rref(mat(F3, 2, 2, {2, 0, 0, 0}));
  CHECK(r.R == mat(F3, 2, 2, {1, 0, 0, 0}));
  CHECK(r.pivots == std::vector<size_t>{0});

  auto id = Matrix::identity(F3, 3);
  CHECK(rref(id).R == id);
  CHECK(rref(id).T == id);
  CHECK(rref(id).pivots == std::vector<size_t>{0, 1, 2});
}

TEST_CASE("rank", "[matrix]") {
  CHECK(rank(Matrix::corner_identity(F3, 3, 2, 2)) == 2);
  CHECK(rank(mat(F2, 2, 2, {1, 1, 1, 1})) == 1);
  CHECK(rank(Matrix(F2, 0, 3)) == 0);
}

TEST_CASE("subspace keys", "[matrix]") {
  auto x = mat(F2, 2, 2, {1, 0, 1, 0});
  auto y = mat(F2, 2, 2, {1, 0, 0, 0});
  CHECK(row_space_key(x) == row_space_key(y));
  CHECK(col_space_key(x) != col_space_key(y));
  CHECK(row_space_key(Matrix(F2, 2, 2)).dim() == 0);
  CHECK(row_space_key(Matrix(F2, 2, 2)).to_string() == "[]");
  CHECK(row_space_key(x.transpose()) == col_space_key(x));
  auto k = row_space_key(mat(F3, 2, 3, {0, 2, 1, 1, 1, 0}));
  CHECK(row_space_key(k.basis) == k);
  CHECK(contains(row_space_key(Matrix::identity(F3, 3)), k));
  CHECK_FALSE(contains(k, row_space_key(Matrix::identity(F3, 3))));
}

TEST_CASE("transpose", "[matrix]") {
  CHECK(Matrix::corner_identity(F3, 3, 2, 1).transpose() == Matrix::corner_identity(F3, 2, 3, 1));
  auto x = mat(F3, 2, 3, {0, 1, 2, 2, 1, 0});
  CHECK(x.transpose().transpose() == x);
}

TEST_CASE("inner inverses", "[matrix]") {
  CHECK(inner_inverse(Matrix::identity(F3, 3)) == Matrix::identity(F3, 3));
  CHECK(inner_inverse(Matrix::corner_identity(F3, 2, 3, 1)) == Matrix::corner_identity(F3, 3, 2, 1));
  auto x = mat(F2, 2, 2, {1, 1, 1, 1});
  auto g = inner_inverse(x);
  CHECK(x * g * x == x);
  CHECK(g * x * g == g);
  for_each_matrix(F3, 2, 3, [](Matrix const& a) {
    auto b = inner_inverse(a);
    REQUIRE(a * b * a == a);
    REQUIRE(b * a * b == b);
  });
}

TEST_CASE("rank normal form", "[matrix]") {
  auto j  = Matrix::corner_identity(F3, 3, 2, 1);
  auto nf = rank_normal_form(j);
  CHECK(nf.r == 1);
  CHECK(nf.U == Matrix::identity(F3, 3));
  CHECK(nf.V == Matrix::identity(F3, 2));

  auto z = rank_normal_form(Matrix(F2, 2, 3));
  CHECK(z.r == 0);
  CHECK(z.U == Matrix::identity(F2, 2));
  CHECK(z.V == Matrix::identity(F2, 3));

  auto a = mat(F2, 2, 2, {0, 1, 1, 0});
  auto w = rank_normal_form(a);
  CHECK(w.r == 2);
  CHECK(w.U * Matrix::corner_identity(F2, 2, 2, 2) * w.V == a);

  for_each_matrix(F2, 3, 2, [](Matrix const& x) {
    auto f = rank_normal_form(x);
    REQUIRE(is_invertible(f.U));
    REQUIRE(is_invertible(f.V));
    REQUIRE(f.U * Matrix::corner_identity(F2, 3, 2, f.r) * f.V == x);
  });
}

TEST_CASE("[M, A, N] blocks", "[matrix]") {
  CHECK(man_compose(Matrix(F3, 1, 1), Matrix::identity(F3, 1), Matrix(F3, 1, 2))
        == Matrix::corner_identity(F3, 2, 3, 1));
  CHECK(man_compose(mat(F2, 1, 1, {1}), mat(F2, 1, 1, {1}), mat(F2, 1, 1, {1}))
        == mat(F2, 2, 2, {1, 1, 1, 1}));
  auto a = mat(F2, 2, 2, {1, 1, 0, 1});
  auto n = mat(F2, 2, 1, {1, 1});
  CHECK(man_compose(Matrix(F2, 0, 2), a, n) == hcat(a, a * n));
}

TEST_CASE("lex-least solutions", "[matrix]") {
  // A N = B over GF(3) with A of rank 1: N is pinned only in its first row.
  auto a = mat(F3, 2, 2, {1, 0, 0, 0});
  auto b = mat(F3, 2, 1, {2, 0});
  auto n = solve_right(a, b);
  REQUIRE(n);
  CHECK(*n == mat(F3, 2, 1, {2, 0}));
  CHECK_FALSE(solve_right(a, mat(F3, 2, 1, {0, 1})));
  auto m = solve_left(a, mat(F3, 1, 2, {1, 0}));
  REQUIRE(m);
  CHECK(*m == mat(F3, 1, 2, {1, 0}));
}

TEST_CASE("enumeration", "[matrix]") {
  auto one = enumerate_matrices(F2, 1, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == mat(F2, 1, 1, {0}));
  CHECK(one[1] == mat(F2, 1, 1, {1}));
  CHECK(enumerate_matrices(F2, 2, 2, 2).size() == 6);
  CHECK(enumerate_matrices(F3, 2, 3).size() == 729);
  auto all = enumerate_matrices(F3, 2, 2);
  for (size_t i = 0; i < all.size(); ++i) {
    REQUIRE(all[i].encode() == i);
    REQUIRE(Matrix::decode(F3, 2, 2, i) == all[i]);
  }
  try {
    enumerate_matrices(F2, 3, 3, {}, 100);
    FAIL("expected BudgetExceeded");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
}

TEST_CASE("encoding digit order", "[matrix]") {
  // First entry is the most significant base-q digit.
  CHECK(mat(F3, 1, 2, {1, 0}).encode() == 3);
  CHECK(mat(F3, 1, 2, {0, 1}).encode() == 1);
}

TEST_CASE("text format", "[matrix]") {
  auto x = mat(F3, 2, 3, {0, 1, 2, 2, 1, 0});
  CHECK(to_text(x) == "2 3 3\n0 1 2\n2 1 0\n");
  CHECK(matrix_from_text(to_text(x)) == x);
  auto f4 = Field::make(2, 2);
  auto y  = mat(f4, 1, 2, {3, 2});
  CHECK(to_text(y) == "1 2 2^2\n3 2\n");
  CHECK(matrix_from_text(to_text(y)) == y);
  auto e = Matrix(F2, 0, 2);
  CHECK(to_text(e) == "0 2 2\n");
  CHECK(matrix_from_text("0 2 2\n") == e);
  std::vector<Matrix> xs{x, Matrix::identity(F3, 2)};
  CHECK(matrices_from_text(to_text(xs)) == xs);
  CHECK_THROWS_AS(matrix_from_text("2 2 2\n1 0\n"), Error);
  CHECK_THROWS_AS(matrix_from_text("1 2 2\n1 5\n"), Error);
}

TEST_CASE("Green's classes of M_mn by subspaces", "[matrix]") {
  // R_X = X G_n, L_X = G_m X, D_X = rank class, for q = 2.
  for (size_t m = 1; m <= 3; ++m) {
    for (size_t n = 1; n <= 2; ++n) {
      auto gm = enumerate_matrices(F2, m, m, m);
      auto gn = enumerate_matrices(F2, n, n, n);
      for_each_matrix(F2, m, n, [&](Matrix const& x) {
        std::set<std::uint64_t> xg, gx, byc, byr;
        for (auto const& g : gn) {
          xg.insert((x * g).encode());
        }
        for (auto const& g : gm) {
          gx.insert((g * x).encode());
        }
        for_each_matrix(F2, m, n, [&](Matrix const& y) {
          if (col_space_key(y) == col_space_key(x)) {
            byc.insert(y.encode());
          }
          if (row_space_key(y) == row_space_key(x)) {
            byr.insert(y.encode());
          }
        });
        REQUIRE(xg == byc);
        REQUIRE(gx == byr);
      });
    }
  }
}

TEST_CASE("subspace counts match the cell structure", "[matrix]") {
  std::set<std::string> cols, rows;
  for_each_matrix(F3, 2, 3, [&](Matrix const& x) {
    cols.insert(col_space_key(x).to_string());
    rows.insert(row_space_key(x).to_string());
  }, 1);
  CHECK(cols.size() == 4);
  CHECK(rows.size() == 13);
}
