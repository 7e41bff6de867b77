#include "linsand/sandwich.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    std::string codes(Matrix const& x) {
      return to_compact_string(x);
    }

    void require_shape(SandwichContext const& ctx, Matrix const& x) {
      if (x.rows() != ctx.m() || x.cols() != ctx.n() || x.field() != ctx.field()) {
        fail(Errc::dimension_mismatch,
             "expected a " + std::to_string(ctx.m()) + "x" + std::to_string(ctx.n())
                 + " matrix over GF(" + ctx.field().literal() + ")");
      }
    }

    std::vector<Matrix> sorted_unique(std::vector<Matrix> xs) {
      std::vector<std::pair<std::uint64_t, size_t>> order;
      order.reserve(xs.size());
      for (size_t i = 0; i < xs.size(); ++i) {
        order.emplace_back(xs[i].encode(), i);
      }
      std::sort(order.begin(), order.end());
      std::vector<Matrix> out;
      for (size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || order[i].first != order[i - 1].first) {
          out.push_back(xs[order[i].second]);
        }
      }
      return out;
    }

    std::uint64_t checked_product(std::initializer_list<std::uint64_t> fs,
                                  std::uint64_t                        budget,
                                  char const*                          what) {
      std::uint64_t p = 1;
      for (auto f : fs) {
        if (f != 0 && p > budget / f) {
          fail(Errc::budget_exceeded,
               std::string(what) + " exceeds budget " + std::to_string(budget));
        }
        p *= f;
      }
      return p;
    }

    // [M, A, N] over all M, N and the given middle blocks.
    std::vector<Matrix> all_triples(SandwichContext const&     ctx,
                                    std::vector<Matrix> const& middles,
                                    std::uint64_t              budget) {
      Field const& f = ctx.field();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      checked_product({matrix_count(f.q(), m - r, r), middles.size(),
                       matrix_count(f.q(), r, n - r)},
                      budget,
                      "parametric enumeration");
      auto const          Ms = enumerate_matrices(f, m - r, r, {}, budget);
      auto const          Ns = enumerate_matrices(f, r, n - r, {}, budget);
      std::vector<Matrix> out;
      out.reserve(Ms.size() * middles.size() * Ns.size());
      for (auto const& M : Ms) {
        for (auto const& A : middles) {
          for (auto const& N : Ns) {
            out.push_back(man_compose(M, A, N));
          }
        }
      }
      return sorted_unique(std::move(out));
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // SandwichContext
  ////////////////////////////////////////////////////////////////////////

  SandwichContext::SandwichContext(Field  f,
                                   size_t m,
                                   size_t n,
                                   Matrix a,
                                   Matrix u,
                                   Matrix v,
                                   size_t r)
      : _field(std::move(f)),
        _m(m),
        _n(n),
        _a(std::move(a)),
        _u(std::move(u)),
        _v(std::move(v)),
        _uinv(*inverse(_u)),
        _vinv(*inverse(_v)),
        _r(r),
        _normalized(_a == Matrix::corner_identity(_field, n, m, r)) {}

  SandwichContext SandwichContext::make(Field const& f, size_t m, size_t n, Matrix const& a) {
    if (m == 0 || n == 0) {
      fail(Errc::dimension_mismatch, "m and n must be at least 1");
    }
    if (a.rows() != n || a.cols() != m) {
      fail(Errc::dimension_mismatch,
           "sandwich matrix must be " + std::to_string(n) + "x" + std::to_string(m));
    }
    if (a.field() != f) {
      fail(Errc::dimension_mismatch, "sandwich matrix is over a different field");
    }
    auto nf = rank_normal_form(a);
    return SandwichContext(f, m, n, a, std::move(nf.U), std::move(nf.V), nf.r);
  }

  SandwichContext SandwichContext::normalized(Field const& f, size_t m, size_t n, size_t r) {
    if (m == 0 || n == 0) {
      fail(Errc::dimension_mismatch, "m and n must be at least 1");
    }
    if (r > std::min(m, n)) {
      fail(Errc::dimension_mismatch, "rank exceeds min(m, n)");
    }
    return SandwichContext(f, m, n, Matrix::corner_identity(f, n, m, r),
                           Matrix::identity(f, n), Matrix::identity(f, m), r);
  }

  Matrix SandwichContext::J() const {
    return Matrix::corner_identity(_field, _n, _m, _r);
  }

  Matrix SandwichContext::to_normalized(Matrix const& x) const {
    require_shape(*this, x);
    return _normalized && _u == Matrix::identity(_field, _n)
                   && _v == Matrix::identity(_field, _m)
               ? x
               : _v * x * _u;
  }

  Matrix SandwichContext::from_normalized(Matrix const& x) const {
    require_shape(*this, x);
    return _vinv * x * _uinv;
  }

  Matrix SandwichContext::star(Matrix const& x, Matrix const& y) const {
    require_shape(*this, x);
    require_shape(*this, y);
    return x * _a * y;
  }

  Matrix SandwichContext::star_normalized(Matrix const& x, Matrix const& y) const {
    std::vector<Elem> out(_m * _n, 0);
    auto const&       a = x.entries();
    auto const&       b = y.entries();
    for (size_t i = 0; i < _m; ++i) {
      for (size_t k = 0; k < _r; ++k) {
        Elem const c = a[i * _n + k];
        if (c == 0) {
          continue;
        }
        Elem const* mc = _field.mul_row(c);
        for (size_t j = 0; j < _n; ++j) {
          out[i * _n + j] = _field.add(out[i * _n + j], mc[b[k * _n + j]]);
        }
      }
    }
    return Matrix(_field, _m, _n, std::move(out));
  }

  std::string SandwichContext::describe() const {
    return "q=" + _field.literal() + ",m=" + std::to_string(_m) + ",n="
           + std::to_string(_n) + ",r=" + std::to_string(_r);
  }

  ////////////////////////////////////////////////////////////////////////
  // Regularity and Green's classes
  ////////////////////////////////////////////////////////////////////////

  RegFlags reg_membership(SandwichContext const& ctx, Matrix const& x) {
    require_shape(ctx, x);
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    size_t const s = rank(x);
    RegFlags     f;
    f.in_P1 = rank(x.block(0, 0, m, r)) == s;  // rank(XJ)
    f.in_P2 = rank(x.block(0, 0, r, n)) == s;  // rank(JX)
    f.in_P3 = rank(x.block(0, 0, r, r)) == s;  // rank(JXJ)
    f.in_P  = f.in_P1 && f.in_P2;
    return f;
  }

  char const* relation_name(Relation rel) noexcept {
    switch (rel) {
      case Relation::R:
        return "R";
      case Relation::L:
        return "L";
      case Relation::H:
        return "H";
      case Relation::D:
        return "D";
      case Relation::J:
        return "J";
    }
    return "?";
  }

  bool GreenKey::operator==(GreenKey const& that) const {
    return kind == that.kind && shape == that.shape && rank == that.rank
           && col == that.col && row == that.row && element == that.element;
  }

  bool GreenKey::operator<(GreenKey const& that) const {
    auto enc = [](std::optional<Matrix> const& e) {
      return e ? e->encode() : std::uint64_t(0);
    };
    return std::make_tuple(kind, shape, rank, col, row, enc(element))
           < std::make_tuple(that.kind, that.shape, that.rank, that.col, that.row,
                             enc(that.element));
  }

  std::string GreenKey::to_string() const {
    std::string s = relation_name(kind);
    switch (shape) {
      case Shape::rank:
        return s + ":rank" + std::to_string(rank);
      case Shape::col:
        return s + ":col" + col->to_string();
      case Shape::row:
        return s + ":row" + row->to_string();
      case Shape::col_row:
        return s + ":col" + col->to_string() + "row" + row->to_string();
      case Shape::singleton:
        return s + ":X#" + std::to_string(element->encode());
    }
    return s;
  }

  GreenKey green_key(SandwichContext const& ctx, Matrix const& x, Relation rel) {
    RegFlags const f = reg_membership(ctx, x);
    if (f.in_P3 != f.in_P) {
      fail(Errc::assertion_failure, "P3 != P at " + codes(x));
    }
    GreenKey k;
    k.kind = rel;
    k.rank = rank(x);
    auto single = [&] {
      k.shape   = GreenKey::Shape::singleton;
      k.element = x;
      return k;
    };
    auto by_col = [&] {
      k.shape = GreenKey::Shape::col;
      k.col   = col_space_key(x);
      return k;
    };
    auto by_row = [&] {
      k.shape = GreenKey::Shape::row;
      k.row   = row_space_key(x);
      return k;
    };
    switch (rel) {
      case Relation::R:
        return f.in_P1 ? by_col() : single();
      case Relation::L:
        return f.in_P2 ? by_row() : single();
      case Relation::H:
        if (!f.in_P) {
          return single();
        }
        k.shape = GreenKey::Shape::col_row;
        k.col   = col_space_key(x);
        k.row   = row_space_key(x);
        return k;
      case Relation::D:
      case Relation::J:
        if (f.in_P) {
          k.shape = GreenKey::Shape::rank;
          return k;
        }
        if (f.in_P2) {
          return by_row();
        }
        if (f.in_P1) {
          return by_col();
        }
        return single();
    }
    return single();
  }

  bool dclass_leq(SandwichContext const& ctx, Matrix const& x, Matrix const& y) {
    require_shape(ctx, x);
    require_shape(ctx, y);
    if (x == y) {
      return true;
    }
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    size_t const rx = rank(x);
    if (rx <= rank(y.block(0, 0, r, r))) {
      return true;
    }
    // Row(JY) is the row space of the top r rows of Y; Col(YJ) the column
    // space of its first r columns.
    if (contains(row_space_key(y.block(0, 0, r, n)), row_space_key(x))) {
      return true;
    }
    return contains(col_space_key(y.block(0, 0, m, r)), col_space_key(x));
  }

  MaximalClasses maximal_dclasses(SandwichContext const& ctx) {
    size_t const   m = ctx.m(), n = ctx.n(), r = ctx.r(), l = std::min(m, n);
    MaximalClasses mc;
    if (r == l) {
      mc.unique_top  = true;
      mc.rank        = r;
      mc.class_size  = sandwich_counts(ctx.q(), m, n, r, r).dSize;
      mc.class_count = 1;
      mc.description = "unique maximal class D_" + std::to_string(r)
                       + "^J = {X in P : rank X = " + std::to_string(r)
                       + "}, a subsemigroup";
      return mc;
    }
    mc.rank        = r + 1;
    mc.class_count = 0;
    for (size_t s = r + 1; s <= l; ++s) {
      mc.class_count += mmn_dclass_counts(ctx.q(), m, n, s).size;
    }
    mc.class_size  = 1;
    mc.description = "singletons {X} with rank X > " + std::to_string(r);
    if (r == 0) {
      mc.description += " (zero semigroup)";
    }
    return mc;
  }

  ////////////////////////////////////////////////////////////////////////
  // [M, A, N] and the maps phi, psi
  ////////////////////////////////////////////////////////////////////////

  RegTriple man_decompose(SandwichContext const& ctx, Matrix const& x) {
    if (!reg_membership(ctx, x).in_P) {
      fail(Errc::not_regular, codes(x) + " is not in P");
    }
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    Matrix       A = x.block(0, 0, r, r);
    auto         M = solve_left(A, x.block(r, 0, m - r, r));
    auto         N = solve_right(A, x.block(0, r, r, n - r));
    if (!M || !N) {
      fail(Errc::assertion_failure, "regular element without [M,A,N] form: " + codes(x));
    }
    RegTriple t{std::move(*M), std::move(A), std::move(*N)};
    if (linsand::man_compose(t.M, t.A, t.N) != x) {
      fail(Errc::assertion_failure, "[M,A,N] does not reproduce " + codes(x));
    }
    return t;
  }

  Matrix man_compose(SandwichContext const& ctx, RegTriple const& t) {
    Matrix x = linsand::man_compose(t.M, t.A, t.N);
    require_shape(ctx, x);
    return x;
  }

  Matrix phi_project(SandwichContext const& ctx, Matrix const& x) {
    if (!reg_membership(ctx, x).in_P) {
      fail(Errc::not_regular, codes(x) + " is not in P");
    }
    return x.block(0, 0, ctx.r(), ctx.r());
  }

  CornerImages corner_images(SandwichContext const& ctx, Matrix const& x) {
    require_shape(ctx, x);
    Matrix const J = ctx.J();
    CornerImages c{x * J, J * x, J * x * J, true, true, false, false};
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    c.XJ_in_C    = c.XJ.block(0, r, m, m - r).is_zero();
    c.JX_in_R    = c.JX.block(r, 0, n - r, n).is_zero();
    c.XJ_regular = rank(J * c.XJ) == rank(c.XJ);
    c.JX_regular = rank(c.JX * J) == rank(c.JX);
    return c;
  }

  std::pair<Matrix, Matrix> psi_embed(SandwichContext const& ctx, Matrix const& x) {
    if (!reg_membership(ctx, x).in_P) {
      fail(Errc::not_regular, codes(x) + " is not in P");
    }
    Matrix const J = ctx.J();
    return {x * J, J * x};
  }

  Matrix psi_reconstruct(SandwichContext const& ctx, Matrix const& y, Matrix const& z) {
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    if (y.rows() != m || y.cols() != m || z.rows() != n || z.cols() != n) {
      fail(Errc::not_in_image, "pair has the wrong shape");
    }
    Matrix const J = ctx.J();
    if (!y.block(0, r, m, m - r).is_zero() || !z.block(r, 0, n - r, n).is_zero()) {
      fail(Errc::not_in_image, "pair is not in C_m(r) x R_n(r)");
    }
    if (rank(J * y) != rank(y) || rank(z * J) != rank(z)) {
      fail(Errc::not_in_image, "pair is not in PJ x JP");
    }
    if (J * y != z * J) {
      fail(Errc::not_in_image, "JY != ZJ");
    }
    Matrix const A = y.block(0, 0, r, r);
    Matrix const C = y.block(r, 0, m - r, r);
    Matrix const B = z.block(0, r, r, n - r);
    auto const   N = solve_right(A, B);
    if (!N) {
      fail(Errc::not_in_image, "AN = B has no solution");
    }
    Matrix const x = vcat(hcat(A, B), hcat(C, C * *N));
    if (!reg_membership(ctx, x).in_P || psi_embed(ctx, x) != std::make_pair(y, z)) {
      fail(Errc::not_in_image, "reconstruction does not map back to the pair");
    }
    return x;
  }

  std::vector<Matrix> regular_elements(SandwichContext const& ctx,
                                       std::optional<size_t>  s,
                                       std::uint64_t          budget) {
    return all_triples(ctx, enumerate_matrices(ctx.field(), ctx.r(), ctx.r(), s, budget), budget);
  }

  std::vector<Matrix> idempotents(SandwichContext const& ctx,
                                  std::optional<size_t>  s,
                                  std::uint64_t          budget) {
    std::vector<Matrix> es;
    for_each_matrix(
        ctx.field(),
        ctx.r(),
        ctx.r(),
        [&es](Matrix const& a) {
          if (a * a == a) {
            es.push_back(a);
          }
        },
        s,
        budget);
    return all_triples(ctx, es, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruence on U and the pullback
  ////////////////////////////////////////////////////////////////////////

  CongruenceReport man_congruence_check(SandwichContext const& ctx, std::uint64_t budget) {
    CongruenceReport rep;
    Field const&     f = ctx.field();
    size_t const     m = ctx.m(), n = ctx.n(), r = ctx.r();
    auto const       Ms = enumerate_matrices(f, m - r, r, {}, budget);
    auto const       As = enumerate_matrices(f, r, r, {}, budget);
    auto const       Ns = enumerate_matrices(f, r, n - r, {}, budget);
    size_t const     nM = Ms.size(), nA = As.size(), nN = Ns.size();
    rep.u_size = checked_product({nM, nA, nN}, default_brute_budget, "|U|");
    auto id    = [&](size_t iM, size_t iA, size_t iN) { return (iM * nA + iA) * nN + iN; };

    std::vector<Matrix>        xi;
    std::vector<std::uint64_t> xi_code;
    // The relation ~ is the kernel of (M, A, N) -> (A, MA, AN).
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> key;
    for (size_t iM = 0; iM < nM; ++iM) {
      for (size_t iA = 0; iA < nA; ++iA) {
        for (size_t iN = 0; iN < nN; ++iN) {
          xi.push_back(linsand::man_compose(Ms[iM], As[iA], Ns[iN]));
          xi_code.push_back(xi.back().encode());
          key.emplace_back(As[iA].encode(), (Ms[iM] * As[iA]).encode(),
                           (As[iA] * Ns[iN]).encode());
        }
      }
    }
    std::vector<std::vector<size_t>> ab(nA, std::vector<size_t>(nA));
    for (size_t a = 0; a < nA; ++a) {
      for (size_t b = 0; b < nA; ++b) {
        ab[a][b] = (As[a] * As[b]).encode();
      }
    }
    // Homomorphism law.
    for (size_t iM = 0; iM < nM; ++iM) {
      for (size_t iA = 0; iA < nA; ++iA) {
        for (size_t iN = 0; iN < nN; ++iN) {
          size_t const u = id(iM, iA, iN);
          for (size_t jM = 0; jM < nM; ++jM) {
            for (size_t jA = 0; jA < nA; ++jA) {
              for (size_t jN = 0; jN < nN; ++jN) {
                size_t const v  = id(jM, jA, jN);
                size_t const uv = id(iM, ab[iA][jA], jN);
                rep.check.expect(xi_code[uv] == ctx.star_normalized(xi[u], xi[v]).encode(), [&] {
                  return "xi(u.v) != xi(u)*xi(v) for u=" + codes(xi[u]) + ", v=" + codes(xi[v]);
                });
              }
            }
          }
        }
      }
    }
    // Kernel of xi equals ~.
    {
      std::map<std::uint64_t, std::uint32_t>                                         by_xi;
      std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, std::uint32_t> by_key;
      std::vector<std::uint32_t> p1(xi.size()), p2(xi.size());
      for (size_t u = 0; u < xi.size(); ++u) {
        p1[u] = by_xi.emplace(xi_code[u], static_cast<std::uint32_t>(by_xi.size())).first->second;
        p2[u] = by_key.emplace(key[u], static_cast<std::uint32_t>(by_key.size())).first->second;
      }
      rep.check.expect(canonical_partition(p1) == canonical_partition(p2),
                       [] { return std::string("kernel of [.,.,.] differs from ~"); });
      rep.p_size = by_xi.size();
    }
    // ~ is compatible with the product on both sides.
    {
      std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, size_t> first;
      auto key_of = [&](size_t iM, size_t iA, size_t iN) {
        return key[id(iM, iA, iN)];
      };
      for (size_t iM = 0; iM < nM; ++iM) {
        for (size_t iA = 0; iA < nA; ++iA) {
          for (size_t iN = 0; iN < nN; ++iN) {
            size_t const u   = id(iM, iA, iN);
            auto [it, fresh] = first.emplace(key[u], u);
            if (fresh) {
              continue;
            }
            size_t const v  = it->second;
            size_t const vM = v / (nA * nN), vA = (v / nN) % nA, vN = v % nN;
            for (size_t wM = 0; wM < nM; ++wM) {
              for (size_t wA = 0; wA < nA; ++wA) {
                for (size_t wN = 0; wN < nN; ++wN) {
                  rep.check.expect(
                      key_of(iM, ab[iA][wA], wN) == key_of(vM, ab[vA][wA], wN)
                          && key_of(wM, ab[wA][iA], iN) == key_of(wM, ab[wA][vA], vN),
                      [&] { return "~ is not compatible at " + codes(xi[u]); });
                }
              }
            }
          }
        }
      }
    }
    // xi maps onto P.
    for (auto const& x : xi) {
      rep.check.expect(reg_membership(ctx, x).in_P,
                       [&] { return "[M,A,N] outside P: " + codes(x); });
    }
    rep.check.expect(BigInt(rep.p_size) == regular_count(ctx.q(), m, n, r), [&] {
      return "|image| = " + std::to_string(rep.p_size) + " but |P| = "
             + regular_count(ctx.q(), m, n, r).str();
    });
    return rep;
  }

  CheckReport pullback_check(SandwichContext const& ctx, std::uint64_t budget) {
    CheckReport  rep;
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    auto const   P = regular_elements(ctx, {}, budget);

    std::set<std::pair<std::uint64_t, std::uint64_t>> image;
    std::set<std::uint64_t>                           pj, jp;
    for (auto const& x : P) {
      auto const [y, z] = psi_embed(ctx, x);
      image.emplace(y.encode(), z.encode());
      pj.insert(y.encode());
      jp.insert(z.encode());
      Matrix const a = phi_project(ctx, x);
      rep.expect(y.block(0, 0, r, r) == a && z.block(0, 0, r, r) == a,
                 [&] { return "phi1 psi1 / phi2 psi2 / phi disagree at " + codes(x); });
      rep.expect(psi_reconstruct(ctx, y, z) == x,
                 [&] { return "reconstruct(psi(X)) != X at " + codes(x); });
    }
    rep.expect(image.size() == P.size(), [] { return std::string("psi is not injective on P"); });

    // PJ and JP from the regularity criterion inside C_m(r) and R_n(r).
    Matrix const                                 J = ctx.J();
    std::map<std::uint64_t, std::vector<Matrix>> ys, zs;
    for_each_matrix(
        f, m, r,
        [&](Matrix const& left) {
          Matrix const y = hcat(left, Matrix(f, m, m - r));
          if (rank(J * y) == rank(y)) {
            ys[left.block(0, 0, r, r).encode()].push_back(y);
            rep.expect(pj.count(y.encode()) == 1,
                       [&] { return "regular element of C_m(r) outside PJ: " + codes(y); });
          }
        },
        {}, budget);
    for_each_matrix(
        f, r, n,
        [&](Matrix const& top) {
          Matrix const z = vcat(top, Matrix(f, n - r, n));
          if (rank(z * J) == rank(z)) {
            zs[top.block(0, 0, r, r).encode()].push_back(z);
            rep.expect(jp.count(z.encode()) == 1,
                       [&] { return "regular element of R_n(r) outside JP: " + codes(z); });
          }
        },
        {}, budget);
    size_t pairs = 0;
    for (auto const& [a, yl] : ys) {
      auto it = zs.find(a);
      if (it == zs.end()) {
        continue;
      }
      for (auto const& y : yl) {
        for (auto const& z : it->second) {
          ++pairs;
          rep.expect(image.count({y.encode(), z.encode()}) == 1, [&] {
            return "pair with JY = ZJ outside psi(P): " + codes(y) + ", " + codes(z);
          });
        }
      }
    }
    rep.expect(pairs == image.size(), [&] {
      return std::to_string(pairs) + " pairs with JY = ZJ but |psi(P)| = "
             + std::to_string(image.size());
    });
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // H^-classes
  ////////////////////////////////////////////////////////////////////////

  HhatReport hhat_structure(SandwichContext const& ctx, Matrix const& x, std::uint64_t budget) {
    if (!reg_membership(ctx, x).in_P) {
      fail(Errc::not_regular, codes(x) + " is not in P");
    }
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    unsigned const q = f.q();
    HhatReport   rep;
    Matrix const a = x.block(0, 0, r, r);
    rep.s          = rank(x);
    auto const ca = col_space_key(a), ra = row_space_key(a);
    std::vector<Matrix> hA;
    for_each_matrix(
        f, r, r,
        [&](Matrix const& b) {
          if (col_space_key(b) == ca && row_space_key(b) == ra) {
            hA.push_back(b);
          }
        },
        rep.s, budget);
    rep.is_group_phi = rank(a * a) == rank(a);

    auto const hhat = all_triples(ctx, hA, budget);
    rep.size        = hhat.size();
    BigInt const expect_classes = ipow(q, rep.s * (m + n - 2 * r));
    BigInt const g              = gl_order(q, rep.s);
    rep.check.expect(BigInt(rep.size) == expect_classes * g, [&] {
      return "|H^| = " + std::to_string(rep.size) + ", expected " + BigInt(expect_classes * g).str();
    });

    std::map<std::pair<SubspaceKey, SubspaceKey>, std::vector<Matrix>> cells;
    for (auto const& y : hhat) {
      cells[{col_space_key(y), row_space_key(y)}].push_back(y);
    }
    rep.hclasses    = cells.size();
    rep.hclass_size = cells.begin()->second.size();
    rep.check.expect(BigInt(rep.hclasses) == expect_classes, [&] {
      return std::to_string(rep.hclasses) + " H^J-classes in H^, expected "
             + expect_classes.str();
    });
    for (auto const& [k, ys] : cells) {
      if (ys.size() != rep.hclass_size) {
        rep.hclass_size = 0;
      }
      rep.check.expect(BigInt(ys.size()) == g, [&] {
        return "H^J-class of size " + std::to_string(ys.size()) + ", expected " + g.str();
      });
      bool                    group = false;
      std::set<std::uint64_t> images;
      for (auto const& y : ys) {
        group = group || ctx.star_normalized(y, y) == y;
        images.insert(y.block(0, 0, r, r).encode());
      }
      rep.group_hclasses += group;
      rep.check.expect(group == rep.is_group_phi, [&] {
        return "group verdict of H^J-class of " + codes(ys.front())
               + " differs from that of H_phi";
      });
      rep.check.expect(images.size() == ys.size(), [&] {
        return "phi not injective on H^J-class of " + codes(ys.front());
      });
    }

    if (rep.is_group_phi) {
      Matrix e = hA.front();
      for (auto const& b : hA) {
        if (b * b == b) {
          e = b;
        }
      }
      std::vector<Matrix> ks, ls;
      {
        std::set<std::uint64_t> seen;
        for_each_matrix(f, m - r, r, [&](Matrix const& M) {
          if (seen.insert((M * e).encode()).second) {
            ks.push_back(M);
          }
        }, {}, budget);
        seen.clear();
        for_each_matrix(f, r, n - r, [&](Matrix const& N) {
          if (seen.insert((e * N).encode()).second) {
            ls.push_back(N);
          }
        }, {}, budget);
      }
      rep.rows = ks.size();
      rep.cols = ls.size();
      rep.check.expect(BigInt(rep.rows) == ipow(q, rep.s * (m - r))
                           && BigInt(rep.cols) == ipow(q, rep.s * (n - r)),
                       [&] {
                         return "rectangular group is " + std::to_string(rep.rows) + "x"
                                + std::to_string(rep.cols);
                       });
      std::set<std::uint64_t> hh;
      for (auto const& y : hhat) {
        hh.insert(y.encode());
      }
      std::set<std::uint64_t> hit;
      for (auto const& K : ks) {
        for (auto const& B : hA) {
          for (auto const& L : ls) {
            Matrix const y = linsand::man_compose(K, B, L);
            hit.insert(y.encode());
            rep.check.expect(hh.count(y.encode()) == 1,
                             [&] { return "coordinate image outside H^: " + codes(y); });
          }
        }
      }
      rep.check.expect(hit.size() == hhat.size() && hit.size() == ks.size() * hA.size() * ls.size(),
                       [] { return std::string("coordinates are not a bijection onto H^"); });
      if (hhat.size() * hhat.size() <= (1u << 20)) {
        for (auto const& K : ks) {
          for (auto const& B : hA) {
            for (auto const& L2 : ls) {
              Matrix const y1 = linsand::man_compose(K, B, ls.front());
              Matrix const y2 = linsand::man_compose(ks.back(), B, L2);
              rep.check.expect(ctx.star_normalized(y1, y2)
                                   == linsand::man_compose(K, B * B, L2),
                               [&] { return "rectangular group law fails at " + codes(y1); });
            }
          }
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism classification
  ////////////////////////////////////////////////////////////////////////

  Matrix IsoWitness::apply(SandwichContext const& from,
                           SandwichContext const& to,
                           Matrix const&          x) const {
    if (kind == Kind::bijection) {
      return Matrix::decode(to.field(), to.m(), to.n(), x.encode());
    }
    Matrix            y = from.to_normalized(x);
    std::vector<Elem> e = y.entries();
    if (field_map) {
      for (auto& v : e) {
        v = (*field_map)[v];
      }
    }
    return to.from_normalized(Matrix(to.field(), to.m(), to.n(), std::move(e)));
  }

  IsoVerdict classify_iso(SandwichContext const& left, SandwichContext const& right) {
    IsoVerdict v;
    if (left.r() == 0 && right.r() == 0) {
      BigInt const a = ipow(left.q(), left.m() * left.n());
      BigInt const b = ipow(right.q(), right.m() * right.n());
      v.isomorphic   = a == b;
      v.reason       = v.isomorphic ? "both are zero semigroups of size " + a.str()
                                    : "zero semigroups of different sizes " + a.str()
                                          + " and " + b.str();
      if (v.isomorphic) {
        v.witness = IsoWitness{IsoWitness::Kind::bijection, std::nullopt};
      }
      return v;
    }
    if (left.r() != right.r()) {
      v.reason = "sandwich ranks differ (" + std::to_string(left.r()) + " vs "
                 + std::to_string(right.r()) + ")";
      return v;
    }
    if (left.m() != right.m() || left.n() != right.n()) {
      v.reason = "shapes differ with rank >= 1";
      return v;
    }
    if (left.q() != right.q()) {
      v.reason = "fields differ with rank >= 1";
      return v;
    }
    v.isomorphic = true;
    v.reason     = "equal rank " + std::to_string(left.r()) + ", shape and field order";
    IsoWitness w;
    if (left.field() != right.field()) {
      w.field_map = field_isomorphism(left.field(), right.field());
      if (!w.field_map) {
        fail(Errc::assertion_failure, "no field isomorphism between equal-order fields");
      }
    }
    v.witness = w;
    return v;
  }

  CheckReport verify_witness(SandwichContext const& left,
                             SandwichContext const& right,
                             IsoWitness const&      w,
                             std::uint64_t          budget) {
    CheckReport         rep;
    auto const          xs = enumerate_matrices(left.field(), left.m(), left.n(), {}, budget);
    std::uint64_t const target = matrix_count(right.q(), right.m(), right.n());
    rep.expect(xs.size() == target, [] { return std::string("cardinalities differ"); });
    checked_product({xs.size(), xs.size()}, budget, "witness check");
    std::vector<Matrix>     img;
    std::set<std::uint64_t> seen;
    for (auto const& x : xs) {
      img.push_back(w.apply(left, right, x));
      seen.insert(img.back().encode());
    }
    rep.expect(seen.size() == xs.size(), [] { return std::string("witness is not injective"); });
    // Products of left elements, indexed by encoding.
    for (size_t i = 0; i < xs.size(); ++i) {
      for (size_t j = 0; j < xs.size(); ++j) {
        Matrix const xy = left.star(xs[i], xs[j]);
        rep.expect(w.apply(left, right, xy) == right.star(img[i], img[j]), [&] {
          return "witness is not a homomorphism at " + codes(xs[i]) + ", " + codes(xs[j]);
        });
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tables, mididentities, RP(P)
  ////////////////////////////////////////////////////////////////////////

  SemigroupTable sandwich_table(SandwichContext const& ctx, size_t budget) {
    std::uint64_t const n = matrix_count(ctx.q(), ctx.m(), ctx.n());
    if (n > budget) {
      fail(Errc::budget_exceeded,
           "table of " + std::to_string(n) + " elements exceeds budget");
    }
    std::vector<Matrix> xs;
    xs.reserve(n);
    for (std::uint64_t c = 0; c < n; ++c) {
      xs.push_back(Matrix::decode(ctx.field(), ctx.m(), ctx.n(), c));
    }
    SemigroupTable t{n, std::vector<std::uint32_t>(n * n)};
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        t.prod[i * n + j] = static_cast<std::uint32_t>(ctx.star_normalized(xs[i], xs[j]).encode());
      }
    }
    return t;
  }

  CheckReport mididentity_check(SandwichContext const& ctx, std::uint64_t budget) {
    CheckReport          rep;
    SemigroupTable const t  = sandwich_table(ctx);
    auto const           es = all_triples(ctx, {Matrix::identity(ctx.field(), ctx.r())}, budget);
    for (auto const& e : es) {
      size_t const ei = e.encode();
      for (size_t x = 0; x < t.n; ++x) {
        size_t const xe = t(x, ei);
        for (size_t z = 0; z < t.n; ++z) {
          rep.expect(t(xe, z) == t(x, z), [&] {
            return codes(e) + " is not a mididentity at X#" + std::to_string(x) + ", Z#"
                   + std::to_string(z);
          });
        }
      }
    }
    return rep;
  }

  CheckReport rp_check(SandwichContext const& ctx, size_t max_p) {
    CheckReport  rep;
    auto const   P = regular_elements(ctx);
    size_t const k = P.size();
    if (k > max_p) {
      fail(Errc::budget_exceeded, "|P| = " + std::to_string(k) + " exceeds " + std::to_string(max_p));
    }
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    for (size_t i = 0; i < k; ++i) {
      index.emplace(P[i].encode(), static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint32_t> t(k * k);
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        auto it = index.find(ctx.star_normalized(P[i], P[j]).encode());
        if (!rep.expect(it != index.end(), [&] { return std::string("P is not closed under *"); })) {
          return rep;
        }
        t[i * k + j] = it->second;
      }
    }
    for (size_t a = 0; a < k; ++a) {
      bool regular = true;
      for (size_t x = 0; x < k && regular; ++x) {
        size_t const xa    = t[x * k + a];
        bool         found = false;
        for (size_t y = 0; y < k && !found; ++y) {
          // x o y o x = x a y a x
          found = t[t[t[xa * k + y] * k + a] * k + x] == x;
        }
        regular = found;
      }
      bool const in_d = rank(P[a]) == ctx.r();
      rep.expect(regular == in_d, [&] {
        return "variant at " + codes(P[a]) + (regular ? " is" : " is not")
               + " regular but the element is" + (in_d ? "" : " not") + " in D";
      });
    }
    return rep;
  }

}  // namespace linsand
