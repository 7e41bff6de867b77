#include "linsand/generators.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    std::uint64_t to_u64(BigInt const& x, char const* what) {
      if (x > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        fail(Errc::budget_exceeded, std::string(what) + " does not fit in 64 bits");
      }
      return static_cast<std::uint64_t>(x);
    }

    std::vector<std::uint64_t> codes_of(std::vector<Matrix> const& xs) {
      std::vector<std::uint64_t> out;
      out.reserve(xs.size());
      for (auto const& x : xs) {
        out.push_back(x.encode());
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    Matrix mat_pow(Matrix x, std::uint64_t e) {
      Matrix acc = Matrix::identity(x.field(), x.rows());
      while (e > 0) {
        if (e & 1) {
          acc = acc * x;
        }
        x = x * x;
        e >>= 1;
      }
      return acc;
    }

    std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
      std::vector<std::uint64_t> ps;
      for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          ps.push_back(p);
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        ps.push_back(n);
      }
      return ps;
    }

    // Whether x has multiplicative order exactly `order` (x invertible).
    bool has_order(Matrix const& x, std::uint64_t order) {
      Matrix const id = Matrix::identity(x.field(), x.rows());
      if (mat_pow(x, order) != id) {
        return false;
      }
      for (auto p : prime_factors(order)) {
        if (mat_pow(x, order / p) == id) {
          return false;
        }
      }
      return true;
    }

    Matrix companion(Field const& f, std::vector<Elem> const& c) {
      size_t const s = c.size();
      Matrix       x(f, s, s);
      for (size_t i = 1; i < s; ++i) {
        x.at(i, i - 1) = 1;
      }
      for (size_t i = 0; i < s; ++i) {
        x.at(i, s - 1) = f.neg(c[i]);
      }
      return x;
    }

    bool generates_gl(std::vector<Matrix> const& gens, std::uint64_t order, std::uint64_t budget) {
      return closure_ordinary(gens, budget).size() == order;
    }

    void certify(SandwichContext const& ctx, GenSetReport& rep, std::uint64_t budget) {
      auto const got  = closure(ctx, rep.gens, budget);
      auto const want = target_elements(ctx, rep.target, budget);
      rep.closure_size = got.size();
      rep.target_size  = want.size();
      rep.certified    = codes_of(got) == codes_of(want);
    }

    void check_ctx(SandwichContext const& ctx, RankTarget target) {
      // Raises UnsupportedParameters outside the formula's hypotheses.
      (void) rank_formula(ctx.q(), ctx.m(), ctx.n(), ctx.r(), target);
    }

    // Least-encoding representative of each class of `xs` under `key`, in
    // encoding order.
    template <typename Key>
    std::vector<Matrix> cross_section(std::vector<Matrix> const& xs, Key&& key) {
      std::unordered_set<std::uint64_t> seen;
      std::vector<Matrix>               out;
      for (auto const& x : xs) {
        if (seen.insert(key(x).encode()).second) {
          out.push_back(x);
        }
      }
      return out;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Closure
  ////////////////////////////////////////////////////////////////////////

  std::vector<Matrix> closure(std::vector<Matrix> const& seed,
                              Product const&             mul,
                              std::uint64_t              budget) {
    std::vector<Matrix>               gens;
    std::unordered_set<std::uint64_t> seen;
    for (auto const& g : seed) {
      if (seen.insert(g.encode()).second) {
        gens.push_back(g);
      }
    }
    if (gens.size() > budget) {
      fail(Errc::budget_exceeded, "closure exceeds budget " + std::to_string(budget));
    }
    std::vector<Matrix> all = gens;
    for (size_t head = 0; head < all.size(); ++head) {
      for (auto const& g : gens) {
        Matrix y = mul(all[head], g);
        if (seen.insert(y.encode()).second) {
          if (all.size() >= budget) {
            fail(Errc::budget_exceeded, "closure exceeds budget " + std::to_string(budget));
          }
          all.push_back(std::move(y));
        }
      }
    }
    std::sort(all.begin(), all.end(), [](Matrix const& a, Matrix const& b) {
      return a.encode() < b.encode();
    });
    return all;
  }

  std::vector<Matrix> closure(SandwichContext const&     ctx,
                              std::vector<Matrix> const& seed,
                              std::uint64_t              budget) {
    return closure(
        seed, [&ctx](Matrix const& x, Matrix const& y) { return ctx.star_normalized(x, y); },
        budget);
  }

  std::vector<Matrix> closure_ordinary(std::vector<Matrix> const& seed, std::uint64_t budget) {
    return closure(
        seed, [](Matrix const& x, Matrix const& y) { return x * y; }, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // GL_s(q)
  ////////////////////////////////////////////////////////////////////////

  GLGenSet gl_genset(Field const& f, size_t s, std::uint64_t budget) {
    if (s == 0) {
      fail(Errc::precondition_violation, "gl_genset needs s >= 1");
    }
    std::uint64_t const order = to_u64(gl_order(f.q(), s), "|GL_s(q)|");
    if (order > budget) {
      fail(Errc::budget_exceeded, "|GL_" + std::to_string(s) + "(" + std::to_string(f.q())
                                      + ")| exceeds budget");
    }
    std::uint64_t const cyc = to_u64(ipow(f.q(), s), "q^s") - 1;
    GLGenSet            out;

    // A companion matrix of a primitive polynomial has order q^s - 1; for
    // s = 1 this is a primitive element of GF(q).
    std::optional<Matrix> c;
    {
      std::vector<Elem> coef(s, 0);
      std::uint64_t     total = to_u64(ipow(f.q(), s), "q^s");
      for (std::uint64_t code = 0; code < total && !c; ++code) {
        std::uint64_t v = code;
        for (size_t i = 0; i < s; ++i) {
          coef[i] = static_cast<Elem>(v % f.q());
          v /= f.q();
        }
        if (coef[0] == 0) {
          continue;
        }
        Matrix x = companion(f, coef);
        if (has_order(x, cyc)) {
          c = std::move(x);
        }
      }
    }
    if (!c) {
      fail(Errc::assertion_failure, "no primitive polynomial found");
    }
    if (s == 1) {
      out.gens         = {*c};
      out.closure_size = closure_ordinary(out.gens, budget).size();
      if (out.closure_size != order) {
        fail(Errc::assertion_failure, "primitive element does not generate GF(q)*");
      }
      return out;
    }

    std::mt19937_64 rng(0x5eed0000u + 64 * f.q() + s);
    std::uniform_int_distribution<unsigned> dist(0, f.q() - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Elem> e(s * s);
      for (auto& v : e) {
        v = static_cast<Elem>(dist(rng));
      }
      Matrix b(f, s, s, std::move(e));
      if (is_invertible(b) && generates_gl({*c, b}, order, budget)) {
        out.gens         = {*c, b};
        out.closure_size = order;
        return out;
      }
    }
    std::optional<Matrix> found;
    for_each_matrix(
        f, s, s,
        [&](Matrix const& b) {
          if (!found && generates_gl({*c, b}, order, budget)) {
            found = b;
          }
        },
        s, budget);
    if (found) {
      out.gens         = {*c, *found};
      out.closure_size = order;
      return out;
    }

    // Transvections and a diagonal matrix always generate.
    out.minimal = false;
    for (size_t i = 0; i < s; ++i) {
      for (size_t j = 0; j < s; ++j) {
        if (i != j) {
          Matrix t  = Matrix::identity(f, s);
          t.at(i, j) = 1;
          out.gens.push_back(t);
        }
      }
    }
    Matrix d  = Matrix::identity(f, s);
    d.at(0, 0) = [&] {
      for (Elem a = 1; a < f.q(); ++a) {
        if (has_order(Matrix(f, 1, 1, {a}), f.q() - 1)) {
          return a;
        }
      }
      return Elem(1);
    }();
    out.gens.push_back(d);
    out.closure_size = closure_ordinary(out.gens, budget).size();
    if (out.closure_size != order) {
      fail(Errc::search_exhausted, "fallback generators do not generate GL");
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Factorization step
  ////////////////////////////////////////////////////////////////////////

  std::pair<Matrix, Matrix> ind_step_factor(SandwichContext const& ctx, Matrix const& x) {
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r(), l = std::min(m, n);
    if (x.rows() != m || x.cols() != n) {
      fail(Errc::dimension_mismatch, "factor: wrong shape");
    }
    if (r == m && m == n) {
      fail(Errc::degenerate_case, "r = m = n");
    }
    size_t const s = rank(x);
    if (s >= l) {
      fail(Errc::precondition_violation, "rank X must be below min(m, n)");
    }
    if (s > r) {
      fail(Errc::precondition_violation, "rank X exceeds rank J; X is not a product");
    }
    // X = B C with C the nonzero rows of rref(X) and B the pivot columns of X.
    Rref const rf = rref(x);
    Matrix     C  = rf.R.block(0, 0, s, n);
    Matrix     B(f, m, s);
    for (size_t k = 0; k < s; ++k) {
      for (size_t i = 0; i < m; ++i) {
        B.at(i, k) = x(i, rf.pivots[k]);
      }
    }
    size_t k0 = 0;
    while (k0 < n && std::find(rf.pivots.begin(), rf.pivots.end(), k0) != rf.pivots.end()) {
      ++k0;
    }
    // w = e_k0 lies outside Row(C) because k0 is not a pivot column.
    Matrix Z(f, m, n);
    for (size_t i = 0; i < s; ++i) {
      for (size_t j = 0; j < n; ++j) {
        Z.at(i, j) = C(i, j);
      }
    }
    size_t const w_row = r < m ? m - 1 : s;
    Z.at(w_row, k0)    = 1;

    // Y: B in the first s columns, the column paired with w (if any) zero,
    // remaining columns standard vectors until rank l.
    Matrix       Y(f, m, n);
    for (size_t k = 0; k < s; ++k) {
      for (size_t i = 0; i < m; ++i) {
        Y.at(i, k) = B(i, k);
      }
    }
    size_t have = s;
    size_t e    = 0;
    for (size_t col = s; col < n && have < l; ++col) {
      if (r == m && col == s) {
        continue;
      }
      while (e < m) {
        Matrix trial = Y;
        trial.at(e, col) = 1;
        ++e;
        if (rank(trial) > have) {
          Y = std::move(trial);
          ++have;
          break;
        }
      }
    }
    if (ctx.star_normalized(Y, Z) != x || rank(Y) != l || rank(Z) != s + 1) {
      fail(Errc::assertion_failure, "factorization check failed for " + to_compact_string(x));
    }
    return {Y, Z};
  }

  ////////////////////////////////////////////////////////////////////////
  // Idempotent generators of ideals of M_r
  ////////////////////////////////////////////////////////////////////////

  std::vector<Matrix> idempotent_generators(Field const&  f,
                                            size_t        r,
                                            size_t        s,
                                            std::uint64_t seed) {
    if (s >= r) {
      fail(Errc::precondition_violation, "idempotent generators need s < r");
    }
    if (s == 0) {
      return {Matrix(f, r, r)};
    }
    // The s-dimensional subspaces of F^r, as RREF bases (s x r).
    std::vector<Matrix> subs;
    {
      std::set<std::uint64_t> seen;
      for_each_matrix(
          f, s, r,
          [&](Matrix const& x) {
            auto k = row_space_key(x);
            if (seen.insert(k.basis.encode()).second) {
              subs.push_back(k.basis);
            }
          },
          s);
    }
    size_t const k = subs.size();
    // Cell (U, W) with column space U = Row(subs[u])^T and row space
    // W = Row(subs[w]) is a group iff C B is invertible.
    std::vector<std::vector<size_t>> adj(k);
    for (size_t u = 0; u < k; ++u) {
      Matrix const B = subs[u].transpose();
      for (size_t w = 0; w < k; ++w) {
        if (is_invertible(subs[w] * B)) {
          adj[u].push_back(w);
        }
      }
    }
    BigInt ideal_size = 0;
    for (size_t t = 0; t <= s; ++t) {
      ideal_size += mmn_dclass_counts(f.q(), r, r, t).size;
    }
    std::uint64_t const want = to_u64(ideal_size, "|I_s(M_r)|");

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
      for (auto& a : adj) {
        std::shuffle(a.begin(), a.end(), rng);
      }
      std::vector<size_t> order(k);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      // Kuhn's augmenting paths.
      std::vector<std::ptrdiff_t> match_w(k, -1);
      std::function<bool(size_t, std::vector<char>&)> augment =
          [&](size_t u, std::vector<char>& used) {
            for (size_t w : adj[u]) {
              if (used[w]) {
                continue;
              }
              used[w] = 1;
              if (match_w[w] < 0 || augment(static_cast<size_t>(match_w[w]), used)) {
                match_w[w] = static_cast<std::ptrdiff_t>(u);
                return true;
              }
            }
            return false;
          };
      bool perfect = true;
      for (size_t u : order) {
        std::vector<char> used(k, 0);
        perfect = perfect && augment(u, used);
      }
      if (!perfect) {
        continue;
      }
      std::vector<Matrix> gamma;
      for (size_t w = 0; w < k; ++w) {
        Matrix const B = subs[static_cast<size_t>(match_w[w])].transpose();
        Matrix const C = subs[w];
        gamma.push_back(B * *inverse(C * B) * C);
      }
      std::sort(gamma.begin(), gamma.end(),
                [](Matrix const& a, Matrix const& b) { return a.encode() < b.encode(); });
      if (closure_ordinary(gamma).size() == want) {
        return gamma;
      }
    }
    fail(Errc::greedy_search_failed,
         "no idempotent generating set of size " + std::to_string(k) + " found");
  }

  ////////////////////////////////////////////////////////////////////////
  // Generating sets
  ////////////////////////////////////////////////////////////////////////

  std::vector<Matrix> target_elements(SandwichContext const& ctx,
                                      RankTarget             target,
                                      std::uint64_t          budget) {
    std::vector<Matrix> out;
    auto append = [&out](std::vector<Matrix> xs) {
      out.insert(out.end(), std::make_move_iterator(xs.begin()),
                 std::make_move_iterator(xs.end()));
    };
    size_t const r = ctx.r();
    switch (target.kind) {
      case RankTarget::Kind::full:
        return enumerate_matrices(ctx.field(), ctx.m(), ctx.n(), {}, budget);
      case RankTarget::Kind::reg:
        return regular_elements(ctx, {}, budget);
      case RankTarget::Kind::idem:
        for (size_t t = 0; t < r; ++t) {
          append(regular_elements(ctx, t, budget));
        }
        append(idempotents(ctx, r, budget));
        break;
      case RankTarget::Kind::ideal:
        for (size_t t = 0; t <= std::min(target.s, r); ++t) {
          append(regular_elements(ctx, t, budget));
        }
        break;
    }
    std::sort(out.begin(), out.end(),
              [](Matrix const& a, Matrix const& b) { return a.encode() < b.encode(); });
    return out;
  }

  GenSetReport genset_full(SandwichContext const& ctx, bool certify_it, std::uint64_t budget) {
    RankTarget const target{RankTarget::Kind::full, 0};
    check_ctx(ctx, target);
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r(), l = std::min(m, n);
    GenSetReport rep;
    rep.target       = target;
    rep.formula_size = rank_formula(ctx.q(), m, n, r, target);
    if (r < l) {
      for_each_matrix(
          f, m, n,
          [&](Matrix const& x) {
            if (rank(x) > r) {
              rep.gens.push_back(x);
            }
          },
          {}, budget);
      rep.evidence = "every generating set contains all matrices of rank > r";
    } else if (n < m) {
      auto dual = genset_full(SandwichContext::normalized(f, n, m, r), false, budget);
      for (auto const& x : dual.gens) {
        rep.gens.push_back(x.transpose());
      }
      rep.evidence = dual.evidence + " (transposed)";
    } else {
      // r = m < n: [A_N | A_N N] over all N, then one element of each
      // non-regular L-class of rank m.
      auto const gl = gl_genset(f, m, budget);
      size_t     i  = 0;
      for_each_matrix(
          f, m, n - m,
          [&](Matrix const& N) {
            Matrix const& a = gl.gens[i++ % gl.gens.size()];
            rep.gens.push_back(hcat(a, a * N));
          },
          {}, budget);
      std::set<std::uint64_t> seen;
      for_each_matrix(
          f, m, n,
          [&](Matrix const& x) {
            if (rank(x.block(0, 0, m, m)) < m && seen.insert(row_space_key(x).basis.encode()).second) {
              rep.gens.push_back(x);
            }
          },
          m, budget);
      rep.evidence = "one generator per L-class of rank min(m, n)";
      if (!gl.minimal) {
        rep.evidence += "; GL generators from fallback";
      }
    }
    if (certify_it) {
      certify(ctx, rep, budget);
    }
    return rep;
  }

  GenSetReport genset_reg(SandwichContext const& ctx, bool certify_it, std::uint64_t budget) {
    RankTarget const target{RankTarget::Kind::reg, 0};
    check_ctx(ctx, target);
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    GenSetReport rep;
    rep.target       = target;
    rep.formula_size = rank_formula(ctx.q(), m, n, r, target);
    std::uint64_t const k  = to_u64(rep.formula_size - 1, "generating set size");
    auto const          Ms = enumerate_matrices(f, m - r, r, {}, budget);
    auto const          Ns = enumerate_matrices(f, r, n - r, {}, budget);
    auto const          gl = gl_genset(f, r, budget);
    for (std::uint64_t i = 0; i < k; ++i) {
      rep.gens.push_back(man_compose(Ms[i % Ms.size()], gl.gens[i % gl.gens.size()],
                                     Ns[i % Ns.size()]));
    }
    rep.gens.push_back(man_compose(Matrix(f, m - r, r), Matrix::corner_identity(f, r, r, r - 1),
                                   Matrix(f, r, n - r)));
    rep.evidence = "generators of the rectangular group D_r plus one element of rank r-1";
    if (!gl.minimal) {
      rep.evidence += "; GL generators from fallback";
    }
    if (certify_it) {
      certify(ctx, rep, budget);
    }
    return rep;
  }

  GenSetReport genset_idem(SandwichContext const& ctx, bool certify_it, std::uint64_t budget) {
    RankTarget const target{RankTarget::Kind::idem, 0};
    check_ctx(ctx, target);
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    GenSetReport rep;
    rep.target       = target;
    rep.formula_size = rank_formula(ctx.q(), m, n, r, target);
    std::uint64_t const k  = to_u64(ipow(ctx.q(), r * (std::max(m, n) - r)), "q^{r(L-r)}");
    auto const          Ms = enumerate_matrices(f, m - r, r, {}, budget);
    auto const          Ns = enumerate_matrices(f, r, n - r, {}, budget);
    Matrix const        I  = Matrix::identity(f, r);
    for (std::uint64_t i = 0; i < k; ++i) {
      rep.gens.push_back(man_compose(Ms[i % Ms.size()], I, Ns[i % Ns.size()]));
    }
    for (auto const& a : idempotent_generators(f, r, r - 1)) {
      rep.gens.push_back(man_compose(Matrix(f, m - r, r), a, Matrix(f, r, n - r)));
    }
    rep.evidence = "rectangular band of E(D_r) plus idempotent generators of M_r \\ G_r";
    if (certify_it) {
      certify(ctx, rep, budget);
    }
    return rep;
  }

  GenSetReport genset_ideal(SandwichContext const& ctx, size_t s, bool certify_it,
                            std::uint64_t budget) {
    RankTarget const target{RankTarget::Kind::ideal, s};
    check_ctx(ctx, target);
    if (s == ctx.r()) {
      GenSetReport rep = genset_reg(ctx, false, budget);
      rep.target       = target;
      if (certify_it) {
        certify(ctx, rep, budget);
      }
      return rep;
    }
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    GenSetReport rep;
    rep.target       = target;
    rep.formula_size = rank_formula(ctx.q(), m, n, r, target);
    std::uint64_t const Q  = to_u64(ipow(ctx.q(), s * (std::max(m, n) - r)), "q^{s(L-r)}");
    auto const          Ms = enumerate_matrices(f, m - r, r, {}, budget);
    auto const          Ns = enumerate_matrices(f, r, n - r, {}, budget);
    for (auto const& a : idempotent_generators(f, r, s)) {
      auto const S = cross_section(Ms, [&a](Matrix const& M) { return M * a; });
      auto const T = cross_section(Ns, [&a](Matrix const& N) { return a * N; });
      for (std::uint64_t i = 0; i < Q; ++i) {
        rep.gens.push_back(man_compose(S[i % S.size()], a, T[i % T.size()]));
      }
    }
    rep.evidence = "one idempotent per L- or R-class of the top of the ideal";
    if (certify_it) {
      certify(ctx, rep, budget);
    }
    return rep;
  }

  GenSetReport genset(SandwichContext const& ctx, RankTarget target, bool certify_it,
                      std::uint64_t budget) {
    switch (target.kind) {
      case RankTarget::Kind::full:
        return genset_full(ctx, certify_it, budget);
      case RankTarget::Kind::reg:
        return genset_reg(ctx, certify_it, budget);
      case RankTarget::Kind::idem:
        return genset_idem(ctx, certify_it, budget);
      case RankTarget::Kind::ideal:
        return genset_ideal(ctx, target.s, certify_it, budget);
    }
    fail(Errc::unsupported_parameters, "unknown target");
  }

  CheckReport necessity_check(SandwichContext const& ctx,
                              GenSetReport const&    rep,
                              std::uint64_t          budget) {
    CheckReport  out;
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    if (rep.target.kind == RankTarget::Kind::full && r < std::min(m, n)) {
      std::vector<Matrix> low;
      for_each_matrix(
          ctx.field(), m, n,
          [&](Matrix const& x) {
            if (rank(x) <= r) {
              low.push_back(x);
            }
          },
          {}, budget);
      auto const cl = codes_of(closure(ctx, low, budget));
      out.expect(cl.size() < matrix_count(ctx.q(), m, n), [&] {
        return "matrices of rank <= r generate everything (" + std::to_string(cl.size()) + ")";
      });
      for (auto const& g : rep.gens) {
        out.expect(!std::binary_search(cl.begin(), cl.end(), g.encode()), [&] {
          return "generator " + to_compact_string(g) + " is a product of lower-rank matrices";
        });
      }
      return out;
    }
    std::vector<GreenKey> lk, rk;
    for (auto const& g : rep.gens) {
      lk.push_back(green_key(ctx, g, Relation::L));
      rk.push_back(green_key(ctx, g, Relation::R));
    }
    auto unique = [](std::vector<GreenKey> const& ks, size_t i) {
      return std::count(ks.begin(), ks.end(), ks[i]) == 1;
    };
    for (size_t i = 0; i < rep.gens.size(); ++i) {
      bool const lu = unique(lk, i), ru = unique(rk, i);
      bool const use_l =
          lu && (lk[i].shape != GreenKey::Shape::singleton || !ru);
      if (!lu && !ru) {
        continue;
      }
      Relation const rel = use_l ? Relation::L : Relation::R;
      GreenKey const& key = use_l ? lk[i] : rk[i];
      std::vector<Matrix> rest;
      for (size_t j = 0; j < rep.gens.size(); ++j) {
        if (j != i) {
          rest.push_back(rep.gens[j]);
        }
      }
      bool hit = false;
      for (auto const& x : closure(ctx, rest, budget)) {
        if (green_key(ctx, x, rel) == key) {
          hit = true;
          break;
        }
      }
      out.expect(!hit, [&] {
        return "dropping " + to_compact_string(rep.gens[i]) + " keeps its "
               + relation_name(rel) + "-class";
      });
    }
    return out;
  }

}  // namespace linsand
