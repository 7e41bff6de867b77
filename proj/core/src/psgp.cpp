#include "linsand/psgp.hpp"

#include <map>
#include <sstream>

#include "linsand/error.hpp"
#include "union_find.hpp"

namespace linsand {

  namespace {
    std::string idx(size_t i, size_t j, size_t x) {
      return "S_" + std::to_string(i) + std::to_string(j) + "#" + std::to_string(x);
    }

    std::vector<Bitset> class_sets(std::vector<std::uint32_t> const& ids) {
      std::vector<Bitset> sets(num_classes(ids), Bitset(ids.size()));
      for (size_t x = 0; x < ids.size(); ++x) {
        sets[ids[x]].set(x);
      }
      return sets;
    }

    // Mutual-containment classes of a preorder given by down-sets.
    std::vector<std::uint32_t> equivalence_ids(std::vector<Bitset> const& down) {
      size_t const               n = down.size();
      std::vector<std::uint32_t> ids(n, UINT32_MAX);
      std::uint32_t              next = 0;
      for (size_t x = 0; x < n; ++x) {
        if (ids[x] != UINT32_MAX) {
          continue;
        }
        for (size_t y = x; y < n; ++y) {
          if (ids[y] == UINT32_MAX && down[x][y] && down[y][x]) {
            ids[y] = next;
          }
        }
        ++next;
      }
      return ids;
    }

    std::vector<std::uint32_t> join_ids(std::vector<std::uint32_t> const& a,
                                        std::vector<std::uint32_t> const& b) {
      size_t const        n = a.size();
      detail::UnionFind   uf(n);
      std::vector<size_t> first_a(n, SIZE_MAX), first_b(n, SIZE_MAX);
      for (size_t x = 0; x < n; ++x) {
        if (first_a[a[x]] == SIZE_MAX) {
          first_a[a[x]] = x;
        }
        if (first_b[b[x]] == SIZE_MAX) {
          first_b[b[x]] = x;
        }
        uf.unite(x, first_a[a[x]]);
        uf.unite(x, first_b[b[x]]);
      }
      std::vector<std::uint32_t> ids(n);
      for (size_t x = 0; x < n; ++x) {
        ids[x] = static_cast<std::uint32_t>(uf.find(x));
      }
      return canonical_partition(ids);
    }

    std::vector<std::uint32_t> meet_ids(std::vector<std::uint32_t> const& a,
                                        std::vector<std::uint32_t> const& b) {
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> seen;
      std::vector<std::uint32_t> ids(a.size());
      for (size_t x = 0; x < a.size(); ++x) {
        auto [it, fresh] = seen.emplace(std::make_pair(a[x], b[x]),
                                        static_cast<std::uint32_t>(seen.size()));
        ids[x] = it->second;
      }
      return ids;
    }

    Bitset singleton(size_t n, size_t x) {
      Bitset b(n);
      b.set(x);
      return b;
    }

    std::string members(Bitset const& b) {
      std::string s = "{";
      for (size_t x = b.find_first(); x != Bitset::npos; x = b.find_next(x)) {
        s += (s.size() > 1 ? "," : "") + std::to_string(x);
      }
      return s + "}";
    }
  }  // namespace

  std::optional<size_t> PartialSemigroup::regular_witness(size_t i,
                                                          size_t j,
                                                          size_t x) const {
    for (size_t y = 0; y < homset_size(j, i); ++y) {
      if (multiply(i, i, j, multiply(i, j, i, x, y), x) == x) {
        return y;
      }
    }
    return std::nullopt;
  }

  std::string PartialSemigroup::describe(size_t i, size_t j, size_t x) const {
    return idx(i, j, x);
  }

  MatrixPartialSemigroup::MatrixPartialSemigroup(Field f, std::vector<size_t> dims)
      : _field(std::move(f)), _dims(std::move(dims)) {}

  size_t MatrixPartialSemigroup::homset_size(size_t i, size_t j) const {
    return matrix_count(_field.q(), _dims.at(i), _dims.at(j));
  }

  Matrix MatrixPartialSemigroup::element(size_t i, size_t j, size_t x) const {
    return Matrix::decode(_field, _dims.at(i), _dims.at(j), x);
  }

  size_t MatrixPartialSemigroup::multiply(size_t i,
                                          size_t j,
                                          size_t k,
                                          size_t x,
                                          size_t y) const {
    return (element(i, j, x) * element(j, k, y)).encode();
  }

  std::optional<size_t> MatrixPartialSemigroup::identity(size_t i) const {
    return Matrix::identity(_field, _dims.at(i)).encode();
  }

  std::optional<size_t> MatrixPartialSemigroup::regular_witness(size_t i,
                                                                size_t j,
                                                                size_t x) const {
    return inner_inverse(element(i, j, x)).encode();
  }

  std::string MatrixPartialSemigroup::describe(size_t i, size_t j, size_t x) const {
    return to_compact_string(element(i, j, x));
  }

  TablePartialSemigroup::TablePartialSemigroup(std::vector<std::vector<long>> table)
      : _table(std::move(table)) {
    size_t const n = _table.size();
    for (auto const& row : _table) {
      if (row.size() != n) {
        fail(Errc::parse_error, "product table is not square");
      }
      for (long z : row) {
        if (z < -1 || z >= static_cast<long>(n)) {
          fail(Errc::parse_error, "product index out of range");
        }
      }
    }
    // Node x is lambda(x), node n + x is rho(x).
    detail::UnionFind uf(2 * n);
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        long const z = _table[x][y];
        if (z < 0) {
          continue;
        }
        uf.unite(n + x, y);
        uf.unite(static_cast<size_t>(z), x);
        uf.unite(n + static_cast<size_t>(z), n + y);
      }
    }
    std::map<size_t, size_t> object_of;
    auto                     obj = [&](size_t node) {
      auto [it, fresh] = object_of.emplace(uf.find(node), object_of.size());
      return it->second;
    };
    _lambda.resize(n);
    _rho.resize(n);
    for (size_t x = 0; x < n; ++x) {
      _lambda[x] = obj(x);
      _rho[x]    = obj(n + x);
    }
    _num_objects = object_of.size();
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        bool const composable = _rho[x] == _lambda[y];
        if (composable != (_table[x][y] >= 0)) {
          fail(Errc::domain_error,
               "not a partial semigroup: product " + std::to_string(x) + "*"
                   + std::to_string(y) + (composable ? " undefined" : " defined")
                   + " but rho(x) " + (composable ? "=" : "!=") + " lambda(y)");
        }
      }
    }
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        if (_table[x][y] < 0) {
          continue;
        }
        size_t const xy = _table[x][y];
        for (size_t z = 0; z < n; ++z) {
          if (_table[y][z] < 0) {
            continue;
          }
          if (_table[xy][z] != _table[x][_table[y][z]]) {
            fail(Errc::domain_error,
                 "not associative at (" + std::to_string(x) + ","
                     + std::to_string(y) + "," + std::to_string(z) + ")");
          }
        }
      }
    }
    _hom.assign(_num_objects * _num_objects, {});
    _local.resize(n);
    for (size_t x = 0; x < n; ++x) {
      auto& h   = _hom[_lambda[x] * _num_objects + _rho[x]];
      _local[x] = h.size();
      h.push_back(x);
    }
    _identity.assign(_num_objects, std::nullopt);
    for (size_t i = 0; i < _num_objects; ++i) {
      for (size_t e : _hom[i * _num_objects + i]) {
        bool ok = true;
        for (size_t x = 0; x < n && ok; ++x) {
          if (_lambda[x] == i && static_cast<size_t>(_table[e][x]) != x) {
            ok = false;
          }
          if (_rho[x] == i && static_cast<size_t>(_table[x][e]) != x) {
            ok = false;
          }
        }
        if (ok) {
          _identity[i] = _local[e];
          break;
        }
      }
    }
  }

  TablePartialSemigroup TablePartialSemigroup::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    long               n = -1;
    if (!(in >> n) || n < 0) {
      fail(Errc::parse_error, "expected element count");
    }
    std::vector<std::vector<long>> t(n, std::vector<long>(n));
    for (auto& row : t) {
      for (auto& v : row) {
        if (!(in >> v)) {
          fail(Errc::parse_error, "truncated product table");
        }
      }
    }
    std::string extra;
    if (in >> extra) {
      fail(Errc::parse_error, "trailing data after product table");
    }
    return TablePartialSemigroup(std::move(t));
  }

  size_t TablePartialSemigroup::homset_size(size_t i, size_t j) const {
    return _hom.at(i * _num_objects + j).size();
  }

  size_t TablePartialSemigroup::flat(size_t i, size_t j, size_t x) const {
    return _hom.at(i * _num_objects + j).at(x);
  }

  size_t TablePartialSemigroup::multiply(size_t i,
                                         size_t j,
                                         size_t k,
                                         size_t x,
                                         size_t y) const {
    long const z = _table[flat(i, j, x)][flat(j, k, y)];
    (void) k;
    return _local[z];
  }

  std::optional<size_t> TablePartialSemigroup::identity(size_t i) const {
    return _identity.at(i);
  }

  std::string TablePartialSemigroup::describe(size_t i, size_t j, size_t x) const {
    return "#" + std::to_string(flat(i, j, x));
  }

  SemigroupTable build_sandwich(PartialSemigroup const& s,
                                size_t                  i,
                                size_t                  j,
                                size_t                  a,
                                size_t                  budget) {
    if (i >= s.num_objects() || j >= s.num_objects() || a >= s.homset_size(j, i)) {
      fail(Errc::bad_sandwich_element, "sandwich element must lie in S_ji");
    }
    size_t const n = s.homset_size(i, j);
    if (n > budget) {
      fail(Errc::budget_exceeded,
           "hom-set of size " + std::to_string(n) + " exceeds brute budget");
    }
    SemigroupTable t{n, std::vector<std::uint32_t>(n * n)};
    for (size_t x = 0; x < n; ++x) {
      size_t const xa = s.multiply(i, j, i, x, a);
      for (size_t y = 0; y < n; ++y) {
        t.prod[x * n + y] = static_cast<std::uint32_t>(s.multiply(i, i, j, xa, y));
      }
    }
    return t;
  }

  SemigroupTable local_semigroup(PartialSemigroup const& s, size_t i, size_t budget) {
    size_t const n = s.homset_size(i, i);
    if (n > budget) {
      fail(Errc::budget_exceeded,
           "hom-set of size " + std::to_string(n) + " exceeds brute budget");
    }
    SemigroupTable t{n, std::vector<std::uint32_t>(n * n)};
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        t.prod[x * n + y] = static_cast<std::uint32_t>(s.multiply(i, i, i, x, y));
      }
    }
    return t;
  }

  std::optional<std::array<size_t, 3>> find_nonassociative(SemigroupTable const& t) {
    for (size_t x = 0; x < t.n; ++x) {
      for (size_t y = 0; y < t.n; ++y) {
        size_t const xy = t(x, y);
        for (size_t z = 0; z < t.n; ++z) {
          if (t(xy, z) != t(x, t(y, z))) {
            return std::array<size_t, 3>{x, y, z};
          }
        }
      }
    }
    return std::nullopt;
  }

  std::vector<std::uint32_t> canonical_partition(std::vector<std::uint32_t> const& ids) {
    std::map<std::uint32_t, std::uint32_t> relabel;
    std::vector<std::uint32_t>             out(ids.size());
    for (size_t x = 0; x < ids.size(); ++x) {
      auto [it, fresh] = relabel.emplace(ids[x], static_cast<std::uint32_t>(relabel.size()));
      out[x] = it->second;
    }
    return out;
  }

  size_t num_classes(std::vector<std::uint32_t> const& ids) {
    std::uint32_t mx = 0;
    for (auto v : ids) {
      mx = std::max(mx, v + 1);
    }
    return ids.empty() ? 0 : mx;
  }

  GreenDecomposition brute_green(SemigroupTable const& t, size_t budget) {
    size_t const n = t.n;
    if (n > budget) {
      fail(Errc::budget_exceeded,
           "semigroup of size " + std::to_string(n) + " exceeds brute budget");
    }
    GreenDecomposition g;
    g.n = n;
    g.right_ideal.assign(n, Bitset(n));
    g.left_ideal.assign(n, Bitset(n));
    g.ideal.assign(n, Bitset(n));
    for (size_t x = 0; x < n; ++x) {
      g.right_ideal[x].set(x);
      g.left_ideal[x].set(x);
      for (size_t y = 0; y < n; ++y) {
        g.right_ideal[x].set(t(x, y));
        g.left_ideal[x].set(t(y, x));
      }
    }
    for (size_t x = 0; x < n; ++x) {
      auto const& lx = g.left_ideal[x];
      for (size_t z = lx.find_first(); z != Bitset::npos; z = lx.find_next(z)) {
        g.ideal[x] |= g.right_ideal[z];
      }
    }
    g.R = equivalence_ids(g.right_ideal);
    g.L = equivalence_ids(g.left_ideal);
    g.J = equivalence_ids(g.ideal);
    g.H = meet_ids(g.R, g.L);
    g.D = join_ids(g.R, g.L);
    g.regular.assign(n, false);
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        if (t(t(x, y), x) == x) {
          g.regular[x] = true;
          break;
        }
      }
    }
    return g;
  }

  CheckReport verify_green_sij(PartialSemigroup const& s,
                               size_t                  i,
                               size_t                  j,
                               size_t                  a,
                               size_t                  budget) {
    CheckReport          rep;
    SemigroupTable const t   = build_sandwich(s, i, j, a, budget);
    size_t const         n   = t.n;
    size_t const         nii = s.homset_size(i, i);
    size_t const         njj = s.homset_size(j, j);
    auto const           g   = brute_green(t, budget);

    // Green's relations of S restricted to S_ij.
    std::vector<Bitset> rset(n, Bitset(n)), lset(n, Bitset(n)), jset(n, Bitset(n));
    for (size_t x = 0; x < n; ++x) {
      rset[x].set(x);
      lset[x].set(x);
      for (size_t u = 0; u < njj; ++u) {
        rset[x].set(s.multiply(i, j, j, x, u));
      }
      for (size_t u = 0; u < nii; ++u) {
        lset[x].set(s.multiply(i, i, j, u, x));
      }
    }
    for (size_t x = 0; x < n; ++x) {
      for (size_t z = lset[x].find_first(); z != Bitset::npos; z = lset[x].find_next(z)) {
        jset[x] |= rset[z];
      }
    }
    auto const sR = class_sets(equivalence_ids(rset));
    auto const sL = class_sets(equivalence_ids(lset));
    auto const sJ = class_sets(equivalence_ids(jset));
    auto const rid = equivalence_ids(rset), lid = equivalence_ids(lset);
    auto const sD  = class_sets(join_ids(rid, lid));
    auto const did = join_ids(rid, lid);
    auto const jid = equivalence_ids(jset);

    Bitset p1(n), p2(n), p3(n);
    std::map<size_t, Bitset> below_cache;
    for (size_t x = 0; x < n; ++x) {
      size_t const xa = s.multiply(i, j, i, x, a);
      bool         in1 = (i == j && xa == x);
      for (size_t u = 0; u < n && !in1; ++u) {
        in1 = s.multiply(i, i, j, xa, u) == x;
      }
      p1[x] = in1;

      size_t const ax  = s.multiply(j, i, j, a, x);
      bool         in2 = (i == j && ax == x);
      for (size_t u = 0; u < n && !in2; ++u) {
        in2 = s.multiply(i, j, j, u, ax) == x;
      }
      p2[x] = in2;

      // x <=_J axa: x in S^1_ij (axa) S^1_ij.
      size_t const axa = s.multiply(j, j, i, ax, a);
      auto         it  = below_cache.find(axa);
      if (it == below_cache.end()) {
        std::vector<size_t> right;  // axa S^1_ij, inside S_jj
        {
          Bitset seen(njj);
          for (size_t v = 0; v < n; ++v) {
            seen.set(s.multiply(j, i, j, axa, v));
          }
          if (i == j) {
            seen.set(axa);
          }
          for (size_t w = seen.find_first(); w != Bitset::npos; w = seen.find_next(w)) {
            right.push_back(w);
          }
        }
        Bitset below(n);
        for (size_t w : right) {
          for (size_t u = 0; u < n; ++u) {
            below.set(s.multiply(i, j, j, u, w));
          }
          if (i == j) {
            below.set(w);
          }
        }
        it = below_cache.emplace(axa, std::move(below)).first;
      }
      p3[x] = it->second[x];
    }
    Bitset const p = p1 & p2;

    auto const gR = class_sets(g.R), gL = class_sets(g.L), gH = class_sets(g.H),
               gD = class_sets(g.D), gJ = class_sets(g.J);
    for (size_t x = 0; x < n; ++x) {
      auto const one = singleton(n, x);
      Bitset const R = p1[x] ? (sR[rid[x]] & p1) : one;
      Bitset const L = p2[x] ? (sL[lid[x]] & p2) : one;
      Bitset const H = p[x] ? (sR[rid[x]] & sL[lid[x]]) : one;
      Bitset       D = one;
      if (p[x]) {
        D = sD[did[x]] & p;
      } else if (p2[x]) {
        D = L;
      } else if (p1[x]) {
        D = R;
      }
      Bitset const J   = p3[x] ? (sJ[jid[x]] & p3) : D;
      auto const   who = [&] { return s.describe(i, j, x); };
      rep.expect(gR[g.R[x]] == R, [&] { return "R-class of " + who() + ": brute " + members(gR[g.R[x]]) + " predicted " + members(R); });
      rep.expect(gL[g.L[x]] == L, [&] { return "L-class of " + who() + ": brute " + members(gL[g.L[x]]) + " predicted " + members(L); });
      rep.expect(gH[g.H[x]] == H, [&] { return "H-class of " + who() + ": brute " + members(gH[g.H[x]]) + " predicted " + members(H); });
      rep.expect(gD[g.D[x]] == D, [&] { return "D-class of " + who() + ": brute " + members(gD[g.D[x]]) + " predicted " + members(D); });
      rep.expect(gJ[g.J[x]] == J, [&] { return "J-class of " + who() + ": brute " + members(gJ[g.J[x]]) + " predicted " + members(J); });
      rep.expect(!g.regular[x] || p[x], [&] { return "regular element outside P: " + who(); });
      rep.expect(!p[x] || p3[x], [&] { return "P not contained in P3 at " + who(); });
      rep.expect(p[x] == p3[x], [&] { return "P != P3 at " + who(); });
    }
    rep.expect(canonical_partition(g.D) == canonical_partition(g.J),
               [] { return std::string("D != J in the sandwich semigroup"); });

    // Reg(S_ij^a) is a subsemigroup when S is regular.
    bool regular = true;
    for (auto [u, v] : {std::pair{i, j}, std::pair{j, i}, std::pair{i, i}, std::pair{j, j}}) {
      for (size_t x = 0; x < s.homset_size(u, v) && regular; ++x) {
        auto const w = s.regular_witness(u, v, x);
        regular      = w && s.multiply(u, u, v, s.multiply(u, v, u, x, *w), x) == x;
      }
    }
    if (regular) {
      for (size_t x = 0; x < n; ++x) {
        if (!g.regular[x]) {
          continue;
        }
        for (size_t y = 0; y < n; ++y) {
          if (g.regular[y]) {
            rep.expect(g.regular[t(x, y)], [&] {
              return "Reg not closed: " + s.describe(i, j, x) + " * " + s.describe(i, j, y);
            });
          }
        }
      }
    }
    return rep;
  }

  CheckReport verify_corner_laws(PartialSemigroup const& s,
                                 size_t                  i,
                                 size_t                  j,
                                 size_t                  a,
                                 size_t                  b) {
    CheckReport  rep;
    size_t const ab = s.multiply(j, i, j, a, b);
    size_t const ba = s.multiply(i, j, i, b, a);
    if (!rep.expect(s.multiply(j, j, i, ab, a) == a, [] { return std::string("a != aba"); })
        || !rep.expect(s.multiply(i, i, j, ba, b) == b, [] { return std::string("b != bab"); })) {
      return rep;
    }
    size_t const nij = s.homset_size(i, j), nji = s.homset_size(j, i);
    Bitset       aSa(nji), bSb(nij), Sa(s.homset_size(i, i)), aS(s.homset_size(j, j));
    for (size_t x = 0; x < nij; ++x) {
      size_t const ax = s.multiply(j, i, j, a, x);
      aS.set(ax);
      Sa.set(s.multiply(i, j, i, x, a));
      aSa.set(s.multiply(j, j, i, ax, a));
    }
    for (size_t y = 0; y < nji; ++y) {
      bSb.set(s.multiply(i, i, j, s.multiply(i, j, i, b, y), b));
    }
    // S_ij a and a S_ij are subsemigroups of S_i and S_j.
    for (size_t u = Sa.find_first(); u != Bitset::npos; u = Sa.find_next(u)) {
      for (size_t v = Sa.find_first(); v != Bitset::npos; v = Sa.find_next(v)) {
        rep.expect(Sa[s.multiply(i, i, i, u, v)], [] { return std::string("S_ij a not closed"); });
      }
    }
    for (size_t u = aS.find_first(); u != Bitset::npos; u = aS.find_next(u)) {
      for (size_t v = aS.find_first(); v != Bitset::npos; v = aS.find_next(v)) {
        rep.expect(aS[s.multiply(j, j, j, u, v)], [] { return std::string("a S_ij not closed"); });
      }
    }
    // (aS_ij a, *_b) with identity a; (bS_ji b, *_a) with identity b.
    auto star_b = [&](size_t y, size_t z) {  // y, z in S_ji
      return s.multiply(j, j, i, s.multiply(j, i, j, y, b), z);
    };
    auto star_a = [&](size_t y, size_t z) {  // y, z in S_ij
      return s.multiply(i, i, j, s.multiply(i, j, i, y, a), z);
    };
    auto f = [&](size_t y) {  // S_ji -> S_ij, y -> byb
      return s.multiply(i, i, j, s.multiply(i, j, i, b, y), b);
    };
    auto h = [&](size_t y) {  // S_ij -> S_ji, y -> aya
      return s.multiply(j, j, i, s.multiply(j, i, j, a, y), a);
    };
    rep.expect(aSa[a], [] { return std::string("a not in aS_ij a"); });
    rep.expect(bSb[b], [] { return std::string("b not in bS_ji b"); });
    for (size_t y = aSa.find_first(); y != Bitset::npos; y = aSa.find_next(y)) {
      rep.expect(star_b(a, y) == y && star_b(y, a) == y,
                 [&] { return "a is not an identity for " + s.describe(j, i, y); });
      rep.expect(h(f(y)) == y, [&] { return "axa(bxb) != x at " + s.describe(j, i, y); });
      rep.expect(bSb[f(y)], [&] { return "bxb outside bS_ji b at " + s.describe(j, i, y); });
      for (size_t z = aSa.find_first(); z != Bitset::npos; z = aSa.find_next(z)) {
        size_t const yz = star_b(y, z);
        rep.expect(aSa[yz], [] { return std::string("aS_ij a not closed under *_b"); });
        rep.expect(f(yz) == star_a(f(y), f(z)),
                   [] { return std::string("x -> bxb is not a homomorphism"); });
      }
    }
    for (size_t y = bSb.find_first(); y != Bitset::npos; y = bSb.find_next(y)) {
      rep.expect(star_a(b, y) == y && star_a(y, b) == y,
                 [&] { return "b is not an identity for " + s.describe(i, j, y); });
      rep.expect(f(h(y)) == y, [&] { return "bxb(axa) != x at " + s.describe(i, j, y); });
      rep.expect(aSa[h(y)], [] { return std::string("axa outside aS_ij a"); });
    }
    return rep;
  }

}  // namespace linsand
