#include "linsand_cli/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "linsand/combinatorics.hpp"
#include "linsand/error.hpp"
#include "linsand/generators.hpp"
#include "linsand/psgp.hpp"
#include "linsand/sandwich.hpp"

namespace linsand::cli {

  namespace {
    using ordered_json = nlohmann::ordered_json;

    std::string trim(std::string s) {
      auto const b = s.find_first_not_of(" \t");
      auto const e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }

    std::vector<std::string> split(std::string const& s, char sep) {
      std::vector<std::string> out;
      std::string              cur;
      std::istringstream       in(s);
      while (std::getline(in, cur, sep)) {
        out.push_back(trim(cur));
      }
      return out;
    }

    size_t parse_size(std::string const& s) {
      size_t used = 0;
      size_t v    = 0;
      try {
        v = std::stoul(s, &used);
      } catch (std::exception const&) {
        used = 0;
      }
      if (s.empty() || used != s.size() || s[0] == '-') {
        fail(Errc::parse_error, "bad number '" + s + "' in grid");
      }
      return v;
    }

    // "1-3,5" -> 1 2 3 5
    std::vector<size_t> parse_range_list(std::string const& s) {
      std::vector<size_t> out;
      for (auto const& item : split(s, ',')) {
        auto const dash = item.find('-');
        if (dash == std::string::npos) {
          out.push_back(parse_size(item));
          continue;
        }
        size_t const lo = parse_size(trim(item.substr(0, dash)));
        size_t const hi = parse_size(trim(item.substr(dash + 1)));
        if (lo > hi) {
          fail(Errc::parse_error, "empty range '" + item + "' in grid");
        }
        for (size_t v = lo; v <= hi; ++v) {
          out.push_back(v);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    std::string join_sizes(std::vector<size_t> const& xs) {
      std::string out;
      for (auto x : xs) {
        out += (out.empty() ? "" : ",") + std::to_string(x);
      }
      return out;
    }

    std::uint64_t checked_pow(unsigned q, size_t e, std::uint64_t cap) {
      std::uint64_t v = 1;
      for (size_t i = 0; i < e; ++i) {
        if (v > cap / q) {
          return cap + 1;
        }
        v *= q;
      }
      return v;
    }

    std::uint64_t to_u64(BigInt const& x) {
      return x > BigInt(std::numeric_limits<std::uint64_t>::max())
                 ? std::numeric_limits<std::uint64_t>::max()
                 : static_cast<std::uint64_t>(x);
    }

    std::string big(BigInt const& x) {
      return x.str();
    }

    struct Job {
      SandwichContext     ctx;
      VerifyConfig const& cfg;
      std::uint64_t       size;  // q^{mn}

      bool fault(char const* group) const {
        return cfg.inject_fault == group;
      }
    };

    // Skip reason thrown from inside a group.
    struct Skip {
      std::string reason;
    };

    void require_table(Job const& job, std::uint64_t limit = 4096) {
      if (job.size > limit) {
        throw Skip{"q^{mn} = " + std::to_string(job.size) + " exceeds " + std::to_string(limit)};
      }
    }

    std::vector<std::uint32_t> partition_of(std::vector<GreenKey> const& keys) {
      std::map<GreenKey, std::uint32_t> ids;
      std::vector<std::uint32_t>        out;
      out.reserve(keys.size());
      for (auto const& k : keys) {
        out.push_back(ids.emplace(k, static_cast<std::uint32_t>(ids.size())).first->second);
      }
      return canonical_partition(out);
    }

    ////////////////////////////////////////////////////////////////////////
    // Groups
    ////////////////////////////////////////////////////////////////////////

    void check_green(Job const& job, CheckReport& out) {
      require_table(job);
      auto const& ctx   = job.ctx;
      auto const  xs    = enumerate_matrices(ctx.field(), ctx.m(), ctx.n());
      auto const  table = sandwich_table(ctx);
      auto const  g     = brute_green(table, 4096);
      size_t const N    = xs.size();

      std::pair<Relation, std::vector<std::uint32_t> const*> const rels[] = {
          {Relation::R, &g.R}, {Relation::L, &g.L}, {Relation::H, &g.H},
          {Relation::D, &g.D}, {Relation::J, &g.J}};
      for (auto const& [rel, brute] : rels) {
        std::vector<GreenKey> keys;
        keys.reserve(N);
        for (auto const& x : xs) {
          keys.push_back(green_key(ctx, x, rel));
        }
        auto const mine  = partition_of(keys);
        auto const truth = canonical_partition(*brute);
        size_t     bad   = N;
        for (size_t i = 0; i < N && bad == N; ++i) {
          if (mine[i] != truth[i]) {
            bad = i;
          }
        }
        out.expect(bad == N, [&] {
          return std::string(relation_name(rel)) + "-classes differ from brute force at "
                 + to_compact_string(xs[bad]);
        });
      }

      for (size_t i = 0; i < N; ++i) {
        auto const& x  = xs[i];
        auto const  fl = reg_membership(ctx, x);
        bool        p1 = false, p2 = false;
        for (size_t y = 0; y < N && !(p1 && p2); ++y) {
          p1 = p1 || table(i, y) == i;
          p2 = p2 || table(y, i) == i;
        }
        out.expect(fl.in_P == g.regular[i], [&] {
          return "regularity of " + to_compact_string(x) + " disagrees with brute force";
        });
        out.expect(fl.in_P1 == p1 && fl.in_P2 == p2, [&] {
          return "P1/P2 flags of " + to_compact_string(x) + " disagree with brute force";
        });
        out.expect(fl.in_P == (fl.in_P1 && fl.in_P2) && fl.in_P3 == fl.in_P,
                   [&] { return "P != P1 n P2 or P3 != P at " + to_compact_string(x); });
      }
    }

    void check_counts(Job const& job, CheckReport& out) {
      auto const&  ctx = job.ctx;
      unsigned const q = ctx.q();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      BigInt const p_formula = regular_count(q, m, n, r) + (job.fault("counts") ? 1 : 0);

      auto const reg = regular_elements(ctx, {}, job.cfg.budget);
      out.expect(BigInt(reg.size()) == p_formula, [&] {
        return "|P| formula " + big(p_formula) + " != parametric " + std::to_string(reg.size());
      });
      std::uint64_t scanned = 0;
      std::map<size_t, std::uint64_t> by_rank;
      for_each_matrix(
          ctx.field(), m, n,
          [&](Matrix const& x) {
            ++by_rank[rank(x)];
            scanned += reg_membership(ctx, x).in_P;
          },
          {}, job.cfg.budget);
      out.expect(BigInt(scanned) == p_formula, [&] {
        return "|P| formula " + big(p_formula) + " != scan " + std::to_string(scanned);
      });

      for (size_t s = 0; s <= std::min(m, n); ++s) {
        auto const mc = mmn_dclass_counts(q, m, n, s);
        out.expect(mc.size == by_rank[s], [&] {
          return "|D_" + std::to_string(s) + "(M_mn)| formula " + big(mc.size) + " != "
                 + std::to_string(by_rank[s]);
        });
      }

      for (size_t s = 0; s <= r; ++s) {
        auto const c = sandwich_counts(q, m, n, r, s);
        std::map<GreenKey, std::uint64_t> R, L, H, Rhat, Lhat;
        std::map<std::pair<SubspaceKey, SubspaceKey>, std::uint64_t> Hhat;
        std::uint64_t d = 0;
        for (auto const& x : reg) {
          if (rank(x) != s) {
            continue;
          }
          ++d;
          ++R[green_key(ctx, x, Relation::R)];
          ++L[green_key(ctx, x, Relation::L)];
          ++H[green_key(ctx, x, Relation::H)];
          auto const a = phi_project(ctx, x);
          ++Hhat[{col_space_key(a), row_space_key(a)}];
        }
        auto uniform = [](auto const& mp, BigInt const& want) {
          return std::all_of(mp.begin(), mp.end(),
                             [&](auto const& kv) { return BigInt(kv.second) == want; });
        };
        std::string const tag = "D_" + std::to_string(s) + "^J: ";
        out.expect(BigInt(d) == c.dSize, [&] {
          return tag + "size " + std::to_string(d) + " != " + big(c.dSize);
        });
        out.expect(BigInt(R.size()) == c.nR && uniform(R, c.rSize),
                   [&] { return tag + "R-class count/size mismatch"; });
        out.expect(BigInt(L.size()) == c.nL && uniform(L, c.lSize),
                   [&] { return tag + "L-class count/size mismatch"; });
        out.expect(BigInt(H.size()) == c.nH && uniform(H, c.hSize),
                   [&] { return tag + "H-class count/size mismatch"; });
        out.expect(BigInt(Hhat.size()) == c.nHhat && uniform(Hhat, c.hhatSize),
                   [&] { return tag + "H^-class count/size mismatch"; });
      }
    }

    void check_idempotents(Job const& job, CheckReport& out) {
      auto const&  ctx = job.ctx;
      unsigned const q = ctx.q();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      std::vector<std::uint64_t> brute;
      std::map<size_t, std::uint64_t> by_rank;
      for_each_matrix(
          ctx.field(), m, n,
          [&](Matrix const& x) {
            if (ctx.star_normalized(x, x) == x) {
              brute.push_back(x.encode());
              ++by_rank[rank(x)];
            }
          },
          {}, job.cfg.budget);
      std::vector<std::uint64_t> param;
      for (auto const& e : idempotents(ctx, {}, job.cfg.budget)) {
        param.push_back(e.encode());
      }
      out.expect(param == brute, [&] {
        return "parametric idempotents (" + std::to_string(param.size())
               + ") differ from brute force (" + std::to_string(brute.size()) + ")";
      });
      BigInt const total = sandwich_idempotents_total(q, m, n, r) + (job.fault("idempotents") ? 1 : 0);
      out.expect(total == BigInt(brute.size()), [&] {
        return "|E| formula " + big(total) + " != " + std::to_string(brute.size());
      });
      for (size_t s = 0; s <= r; ++s) {
        BigInt const want = sandwich_idempotents(q, m, n, r, s);
        out.expect(want == by_rank[s], [&] {
          return "|E(D_" + std::to_string(s) + "^J)| formula " + big(want)
                 + " != " + std::to_string(by_rank[s]);
        });
      }
      if (checked_pow(q, r * r, job.cfg.budget) <= job.cfg.budget) {
        std::map<size_t, std::uint64_t> mr;
        for_each_matrix(ctx.field(), r, r, [&](Matrix const& a) {
          if (a * a == a) {
            ++mr[rank(a)];
          }
        });
        for (size_t s = 0; s <= r; ++s) {
          BigInt const want = mr_idempotents(q, r, s);
          out.expect(want == mr[s], [&] {
            return "|E(D_" + std::to_string(s) + "(M_r))| formula " + big(want)
                   + " != " + std::to_string(mr[s]);
          });
        }
      }
    }

    void check_closure(Job const& job, CheckReport& out) {
      auto const& ctx = job.ctx;
      size_t const r  = ctx.r();
      auto const cl   = closure(ctx, idempotents(ctx, {}, job.cfg.budget), job.cfg.budget);
      std::vector<std::uint64_t> want;
      for (auto const& x : regular_elements(ctx, {}, job.cfg.budget)) {
        if (rank(x) < r) {
          want.push_back(x.encode());
        }
      }
      for (auto const& e : idempotents(ctx, r, job.cfg.budget)) {
        want.push_back(e.encode());
      }
      std::sort(want.begin(), want.end());
      std::vector<std::uint64_t> got;
      for (auto const& x : cl) {
        got.push_back(x.encode());
      }
      out.expect(got == want, [&] {
        return "<E(P)> has " + std::to_string(got.size()) + " elements, (P \\ D_r^J) u E(D_r^J) has "
               + std::to_string(want.size());
      });
    }

    void check_gensets(Job const& job, CheckReport& out) {
      auto const& ctx = job.ctx;
      size_t const r  = ctx.r();
      std::vector<RankTarget> targets = {{RankTarget::Kind::full, 0},
                                         {RankTarget::Kind::reg, 0},
                                         {RankTarget::Kind::idem, 0}};
      for (size_t s = 0; s <= r; ++s) {
        targets.push_back({RankTarget::Kind::ideal, s});
      }
      size_t ran = 0;
      for (auto const& t : targets) {
        GenSetReport rep;
        try {
          rep = genset(ctx, t, true, job.cfg.budget);
        } catch (Error const& e) {
          if (e.code() == Errc::unsupported_parameters) {
            continue;
          }
          throw;
        }
        ++ran;
        std::string const tag = t.to_string() + ": ";
        BigInt const want = rep.formula_size + (job.fault("gensets") ? 1 : 0);
        out.expect(BigInt(rep.gens.size()) == want, [&] {
          return tag + std::to_string(rep.gens.size()) + " generators, formula " + big(want);
        });
        out.expect(rep.certified, [&] {
          return tag + "closure " + std::to_string(rep.closure_size) + " != target "
                 + std::to_string(rep.target_size);
        });
        if (t.kind == RankTarget::Kind::idem || t.kind == RankTarget::Kind::ideal) {
          bool const idem = std::all_of(rep.gens.begin(), rep.gens.end(), [&](Matrix const& g) {
            return ctx.star_normalized(g, g) == g;
          });
          // ideal(r) reuses the reg construction, which is not idempotent.
          if (t.kind == RankTarget::Kind::idem || t.s < r) {
            out.expect(idem, [&] { return tag + "a generator is not idempotent"; });
          }
        }
        auto nec = necessity_check(ctx, rep, job.cfg.budget);
        for (auto& f : nec.failures) {
          f = tag + f;
        }
        out.merge(nec);
      }
      if (ran == 0) {
        throw Skip{"no rank formula applies"};
      }
    }

    void check_hhat(Job const& job, CheckReport& out) {
      auto const&  ctx = job.ctx;
      unsigned const q = ctx.q();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      Field const& f = ctx.field();
      for (size_t s = 0; s <= r; ++s) {
        auto const c = sandwich_counts(q, m, n, r, s);
        std::map<std::pair<SubspaceKey, SubspaceKey>, Matrix> reps;
        for_each_matrix(
            f, r, r,
            [&](Matrix const& a) { reps.emplace(std::make_pair(col_space_key(a), row_space_key(a)), a); },
            s, job.cfg.budget);
        out.expect(BigInt(reps.size()) == c.nHhat, [&] {
          return "rank " + std::to_string(s) + ": " + std::to_string(reps.size())
                 + " H^-classes, formula " + big(c.nHhat);
        });
        for (auto const& [key, a] : reps) {
          Matrix const x   = man_compose(ctx, {Matrix(f, m - r, r), a, Matrix(f, r, n - r)});
          auto const   rep = hhat_structure(ctx, x, job.cfg.budget);
          std::string const tag = "H^ of " + to_compact_string(x) + ": ";
          out.merge(rep.check);
          out.expect(BigInt(rep.size) == c.hhatSize, [&] {
            return tag + "size " + std::to_string(rep.size) + " != " + big(c.hhatSize);
          });
          out.expect(BigInt(rep.hclass_size) == c.hSize && rep.hclasses * rep.hclass_size == rep.size,
                     [&] { return tag + "H^J-classes are not uniform of size |GL_s|"; });
          bool const group = rank(a * a) == s;
          out.expect(rep.is_group_phi == group, [&] {
            return tag + "group flag disagrees with rank(A^2) = rank(A)";
          });
          std::uint64_t const want_groups =
              group ? to_u64(ipow(q, s * (m + n - 2 * r))) : 0;
          out.expect(rep.group_hclasses == want_groups, [&] {
            return tag + std::to_string(rep.group_hclasses) + " group H^J-classes, expected "
                   + std::to_string(want_groups);
          });
        }
      }
    }

    void check_pullback(Job const& job, CheckReport& out) {
      auto const& ctx = job.ctx;
      out.merge(pullback_check(ctx, job.cfg.budget));
      auto const cong = man_congruence_check(ctx, job.cfg.budget);
      out.merge(cong.check);
      BigInt const p = regular_count(ctx.q(), ctx.m(), ctx.n(), ctx.r());
      out.expect(BigInt(cong.p_size) == p, [&] {
        return "image of [.,.,.] has " + std::to_string(cong.p_size) + " elements, |P| = " + big(p);
      });
    }

    Matrix random_invertible(Field const& f, size_t k, std::mt19937_64& rng) {
      std::uniform_int_distribution<unsigned> pick(0, f.q() - 1);
      for (;;) {
        Matrix x(f, k, k);
        for (size_t i = 0; i < k; ++i) {
          for (size_t j = 0; j < k; ++j) {
            x.at(i, j) = static_cast<Elem>(pick(rng));
          }
        }
        if (is_invertible(x)) {
          return x;
        }
      }
    }

    void check_iso(Job const& job, CheckReport& out) {
      auto const&  ctx = job.ctx;
      Field const& f   = ctx.field();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      std::mt19937_64 rng(1000003u * f.q() + 1009u * m + 31u * n + r);
      Matrix const    a = random_invertible(f, n, rng) * Matrix::corner_identity(f, n, m, r)
                       * random_invertible(f, m, rng);
      auto const other = SandwichContext::make(f, m, n, a);

      auto const v = classify_iso(ctx, other);
      out.expect(v.isomorphic && v.witness.has_value(), [&] {
        return "M^J and M^A with A = " + to_compact_string(a) + " not recognised as isomorphic";
      });
      if (v.witness && job.size * job.size <= job.cfg.budget) {
        auto w = verify_witness(ctx, other, *v.witness, job.cfg.budget);
        for (auto& fl : w.failures) {
          fl = "witness: " + fl;
        }
        out.merge(w);
      }
      for (size_t r2 = 0; r2 <= std::min(m, n); ++r2) {
        if (r2 == r) {
          continue;
        }
        auto const w = classify_iso(ctx, SandwichContext::normalized(f, m, n, r2));
        out.expect(!w.isomorphic, [&] {
          return "ranks " + std::to_string(r) + " and " + std::to_string(r2) + " reported isomorphic";
        });
      }
      if (m != n) {
        auto const t = classify_iso(ctx, SandwichContext::normalized(f, n, m, r));
        out.expect(t.isomorphic == (r == 0), [&] {
          return std::string("transposed shape ") + (r == 0 ? "not " : "") + "reported isomorphic";
        });
      }
    }

    void check_mididentity(Job const& job, CheckReport& out) {
      require_table(job);
      auto const& ctx = job.ctx;
      out.merge(mididentity_check(ctx, job.cfg.budget));
      BigInt const p = regular_count(ctx.q(), ctx.m(), ctx.n(), ctx.r());
      if (p <= 200) {
        out.merge(rp_check(ctx, 200));
      }
    }

    void check_theory(Job const& job, CheckReport& out) {
      auto const&  ctx = job.ctx;
      Field const& f   = ctx.field();
      size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
      std::uint64_t const big_hom = checked_pow(f.q(), std::max(m, n) * std::max(m, n), 4096);
      if (big_hom > 4096) {
        throw Skip{"a hom-set exceeds 4096 elements"};
      }
      MatrixPartialSemigroup const s(f, {m, n});
      Matrix const j = Matrix::corner_identity(f, n, m, r);
      out.merge(verify_green_sij(s, 0, 1, j.encode(), 4096));
      out.merge(verify_corner_laws(s, 0, 1, j.encode(), inner_inverse(j).encode()));
    }

    using GroupFn = void (*)(Job const&, CheckReport&);

    GroupFn group_fn(std::string const& name) {
      static std::map<std::string, GroupFn> const fns = {
          {"green", check_green},       {"counts", check_counts},
          {"idempotents", check_idempotents}, {"closure", check_closure},
          {"gensets", check_gensets},   {"hhat", check_hhat},
          {"pullback", check_pullback}, {"iso", check_iso},
          {"mididentity", check_mididentity}, {"theory", check_theory}};
      return fns.at(name);
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Grid
  ////////////////////////////////////////////////////////////////////////

  Grid Grid::parse(std::string const& text) {
    Grid g;
    for (auto const& part : split(text, ';')) {
      if (part.empty()) {
        continue;
      }
      auto const eq = part.find('=');
      if (eq == std::string::npos) {
        fail(Errc::parse_error, "grid entry '" + part + "' lacks '='");
      }
      std::string const key = trim(part.substr(0, eq));
      std::string const val = trim(part.substr(eq + 1));
      if (key == "q") {
        g.fields.clear();
        for (auto const& lit : split(val, ',')) {
          g.fields.push_back(Field::parse(lit).literal());
        }
      } else if (key == "m") {
        g.ms = parse_range_list(val);
      } else if (key == "n") {
        g.ns = parse_range_list(val);
      } else if (key == "r") {
        g.rs = parse_range_list(val);
      } else if (key == "max") {
        g.max_size = parse_size(val);
      } else {
        fail(Errc::parse_error, "unknown grid key '" + key + "' (q, m, n, r, max)");
      }
    }
    if (g.fields.empty() || g.ms.empty() || g.ns.empty()) {
      fail(Errc::parse_error, "empty grid");
    }
    return g;
  }

  std::string Grid::to_string() const {
    std::string qs;
    for (auto const& f : fields) {
      qs += (qs.empty() ? "" : ",") + f;
    }
    std::string out = "q=" + qs + ";m=" + join_sizes(ms) + ";n=" + join_sizes(ns);
    if (!rs.empty()) {
      out += ";r=" + join_sizes(rs);
    }
    return out + ";max=" + std::to_string(max_size);
  }

  std::vector<Instance> Grid::instances() const {
    std::vector<Instance> out;
    for (auto const& lit : fields) {
      unsigned const q = Field::parse(lit).q();
      for (size_t m : ms) {
        for (size_t n : ns) {
          if (m == 0 || n == 0 || checked_pow(q, m * n, max_size) > max_size) {
            continue;
          }
          for (size_t r = 0; r <= std::min(m, n); ++r) {
            if (rs.empty() || std::binary_search(rs.begin(), rs.end(), r)) {
              out.push_back({lit, m, n, r});
            }
          }
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Runner
  ////////////////////////////////////////////////////////////////////////

  InstanceResult verify_instance(Instance const& inst, VerifyConfig const& cfg) {
    InstanceResult res;
    res.inst      = inst;
    Field const f = Field::parse(inst.field);
    Job const   job{SandwichContext::normalized(f, inst.m, inst.n, inst.r), cfg,
                  checked_pow(f.q(), inst.m * inst.n, std::numeric_limits<std::uint64_t>::max() / 2)};
    for (auto const& name : verify_groups) {
      if (!cfg.only.empty() && !cfg.only.count(name)) {
        continue;
      }
      GroupResult g;
      g.name = name;
      try {
        group_fn(name)(job, g.report);
      } catch (Skip const& s) {
        g.skipped = s.reason;
      } catch (Error const& e) {
        if (e.code() == Errc::budget_exceeded) {
          g.skipped = e.what();
        } else {
          g.report.expect(false, [&] { return std::string("error: ") + e.what(); });
        }
      }
      res.ok = res.ok && g.report.ok;
      res.groups.push_back(std::move(g));
    }
    return res;
  }

  VerifyReport run_verify(VerifyConfig const& cfg) {
    for (auto const& name : cfg.only) {
      if (std::find(verify_groups.begin(), verify_groups.end(), name) == verify_groups.end()) {
        fail(Errc::parse_error, "unknown check group '" + name + "'");
      }
    }
    auto const                  insts = cfg.grid.instances();
    std::vector<InstanceResult> results(insts.size());
    std::atomic<size_t>         next{0};
    auto worker = [&] {
      for (size_t i; (i = next.fetch_add(1)) < insts.size();) {
        results[i] = verify_instance(insts[i], cfg);
      }
    };
    unsigned const nthreads =
        std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(insts.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }

    VerifyReport rep;
    rep.grid = cfg.grid.to_string();
    for (auto& r : results) {
      for (auto const& g : r.groups) {
        rep.checks += g.report.checks;
        rep.failed += g.report.failed;
      }
      rep.ok = rep.ok && r.ok;
      rep.instances.push_back(std::move(r));
    }
    return rep;
  }

  std::string to_json(VerifyReport const& rep) {
    ordered_json j;
    j["grid"]      = rep.grid;
    j["instances"] = ordered_json::array();
    for (auto const& r : rep.instances) {
      ordered_json ij = {{"q", r.inst.field}, {"m", r.inst.m}, {"n", r.inst.n},
                         {"r", r.inst.r},     {"ok", r.ok}};
      ij["groups"] = ordered_json::object();
      for (auto const& g : r.groups) {
        if (!g.skipped.empty()) {
          ij["groups"][g.name] = {{"skipped", g.skipped}};
          continue;
        }
        ij["groups"][g.name] = {{"ok", g.report.ok},
                                {"checks", g.report.checks},
                                {"failed", g.report.failed},
                                {"failures", g.report.failures}};
      }
      j["instances"].push_back(std::move(ij));
    }
    j["summary"] = {{"instances", rep.instances.size()},
                    {"checks", rep.checks},
                    {"failed", rep.failed},
                    {"ok", rep.ok}};
    return j.dump(2) + "\n";
  }

  std::string to_text(VerifyReport const& rep) {
    std::ostringstream out;
    out << "grid " << rep.grid << "\n";
    for (auto const& r : rep.instances) {
      std::uint64_t checks = 0;
      size_t        skipped = 0;
      for (auto const& g : r.groups) {
        checks += g.report.checks;
        skipped += !g.skipped.empty();
      }
      out << "q=" << r.inst.field << " m=" << r.inst.m << " n=" << r.inst.n << " r=" << r.inst.r
          << ": " << (r.ok ? "ok" : "FAIL") << " (" << checks << " checks";
      if (skipped) {
        out << ", " << skipped << " groups skipped";
      }
      out << ")\n";
      for (auto const& g : r.groups) {
        for (auto const& f : g.report.failures) {
          out << "  [" << g.name << "] " << f << "\n";
        }
      }
    }
    out << (rep.ok ? "PASS" : "FAIL") << ": " << rep.instances.size() << " instances, "
        << rep.checks << " checks, " << rep.failed << " failed\n";
    return out.str();
  }

}  // namespace linsand::cli
