// Acceptance criteria. Each criterion prints one PASS/FAIL line; run with a
// criterion number to check just that one (as ctest does).

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linsand/combinatorics.hpp"
#include "linsand/eggbox.hpp"
#include "linsand/error.hpp"
#include "linsand/generators.hpp"
#include "linsand/sandwich.hpp"
#include "linsand_cli/cli.hpp"
#include "linsand_cli/verify.hpp"

using namespace linsand;

namespace {

  struct Outcome {
    bool        pass = true;
    std::string detail;

    void require(bool cond, std::string const& why) {
      if (!cond && pass) {
        pass   = false;
        detail = why;
      }
    }
  };

  using SkipOk = std::function<bool(cli::Instance const&)>;

  // Runs the given verify groups over the default grid and requires every
  // group to have run on every instance, except where skip_ok allows.
  Outcome grid_groups(std::set<std::string> groups, SkipOk const& skip_ok = {}) {
    cli::VerifyConfig cfg;
    cfg.only       = groups;
    auto const rep = cli::run_verify(cfg);
    Outcome    out;
    std::uint64_t ran = 0;
    for (auto const& inst : rep.instances) {
      for (auto const& g : inst.groups) {
        std::string const where = "q=" + inst.inst.field + " m=" + std::to_string(inst.inst.m)
                                  + " n=" + std::to_string(inst.inst.n)
                                  + " r=" + std::to_string(inst.inst.r) + " [" + g.name + "]";
        if (!g.skipped.empty()) {
          out.require(skip_ok && skip_ok(inst.inst), where + " skipped: " + g.skipped);
          continue;
        }
        ++ran;
        out.require(g.report.ok, where + " " + (g.report.failures.empty() ? std::string("failed")
                                                                          : g.report.failures[0]));
      }
    }
    out.require(rep.instances.size() == 42, "grid has " + std::to_string(rep.instances.size())
                                                + " instances, expected 42");
    out.require(ran > 0, "nothing ran");
    if (out.pass) {
      out.detail = std::to_string(rep.instances.size()) + " instances, " + std::to_string(rep.checks)
                   + " checks";
    }
    return out;
  }

  Field const F2 = Field::parse("2");
  Field const F3 = Field::parse("3");

  SandwichContext ctx(Field const& f, size_t m, size_t n, size_t r) {
    return SandwichContext::normalized(f, m, n, r);
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome green_agreement() {
    return grid_groups({"green"});
  }

  Outcome eggbox_figure() {
    Outcome    out;
    auto const rep = eggbox(ctx(F3, 2, 3, 1), EggboxScope::parse("mdclass:1"));
    out.require(rep.dclasses.size() == 1, "expected one D-class");
    if (!out.pass) {
      return out;
    }
    auto const& d = rep.dclasses[0];
    out.require(d.row_keys.size() == 4, "R-classes: " + std::to_string(d.row_keys.size()));
    out.require(d.col_keys.size() == 13, "L-classes: " + std::to_string(d.col_keys.size()));
    out.require(d.cells.size() == 52, "cells: " + std::to_string(d.cells.size()));
    for (auto const& c : d.cells) {
      out.require(c.size == 2, "H-class of size " + std::to_string(c.size));
    }
    out.require(d.size == 104, "total " + std::to_string(d.size));
    if (out.pass) {
      out.detail = "4 x 13, H-classes of size 2, 104 elements";
    }
    return out;
  }

  Outcome regular_counts() {
    return grid_groups({"counts"});
  }

  Outcome idempotent_counts() {
    Outcome out = grid_groups({"idempotents"});
    auto const e = idempotents(ctx(F2, 2, 2, 1));
    out.require(e.size() == 5, "(2,2,2,1) has " + std::to_string(e.size()) + " idempotents");
    out.require(sandwich_idempotents_total(2, 2, 2, 1) == 5, "formula at (2,2,2,1) is not 5");
    return out;
  }

  Outcome idempotent_closure() {
    return grid_groups({"closure"});
  }

  Outcome generating_sets() {
    // No rank formula covers r = m = n, where the semigroup is M_n itself.
    Outcome out = grid_groups({"gensets"}, [](cli::Instance const& i) {
      return i.r == i.m && i.r == i.n;
    });
    struct Spot {
      unsigned   q;
      size_t     m, n, r;
      RankTarget t;
      size_t     want;
    };
    Spot const spots[] = {{2, 2, 2, 1, {RankTarget::Kind::full, 0}, 6},
                          {2, 2, 3, 2, {RankTarget::Kind::full, 0}, 7},
                          {2, 3, 2, 1, {RankTarget::Kind::reg, 0}, 5},
                          {2, 3, 2, 1, {RankTarget::Kind::idem, 0}, 5},
                          {2, 2, 3, 2, {RankTarget::Kind::ideal, 1}, 6}};
    for (auto const& s : spots) {
      auto const c   = ctx(Field::parse(std::to_string(s.q)), s.m, s.n, s.r);
      auto const rep = genset(c, s.t);
      std::string const tag = s.t.to_string() + " of " + c.describe();
      out.require(rep.gens.size() == s.want && rep.formula_size == s.want,
                  tag + ": " + std::to_string(rep.gens.size()) + " generators");
      out.require(rep.certified, tag + ": closure is not the target");
      out.require(necessity_check(c, rep).ok, tag + ": necessity check failed");
    }
    return out;
  }

  Outcome hhat_inflation() {
    return grid_groups({"hhat"});
  }

  Outcome pullback_congruence() {
    return grid_groups({"pullback"});
  }

  Outcome classification() {
    Outcome out = grid_groups({"iso"});
    auto const F4 = Field::parse("4");
    auto const v  = classify_iso(ctx(F2, 2, 2, 0), ctx(F4, 2, 1, 0));
    out.require(v.isomorphic && v.witness, "(2,2x2,0) vs (4,2x1,0) not isomorphic");
    if (v.witness) {
      out.require(verify_witness(ctx(F2, 2, 2, 0), ctx(F4, 2, 1, 0), *v.witness).ok,
                  "zero-semigroup witness does not verify");
    }
    out.require(!classify_iso(ctx(F2, 2, 2, 1), ctx(F2, 2, 2, 2)).isomorphic,
                "different ranks reported isomorphic");
    out.require(!classify_iso(ctx(F2, 2, 3, 1), ctx(F2, 3, 2, 1)).isomorphic,
                "different shapes with r >= 1 reported isomorphic");
    out.require(!classify_iso(ctx(F2, 2, 2, 1), ctx(F3, 2, 2, 1)).isomorphic,
                "different fields with r >= 1 reported isomorphic");
    out.require(!classify_iso(ctx(F2, 2, 2, 1), ctx(F4, 2, 2, 1)).isomorphic,
                "GF(2) and GF(4) with r >= 1 reported isomorphic");
    // Same q, different moduli: a field isomorphism conjugates one onto the other.
    auto const G8a = Field::parse("2^3/1,1,0,1");
    auto const G8b = Field::parse("2^3/1,0,1,1");
    auto const c8a = ctx(G8a, 1, 2, 1), c8b = ctx(G8b, 1, 2, 1);
    auto const w8  = classify_iso(c8a, c8b);
    out.require(w8.isomorphic && w8.witness && verify_witness(c8a, c8b, *w8.witness).ok,
                "GF(8) under two moduli: no verified witness");
    return out;
  }

  Outcome mididentity_rp() {
    return grid_groups({"mididentity"});
  }

  Outcome imported_theorems() {
    Outcome out;
    for (Field const& f : {F2, F3}) {
      std::string const tag = "q=" + f.literal();
      for (size_t n = 1; n <= 3; ++n) {
        // Idempotents of rank n-1 generate the singular part of M_n.
        std::vector<Matrix> e;
        for (auto const& a : enumerate_matrices(f, n, n, n - 1)) {
          if (a * a == a) {
            e.push_back(a);
          }
        }
        BigInt const singular = ipow(f.q(), n * n) - gl_order(f.q(), n);
        auto const   cl       = closure_ordinary(e);
        bool         all_singular = true;
        for (auto const& x : cl) {
          all_singular = all_singular && !is_invertible(x);
        }
        out.require(BigInt(cl.size()) == singular && all_singular,
                    tag + " n=" + std::to_string(n) + ": <E(D_{n-1})> has " + std::to_string(cl.size())
                        + " elements, singular part " + singular.str());

        // Ideals I_s are generated by [n s]_q idempotents of rank s.
        for (size_t s = 0; s < n; ++s) {
          auto const   g    = idempotent_generators(f, n, s);
          BigInt       want = 0;
          for (size_t t = 0; t <= s; ++t) {
            want += mmn_dclass_counts(f.q(), n, n, t).size;
          }
          out.require(BigInt(g.size()) == q_binomial(f.q(), n, s)
                          && BigInt(closure_ordinary(g).size()) == want,
                      tag + " n=" + std::to_string(n) + " s=" + std::to_string(s)
                          + ": idempotent generators of I_s wrong");
        }
        // GL_n is generated by two elements (one for n = 1).
        auto const gl = gl_genset(f, n);
        out.require(gl.minimal && gl.gens.size() == (n == 1 ? 1u : 2u)
                        && BigInt(gl.closure_size) == gl_order(f.q(), n)
                        && BigInt(closure_ordinary(gl.gens).size()) == gl_order(f.q(), n),
                    tag + " s=" + std::to_string(n) + ": GL generating pair not certified");
      }
    }
    if (out.pass) {
      out.detail = "n <= 3, q in {2, 3}";
    }
    return out;
  }

  std::string run_cli(std::vector<char const*> args, int& code) {
    std::ostringstream out, err;
    args.insert(args.begin(), "linsand");
    code = cli::run(static_cast<int>(args.size()), args.data(), out, err);
    return out.str();
  }

  Outcome determinism() {
    Outcome     out;
    int         c1 = -1, c4 = -1;
    auto const  one  = run_cli({"verify", "--format", "json", "--threads", "1"}, c1);
    auto const  four = run_cli({"verify", "--format", "json", "--threads", "4"}, c4);
    out.require(c1 == 0 && c4 == 0, "verify exit codes " + std::to_string(c1) + ", " + std::to_string(c4));
    out.require(!one.empty() && one == four, "JSON reports differ between 1 and 4 threads");
    if (out.pass) {
      out.detail = std::to_string(one.size()) + " identical bytes";
    }
    return out;
  }

  struct Criterion {
    char const* name;
    Outcome (*fn)();
  };

  Criterion const criteria[] = {
      {"Green's relations agree with brute force", green_agreement},
      {"eggbox of D_1(M_23(GF(3)))", eggbox_figure},
      {"regular element and class counts", regular_counts},
      {"idempotent counts", idempotent_counts},
      {"closure of the idempotents", idempotent_closure},
      {"generating sets", generating_sets},
      {"inflation of H^-classes", hhat_inflation},
      {"pullback and congruence", pullback_congruence},
      {"isomorphism classification", classification},
      {"mid-identities and RP", mididentity_rp},
      {"idempotent and GL generation in M_n", imported_theorems},
      {"verify is deterministic across thread counts", determinism},
  };

  bool run_one(size_t i) {
    Outcome o;
    try {
      o = criteria[i].fn();
    } catch (std::exception const& e) {
      o.pass   = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name
              << (o.detail.empty() ? "" : " (" + o.detail + ")") << std::endl;
    return o.pass;
  }

}  // namespace

int main(int argc, char** argv) {
  size_t const count = std::size(criteria);
  if (argc > 2) {
    std::cerr << "usage: acceptance [criterion 1-" << count << "]\n";
    return 2;
  }
  if (argc == 2) {
    char*      end = nullptr;
    long const k   = std::strtol(argv[1], &end, 10);
    if (*end || k < 1 || static_cast<size_t>(k) > count) {
      std::cerr << "criterion must be 1-" << count << "\n";
      return 2;
    }
    return run_one(static_cast<size_t>(k - 1)) ? 0 : 1;
  }
  bool ok = true;
  for (size_t i = 0; i < count; ++i) {
    ok = run_one(i) && ok;
  }
  return ok ? 0 : 1;
}
