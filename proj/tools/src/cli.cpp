#include "linsand_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "linsand/combinatorics.hpp"
#include "linsand/eggbox.hpp"
#include "linsand/error.hpp"
#include "linsand/generators.hpp"
#include "linsand/sandwich.hpp"
#include "linsand_cli/verify.hpp"

namespace linsand::cli {

  namespace {
    using ordered_json = nlohmann::ordered_json;

    // Flags shared by the single-context subcommands.
    struct ContextOpts {
      std::string   q;
      size_t        m = 0, n = 0, rank = 0;
      std::string   file;
      CLI::Option*  m_opt    = nullptr;
      CLI::Option*  n_opt    = nullptr;
      CLI::Option*  rank_opt = nullptr;
      CLI::Option*  q_opt    = nullptr;
      CLI::Option*  file_opt = nullptr;

      void add(CLI::App* app) {
        q_opt    = app->add_option("--q", q, "field literal: p, p^k or p^k/c0,...,ck");
        m_opt    = app->add_option("--m", m, "rows of the elements");
        n_opt    = app->add_option("--n", n, "columns of the elements");
        rank_opt = app->add_option("--rank", rank, "use A = J_{n,m,rank}");
        file_opt = app->add_option("--sandwich-file", file, "read the n x m sandwich matrix A")
                       ->check(CLI::ExistingFile);
        rank_opt->excludes(file_opt);
      }
    };

    struct OutputOpts {
      std::string   format = "text";
      std::string   out;
      std::uint64_t budget = 0;
      CLI::Option*  budget_opt = nullptr;

      void add(CLI::App* app, std::vector<std::string> formats, std::string def) {
        format = def;
        app->add_option("--format", format, "output format")
            ->check(CLI::IsMember(formats))
            ->capture_default_str();
        app->add_option("--out", out, "write to this file instead of stdout");
        budget_opt = app->add_option("--budget", budget, "enumeration budget (elements)")
                         ->check(CLI::PositiveNumber);
      }
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        fail(Errc::parse_error, "cannot read " + path);
      }
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    }

    std::uint64_t resolve_budget(OutputOpts const& o) {
      if (o.budget_opt && o.budget_opt->count()) {
        return o.budget;
      }
      if (char const* env = std::getenv("SANDWICH_BUDGET")) {
        std::string const s = env;
        size_t            used = 0;
        std::uint64_t     v    = 0;
        try {
          v = std::stoull(s, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        if (used == 0 || used != s.size() || v == 0 || s[0] == '-') {
          fail(Errc::parse_error, "SANDWICH_BUDGET must be a positive integer, got '" + s + "'");
        }
        return v;
      }
      return default_enumeration_budget;
    }

    SandwichContext make_context(std::optional<std::string> q, std::optional<size_t> m,
                                 std::optional<size_t> n, std::optional<size_t> r,
                                 std::optional<std::string> file) {
      if (file && r) {
        fail(Errc::parse_error, "give either a rank or a sandwich file, not both");
      }
      if (file) {
        Matrix const a = matrix_from_text(read_file(*file));
        if (q && Field::parse(*q) != a.field()) {
          fail(Errc::parse_error, "--q " + *q + " does not match the field of " + *file);
        }
        if ((m && *m != a.cols()) || (n && *n != a.rows())) {
          fail(Errc::dimension_mismatch, "sandwich file holds a " + std::to_string(a.rows()) + "x"
                                             + std::to_string(a.cols())
                                             + " matrix; expected n x m");
        }
        return SandwichContext::make(a.field(), a.cols(), a.rows(), a);
      }
      if (!q || !m || !n || !r) {
        fail(Errc::parse_error, "need --q, --m, --n and either --rank or --sandwich-file");
      }
      return SandwichContext::normalized(Field::parse(*q), *m, *n, *r);
    }

    SandwichContext make_context(ContextOpts const& o) {
      auto opt = [](CLI::Option* p, auto const& v) {
        using T = std::decay_t<decltype(v)>;
        return p->count() ? std::optional<T>(v) : std::nullopt;
      };
      return make_context(opt(o.q_opt, o.q), opt(o.m_opt, o.m), opt(o.n_opt, o.n),
                          opt(o.rank_opt, o.rank), opt(o.file_opt, o.file));
    }

    // "q=2,m=2,n=2,rank=0" or "q=2,file=A.mat".
    SandwichContext context_from_spec(std::string const& spec) {
      std::map<std::string, std::string> kv;
      std::istringstream                 in(spec);
      std::string                        item;
      while (std::getline(in, item, ',')) {
        auto const eq = item.find('=');
        if (eq == std::string::npos || !kv.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
          fail(Errc::parse_error, "bad context '" + spec + "' (want q=..,m=..,n=..,rank=..)");
        }
      }
      auto num = [&](char const* key) -> std::optional<size_t> {
        auto it = kv.find(key);
        if (it == kv.end()) {
          return std::nullopt;
        }
        size_t used = 0;
        size_t v    = 0;
        try {
          v = std::stoul(it->second, &used);
        } catch (std::exception const&) {
          used = 0;
        }
        if (used == 0 || used != it->second.size()) {
          fail(Errc::parse_error, std::string("bad ") + key + " in '" + spec + "'");
        }
        return v;
      };
      auto str = [&](char const* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        return it == kv.end() ? std::nullopt : std::optional<std::string>(it->second);
      };
      for (auto const& [k, v] : kv) {
        if (k != "q" && k != "m" && k != "n" && k != "rank" && k != "r" && k != "file") {
          fail(Errc::parse_error, "unknown key '" + k + "' in '" + spec + "'");
        }
      }
      auto r = num("rank");
      if (!r) {
        r = num("r");
      }
      return make_context(str("q"), num("m"), num("n"), r, str("file"));
    }

    void emit(std::string const& text, std::string const& path, std::ostream& out) {
      if (path.empty()) {
        out << text;
        return;
      }
      std::ofstream f(path, std::ios::binary);
      if (!f || !(f << text)) {
        fail(Errc::parse_error, "cannot write " + path);
      }
    }

    std::string big(BigInt const& x) {
      return x.str();
    }

    ////////////////////////////////////////////////////////////////////////
    // analyze
    ////////////////////////////////////////////////////////////////////////

    std::string cmd_analyze(SandwichContext const& ctx, std::string const& format,
                            std::uint64_t budget) {
      unsigned const q = ctx.q();
      size_t const   m = ctx.m(), n = ctx.n(), r = ctx.r();
      BigInt const   total = ipow(q, m * n);
      BigInt const   p     = regular_count(q, m, n, r);
      bool const     small = total <= budget;

      ordered_json j;
      j["params"] = {{"q", ctx.field().literal()}, {"m", m}, {"n", n}, {"r", r}};
      j["A"]      = to_compact_string(ctx.A());
      j["size"]   = big(total);
      j["zeroSemigroup"] = r == 0;
      j["regular"]       = big(p);
      j["nonRegular"]    = big(total - p);
      j["idempotents"]   = big(sandwich_idempotents_total(q, m, n, r));

      // Enumerated cross-checks, keyed by rank.
      std::map<size_t, std::uint64_t> enum_d, enum_e;
      std::uint64_t                   enum_p = 0;
      if (small) {
        for_each_matrix(
            ctx.field(), m, n,
            [&](Matrix const& x) {
              if (reg_membership(ctx, x).in_P) {
                ++enum_p;
                ++enum_d[rank(x)];
                enum_e[rank(x)] += ctx.star_normalized(x, x) == x;
              }
            },
            {}, budget);
        j["enumerated"] = {{"regular", enum_p}};
      }

      j["dclasses"] = ordered_json::array();
      for (size_t s = 0; s <= r; ++s) {
        auto const   c = sandwich_counts(q, m, n, r, s);
        ordered_json d = {{"s", s},
                          {"nR", big(c.nR)},
                          {"nL", big(c.nL)},
                          {"hSize", big(c.hSize)},
                          {"rSize", big(c.rSize)},
                          {"lSize", big(c.lSize)},
                          {"size", big(c.dSize)},
                          {"idempotents", big(sandwich_idempotents(q, m, n, r, s))},
                          {"hhatSize", big(c.hhatSize)}};
        if (small) {
          d["enumerated"] = {{"size", enum_d[s]}, {"idempotents", enum_e[s]}};
        }
        j["dclasses"].push_back(std::move(d));
      }
      auto const mc = maximal_dclasses(ctx);
      j["maximal"]  = {{"uniqueTop", mc.unique_top},
                       {"rank", mc.rank},
                       {"classCount", big(mc.class_count)},
                       {"classSize", big(mc.class_size)},
                       {"description", mc.description}};
      ordered_json ranks = ordered_json::object();
      for (std::string t : {"full", "reg", "idem"}) {
        try {
          ranks[t] = big(rank_formula(q, m, n, r, RankTarget::parse(t)));
        } catch (Error const& e) {
          if (e.code() != Errc::unsupported_parameters) {
            throw;
          }
          ranks[t] = nullptr;
        }
      }
      for (size_t s = 0; s < r; ++s) {
        ranks["ideal:" + std::to_string(s)] =
            big(rank_formula(q, m, n, r, {RankTarget::Kind::ideal, s}));
      }
      j["ranks"] = ranks;
      if (format == "json") {
        return j.dump(2) + "\n";
      }

      std::ostringstream out;
      out << "sandwich semigroup M_" << m << "x" << n << "^A over GF(" << ctx.field().literal()
          << "), rank(A) = " << r << "\n";
      out << "A = " << to_compact_string(ctx.A()) << "\n";
      out << "size q^{mn} = " << total << "\n";
      if (r == 0) {
        out << "zero semigroup: every product is the zero matrix\n";
      }
      out << "|P| (regular elements) = " << p;
      if (small) {
        out << "  [enumerated " << enum_p << "]";
      }
      out << "\nnon-regular elements = " << total - p << "\n";
      out << "idempotents = " << j["idempotents"].get<std::string>() << "\n";
      for (auto const& d : j["dclasses"]) {
        out << "D_" << d["s"].get<size_t>() << "^J: " << d["nR"].get<std::string>() << " x "
            << d["nL"].get<std::string>() << " grid, H-classes of size "
            << d["hSize"].get<std::string>() << ", size " << d["size"].get<std::string>()
            << ", idempotents " << d["idempotents"].get<std::string>();
        if (d.contains("enumerated")) {
          out << "  [enumerated " << d["enumerated"]["size"].get<std::uint64_t>() << ", "
              << d["enumerated"]["idempotents"].get<std::uint64_t>() << "]";
        }
        out << "\n";
      }
      out << "maximal classes: " << mc.description << "\n";
      for (auto const& [t, v] : ranks.items()) {
        out << "rank(" << t << ") = " << (v.is_null() ? std::string("n/a") : v.get<std::string>())
            << "\n";
      }
      return out.str();
    }

    ////////////////////////////////////////////////////////////////////////
    // generators
    ////////////////////////////////////////////////////////////////////////

    std::string cmd_generators(SandwichContext const& ctx, RankTarget target, bool certify,
                               std::string const& format, std::uint64_t budget) {
      auto rep = genset(ctx, target, certify, budget);
      if (format == "json") {
        return to_json(ctx, rep);
      }
      std::ostringstream out;
      out << "# target " << target.to_string() << " of " << ctx.describe() << "\n"
          << "# " << rep.gens.size() << " generators, rank formula " << rep.formula_size << "\n";
      if (certify) {
        out << "# closure " << rep.closure_size << " of target " << rep.target_size << ": "
            << (rep.certified ? "certified" : "NOT certified") << "\n";
      }
      out << "# " << rep.evidence << "\n\n";
      std::vector<Matrix> orig;
      for (auto const& g : rep.gens) {
        orig.push_back(ctx.from_normalized(g));
      }
      out << to_text(orig);
      return out.str();
    }

    ////////////////////////////////////////////////////////////////////////
    // classify
    ////////////////////////////////////////////////////////////////////////

    std::string cmd_classify(SandwichContext const& left, SandwichContext const& right,
                             std::string const& format, std::uint64_t budget, bool& failed) {
      auto const v = classify_iso(left, right);
      ordered_json j;
      j["left"]       = left.describe();
      j["right"]      = right.describe();
      j["isomorphic"] = v.isomorphic;
      j["reason"]     = v.reason;
      if (v.witness) {
        ordered_json w;
        w["kind"] = v.witness->kind == IsoWitness::Kind::conjugation ? "conjugation" : "bijection";
        BigInt const size = ipow(left.q(), left.m() * left.n());
        if (size * size <= budget) {
          auto const rep = verify_witness(left, right, *v.witness, budget);
          w["verified"]  = rep.ok;
          w["checks"]    = rep.checks;
          w["failures"]  = rep.failures;
          failed         = !rep.ok;
        } else {
          w["verified"] = nullptr;
        }
        j["witness"] = w;
      }
      if (format == "json") {
        return j.dump(2) + "\n";
      }
      std::ostringstream out;
      out << left.describe() << " vs " << right.describe() << "\n"
          << "isomorphic: " << (v.isomorphic ? "yes" : "no") << "\n"
          << "reason: " << v.reason << "\n";
      if (v.witness) {
        auto const& w = j["witness"];
        out << "witness: " << w["kind"].get<std::string>();
        if (w["verified"].is_null()) {
          out << " (not verified: exceeds budget)\n";
        } else {
          out << (w["verified"].get<bool>() ? " (verified, " : " (FAILED, ")
              << w["checks"].get<std::uint64_t>() << " checks)\n";
          for (auto const& f : w["failures"]) {
            out << "  " << f.get<std::string>() << "\n";
          }
        }
      }
      return out.str();
    }

    ////////////////////////////////////////////////////////////////////////
    // formulas
    ////////////////////////////////////////////////////////////////////////

    std::string cmd_formulas(unsigned q, size_t m, size_t n, size_t r, std::string const& format) {
      size_t const l = std::min(m, n);
      ordered_json j;
      j["params"]      = {{"q", q}, {"m", m}, {"n", n}, {"r", r}};
      j["size"]        = big(ipow(q, m * n));
      j["regular"]     = big(regular_count(q, m, n, r));
      j["idempotents"] = big(sandwich_idempotents_total(q, m, n, r));
      j["ordinary"]    = ordered_json::array();
      for (size_t s = 0; s <= l; ++s) {
        auto const c = mmn_dclass_counts(q, m, n, s);
        j["ordinary"].push_back({{"s", s}, {"nR", big(c.nR)}, {"nL", big(c.nL)},
                                 {"hSize", big(c.hSize)}, {"size", big(c.size)}});
      }
      j["sandwich"] = ordered_json::array();
      for (size_t s = 0; s <= r; ++s) {
        auto const c = sandwich_counts(q, m, n, r, s);
        j["sandwich"].push_back({{"s", s},
                                 {"nR", big(c.nR)},
                                 {"nL", big(c.nL)},
                                 {"nH", big(c.nH)},
                                 {"rSize", big(c.rSize)},
                                 {"lSize", big(c.lSize)},
                                 {"hSize", big(c.hSize)},
                                 {"size", big(c.dSize)},
                                 {"idempotents", big(sandwich_idempotents(q, m, n, r, s))},
                                 {"nHhat", big(c.nHhat)},
                                 {"hhatSize", big(c.hhatSize)},
                                 {"mrIdempotents", big(mr_idempotents(q, r, s))}});
      }
      ordered_json ranks = ordered_json::object();
      std::vector<RankTarget> targets = {{RankTarget::Kind::full, 0},
                                         {RankTarget::Kind::reg, 0},
                                         {RankTarget::Kind::idem, 0}};
      for (size_t s = 0; s <= r; ++s) {
        targets.push_back({RankTarget::Kind::ideal, s});
      }
      for (auto const& t : targets) {
        try {
          ranks[t.to_string()] = big(rank_formula(q, m, n, r, t));
        } catch (Error const& e) {
          if (e.code() != Errc::unsupported_parameters) {
            throw;
          }
          ranks[t.to_string()] = nullptr;
        }
      }
      j["ranks"] = ranks;
      if (format == "json") {
        return j.dump(2) + "\n";
      }
      std::ostringstream out;
      out << "q=" << q << " m=" << m << " n=" << n << " r=" << r << "\n"
          << "|M_mn| = " << j["size"].get<std::string>() << "\n"
          << "|P| = " << j["regular"].get<std::string>() << "\n"
          << "|E| = " << j["idempotents"].get<std::string>() << "\n";
      for (auto const& d : j["ordinary"]) {
        out << "D_" << d["s"].get<size_t>() << "(M_mn): " << d["nR"].get<std::string>() << " x "
            << d["nL"].get<std::string>() << ", |H| = " << d["hSize"].get<std::string>()
            << ", size " << d["size"].get<std::string>() << "\n";
      }
      for (auto const& d : j["sandwich"]) {
        out << "D_" << d["s"].get<size_t>() << "^J: " << d["nR"].get<std::string>() << " x "
            << d["nL"].get<std::string>() << ", |R| = " << d["rSize"].get<std::string>()
            << ", |L| = " << d["lSize"].get<std::string>() << ", |H| = "
            << d["hSize"].get<std::string>() << ", size " << d["size"].get<std::string>()
            << ", idempotents " << d["idempotents"].get<std::string>() << ", |H^| = "
            << d["hhatSize"].get<std::string>() << "\n";
      }
      for (auto const& [t, v] : ranks.items()) {
        out << "rank(" << t << ") = " << (v.is_null() ? std::string("n/a") : v.get<std::string>())
            << "\n";
      }
      return out.str();
    }

    int exit_for(Error const& e) {
      switch (e.code()) {
        case Errc::budget_exceeded:
          return exit_budget;
        case Errc::assertion_failure:
        case Errc::greedy_search_failed:
        case Errc::search_exhausted:
          return exit_failed;
        default:
          return exit_usage;
      }
    }
  }  // namespace

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations in sandwich semigroups of matrices over finite fields",
                 "linsand"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "linsand 0.1.0");

    // analyze
    ContextOpts analyze_ctx;
    OutputOpts  analyze_out;
    auto*       analyze = app.add_subcommand("analyze", "structure summary with formulas and counts");
    analyze_ctx.add(analyze);
    analyze_out.add(analyze, {"text", "json"}, "text");

    // eggbox
    ContextOpts egg_ctx;
    OutputOpts  egg_out;
    std::string scope = "reg";
    auto*       egg   = app.add_subcommand("eggbox", "eggbox diagrams of D^J-classes");
    egg_ctx.add(egg);
    egg_out.add(egg, {"json", "dot", "csv"}, "json");
    egg->add_option("--scope", scope, "all, reg, dclass:s or mdclass:s")->capture_default_str();

    // verify
    OutputOpts  ver_out;
    std::string grid = "q=2,3;m=1-3;n=1-3;max=1024";
    std::string only;
    unsigned    threads = 1;
    std::string fault;
    auto*       ver = app.add_subcommand("verify", "formula-vs-enumeration sweep over a grid");
    ver_out.add(ver, {"text", "json"}, "text");
    ver->add_option("--grid", grid, "q=..;m=lo-hi;n=lo-hi[;r=..][;max=N]")->capture_default_str();
    ver->add_option("--only", only, "comma-separated check groups");
    ver->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ver->add_option("--inject-fault", fault)->group("");

    // generators
    ContextOpts gen_ctx;
    OutputOpts  gen_out;
    std::string target = "full";
    bool        no_certify = false;
    auto*       gen = app.add_subcommand("generators", "minimum-size generating sets");
    gen_ctx.add(gen);
    gen_out.add(gen, {"text", "json"}, "text");
    gen->add_option("--target", target, "full, reg, idem or ideal:s")->capture_default_str();
    gen->add_flag("--no-certify", no_certify, "skip the closure certificate");

    // classify
    OutputOpts  cls_out;
    std::string left, right;
    auto*       cls = app.add_subcommand("classify", "decide isomorphism of two sandwich semigroups");
    cls_out.add(cls, {"text", "json"}, "text");
    cls->add_option("--left", left, "q=..,m=..,n=..,rank=.. (or file=path)")->required();
    cls->add_option("--right", right, "q=..,m=..,n=..,rank=.. (or file=path)")->required();

    // formulas
    OutputOpts  frm_out;
    std::string fq;
    size_t      fm = 0, fn = 0, fr = 0;
    auto*       frm = app.add_subcommand("formulas", "closed-form counts and ranks");
    frm_out.add(frm, {"text", "json"}, "text");
    frm->add_option("--q", fq, "field literal")->required();
    frm->add_option("--m", fm)->required();
    frm->add_option("--n", fn)->required();
    frm->add_option("--rank", fr)->required();

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
    }

    try {
      if (analyze->parsed()) {
        auto const ctx = make_context(analyze_ctx);
        emit(cmd_analyze(ctx, analyze_out.format, resolve_budget(analyze_out)), analyze_out.out, out);
      } else if (egg->parsed()) {
        auto const ctx = make_context(egg_ctx);
        auto const rep = eggbox(ctx, EggboxScope::parse(scope), resolve_budget(egg_out));
        std::string const text = egg_out.format == "dot"   ? to_dot(rep)
                                 : egg_out.format == "csv" ? to_csv(rep)
                                                           : to_json(rep);
        emit(text, egg_out.out, out);
      } else if (ver->parsed()) {
        VerifyConfig cfg;
        cfg.grid    = Grid::parse(grid);
        cfg.threads = threads;
        cfg.budget  = resolve_budget(ver_out);
        cfg.inject_fault = fault;
        std::istringstream in(only);
        for (std::string g; std::getline(in, g, ',');) {
          if (!g.empty()) {
            cfg.only.insert(g);
          }
        }
        auto const rep = run_verify(cfg);
        emit(ver_out.format == "json" ? to_json(rep) : to_text(rep), ver_out.out, out);
        if (!rep.ok) {
          err << "verify: " << rep.failed << " of " << rep.checks << " checks failed\n";
          return exit_failed;
        }
      } else if (gen->parsed()) {
        auto const ctx = make_context(gen_ctx);
        emit(cmd_generators(ctx, RankTarget::parse(target), !no_certify, gen_out.format,
                            resolve_budget(gen_out)),
             gen_out.out, out);
      } else if (cls->parsed()) {
        bool failed = false;
        emit(cmd_classify(context_from_spec(left), context_from_spec(right), cls_out.format,
                          resolve_budget(cls_out), failed),
             cls_out.out, out);
        if (failed) {
          return exit_failed;
        }
      } else if (frm->parsed()) {
        Field const f = Field::parse(fq);
        emit(cmd_formulas(f.q(), fm, fn, fr, frm_out.format), frm_out.out, out);
      }
    } catch (Error const& e) {
      err << "linsand: " << e.what() << "\n";
      return exit_for(e);
    } catch (std::exception const& e) {
      err << "linsand: " << e.what() << "\n";
      return exit_failed;
    }
    return exit_ok;
  }

}  // namespace linsand::cli
