#include "linsand/eggbox.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "linsand/error.hpp"

namespace linsand {

  namespace {
    using ordered_json = nlohmann::ordered_json;

    std::string key_string(GreenKey const& k) {
      switch (k.shape) {
        case GreenKey::Shape::rank:
          return "rank" + std::to_string(k.rank);
        case GreenKey::Shape::col:
          return k.col->to_string();
        case GreenKey::Shape::row:
          return k.row->to_string();
        case GreenKey::Shape::col_row:
          return k.col->to_string() + k.row->to_string();
        case GreenKey::Shape::singleton:
          return "X#" + std::to_string(k.element->encode());
      }
      return {};
    }

    GreenKey subspace_key(Relation rel, Matrix const& x) {
      GreenKey k;
      k.kind = rel;
      k.rank = rank(x);
      if (rel == Relation::R) {
        k.shape = GreenKey::Shape::col;
        k.col   = col_space_key(x);
      } else {
        k.shape = GreenKey::Shape::row;
        k.row   = row_space_key(x);
      }
      return k;
    }

    struct Build {
      Matrix                                            rep;
      std::map<GreenKey, size_t>                        rows, cols;
      std::map<std::pair<GreenKey, GreenKey>, EggCell>  cells;
    };

    // Order data per class representative.
    struct OrderData {
      Matrix      x;
      size_t      rank, rank_tl;
      SubspaceKey row, col, row_top, col_left;
    };
  }  // namespace

  EggboxScope EggboxScope::parse(std::string const& text) {
    EggboxScope sc;
    auto        colon = text.find(':');
    std::string head  = text.substr(0, colon);
    if (head == "all" && colon == std::string::npos) {
      sc.kind = Kind::all;
      return sc;
    }
    if (head == "reg" && colon == std::string::npos) {
      sc.kind = Kind::reg;
      return sc;
    }
    if ((head == "dclass" || head == "mdclass") && colon != std::string::npos) {
      sc.kind = head == "dclass" ? Kind::dclass : Kind::mdclass;
      try {
        size_t used = 0;
        sc.s        = std::stoul(text.substr(colon + 1), &used);
        if (used == text.size() - colon - 1) {
          return sc;
        }
      } catch (std::exception const&) {
      }
    }
    fail(Errc::parse_error, "bad scope '" + text + "' (all, reg, dclass:s, mdclass:s)");
  }

  std::string EggboxScope::to_string() const {
    switch (kind) {
      case Kind::all:
        return "all";
      case Kind::reg:
        return "reg";
      case Kind::dclass:
        return "dclass:" + std::to_string(s);
      case Kind::mdclass:
        return "mdclass:" + std::to_string(s);
    }
    return {};
  }

  EggboxReport eggbox(SandwichContext const& ctx, EggboxScope scope, std::uint64_t budget) {
    Field const& f = ctx.field();
    size_t const m = ctx.m(), n = ctx.n(), r = ctx.r();
    EggboxReport rep;
    rep.field = f.literal();
    rep.m     = m;
    rep.n     = n;
    rep.r     = r;
    rep.scope = scope;

    bool const ordinary = scope.kind == EggboxScope::Kind::mdclass;
    if ((scope.kind == EggboxScope::Kind::dclass || ordinary) && scope.s > std::min(m, n)) {
      fail(Errc::dimension_mismatch, "rank " + std::to_string(scope.s) + " exceeds min(m, n)");
    }

    std::map<GreenKey, Build> classes;
    auto add = [&](Matrix const& x) {
      GreenKey dk, rk, lk;
      bool     idem;
      if (ordinary) {
        dk      = GreenKey{Relation::D, GreenKey::Shape::rank, scope.s, {}, {}, {}};
        rk      = subspace_key(Relation::R, x);
        lk      = subspace_key(Relation::L, x);
        idem    = m == n && x * x == x;
      } else {
        dk   = green_key(ctx, x, Relation::D);
        rk   = green_key(ctx, x, Relation::R);
        lk   = green_key(ctx, x, Relation::L);
        idem = ctx.star_normalized(x, x) == x;
      }
      auto it = classes.find(dk);
      if (it == classes.end()) {
        it = classes.emplace(dk, Build{x, {}, {}, {}}).first;
      }
      Build& b = it->second;
      b.rows.emplace(rk, 0);
      b.cols.emplace(lk, 0);
      EggCell& c = b.cells[{rk, lk}];
      ++c.size;
      c.idempotents += idem;
    };

    switch (scope.kind) {
      case EggboxScope::Kind::all:
        for_each_matrix(f, m, n, add, {}, budget);
        break;
      case EggboxScope::Kind::reg:
        for (auto const& x : regular_elements(ctx, {}, budget)) {
          add(x);
        }
        break;
      case EggboxScope::Kind::dclass:
      case EggboxScope::Kind::mdclass:
        for_each_matrix(f, m, n, add, scope.s, budget);
        break;
    }

    for (auto& [dk, b] : classes) {
      EggDClass d{dk.rank, false, key_string(dk), b.rep, {}, {}, {}, 0, 0, 0};
      d.regular = ordinary ? m == n : reg_membership(ctx, b.rep).in_P;
      size_t i  = 0;
      for (auto& [k, idx] : b.rows) {
        idx = i++;
        d.row_keys.push_back(key_string(k));
      }
      i = 0;
      for (auto& [k, idx] : b.cols) {
        idx = i++;
        d.col_keys.push_back(key_string(k));
      }
      bool uniform = true;
      for (auto& [rl, c] : b.cells) {
        c.row      = b.rows.at(rl.first);
        c.col      = b.cols.at(rl.second);
        c.is_group = c.idempotents > 0;
        d.size += c.size;
        d.idempotents += c.idempotents;
        uniform = uniform && c.size == b.cells.begin()->second.size;
        d.cells.push_back(c);
      }
      std::sort(d.cells.begin(), d.cells.end(), [](EggCell const& a, EggCell const& b) {
        return std::make_pair(a.row, a.col) < std::make_pair(b.row, b.col);
      });
      d.h_size = uniform ? d.cells.front().size : 0;
      rep.dclasses.push_back(std::move(d));
    }
    // Rank first, then key order.
    std::stable_sort(rep.dclasses.begin(), rep.dclasses.end(),
                     [](EggDClass const& a, EggDClass const& b) { return a.s < b.s; });

    size_t const k = rep.dclasses.size();
    if (ordinary || k < 2) {
      return rep;
    }
    std::vector<OrderData> od;
    od.reserve(k);
    for (auto const& d : rep.dclasses) {
      Matrix const& x = d.representative;
      od.push_back({x, rank(x), rank(x.block(0, 0, r, r)), row_space_key(x), col_space_key(x),
                    row_space_key(x.block(0, 0, r, n)), col_space_key(x.block(0, 0, m, r))});
    }
    // Same test as dclass_leq, on precomputed keys.
    auto leq = [&](size_t a, size_t b) {
      return a == b || od[a].rank <= od[b].rank_tl || contains(od[b].row_top, od[a].row)
             || contains(od[b].col_left, od[a].col);
    };
    std::vector<boost::dynamic_bitset<>> up(k, boost::dynamic_bitset<>(k)),
        down(k, boost::dynamic_bitset<>(k));
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = 0; b < k; ++b) {
        if (leq(a, b)) {
          up[a].set(b);
          down[b].set(a);
        }
      }
    }
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = 0; b < k; ++b) {
        if (a != b && up[a].test(b) && (up[a] & down[b]).count() == 2) {
          rep.order.emplace_back(a, b);
        }
      }
    }
    return rep;
  }

  std::string to_json(EggboxReport const& rep) {
    ordered_json j;
    j["params"] = {{"q", rep.field}, {"m", rep.m}, {"n", rep.n}, {"r", rep.r}};
    j["scope"]  = rep.scope.to_string();
    j["dclasses"] = ordered_json::array();
    for (auto const& d : rep.dclasses) {
      j["dclasses"].push_back({{"s", d.s},
                               {"key", d.key},
                               {"regular", d.regular},
                               {"nR", d.row_keys.size()},
                               {"nL", d.col_keys.size()},
                               {"hSize", d.h_size},
                               {"idempotents", d.idempotents},
                               {"size", d.size}});
    }
    j["order"] = ordered_json::array();
    for (auto const& [a, b] : rep.order) {
      j["order"].push_back({a, b});
    }
    return j.dump(2) + "\n";
  }

  std::string to_dot(EggboxReport const& rep) {
    std::ostringstream out;
    out << "digraph eggbox {\n"
        << "  label=\"GF(" << rep.field << ") m=" << rep.m << " n=" << rep.n << " r=" << rep.r
        << " scope=" << rep.scope.to_string() << "\";\n"
        << "  node [shape=plaintext];\n";
    for (size_t i = 0; i < rep.dclasses.size(); ++i) {
      auto const& d = rep.dclasses[i];
      out << "  subgraph cluster_" << i << " {\n"
          << "    label=\"" << d.key << (d.regular ? "" : " (non-regular)") << "\";\n"
          << "    d" << i << " [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">";
      size_t c = 0;
      for (size_t row = 0; row < d.row_keys.size(); ++row) {
        out << "<tr>";
        for (size_t col = 0; col < d.col_keys.size(); ++col) {
          if (c < d.cells.size() && d.cells[c].row == row && d.cells[c].col == col) {
            auto const& cell = d.cells[c++];
            out << "<td" << (cell.is_group ? " bgcolor=\"gray\"" : "") << ">" << cell.size
                << "</td>";
          } else {
            out << "<td></td>";
          }
        }
        out << "</tr>";
      }
      out << "</table>>];\n  }\n";
    }
    for (auto const& [a, b] : rep.order) {
      out << "  d" << b << " -> d" << a << ";\n";
    }
    out << "}\n";
    return out.str();
  }

  std::string to_csv(EggboxReport const& rep) {
    std::string out = "s,rKey,lKey,size,isGroup,nIdempotents\n";
    for (auto const& d : rep.dclasses) {
      for (auto const& c : d.cells) {
        out += std::to_string(d.s) + "," + d.row_keys[c.row] + "," + d.col_keys[c.col] + ","
               + std::to_string(c.size) + "," + (c.is_group ? "1" : "0") + ","
               + std::to_string(c.idempotents) + "\n";
      }
    }
    return out;
  }

  std::string to_json(SandwichContext const& ctx, GenSetReport const& rep) {
    ordered_json j;
    j["params"] = {{"q", ctx.field().literal()}, {"m", ctx.m()}, {"n", ctx.n()}, {"r", ctx.r()}};
    j["target"]      = rep.target.to_string();
    j["size"]        = rep.gens.size();
    j["formulaSize"] = rep.formula_size.str();
    j["closureSize"] = rep.closure_size;
    j["targetSize"]  = rep.target_size;
    j["certified"]   = rep.certified;
    j["evidence"]    = rep.evidence;
    j["generators"]  = ordered_json::array();
    for (auto const& g : rep.gens) {
      j["generators"].push_back(to_compact_string(ctx.from_normalized(g)));
    }
    return j.dump(2) + "\n";
  }

}  // namespace linsand
