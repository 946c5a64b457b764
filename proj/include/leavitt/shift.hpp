#ifndef LEAVITT_SHIFT_HPP
#define LEAVITT_SHIFT_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

  // The graded matrix ring M_n(K[x^s, x^-s])(g_1, ..., g_n), where the matrix
  // unit e_ij(x^m) has degree m + g_i - g_j. Step 0 means M_n(K).
  //
  // Indices are 0-based in C++; text and JSON renderings are 1-based.
  struct Descriptor {
    std::size_t       step = 0;
    std::vector<long> shifts;

    std::size_t n() const noexcept {
      return shifts.size();
    }

    bool operator==(Descriptor const&) const = default;
  };

  inline long mod_step(long value, std::size_t step) {
    if (step == 0) {
      return value;
    }
    long s = static_cast<long>(step);
    return ((value % s) + s) % s;
  }

  inline bool divisible_by_step(long value, std::size_t step) {
    return step == 0 ? value == 0 : value % static_cast<long>(step) == 0;
  }

  inline long entry_degree(Descriptor const& d, std::size_t i, std::size_t j, long xdeg) {
    if (i >= d.n() || j >= d.n()) {
      throw Error("matrix index out of range");
    }
    if (!divisible_by_step(xdeg, d.step)) {
      throw Error("x-degree " + std::to_string(xdeg) + " is not a multiple of the step");
    }
    return xdeg + d.shifts[i] - d.shifts[j];
  }

  // L_K(E) for a connected graph of out-degree <= 1, presented at base v0:
  // n = |E^0|, s = cycle length (0 for a tree), shifts = lengths of the
  // base paths in order.
  inline Descriptor lpa_descriptor(Graph const& g, VertexId v0) {
    Base       b = make_base(g, v0);
    Descriptor d{b.step(), {}};
    for (auto const& p : base_paths(g, b)) {
      d.shifts.push_back(static_cast<long>(p.length()));
    }
    return d;
  }

  // Any acyclic graph: one block M_n(K)(|p_1|, ..., |p_n|) per sink, where the
  // p_i are all paths ending at that sink.
  inline std::vector<Descriptor> lpa_descriptors_acyclic(Graph const& g) {
    if (!is_acyclic(g)) {
      throw ScopeError("graph has a cycle; L_K(E) is not a finite sum of M_n(K)");
    }
    std::vector<Descriptor> out;
    auto                    paths = all_paths(g, g.vertex_count());
    for (VertexId v : sinks(g)) {
      Descriptor d{0, {}};
      for (auto const& p : paths) {
        if (path_range(g, p) == v) {
          d.shifts.push_back(static_cast<long>(p.length()));
        }
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  inline std::string render_descriptor(Descriptor const& d) {
    std::string out = "M" + std::to_string(d.n());
    if (d.step == 0) {
      out += "(K)";
    } else {
      auto s = std::to_string(d.step);
      out += "(K[x^" + s + ",x^-" + s + "])";
    }
    out += "(";
    for (std::size_t i = 0; i < d.n(); ++i) {
      out += (i ? "," : "") + std::to_string(d.shifts[i]);
    }
    return out + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Moves
  ////////////////////////////////////////////////////////////////////////

  // (g_1, ..., g_n) -> (g_pi(1), ..., g_pi(n)), realised by x -> P x P^-1.
  struct Permute {
    std::vector<std::size_t> pi;
    auto operator<=>(Permute const&) const = default;
  };

  // Every shift += delta; the identity map realises it.
  struct GlobalShift {
    long delta = 0;
    auto operator<=>(GlobalShift const&) const = default;
  };

  // Shift `index` += delta, where delta is the degree of a unit x^delta;
  // realised by x -> u^-1 x u with u = diag(.., x^delta, ..).
  struct UnitShift {
    std::size_t index = 0;
    long        delta = 0;
    auto operator<=>(UnitShift const&) const = default;
  };

  using Move = std::variant<Permute, GlobalShift, UnitShift>;

  inline bool is_permutation(std::vector<std::size_t> const& pi) {
    std::vector<bool> seen(pi.size(), false);
    for (auto x : pi) {
      if (x >= pi.size() || seen[x]) {
        return false;
      }
      seen[x] = true;
    }
    return true;
  }

  inline void check_move(Descriptor const& d, Move const& m) {
    if (auto const* p = std::get_if<Permute>(&m)) {
      if (p->pi.size() != d.n() || !is_permutation(p->pi)) {
        throw Error("Permute needs a permutation of 1.." + std::to_string(d.n()));
      }
    } else if (auto const* u = std::get_if<UnitShift>(&m)) {
      if (u->index >= d.n()) {
        throw Error("UnitShift index out of range");
      }
      if (d.step == 0 || u->delta == 0 || !divisible_by_step(u->delta, d.step)) {
        throw Error("UnitShift delta " + std::to_string(u->delta)
                    + " is not a nonzero multiple of the step " + std::to_string(d.step));
      }
    }
  }

  inline Descriptor apply_move(Descriptor d, Move const& m) {
    check_move(d, m);
    std::visit(
        [&](auto const& mv) {
          using T = std::decay_t<decltype(mv)>;
          if constexpr (std::is_same_v<T, Permute>) {
            std::vector<long> next(d.n());
            for (std::size_t k = 0; k < d.n(); ++k) {
              next[k] = d.shifts[mv.pi[k]];
            }
            d.shifts = std::move(next);
          } else if constexpr (std::is_same_v<T, GlobalShift>) {
            for (auto& g : d.shifts) {
              g += mv.delta;
            }
          } else {
            d.shifts[mv.index] += mv.delta;
          }
        },
        m);
    return d;
  }

  inline Descriptor apply_moves(Descriptor d, std::vector<Move> const& moves) {
    for (auto const& m : moves) {
      d = apply_move(std::move(d), m);
    }
    return d;
  }

  // Greedy residue matching: sigma[i] is the first unused j (in index order)
  // with to[j] = from[i] + c (mod step); nullopt when some i finds none.
  inline std::optional<std::vector<std::size_t>> match_residues(std::vector<long> const& from,
                                                                std::vector<long> const& to,
                                                                std::size_t step,
                                                                long        c) {
    if (from.size() != to.size()) {
      return std::nullopt;
    }
    std::vector<std::size_t> sigma(from.size());
    std::vector<bool>        used(to.size(), false);
    for (std::size_t i = 0; i < from.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < to.size() && !found; ++j) {
        if (!used[j] && divisible_by_step(from[i] + c - to[j], step)) {
          used[j]  = true;
          sigma[i] = j;
          found    = true;
        }
      }
      if (!found) {
        return std::nullopt;
      }
    }
    return sigma;
  }

  // GlobalShift(c), then UnitShift(i, to[sigma(i)] - from[i] - c) for every
  // index that still differs, then the Permute that puts entry i in position
  // sigma(i). Zero shifts and identity permutations are omitted.
  inline std::vector<Move> moves_from_matching(std::vector<long> const&        from,
                                               std::vector<long> const&        to,
                                               long                            c,
                                               std::vector<std::size_t> const& sigma) {
    std::vector<Move> out;
    if (c != 0) {
      out.emplace_back(GlobalShift{c});
    }
    for (std::size_t i = 0; i < from.size(); ++i) {
      long delta = to[sigma[i]] - from[i] - c;
      if (delta != 0) {
        out.emplace_back(UnitShift{i, delta});
      }
    }
    std::vector<std::size_t> pi(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      pi[sigma[i]] = i;
    }
    std::vector<std::size_t> id(sigma.size());
    std::iota(id.begin(), id.end(), 0);
    if (pi != id) {
      out.emplace_back(Permute{std::move(pi)});
    }
    return out;
  }

  // Moves taking a to b with the given global shift c; nullopt if the residues
  // of a + c and b do not agree as multisets.
  inline std::optional<std::vector<Move>> find_move_sequence(Descriptor const& a,
                                                             Descriptor const& b,
                                                             long              c) {
    if (a.n() != b.n() || a.step != b.step) {
      return std::nullopt;
    }
    auto sigma = match_residues(a.shifts, b.shifts, a.step, c);
    if (!sigma) {
      return std::nullopt;
    }
    return moves_from_matching(a.shifts, b.shifts, c, *sigma);
  }

  // For step s > 0 the global shift is the smallest valid c in 0..s-1; for
  // step 0 it is min(b) - min(a).
  inline std::optional<std::vector<Move>> find_move_sequence(Descriptor const& a,
                                                             Descriptor const& b) {
    if (a.n() != b.n() || a.step != b.step || a.n() == 0) {
      return std::nullopt;
    }
    if (a.step == 0) {
      long c = *std::min_element(b.shifts.begin(), b.shifts.end())
               - *std::min_element(a.shifts.begin(), a.shifts.end());
      return find_move_sequence(a, b, c);
    }
    for (long c = 0; c < static_cast<long>(a.step); ++c) {
      if (auto moves = find_move_sequence(a, b, c)) {
        return moves;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Matrix units
  ////////////////////////////////////////////////////////////////////////

  // e_{row,col}(x^exponent)
  struct MatrixUnit {
    std::size_t row      = 0;
    std::size_t col      = 0;
    long        exponent = 0;
    bool        operator==(MatrixUnit const&) const = default;
  };

  inline MatrixUnit apply_move_to_unit(Move const& m, MatrixUnit u) {
    if (auto const* p = std::get_if<Permute>(&m)) {
      // P e_ij P^-1 = e_{pi^-1(i), pi^-1(j)}
      std::vector<std::size_t> inv(p->pi.size());
      for (std::size_t k = 0; k < p->pi.size(); ++k) {
        inv[p->pi[k]] = k;
      }
      return MatrixUnit{inv[u.row], inv[u.col], u.exponent};
    }
    if (auto const* s = std::get_if<UnitShift>(&m)) {
      // u^-1 e_ij u = e_ij(x^{m - delta[i = index] + delta[j = index]})
      if (u.row == s->index) {
        u.exponent -= s->delta;
      }
      if (u.col == s->index) {
        u.exponent += s->delta;
      }
    }
    return u;
  }

  // The composite graded isomorphism M(d) -> M(apply_moves(d, moves)) on
  // matrix units. Moves are validated against d up front.
  inline std::function<MatrixUnit(MatrixUnit)> realize_matrix_iso(Descriptor const&        d,
                                                                  std::vector<Move> const& moves) {
    Descriptor at = d;
    for (auto const& m : moves) {
      at = apply_move(at, m);
    }
    return [d, moves](MatrixUnit u) {
      if (u.row >= d.n() || u.col >= d.n()) {
        throw Error("matrix unit index out of range");
      }
      if (!divisible_by_step(u.exponent, d.step)) {
        throw Error("matrix unit exponent is not a multiple of the step");
      }
      for (auto const& m : moves) {
        u = apply_move_to_unit(m, u);
      }
      return u;
    };
  }

  ////////////////////////////////////////////////////////////////////////
  // Serialisation
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json move_to_json(Move const& m) {
    if (auto const* p = std::get_if<Permute>(&m)) {
      std::vector<std::size_t> one_based;
      for (auto x : p->pi) {
        one_based.push_back(x + 1);
      }
      return {{"kind", "permute"}, {"pi", one_based}};
    }
    if (auto const* g = std::get_if<GlobalShift>(&m)) {
      return {{"kind", "global"}, {"delta", g->delta}};
    }
    auto const& u = std::get<UnitShift>(m);
    return {{"kind", "unit"}, {"index", u.index + 1}, {"delta", u.delta}};
  }

  inline Move move_from_json(nlohmann::json const& j) {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "global") {
      return GlobalShift{j.at("delta").get<long>()};
    }
    if (kind == "unit") {
      auto index = j.at("index").get<long>();
      if (index < 1) {
        throw Error("move index must be >= 1");
      }
      return UnitShift{static_cast<std::size_t>(index - 1), j.at("delta").get<long>()};
    }
    if (kind == "permute") {
      Permute p;
      for (auto x : j.at("pi").get<std::vector<long>>()) {
        if (x < 1) {
          throw Error("permutation entries must be >= 1");
        }
        p.pi.push_back(static_cast<std::size_t>(x - 1));
      }
      return p;
    }
    throw Error("unknown move kind '" + kind + "'");
  }

  inline nlohmann::json moves_to_json(std::vector<Move> const& moves) {
    auto out = nlohmann::json::array();
    for (auto const& m : moves) {
      out.push_back(move_to_json(m));
    }
    return out;
  }

  inline std::vector<Move> moves_from_json(nlohmann::json const& j) {
    std::vector<Move> out;
    for (auto const& m : j) {
      out.push_back(move_from_json(m));
    }
    return out;
  }

  inline std::string render_move(Move const& m) {
    if (auto const* p = std::get_if<Permute>(&m)) {
      std::string out = "Permute(";
      for (std::size_t k = 0; k < p->pi.size(); ++k) {
        out += (k ? "," : "") + std::to_string(p->pi[k] + 1);
      }
      return out + ")";
    }
    if (auto const* g = std::get_if<GlobalShift>(&m)) {
      return "GlobalShift(" + std::to_string(g->delta) + ")";
    }
    auto const& u = std::get<UnitShift>(m);
    return "UnitShift(" + std::to_string(u.index + 1) + "," + std::to_string(u.delta) + ")";
  }

}  // namespace leavitt

#endif  // LEAVITT_SHIFT_HPP
