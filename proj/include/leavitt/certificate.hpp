#ifndef LEAVITT_CERTIFICATE_HPP
#define LEAVITT_CERTIFICATE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "leavitt/classifier.hpp"
#include "leavitt/error.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/shift.hpp"

namespace leavitt {

  // {"step": 2, "canon": [2, 2]}; trees use {"step": 0, "canon": {"0": 1, "1": 2}}.
  inline nlohmann::json invariant_to_json(CanonicalInvariant const& inv) {
    nlohmann::json canon;
    if (inv.step == 0) {
      canon = nlohmann::json::object();
      for (std::size_t d = 0; d < inv.canon.size(); ++d) {
        if (inv.canon[d] != 0) {
          canon[std::to_string(d)] = inv.canon[d];
        }
      }
    } else {
      canon = inv.canon;
    }
    return {{"step", inv.step}, {"canon", canon}};
  }

  inline CanonicalInvariant invariant_from_json(nlohmann::json const& j) {
    CanonicalInvariant inv{j.at("step").get<std::size_t>(), {}};
    auto const&        canon = j.at("canon");
    if (inv.step != 0) {
      inv.canon = canon.get<std::vector<std::size_t>>();
      return inv;
    }
    for (auto const& [key, count] : canon.items()) {
      std::size_t d = std::stoul(key);
      if (d >= inv.canon.size()) {
        inv.canon.resize(d + 1, 0);
      }
      inv.canon[d] = count.get<std::size_t>();
    }
    return inv;
  }

  inline nlohmann::json witness_to_json(Graph const& gE, Graph const& gF, Witness const& w) {
    std::vector<std::size_t> sigma;
    for (auto x : w.sigma) {
      sigma.push_back(x + 1);
    }
    return {{"v0", gE.vertex_name(w.v0)},
            {"w0", gF.vertex_name(w.w0)},
            {"c", w.c},
            {"sigma", sigma},
            {"lambdas", w.lambdas}};
  }

  inline Witness witness_from_json(Graph const& gE, Graph const& gF, nlohmann::json const& j) {
    Witness w;
    w.v0 = gE.vertex(j.at("v0").get<std::string>());
    w.w0 = gF.vertex(j.at("w0").get<std::string>());
    w.c  = j.at("c").get<long>();
    for (auto x : j.at("sigma").get<std::vector<long>>()) {
      if (x < 1) {
        throw Error("sigma entries must be >= 1");
      }
      w.sigma.push_back(static_cast<std::size_t>(x - 1));
    }
    w.lambdas = j.at("lambdas").get<std::vector<long>>();
    w.step    = make_base(gE, w.v0).step();
    return w;
  }

  inline nlohmann::json certificate_to_json(Graph const& gE, Graph const& gF, Certificate const& c) {
    nlohmann::json out = {{"result", c.iso ? "iso" : "noniso"},
                          {"invariantE", invariant_to_json(c.invariant_e)},
                          {"invariantF", invariant_to_json(c.invariant_f)}};
    if (c.iso && c.witness) {
      out["witness"] = witness_to_json(gE, gF, *c.witness);
      out["moves"]   = moves_to_json(c.moves);
    }
    return out;
  }

  inline Certificate certificate_from_json(Graph const& gE, Graph const& gF, nlohmann::json const& j) {
    Certificate c;
    try {
      auto result = j.at("result").get<std::string>();
      if (result != "iso" && result != "noniso") {
        throw Error("result must be \"iso\" or \"noniso\"");
      }
      c.iso         = result == "iso";
      c.invariant_e = invariant_from_json(j.at("invariantE"));
      c.invariant_f = invariant_from_json(j.at("invariantF"));
      if (c.iso) {
        c.witness = witness_from_json(gE, gF, j.at("witness"));
        c.moves   = moves_from_json(j.at("moves"));
      }
    } catch (nlohmann::json::exception const& e) {
      throw Error(std::string("malformed certificate: ") + e.what());
    }
    return c;
  }

  // Re-derives everything the certificate claims from the two graphs.
  inline WitnessReport check_certificate(Graph const&       gE,
                                         Graph const&       gF,
                                         Certificate const& c,
                                         std::size_t        window = default_window) {
    WitnessReport r;
    r.window = window;
    try {
      require_theorem_scope(gE);
      require_theorem_scope(gF);
      auto ie = canonical_invariant(gE);
      auto iF = canonical_invariant(gF);
      if (ie != c.invariant_e || iF != c.invariant_f) {
        r.failure = "recorded invariants do not match the graphs";
        return r;
      }
      if (!c.iso) {
        r.ok = ie != iF;
        if (!r.ok) {
          r.failure = "invariants are equal, so the graphs are isomorphic";
        }
        return r;
      }
      if (!c.witness) {
        r.failure = "iso certificate without a witness";
        return r;
      }
      r = verify_witness(gE, gF, *c.witness, window);
      if (!r.ok) {
        return r;
      }
      auto reached = apply_moves(lpa_descriptor(gE, c.witness->v0), c.moves);
      if (reached != lpa_descriptor(gF, c.witness->w0)) {
        r.ok      = false;
        r.failure = "moves reach " + render_descriptor(reached) + ", not "
                    + render_descriptor(lpa_descriptor(gF, c.witness->w0));
      }
    } catch (Error const& e) {
      r.ok      = false;
      r.failure = e.what();
    }
    return r;
  }

}  // namespace leavitt

#endif  // LEAVITT_CERTIFICATE_HPP
