#ifndef LEAVITT_CLI_HPP
#define LEAVITT_CLI_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "leavitt/algebra.hpp"
#include "leavitt/certificate.hpp"
#include "leavitt/classifier.hpp"
#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/expr.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/graph_io.hpp"
#include "leavitt/shift.hpp"

namespace leavitt::cli {

  // Exit codes: 0 success or ISO, 1 NON-ISO, 2 bad input, out of scope, or a
  // rejected certificate.
  enum ExitCode : int { ok = 0, non_iso = 1, failure = 2 };

  struct Result {
    std::string out;
    std::string err;
    int         code = ok;
  };

  namespace detail {
    inline std::string names(Graph const& g, std::vector<VertexId> const& vs) {
      std::string out = "[";
      for (std::size_t i = 0; i < vs.size(); ++i) {
        out += (i ? ", " : "") + g.vertex_name(vs[i]);
      }
      return out + "]";
    }

    inline std::string render_path(Graph const& g, Path const& p) {
      if (p.empty()) {
        return g.vertex_name(p.base);
      }
      std::string out;
      for (EdgeId e : p.edges) {
        out += (out.empty() ? "" : " ") + g.edge_name(e);
      }
      return out;
    }

    inline void validate(std::ostream& out, Graph const& g, bool json) {
      auto r = leavitt::validate(g);
      if (json) {
        nlohmann::json j = {{"connected", r.connected},
                            {"max_out_degree", r.max_out_degree},
                            {"theorem_scope", r.theorem_scope}};
        j["sinks"] = nlohmann::json::array();
        for (auto v : r.sinks) {
          j["sinks"].push_back(g.vertex_name(v));
        }
        j["cycle"] = nullptr;
        if (r.cycle) {
          std::vector<std::string> edges;
          for (auto e : r.cycle->path.edges) {
            edges.push_back(g.edge_name(e));
          }
          j["cycle"] = {{"edges", edges}, {"length", r.cycle->length()}};
        }
        out << j.dump(2) << "\n";
        return;
      }
      out << "vertices: " << g.vertex_count() << "\n"
          << "edges: " << g.edge_count() << "\n"
          << "connected: " << (r.connected ? "yes" : "no") << "\n"
          << "max out-degree: " << r.max_out_degree << "\n"
          << "sinks: " << names(g, r.sinks) << "\n"
          << "cycle: ";
      if (r.cycle) {
        out << render_path(g, r.cycle->path) << " (length " << r.cycle->length() << ")\n";
      } else {
        out << "none\n";
      }
      out << "theorem scope: " << (r.theorem_scope ? "yes" : "no") << "\n";
    }

    inline void elements(std::ostream& out, Graph const& g, std::size_t window, bool json) {
      bool acyclic = is_acyclic(g);
      auto all     = enumerate_elements(g, window);
      if (json) {
        nlohmann::json j = {{"complete", acyclic}, {"count", all.size()}};
        if (!acyclic) {
          j["window"] = window;
        }
        j["elements"] = nlohmann::json::array();
        for (auto const& a : all) {
          j["elements"].push_back(render(g, a));
        }
        out << j.dump(2) << "\n";
        return;
      }
      if (!acyclic) {
        out << "# window " << window << " (|p|+|q| <= " << window << "), " << all.size()
            << " elements\n";
      }
      for (auto const& a : all) {
        out << render(g, a) << "\n";
      }
    }

    inline void invariant(std::ostream& out, Graph const& g, bool json) {
      auto inv  = canonical_invariant(g);
      auto v0   = base_candidates(g).front();
      auto desc = lpa_descriptor(g, v0);
      auto prof = depth_profile(g, v0);
      if (json) {
        out << nlohmann::json{{"invariant", invariant_to_json(inv)},
                              {"base", g.vertex_name(v0)},
                              {"descriptor", render_descriptor(desc)}}
                   .dump(2)
            << "\n";
        return;
      }
      out << "base: " << g.vertex_name(v0) << "\n"
          << "base paths:";
      for (auto const& p : base_paths(g, v0)) {
        out << " " << render_path(g, p);
      }
      out << "\n"
          << "descriptor: " << render_descriptor(desc) << "\n"
          << "depth profile: " << render_invariant({prof.step, prof.counts}) << "\n"
          << "invariant: " << render_invariant(inv) << "\n";
    }

    inline void witness_table(std::ostream& out,
                              Graph const&  gE,
                              Graph const&  gF,
                              Certificate const& cert) {
      auto const& w  = *cert.witness;
      auto        pe = base_paths(gE, w.v0);
      auto        pf = base_paths(gF, w.w0);
      out << "witness: v0=" << gE.vertex_name(w.v0) << " w0=" << gF.vertex_name(w.w0)
          << " c=" << w.c << "\n";
      std::size_t width = 4;
      for (auto const* ps : {&pe, &pf}) {
        for (auto const& p : *ps) {
          width = std::max(width, render_path(ps == &pe ? gE : gF, p).size() + 2);
        }
      }
      auto col = [&](std::string const& s, std::size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 1, ' ');
      };
      out << "  " << col("i", 4) << col("p_i", width) << col("sigma(i)", 10)
          << col("q_sigma(i)", width) << "lambda_i\n";
      for (std::size_t i = 0; i < pe.size(); ++i) {
        out << "  " << col(std::to_string(i + 1), 4) << col(render_path(gE, pe[i]), width)
            << col(std::to_string(w.sigma[i] + 1), 10) << col(render_path(gF, pf[w.sigma[i]]), width)
            << w.lambdas[i] << "\n";
      }
      out << "map: p_i C1^k p_j* -> q_sigma(i) C2^(k + lambda_i - lambda_j) q_sigma(j)*\n";
      auto d = lpa_descriptor(gE, w.v0);
      out << "moves: " << render_descriptor(d);
      for (auto const& m : cert.moves) {
        d = apply_move(d, m);
        out << "\n  " << render_move(m) << " -> " << render_descriptor(d);
      }
      out << "\n";
    }

    inline std::string cardinality_note(Graph const& gE, Graph const& gF) {
      if (!is_acyclic(gE) || !is_acyclic(gF)) {
        return "";
      }
      auto c = compare_cardinality(gE, gF);
      std::string out = "heuristic (sound for non-isomorphism only): |LI(E)\\0| = "
                        + std::to_string(c.size_e) + ", |LI(F)\\0| = " + std::to_string(c.size_f);
      out += c.distinct ? ", so LI(E) and LI(F) are not isomorphic as semigroups\n"
                        : ", inconclusive\n";
      return out;
    }

    inline int classify(std::ostream& out,
                        std::ostream& err,
                        Graph const&  gE,
                        Graph const&  gF,
                        bool          show_witness,
                        std::size_t   window,
                        bool          json) {
      for (Graph const* g : {&gE, &gF}) {
        try {
          require_theorem_scope(*g);
        } catch (ScopeError const& e) {
          err << "error: " << (g == &gE ? "E" : "F") << ": " << e.what()
              << "; graded classification is only decided for connected graphs of out-degree "
                 "at most 1\n"
              << cardinality_note(gE, gF);
          return failure;
        }
      }
      auto cert = decide_graded_iso(gE, gF);
      if (json) {
        out << certificate_to_json(gE, gF, cert).dump(2) << "\n";
        return cert.iso ? ok : non_iso;
      }
      out << (cert.iso ? "ISO" : "NON-ISO") << "\n"
          << "invariant E: " << render_invariant(cert.invariant_e) << "\n"
          << "invariant F: " << render_invariant(cert.invariant_f) << "\n";
      if (!cert.iso) {
        return non_iso;
      }
      if (show_witness) {
        witness_table(out, gE, gF, cert);
        auto r = verify_witness(gE, gF, *cert.witness, window);
        out << "verified at window " << r.window << ": " << (r.ok ? "ok" : "FAILED " + r.failure)
            << " (" << r.elements << " elements, " << r.products << " products)\n";
        if (!r.ok) {
          return failure;
        }
      }
      return ok;
    }

    inline void algebra_dim(std::ostream& out, Graph const& g, std::size_t max_size, bool json) {
      if (!is_acyclic(g)) {
        if (json) {
          out << nlohmann::json{{"dimension", "infinite"}}.dump(2) << "\n";
        } else {
          out << "dimension: infinite (graph has a cycle)\n";
        }
        return;
      }
      auto gens = ck_ideal_generators(g);
      auto dim  = enumerate_elements(g).size();
      auto quot = quotient_dimension(g, max_size);
      auto lpa  = lpa_dimension_acyclic(g);
      if (json) {
        nlohmann::json j = {{"semigroup_algebra", dim},
                            {"quotient", quot},
                            {"lpa", lpa},
                            {"generators", nlohmann::json::array()}};
        for (auto const& x : gens) {
          j["generators"].push_back(algebra_element_to_json(g, x));
        }
        out << j.dump(2) << "\n";
        return;
      }
      out << "dim K0 LI(E): " << dim << "\n"
          << "ideal generators:" << (gens.empty() ? " none" : "") << "\n";
      for (auto const& x : gens) {
        out << "  " << render(g, x) << "\n";
      }
      out << "dim quotient: " << quot << "\n"
          << "dim L_K(E) from sink blocks: " << lpa;
      auto blocks = lpa_descriptors_acyclic(g);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        out << (i == 0 ? " = " : " + ") << render_descriptor(blocks[i]);
      }
      out << "\n";
    }

    inline std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw Error("cannot read '" + path + "'");
      }
      std::stringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    inline int verify(std::ostream& out,
                      std::string const& cert_path,
                      Graph const&  gE,
                      Graph const&  gF,
                      std::size_t   window) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(cert_path));
      } catch (nlohmann::json::parse_error const& e) {
        throw Error(std::string("certificate is not valid JSON: ") + e.what());
      }
      auto cert = certificate_from_json(gE, gF, j);
      auto r    = check_certificate(gE, gF, cert, window);
      if (r.ok) {
        out << "ACCEPTED " << (cert.iso ? "iso" : "noniso");
        if (cert.iso) {
          out << " (window " << r.window << ": " << r.elements << " elements, " << r.products
              << " products)";
        }
        out << "\n";
        return ok;
      }
      out << "REJECTED: " << r.failure << "\n";
      return failure;
    }
  }  // namespace detail

  // args excludes the program name.
  inline Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CLI::App           app{"Leavitt inverse semigroups and graded Leavitt path algebras"};
    app.name("leavitt");
    app.require_subcommand(1);

    bool        json = false, show_witness = false;
    std::size_t window   = default_window;
    std::size_t max_size = default_max_size;
    std::string path_a, path_b, path_c, expr_a, expr_b;

    auto* validate = app.add_subcommand("validate", "Report connectivity, out-degree, sinks, cycle");
    validate->add_option("graph", path_a)->required();
    validate->add_flag("--json", json);

    auto* elements = app.add_subcommand("elements", "List the nonzero elements of LI(E)");
    elements->add_option("graph", path_a)->required();
    elements->add_option("--window", window, "Bound on |p|+|q| for graphs with a cycle");
    elements->add_flag("--json", json);

    auto* mul = app.add_subcommand("mul", "Multiply two element expressions");
    mul->add_option("graph", path_a)->required();
    mul->add_option("a", expr_a)->required();
    mul->add_option("b", expr_b)->required();
    mul->add_flag("--json", json);

    auto* invariant = app.add_subcommand("invariant", "Descriptor and canonical depth invariant");
    invariant->add_option("graph", path_a)->required();
    invariant->add_flag("--json", json);

    auto* classify = app.add_subcommand("classify", "Decide graded isomorphism of LI(E), LI(F)");
    classify->add_option("E", path_a)->required();
    classify->add_option("F", path_b)->required();
    classify->add_flag("--witness", show_witness, "Print and verify the witness");
    classify->add_option("--window", window, "Verification window");
    classify->add_flag("--json", json, "Emit a certificate");

    auto* algebra = app.add_subcommand("algebra-dim", "Dimensions of K0 LI(E), its quotient and L_K(E)");
    algebra->add_option("graph", path_a)->required();
    algebra->add_option("--max-size", max_size, "Largest LI(E) to row-reduce");
    algebra->add_flag("--json", json);

    auto* verify = app.add_subcommand("verify", "Check a certificate against two graphs");
    verify->add_option("certificate", path_c)->required();
    verify->add_option("E", path_a)->required();
    verify->add_option("F", path_b)->required();
    verify->add_option("--window", window, "Verification window");

    std::reverse(args.begin(), args.end());
    try {
      app.parse(std::move(args));
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return {out.str(), err.str(), code == 0 ? ok : failure};
    }

    int code = ok;
    try {
      if (validate->parsed()) {
        detail::validate(out, load_graph(path_a), json);
      } else if (elements->parsed()) {
        detail::elements(out, load_graph(path_a), window, json);
      } else if (mul->parsed()) {
        auto g = load_graph(path_a);
        auto a = parse_element_expr(g, expr_a);
        auto b = parse_element_expr(g, expr_b);
        auto p = multiply(g, a, b);
        if (json) {
          nlohmann::json j = {{"product", render(g, p)}, {"grade", nullptr}};
          if (!p.is_zero()) {
            j["grade"] = grade(p);
          }
          out << j.dump(2) << "\n";
        } else {
          out << render(g, p) << "\n";
        }
      } else if (invariant->parsed()) {
        detail::invariant(out, load_graph(path_a), json);
      } else if (classify->parsed()) {
        code = detail::classify(out, err, load_graph(path_a), load_graph(path_b), show_witness,
                                window, json);
      } else if (algebra->parsed()) {
        detail::algebra_dim(out, load_graph(path_a), max_size, json);
      } else if (verify->parsed()) {
        code = detail::verify(out, path_c, load_graph(path_a), load_graph(path_b), window);
      }
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      code = failure;
    }
    return {out.str(), err.str(), code};
  }

}  // namespace leavitt::cli

#endif  // LEAVITT_CLI_HPP
