#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "hypring/serialize.hpp"

using namespace hypring;

namespace {

struct GlobalOptions {
  std::string group_tag = "free:2";
  std::uint64_t seed = 1;
  std::size_t cap_elements = 200000;
  std::string out_path;
  std::string format = "json";
  int delta_override = -1;
  double c10 = 1.0;
};

struct Output {
  const GlobalOptions& opts;
  Json config;

  void emit(const Json& data) const {
    Json full{{"config", config}, {"seed", opts.seed}, {"data", data}};
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opts.out_path.empty()) {
      file.open(opts.out_path);
      if (!file) throw invalid_spec("cannot open output file: " + opts.out_path);
      os = &file;
    }
    if (opts.format == "json") {
      *os << full.dump(2) << "\n";
      return;
    }
    // csv: config fingerprint as comment lines, then rows
    *os << "# config " << config.dump() << "\n";
    *os << "# seed " << opts.seed << "\n";
    if (data.contains("rows") && data.at("rows").is_array() && !data.at("rows").empty()) {
      const Json& rows = data.at("rows");
      std::vector<std::string> headers;
      for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
        headers.push_back(it.key());
      for (std::size_t i = 0; i < headers.size(); ++i)
        *os << headers[i] << (i + 1 < headers.size() ? "," : "\n");
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < headers.size(); ++i) {
          const Json& v = row.at(headers[i]);
          if (v.is_string())
            *os << v.get<std::string>();
          else
            *os << v.dump();
          *os << (i + 1 < headers.size() ? "," : "\n");
        }
      }
    } else {
      // flatten scalar fields into a single row
      std::vector<std::string> headers;
      for (auto it = data.begin(); it != data.end(); ++it)
        if (!it.value().is_structured()) headers.push_back(it.key());
      for (std::size_t i = 0; i < headers.size(); ++i)
        *os << headers[i] << (i + 1 < headers.size() ? "," : "\n");
      for (std::size_t i = 0; i < headers.size(); ++i) {
        const Json& v = data.at(headers[i]);
        if (v.is_string())
          *os << v.get<std::string>();
        else
          *os << v.dump();
        *os << (i + 1 < headers.size() ? "," : "\n");
      }
    }
  }
};

Group load_group(const GlobalOptions& opts) {
  Group g = Group::builtin(opts.group_tag);
  g.set_element_cap(opts.cap_elements);
  if (g.kind() == GroupKind::Dehn) {
    auto rep = g.check_dehn_property(2);
    if (!rep.ok)
      throw invalid_spec("presentation failed the small-ball reduction spot check");
  }
  return g;
}

int resolve_delta(const Group& g, const GlobalOptions& opts, int estimate_radius = 3) {
  if (opts.delta_override > 0) return opts.delta_override;
  if (g.kind() == GroupKind::Free) return 1;
  return g.estimate_delta(estimate_radius);
}

RingElement parse_element(const Group& g, const std::string& text) {
  if (!text.empty() && text.front() == '[') return ring_from_json(g, Json::parse(text));
  return RingElement::basis(g.parse(text));
}

TensorElement parse_tensor(const Group& g, const std::string& text) {
  return tensor_from_json(g, Json::parse(text));
}

ClassFunction parse_class_function(const Group& g, const std::string& text) {
  if (text == "const") return ClassFunction::constant();
  if (text == "exp") return ClassFunction::exp_length();
  if (text.rfind("power:", 0) == 0)
    return ClassFunction::power_length(std::stod(text.substr(6)));
  if (text.rfind("indicator:", 0) == 0)
    return ClassFunction::indicator(g.parse(text.substr(10)));
  if (text.rfind("finite:", 0) == 0) {
    RingElement vals = ring_from_json(g, Json::parse(text.substr(7)));
    std::map<GroupElement, Complex> m;
    for (const auto& [e, c] : vals.support()) m[e] = c;
    return ClassFunction::finitely_supported(std::move(m));
  }
  throw invalid_spec("unknown class function: " + text);
}

std::vector<std::pair<std::string, std::string>> parse_dictionary(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw invalid_spec("dictionary entries use name=word");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

TensorElement example_matrix(const Group& g, const std::string& tag) {
  GroupElement x = g.identity(), y = g.parse("a");
  TensorElement t;
  if (tag == "example26" || tag == "example26a") {
    t.add(x, x, 1.0);
    t.add(x, y, 2.0);
    t.add(y, x, 2.0);
  } else if (tag == "example26b") {
    t.add(x, x, 1.0);
    t.add(x, y, 2.0);
    t.add(y, x, 2.0);
    t.add(y, y, 1.0);
  } else {
    throw invalid_spec("unknown builtin matrix: " + tag);
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-ring experiments on word-hyperbolic groups"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--group", opts.group_tag, "builtin tag (free:K, surface:2, z) or file path");
  app.add_option("--seed", opts.seed, "random seed recorded in every output");
  app.add_option("--cap-elements", opts.cap_elements, "hard cap for ball sizes");
  app.add_option("--out", opts.out_path, "output file (default stdout)");
  app.add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--delta", opts.delta_override, "override the slimness constant");
  app.add_option("--c10", opts.c10, "conjugator growth constant for search pruning");

  // group
  auto* group_cmd = app.add_subcommand("group", "group backend queries");
  auto* group_info = group_cmd->add_subcommand("info", "describe the group");
  int radius = 3;
  auto* group_ball = group_cmd->add_subcommand("ball", "count elements per layer");
  group_ball->add_option("--radius", radius, "ball radius");
  auto* group_delta = group_cmd->add_subcommand("delta", "estimate the slimness constant");
  group_delta->add_option("--radius", radius, "scan radius");

  // qd
  auto* qd_cmd = app.add_subcommand("qd", "quasiderivation checks");
  auto* qd_leibniz = qd_cmd->add_subcommand("check-leibniz", "coefficientwise domination scan");
  qd_leibniz->add_option("--radius", radius, "monomial pairs from this ball");
  std::string spec_text = "ell1";
  auto* qd_c0 = qd_cmd->add_subcommand("c0", "leibniz constant for a seminorm");
  qd_c0->add_option("--spec", spec_text, "seminorm spec");
  std::string dict_text, element_text = "e";
  int cap_opt = -1;
  auto* qd_gensets = qd_cmd->add_subcommand("compare-gensets", "alternate generating set shift radius");
  qd_gensets->add_option("--dict", dict_text, "name=word,... alternate letters")->required();
  qd_gensets->add_option("--element", element_text, "word or ring-element JSON");
  qd_gensets->add_option("--radius-cap", cap_opt, "search cap for the shift radius");
  int steps = 8;
  auto* qd_neumann = qd_cmd->add_subcommand("neumann", "geometric series probe");
  qd_neumann->add_option("--element", element_text, "word or ring-element JSON")->required();
  qd_neumann->add_option("--spec", spec_text, "seminorm spec");
  qd_neumann->add_option("--steps", steps, "number of powers");
  int n_opt = 2, k_opt = 0, m_max = 6;
  std::string map_tag = "delta";
  auto* qd_growth = qd_cmd->add_subcommand("special-growth", "growth probe for a special map");
  qd_growth->add_option("--map", map_tag, "delta or identity");
  qd_growth->add_option("--n", n_opt, "constraint length");
  qd_growth->add_option("--k", k_opt, "sobolev exponent");
  qd_growth->add_option("--m-max", m_max, "largest power");

  // conj
  auto* conj_cmd = app.add_subcommand("conj", "conjugacy reduction");
  auto* conj_rep = conj_cmd->add_subcommand("rep", "class representative");
  conj_rep->add_option("--element", element_text, "word")->required();
  auto* conj_trace = conj_cmd->add_subcommand("phi-trace", "reduction trace");
  conj_trace->add_option("--element", element_text, "word")->required();
  auto* conj_profile = conj_cmd->add_subcommand("profile", "iterations against length");
  conj_profile->add_option("--radius", radius, "profile ball radius");
  auto* conj_gromov = conj_cmd->add_subcommand("gromov", "conjugator growth scan");
  conj_gromov->add_option("--radius", radius, "pair ball radius");

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "seminorms and certified bounds");
  auto* norm_eval = norm_cmd->add_subcommand("eval", "closed-form seminorm value");
  norm_eval->add_option("--spec", spec_text, "seminorm spec");
  norm_eval->add_option("--element", element_text, "word or ring-element JSON")->required();
  std::string spec_x = "sobolev2:0", spec_y = "sobolev2:0", matrix_tag, tensor_text;
  auto* norm_uc = norm_cmd->add_subcommand("uc", "unconditional cross-norm certificate");
  norm_uc->add_option("--matrix", matrix_tag, "builtin matrix (example26, example26b)");
  norm_uc->add_option("--tensor", tensor_text, "tensor JSON");
  norm_uc->add_option("--spec-x", spec_x, "first-leg spec");
  norm_uc->add_option("--spec-y", spec_y, "second-leg spec");
  std::string ambient_text = "ell1";
  auto* norm_min = norm_cmd->add_subcommand("minimal", "constrained-norm certificate");
  norm_min->add_option("--element", element_text, "word or ring-element JSON")->required();
  norm_min->add_option("--n", n_opt, "constraint length");
  norm_min->add_option("--ambient", ambient_text, "ambient seminorm");
  auto* norm_sob = norm_cmd->add_subcommand("sobolev", "sobolev-variant certificate");
  norm_sob->add_option("--element", element_text, "word or ring-element JSON")->required();
  norm_sob->add_option("--n", n_opt, "constraint length");
  norm_sob->add_option("--k", k_opt, "sobolev exponent");
  norm_sob->add_option("--ambient", ambient_text, "ambient seminorm");

  // trace
  std::string tau_text = "const", class_text = "e";
  auto* trace_cmd = app.add_subcommand("trace", "class functions and traces");
  auto* trace_eval_cmd = trace_cmd->add_subcommand("eval", "evaluate a trace");
  trace_eval_cmd->add_option("--tau", tau_text, "class function");
  trace_eval_cmd->add_option("--element", element_text, "word or ring-element JSON")->required();
  int k_max = 3;
  auto* trace_tempered = trace_cmd->add_subcommand("tempered", "temperedness trend");
  trace_tempered->add_option("--tau", tau_text, "class function");
  trace_tempered->add_option("--k-max", k_max, "largest weight exponent");
  trace_tempered->add_option("--radius", radius, "partial-sum radius");
  int samples = 200;
  auto* trace_restriction = trace_cmd->add_subcommand("restriction-probe", "class restriction ratios");
  trace_restriction->add_option("--class", class_text, "class representative word");
  trace_restriction->add_option("--n", n_opt, "constraint length");
  trace_restriction->add_option("--samples", samples, "sample count");
  trace_restriction->add_option("--radius", radius, "largest support radius");

  // forms
  double lambda = 1.5;
  std::string factors_text;
  auto* forms_cmd = app.add_subcommand("forms", "noncommutative forms");
  auto* forms_chain = forms_cmd->add_subcommand("chain-check", "projected-form norm chain");
  forms_chain->add_option("--factors", factors_text, "JSON array of ring elements")->required();
  forms_chain->add_option("--class", class_text, "class representative word");
  forms_chain->add_option("--lambda", lambda, "weight base, > 1");
  forms_chain->add_option("--n", n_opt, "constraint length");

  // global flags may appear after any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Group g = load_group(opts);

    Output out{opts, Json{{"group", opts.group_tag},
                          {"format", opts.format},
                          {"cap_elements", opts.cap_elements},
                          {"c10", opts.c10},
                          {"delta_override", opts.delta_override}}};

    if (group_info->parsed()) {
      out.emit(Json{{"description", g.describe()}});
    } else if (group_ball->parsed()) {
      BallTable b = g.ball(radius);
      Json rows = Json::array();
      for (int l = 0; l <= radius; ++l)
        rows.push_back(Json{{"length", l}, {"count", b.sphere_size(l)}});
      out.emit(Json{{"total", b.elements.size()}, {"rows", rows}});
    } else if (group_delta->parsed()) {
      out.emit(Json{{"radius", radius}, {"delta", g.estimate_delta(radius)}});
    } else if (qd_leibniz->parsed()) {
      Quasiderivation qd(g, resolve_delta(g, opts));
      BallTable b = g.ball(radius);
      long long pairs = 0, failures = 0;
      for (const auto& x : b.elements)
        for (const auto& y : b.elements) {
          ++pairs;
          if (!qd.domination_check_monomial(x, y)) ++failures;
        }
      out.emit(Json{{"delta", qd.delta()}, {"pairs", pairs}, {"failures", failures}});
    } else if (qd_c0->parsed()) {
      Quasiderivation qd(g, resolve_delta(g, opts));
      out.emit(Json{{"delta", qd.delta()},
                    {"spec", spec_text},
                    {"c0", qd.leibniz_constant(SeminormSpec::parse(spec_text))}});
    } else if (qd_gensets->parsed()) {
      Quasiderivation qd(g, resolve_delta(g, opts));
      auto alt = make_alternate_generating(g, parse_dictionary(dict_text));
      auto rep = qd.compare_generating_sets(alt, parse_element(g, element_text), cap_opt);
      out.emit(Json{{"found", rep.found}, {"rho", rep.rho}, {"c_constant", rep.c_constant}});
    } else if (qd_neumann->parsed()) {
      Quasiderivation qd(g, resolve_delta(g, opts));
      auto rep = qd.neumann_probe(parse_element(g, element_text),
                                  SeminormSpec::parse(spec_text), steps);
      Json rows = Json::array();
      for (const auto& s : rep.steps)
        rows.push_back(Json{{"power", s.power},
                            {"increment_graph_norm", s.increment_graph_norm},
                            {"partial_sum_graph_norm", s.partial_sum_graph_norm},
                            {"split_norm", s.split_norm}});
      out.emit(Json{{"c0", rep.c0},
                    {"base_norm", rep.base_norm},
                    {"fitted_c", rep.fitted_c},
                    {"ratios", rep.ratios},
                    {"rows", rows}});
    } else if (qd_growth->parsed()) {
      Quasiderivation qd(g, resolve_delta(g, opts));
      RingElement gen;
      for (std::size_t l = 0; l < g.alphabet().size(); ++l)
        gen.add(g.normalize(Word(1, static_cast<char>(l))),
                Complex(1.0 / static_cast<double>(g.alphabet().size()), 0.0));
      std::function<TensorElement(const GroupElement&)> psi;
      if (map_tag == "delta")
        psi = [&qd](const GroupElement& e) { return qd.apply_one(e); };
      else if (map_tag == "identity")
        psi = [&g](const GroupElement& e) { return TensorElement::basis(e, g.identity()); };
      else
        throw invalid_spec("unknown map tag: " + map_tag);
      auto rep = special_growth_probe(g, psi, gen, n_opt, k_opt, m_max, true);
      Json rows = Json::array();
      for (const auto& [m, v] : rep.values) rows.push_back(Json{{"power", m}, {"value", v}});
      out.emit(Json{{"fitted_exponent", rep.fitted_exponent},
                    {"fitted_degree", rep.fitted_degree},
                    {"polynomial_looking", rep.polynomial_looking},
                    {"rows", rows}});
    } else if (conj_rep->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      ClassRep rep = cj.class_representative(g.parse(element_text));
      out.emit(Json{{"representative", g.alphabet().format_word(rep.representative.word())},
                    {"certified", rep.certified},
                    {"certified_radius", rep.certified_radius}});
    } else if (conj_trace->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      auto [rep, trace] = cj.reduce_to_representative(g.parse(element_text));
      Json j = phi_trace_to_json(g, trace);
      j["representative"] = g.alphabet().format_word(rep.representative.word());
      out.emit(j);
    } else if (conj_profile->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      auto rep = cj.convergence_profile(radius);
      Json rows = Json::array();
      for (const auto& r : rep.rows)
        rows.push_back(Json{{"length", r.length}, {"iterations", r.iterations}});
      out.emit(Json{{"max_iterations", rep.max_iterations},
                    {"all_converged", rep.all_converged},
                    {"fitted_c11", rep.fitted_c11},
                    {"fitted_c12", rep.fitted_c12},
                    {"rows", rows}});
    } else if (conj_gromov->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      auto rep = cj.gromov_probe(radius);
      out.emit(Json{{"empirical_c10", rep.empirical_c10},
                    {"pairs", rep.pairs},
                    {"worst_g", g.alphabet().format_word(rep.worst_g.word())},
                    {"worst_h", g.alphabet().format_word(rep.worst_h.word())},
                    {"worst_conjugator",
                     g.alphabet().format_word(rep.worst_conjugator.word())}});
    } else if (norm_eval->parsed()) {
      out.emit(Json{{"spec", spec_text},
                    {"value", eval(SeminormSpec::parse(spec_text),
                                   parse_element(g, element_text))}});
    } else if (norm_uc->parsed()) {
      TensorElement t;
      if (!matrix_tag.empty())
        t = example_matrix(g, matrix_tag);
      else if (!tensor_text.empty())
        t = parse_tensor(g, tensor_text);
      else
        throw invalid_spec("norm uc needs --matrix or --tensor");
      auto sx = SeminormSpec::parse(spec_x);
      auto sy = SeminormSpec::parse(spec_y);
      BoundCertificate c = ucnorm_bounds(t, sx, sy);
      Json j = certificate_to_json(g, c);
      j["projective_l2"] = projective_norm_l2(t);
      j["verified"] = verify_uc_certificate(c, t, sx, sy).ok;
      out.emit(j);
    } else if (norm_min->parsed()) {
      auto amb = SeminormSpec::parse(ambient_text);
      RingElement a = parse_element(g, element_text);
      BoundCertificate c = minimal_norm_bounds(g, a, n_opt, amb);
      Json j = certificate_to_json(g, c);
      j["verified"] = verify_product_certificate(g, c, a, amb).ok;
      out.emit(j);
    } else if (norm_sob->parsed()) {
      auto amb = SeminormSpec::parse(ambient_text);
      RingElement a = parse_element(g, element_text);
      BoundCertificate c = sobolev_minimal_bounds(g, a, n_opt, k_opt, amb);
      Json j = certificate_to_json(g, c);
      j["verified"] = verify_product_certificate(g, c, a, amb).ok;
      out.emit(j);
    } else if (trace_eval_cmd->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      Complex v = trace_eval(cj, parse_class_function(g, tau_text),
                             parse_element(g, element_text));
      out.emit(Json{{"tau", tau_text}, {"re", v.real()}, {"im", v.imag()}});
    } else if (trace_tempered->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      auto rep = is_tempered(cj, parse_class_function(g, tau_text), k_max, radius);
      Json rows = Json::array();
      for (const auto& r : rep.rows)
        rows.push_back(Json{{"k", r.k},
                            {"verdict", r.verdict},
                            {"partial_sums", r.partial_sums}});
      out.emit(Json{{"finitely_supported", rep.finitely_supported},
                    {"verdict", rep.verdict},
                    {"rows", rows}});
    } else if (trace_restriction->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      auto rep = restriction_probe(cj, g.parse(class_text), n_opt, SeminormSpec::ell1(),
                                   samples, opts.seed, radius);
      Json rows = Json::array();
      for (const auto& s : rep.samples)
        rows.push_back(Json{{"radius", s.radius}, {"ratio", s.ratio}});
      out.emit(Json{{"max_ratio", rep.max_ratio},
                    {"bounded_looking", rep.bounded_looking},
                    {"max_ratio_by_radius", rep.max_ratio_by_radius},
                    {"rows", rows}});
    } else if (forms_chain->parsed()) {
      Conjugacy cj(g, resolve_delta(g, opts), ConjugacyConfig{opts.c10, -1, 64, 2000000});
      Json fs = Json::parse(factors_text);
      std::vector<RingElement> factors;
      for (const auto& f : fs) factors.push_back(ring_from_json(g, f));
      auto rep = form_norm_chain_check(cj, factors, g.parse(class_text), lambda, n_opt);
      out.emit(Json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"holds", rep.holds}});
    } else {
      std::cerr << "no subcommand selected\n";
      return 2;
    }
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const invalid_spec& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const unknown_letter& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_violation& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
