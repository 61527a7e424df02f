#include "grz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grz/bisim.hpp"
#include "grz/construct.hpp"
#include "grz/control.hpp"
#include "grz/decide.hpp"
#include "grz/io.hpp"

namespace grz::cli {

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

FrameClass parse_class(const std::string& name) {
  auto c = frame_class_from_string(name);
  if (!c) throw std::invalid_argument("unknown frame class: " + name);
  return *c;
}

LogicId parse_logic(const std::string& name) {
  auto l = logic_from_string(name);
  if (!l) throw std::invalid_argument("unknown logic: " + name);
  return *l;
}

std::string read_formula_text(const std::string& positional,
                              const std::string& file, std::istream& in) {
  if (!file.empty()) {
    if (file == "-") {
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
    std::ifstream f(file);
    if (!f) throw std::invalid_argument("cannot open file: " + file);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
  }
  if (positional.empty())
    throw std::invalid_argument("no formula given");
  return positional;
}

void print_countermodel(const Countermodel& cm, bool as_json,
                        std::ostream& out) {
  if (as_json) {
    out << countermodel_to_json(cm).dump() << "\n";
    return;
  }
  out << "countermodel: " << model_to_json(cm.model).dump()
      << " failing at world " << cm.world << "\n";
}

// Deterministic valuation sampler shared with the acceptance tooling.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

struct Handlers {
  bool as_json = false;
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

int cmd_parse(const std::string& text, const Handlers& h) {
  Formula f = parse_formula(text);
  if (h.as_json)
    *h.out << json{{"formula", to_string(f)},
                   {"variables", variables(f)}}
                  .dump()
           << "\n";
  else
    *h.out << to_string(f) << "\n";
  return kExitYes;
}

int cmd_check(const std::string& model_file, int world_override,
              const std::string& control_name,
              const std::vector<std::string>& formulas, const Handlers& h) {
  PointedModel p = pointed_model_from_json(load_json(model_file));
  if (world_override >= 0) p.point = world_override;
  if (p.point < 0 || p.point >= p.model.frame.size())
    throw std::invalid_argument("designated world out of range");
  std::vector<Formula> parsed;
  for (const auto& text : formulas) parsed.push_back(parse_formula(text));
  if (parsed.empty()) throw std::invalid_argument("no formula given");

  if (!control_name.empty()) {
    auto kind = control_kind_from_string(control_name);
    if (!kind)
      throw std::invalid_argument("unknown control kind: " + control_name);
    ControlCheck check = check_control(*kind, p, parsed);
    if (h.as_json)
      *h.out << json{{"kind", control_name},
                     {"passed", check.passed},
                     {"violation", check.violation}}
                    .dump()
             << "\n";
    else if (check.passed)
      *h.out << control_name << ": passed\n";
    else
      *h.out << control_name << ": failed (" << check.violation << ")\n";
    return check.passed ? kExitYes : kExitNo;
  }

  bool all = true;
  json results = json::array();
  for (const Formula& f : parsed) {
    bool sat = satisfies(p, f);
    all = all && sat;
    if (h.as_json)
      results.push_back({{"formula", to_string(f)}, {"satisfied", sat}});
    else
      *h.out << (sat ? "true" : "false") << "  " << to_string(f) << "\n";
  }
  if (h.as_json)
    *h.out << json{{"world", p.point}, {"results", results}}.dump() << "\n";
  return all ? kExitYes : kExitNo;
}

int cmd_valid(const std::string& frame_file, const std::string& class_name,
              int max_worlds, std::size_t cap, const std::string& text,
              const Handlers& h) {
  Formula f = parse_formula(text);
  if (!frame_file.empty()) {
    Frame frame = frame_from_json(load_json(frame_file));
    auto cm = find_frame_countermodel(frame, f);
    if (h.as_json) {
      json j{{"valid", !cm.has_value()}};
      if (cm) j["witness"] = countermodel_to_json(*cm);
      *h.out << j.dump() << "\n";
    } else if (cm) {
      print_countermodel(*cm, false, *h.out);
    } else {
      *h.out << "valid on the given frame\n";
    }
    return cm ? kExitNo : kExitYes;
  }
  if (class_name.empty())
    throw std::invalid_argument("valid needs --frame or --class");
  ClassSweepReport report =
      class_valid_upto(parse_class(class_name), f, max_worlds, cap);
  if (h.as_json) {
    json j{{"valid", report.exhausted()},
           {"frames_examined", report.frames_examined},
           {"bound", report.bound}};
    if (report.countermodel)
      j["witness"] = countermodel_to_json(*report.countermodel);
    *h.out << j.dump() << "\n";
  } else if (report.countermodel) {
    print_countermodel(*report.countermodel, false, *h.out);
  } else {
    *h.out << "valid on all " << class_name << " frames up to " << max_worlds
           << " worlds (" << report.frames_examined << " frames)\n";
  }
  return report.exhausted() ? kExitYes : kExitNo;
}

int cmd_enumerate(const std::string& class_name, int worlds, bool labeled,
                  std::size_t cap, const Handlers& h) {
  auto frames =
      enumerate_frames(parse_class(class_name), worlds, !labeled, cap);
  if (h.as_json) {
    json list = json::array();
    for (const Frame& f : frames) list.push_back(frame_to_json(f));
    *h.out << json{{"class", class_name},
                   {"worlds", worlds},
                   {"count", frames.size()},
                   {"frames", list}}
                  .dump()
           << "\n";
  } else {
    for (const Frame& f : frames) *h.out << frame_to_json(f).dump() << "\n";
    *h.out << frames.size() << " frames\n";
  }
  return kExitYes;
}

int cmd_search(const std::string& logic_name, const std::string& class_name,
               int max_worlds, std::size_t cap, const std::string& text,
               const Handlers& h) {
  Formula f = parse_formula(text);
  std::optional<FrameClass> override;
  if (!class_name.empty()) override = parse_class(class_name);
  SearchReport report =
      countermodel_search(parse_logic(logic_name), f, max_worlds, override, cap);
  if (h.as_json) *h.out << search_report_to_json(report).dump() << "\n";
  if (report.found) {
    if (!h.as_json) {
      *h.out << "not provable in " << logic_name << ": ";
      print_countermodel(*report.witness, false, *h.out);
    }
    return kExitNo;
  }
  if (!h.as_json)
    *h.out << "inconclusive: no countermodel among "
           << report.frames_examined << " " << to_string(report.frame_class)
           << " frames up to " << max_worlds << " worlds\n";
  return kExitInconclusive;
}

int cmd_unravel(const std::string& model_file, const std::string& mode,
                bool regular, const Handlers& h) {
  PointedModel p = pointed_model_from_json(load_json(model_file));
  UnravelResult result = mode == "tree" ? unravel_tree(p, regular)
                                        : unravel_baled(p);
  std::vector<std::string> vocab;
  for (const auto& [var, set] : p.model.valuation) {
    (void)set;
    vocab.push_back(var);
  }
  auto violation =
      check_bisimulation(result.copy_map, result.model, p.model, vocab);
  bool shape_ok = mode == "tree"
                      ? check_class(result.model.frame,
                                    FrameClass::Tree)
                      : check_class(result.model.frame, FrameClass::BaledTree);
  json j = pointed_model_to_json({result.model, result.point});
  json copies = json::array();
  for (auto [fresh, orig] : result.copy_map) copies.push_back({fresh, orig});
  j["copy_map"] = copies;
  j["bisimulation_verified"] = !violation.has_value();
  j["shape_verified"] = shape_ok;
  *h.out << j.dump(h.as_json ? -1 : 2) << "\n";
  return (!violation && shape_ok) ? kExitYes : kExitNo;
}

int cmd_buttons(int n, const Handlers& h) {
  ButtonModel bm = powerset_button_model(n);
  ControlCheck check =
      check_control(ControlKind::IndependentButtons, bm.pointed, bm.buttons);
  json j = pointed_model_to_json(bm.pointed);
  json names = json::array();
  for (const Formula& b : bm.buttons) names.push_back(to_string(b));
  j["buttons"] = names;
  j["independent"] = check.passed;
  *h.out << j.dump(h.as_json ? -1 : 2) << "\n";
  return check.passed ? kExitYes : kExitNo;
}

int cmd_ratchet(int n, const Handlers& h) {
  RatchetModel rm = ratchet_chain_model(n);
  ControlCheck check =
      check_control(ControlKind::Ratchet, rm.pointed, rm.ratchet);
  json j = pointed_model_to_json(rm.pointed);
  json names = json::array();
  for (const Formula& r : rm.ratchet) names.push_back(to_string(r));
  j["ratchet"] = names;
  j["passed"] = check.passed;
  *h.out << j.dump(h.as_json ? -1 : 2) << "\n";
  return check.passed ? kExitYes : kExitNo;
}

int cmd_label(const std::string& frame_file, const std::string& via,
              int samples, std::uint64_t seed, const Handlers& h) {
  Frame frame = frame_from_json(load_json(frame_file));
  Labeling labeling{frame, 0, {}};
  PointedModel n{{frame, {}}, 0};
  if (via == "ratchet") {
    RatchetModel rm = ratchet_chain_model(frame.size());
    labeling = labeling_from_ratchet(frame, rm.ratchet);
    n = rm.pointed;
  } else {
    auto least = sup(frame, 0);
    if (!least)
      throw std::invalid_argument("button labeling needs a least element");
    ButtonModel bm = powerset_button_model(frame.size() - 1);
    labeling = labeling_from_buttons(frame, *least, bm.buttons);
    n = bm.pointed;
  }
  auto violation = check_frame_labeling(labeling, n);

  // derive psi-maps for sampled valuations and certify each model labeling
  Rng rng(seed);
  int failures = 0;
  for (int s = 0; s < samples && !violation; ++s) {
    Model m{frame, {}};
    m.valuation.emplace("p", rng.next() & frame.worlds());
    m.valuation.emplace("q", rng.next() & frame.worlds());
    auto psi = model_labeling_from_frame_labeling(m, labeling);
    if (!verify_model_labeling(m, labeling.designated, n, psi)) ++failures;
  }

  json j = labeling_to_json(labeling);
  j["frame_labeling_verified"] = !violation.has_value();
  if (violation) j["violated_condition"] = violation->condition;
  j["model_labelings_sampled"] = samples;
  j["model_labelings_failed"] = failures;
  *h.out << j.dump(h.as_json ? -1 : 2) << "\n";
  return (!violation && failures == 0) ? kExitYes : kExitNo;
}

int cmd_verify_labeling(const std::string& labeling_file,
                        const std::string& model_file, const Handlers& h) {
  Labeling l = labeling_from_json(load_json(labeling_file));
  PointedModel n = pointed_model_from_json(load_json(model_file));
  auto violation = check_frame_labeling(l, n);
  if (h.as_json) {
    json j{{"verified", !violation.has_value()}};
    if (violation) {
      j["condition"] = violation->condition;
      j["detail"] = violation->detail;
    }
    *h.out << j.dump() << "\n";
  } else if (violation) {
    *h.out << "labeling violates condition (" << violation->condition
           << "): " << violation->detail << "\n";
  } else {
    *h.out << "frame labeling verified\n";
  }
  return violation ? kExitNo : kExitYes;
}

int cmd_lemmas(int max_worlds, const Handlers& h) {
  auto checks = verify_displayed_lemmas(max_worlds);
  bool all = true;
  json list = json::array();
  for (const LemmaCheck& c : checks) {
    all = all && c.passed;
    if (h.as_json)
      list.push_back({{"id", c.id},
                      {"description", c.description},
                      {"passed", c.passed},
                      {"detail", c.detail}});
    else
      *h.out << "[" << (c.passed ? "PASS" : "FAIL") << "] (" << c.id << ") "
             << c.description
             << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
  }
  if (h.as_json) *h.out << list.dump() << "\n";
  return all ? kExitYes : kExitNo;
}

int cmd_export_dot(const std::string& frame_file, const std::string& model_file,
                   const std::string& labeling_file, const std::string& out_file,
                   const Handlers& h) {
  std::ostringstream dot;
  if (!frame_file.empty())
    export_dot(frame_from_json(load_json(frame_file)), dot);
  else if (!model_file.empty())
    export_dot(model_from_json(load_json(model_file)), dot);
  else if (!labeling_file.empty())
    export_dot(labeling_from_json(load_json(labeling_file)), dot);
  else
    throw std::invalid_argument(
        "export-dot needs --frame, --model or --labeling");
  if (out_file.empty()) {
    *h.out << dot.str();
  } else {
    std::ofstream f(out_file);
    if (!f) throw std::invalid_argument("cannot open file: " + out_file);
    f << dot.str();
  }
  return kExitYes;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-frame workbench for Grzegorczyk modal logics"};
  app.name("grz-lab");
  app.require_subcommand(1);
  app.fallthrough(); // --json / --seed are accepted after any subcommand

  Handlers h;
  h.in = &in;
  h.out = &out;
  app.add_flag("--json", h.as_json, "machine-readable output");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for sampled-valuation suites");

  std::string formula_text, formula_file;
  std::vector<std::string> formula_list;
  std::string model_file, frame_file, labeling_file, out_file;
  std::string class_name, logic_name, control_name, via = "buttons",
              mode = "baled";
  int max_worlds = 4, worlds = 1, count = 1, world_override = -1, samples = 0;
  bool labeled = false, regular = false;
  std::size_t cap = kDefaultFrameCap;

  auto* parse_cmd = app.add_subcommand("parse", "parse and print a formula");
  parse_cmd->add_option("formula", formula_text, "formula text");
  parse_cmd->add_option("--file", formula_file, "read the formula from a file");

  auto* check_cmd =
      app.add_subcommand("check", "model-check formulas or control statements");
  check_cmd->add_option("--model", model_file, "model file")->required();
  check_cmd->add_option("--world", world_override, "override the world");
  check_cmd->add_option("--control", control_name,
                        "control kind: button, switch, independent_buttons, "
                        "independent_switches, ratchet");
  check_cmd->add_option("formulas", formula_list, "formula text");

  auto* valid_cmd =
      app.add_subcommand("valid", "frame or frame-class validity sweep");
  valid_cmd->add_option("--frame", frame_file, "frame file");
  valid_cmd->add_option("--class", class_name, "frame class");
  valid_cmd->add_option("--max", max_worlds, "largest world count");
  valid_cmd->add_option("--cap", cap, "frame cap");
  valid_cmd->add_option("formula", formula_text, "formula text");
  valid_cmd->add_option("--file", formula_file, "read the formula from a file");

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate a frame class");
  enum_cmd->add_option("--class", class_name, "frame class")->required();
  enum_cmd->add_option("--worlds", worlds, "exact world count")->required();
  enum_cmd->add_flag("--labeled", labeled,
                     "all labeled frames, not up to isomorphism");
  enum_cmd->add_option("--cap", cap, "frame cap");

  auto* search_cmd =
      app.add_subcommand("search", "bounded countermodel search for a logic");
  search_cmd->add_option("--logic", logic_name, "logic id")->required();
  search_cmd->add_option("--class", class_name, "characterizing class override");
  search_cmd->add_option("--max", max_worlds, "largest world count");
  search_cmd->add_option("--cap", cap, "frame cap");
  search_cmd->add_option("formula", formula_text, "formula text");
  search_cmd->add_option("--file", formula_file,
                         "read the formula from a file");

  auto* unravel_cmd =
      app.add_subcommand("unravel", "unravel a pointed model, with certificate");
  unravel_cmd->add_option("--model", model_file, "model file")->required();
  unravel_cmd->add_option("--mode", mode, "baled (default) or tree")
      ->check(CLI::IsMember({"baled", "tree"}));
  unravel_cmd->add_flag("--regular", regular, "pad the tree to a regular one");

  auto* buttons_cmd = app.add_subcommand(
      "buttons", "powerset button model with independence certificate");
  buttons_cmd->add_option("--n", count, "button count")->required();

  auto* ratchet_cmd = app.add_subcommand(
      "ratchet", "ratchet chain model with ratchet certificate");
  ratchet_cmd->add_option("--n", count, "ratchet length")->required();

  auto* label_cmd = app.add_subcommand(
      "label", "construct and certify a frame labeling from controls");
  label_cmd->add_option("--frame", frame_file, "frame file")->required();
  label_cmd->add_option("--via", via, "buttons (default) or ratchet")
      ->check(CLI::IsMember({"buttons", "ratchet"}));
  label_cmd->add_option("--samples", samples,
                        "sampled valuations for model-labeling certificates");

  auto* verify_cmd =
      app.add_subcommand("verify-labeling", "check a labeling file");
  verify_cmd->add_option("--labeling", labeling_file, "labeling file")
      ->required();
  verify_cmd->add_option("--model", model_file, "model file")->required();

  auto* lemmas_cmd =
      app.add_subcommand("lemmas", "verify the displayed lemma formulas");
  lemmas_cmd->add_option("--max", max_worlds, "largest world count");

  auto* dot_cmd = app.add_subcommand("export-dot", "DOT diagram export");
  dot_cmd->add_option("--frame", frame_file, "frame file");
  dot_cmd->add_option("--model", model_file, "model file");
  dot_cmd->add_option("--labeling", labeling_file, "labeling file");
  dot_cmd->add_option("-o,--out", out_file, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (parse_cmd->parsed())
      return cmd_parse(read_formula_text(formula_text, formula_file, in), h);
    if (check_cmd->parsed())
      return cmd_check(model_file, world_override, control_name, formula_list,
                       h);
    if (valid_cmd->parsed())
      return cmd_valid(frame_file, class_name, max_worlds, cap,
                       read_formula_text(formula_text, formula_file, in), h);
    if (enum_cmd->parsed())
      return cmd_enumerate(class_name, worlds, labeled, cap, h);
    if (search_cmd->parsed())
      return cmd_search(logic_name, class_name, max_worlds, cap,
                        read_formula_text(formula_text, formula_file, in), h);
    if (unravel_cmd->parsed()) return cmd_unravel(model_file, mode, regular, h);
    if (buttons_cmd->parsed()) return cmd_buttons(count, h);
    if (ratchet_cmd->parsed()) return cmd_ratchet(count, h);
    if (label_cmd->parsed())
      return cmd_label(frame_file, via, samples, seed, h);
    if (verify_cmd->parsed())
      return cmd_verify_labeling(labeling_file, model_file, h);
    if (lemmas_cmd->parsed()) return cmd_lemmas(max_worlds, h);
    if (dot_cmd->parsed())
      return cmd_export_dot(frame_file, model_file, labeling_file, out_file, h);
    err << "no command given\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "syntax error at byte " << e.offset() << ": " << e.what()
        << " (expected:";
    for (const auto& t : e.expected()) err << " " << t;
    err << ")\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource bound exhausted: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace grz::cli
