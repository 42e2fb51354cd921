#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "strands/abelian.hpp"
#include "strands/render.hpp"
#include "strands/strata.hpp"
#include "strands/trajectory.hpp"

// Command-line front end.  Every subcommand is a thin binding over one
// library operation; all numeric output is exact (rationals as "p/q").
// Exit codes: 0 success, 1 domain error (JSON description on stderr),
// 2 usage error.

namespace strands {
namespace cli {

namespace detail {

inline Family family_from(const std::string& s) {
  if (s == "S") return Family::S;
  if (s == "T") return Family::T;
  if (s == "F") return Family::F;
  if (s == "W") return Family::W;
  throw DomainError("family", "unknown family \"" + s + "\"; expected S, T, F, or W");
}

inline Geometry geometry_from(const std::string& s) {
  if (s == "interval") return Geometry::Interval;
  if (s == "ring") return Geometry::Ring;
  throw DomainError("geometry", "unknown geometry \"" + s + "\"; expected interval or ring");
}

// A positional that is either inline JSON or a path to a JSON file.
inline nlohmann::json load_json_arg(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw DomainError("io", "cannot open \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("json", std::string("invalid JSON: ") + e.what());
  }
}

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Crossing: return "crossing";
    case EventKind::Tangency: return "tangency";
    default: return "cut_crossing";
  }
}

inline nlohmann::json event_to_json(const Event& e) {
  nlohmann::json j;
  j["time"] = rat_str(e.time);
  j["kind"] = event_kind_name(e.kind);
  if (e.kind == EventKind::CutCrossing)
    j["sign"] = e.sign;
  else
    j["slot"] = e.slot;
  j["participants"] = e.participants;
  j["triple"] = e.triple;
  j["double_double"] = e.double_double;
  return j;
}

inline nlohmann::json wreath_to_json(const WreathElement& e) {
  nlohmann::json j;
  j["winding"] = e.winding;
  j["strand"] = word_to_text(e.strand.word);
  j["pure"] = is_pure(e);
  j["word"] = word_to_text(wreath_canonical_word(e));
  return j;
}

inline std::string phase_text(const GeneratorPhase& p) {
  std::string s;
  if (p.root != 0) s = rat_str(p.root);
  for (std::size_t f = 0; f < p.free_coeffs.size(); ++f) {
    if (p.free_coeffs[f] == 0) continue;
    if (!s.empty()) s += " + ";
    if (p.free_coeffs[f] != 1) s += p.free_coeffs[f].str() + "*";
    s += "phi" + std::to_string(f + 1);
  }
  return s.empty() ? "0" : s;
}

inline std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> part;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) {
        try {
          part.push_back(std::stoi(cur));
        } catch (const std::exception&) {
          throw DomainError("partition", "bad partition entry \"" + cur + "\"");
        }
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (part.empty()) throw DomainError("partition", "empty partition");
  return part;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exchange-group toolkit: words, wreath pairs, strata, and strand diagrams"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string family = "S", geometry = "interval", policy;
  int n = 0;
  auto add_group_flags = [&](CLI::App* cmd, bool need_n = true) {
    cmd->add_option("--family", family, "group family: S, T, F, or W");
    auto* opt = cmd->add_option("--n", n, "number of particles");
    if (need_n) opt->required();
    cmd->add_option("--geometry", geometry, "interval or ring");
  };
  auto presentation = [&]() {
    return make_presentation(detail::family_from(family), n,
                             detail::geometry_from(geometry));
  };

  // normalize
  std::string word_text, word_text2;
  auto* cmd_normalize = app.add_subcommand("normalize", "shortlex normal form of a word");
  add_group_flags(cmd_normalize);
  cmd_normalize->add_option("word", word_text, "word, e.g. \"s1 s2 s1\"")->required();
  cmd_normalize->callback([&] {
    Presentation pres = presentation();
    Word w = parse_word(word_text, pres);
    if (pres.geometry == Geometry::Interval) {
      ElementHandle h = normal_form_shortlex(w);
      if (json) {
        nlohmann::json j{{"word", word_to_text(h.word)},
                         {"length", h.word.letters.size()}};
        out << j.dump() << "\n";
      } else {
        out << word_to_text(h.word) << "\n";
      }
    } else {
      WreathElement e = wreath_from_word(w);
      if (json)
        out << detail::wreath_to_json(e).dump() << "\n";
      else
        out << word_to_text(wreath_canonical_word(e)) << "\n";
    }
  });

  // equal
  auto* cmd_equal = app.add_subcommand("equal", "decide equality of two words");
  add_group_flags(cmd_equal);
  cmd_equal->add_option("word1", word_text, "first word")->required();
  cmd_equal->add_option("word2", word_text2, "second word")->required();
  cmd_equal->callback([&] {
    Presentation pres = presentation();
    Word u = parse_word(word_text, pres);
    Word v = parse_word(word_text2, pres);
    bool eq = pres.geometry == Geometry::Interval
                  ? elements_equal(u, v)
                  : wreath_equal(wreath_from_word(u), wreath_from_word(v));
    if (json)
      out << nlohmann::json{{"equal", eq}}.dump() << "\n";
    else
      out << (eq ? "true" : "false") << "\n";
  });

  // image
  auto* cmd_image = app.add_subcommand("image", "permutation image of a word");
  add_group_flags(cmd_image);
  cmd_image->add_option("word", word_text, "word")->required();
  cmd_image->callback([&] {
    Presentation pres = presentation();
    Word w = parse_word(word_text, pres);
    std::vector<int> line = permutation_image(w).one_line();
    if (json) {
      out << nlohmann::json{{"one_line", line}}.dump() << "\n";
    } else {
      for (std::size_t i = 0; i < line.size(); ++i)
        out << (i ? " " : "") << line[i];
      out << "\n";
    }
  });

  // abelianize
  auto* cmd_ab = app.add_subcommand("abelianize", "abelianization of the group");
  add_group_flags(cmd_ab);
  cmd_ab->callback([&] {
    Presentation pres = presentation();
    AbelianData d = abelianization(pres);
    if (json) {
      nlohmann::json torsion = nlohmann::json::array();
      for (const Int& t : d.inv.torsion) torsion.push_back(t.str());
      out << nlohmann::json{{"group", abelian_to_string(d.inv)},
                            {"free_rank", d.inv.free_rank},
                            {"torsion", torsion}}
                 .dump()
          << "\n";
    } else {
      out << abelian_to_string(d.inv) << "\n";
    }
  });

  // characters
  auto* cmd_chars = app.add_subcommand("characters", "one-dimensional unitary characters");
  add_group_flags(cmd_chars);
  cmd_chars->callback([&] {
    Presentation pres = presentation();
    CharacterSet cs = enumerate_characters(pres);
    if (json) {
      nlohmann::json list = nlohmann::json::array();
      for (const Character& chi : cs.characters) list.push_back(character_to_json(cs, chi));
      out << nlohmann::json{{"generators", cs.generators},
                            {"free_rank", cs.free_rank},
                            {"characters", list}}
                 .dump()
          << "\n";
    } else {
      out << cs.characters.size() << " torsion characters, " << cs.free_rank
          << " continuous parameters (phase = fraction of a full turn)\n";
      for (std::size_t k = 0; k < cs.characters.size(); ++k) {
        out << "chi_" << (k + 1) << ":";
        for (std::size_t g = 0; g < cs.generators.size(); ++g)
          out << " " << cs.generators[g] << "="
              << detail::phase_text(cs.characters[k].phases[g]);
        out << "\n";
      }
    }
  });

  // strata
  int depth_d = 1;
  std::string partition_text;
  auto* cmd_strata = app.add_subcommand("strata", "coincidence strata of the configuration space");
  cmd_strata->add_option("--n", n, "number of particles")->required();
  cmd_strata->add_option("--d", depth_d, "ambient dimension per particle (default 1)");
  cmd_strata->add_option("partition", partition_text, "partition like \"2,1\" (omit to list all)");
  cmd_strata->callback([&] {
    auto info_json = [&](const StratumInfo& si) {
      return nlohmann::json{{"partition", si.partition},
                            {"components", si.h},
                            {"codim", si.codim},
                            {"stabilizer_order", si.stabilizer_order},
                            {"orbit_size", si.orbit_size}};
    };
    auto info_text = [&](const StratumInfo& si) {
      std::string s = "[";
      for (std::size_t i = 0; i < si.partition.size(); ++i)
        s += (i ? "," : "") + std::to_string(si.partition[i]);
      s += "] components=" + std::to_string(si.h) +
           " codim=" + std::to_string(si.codim) +
           " stabilizer=" + std::to_string(si.stabilizer_order) +
           " orbit=" + std::to_string(si.orbit_size);
      return s;
    };
    if (!partition_text.empty()) {
      StratumInfo si = stratum_info(detail::parse_partition(partition_text), depth_d);
      if (json)
        out << info_json(si).dump() << "\n";
      else
        out << info_text(si) << "\n";
    } else {
      auto parts = partitions(n);
      if (json) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& p : parts) list.push_back(info_json(stratum_info(p, depth_d)));
        out << list.dump() << "\n";
      } else {
        for (const auto& p : parts) out << info_text(stratum_info(p, depth_d)) << "\n";
      }
    }
  });

  // sector
  std::string config_arg;
  auto* cmd_sector = app.add_subcommand("sector", "ordering sector and stratum of a configuration");
  cmd_sector->add_option("config", config_arg, "configuration JSON (inline or file path)")->required();
  cmd_sector->callback([&] {
    Configuration c = configuration_from_json(detail::load_json_arg(config_arg));
    ClassifiedConfiguration cls = classify_configuration(c);
    if (!cls.in_delta2) {
      std::vector<int> sector = ordering_sector(c);
      if (json) {
        out << nlohmann::json{{"sector", sector},
                              {"partition", cls.partition},
                              {"on_coincidence", false}}
                   .dump()
            << "\n";
      } else {
        out << "sector:";
        for (int label : sector) out << " " << label;
        out << "\n";
      }
    } else {
      if (json) {
        out << nlohmann::json{{"on_coincidence", true},
                              {"partition", cls.partition},
                              {"groups", cls.groups},
                              {"delta3", cls.in_delta3},
                              {"delta22", cls.in_delta22}}
                   .dump()
            << "\n";
      } else {
        out << "on a coincidence locus; partition";
        for (int p : cls.partition) out << " " << p;
        out << (cls.in_delta3 ? ", triple" : "") << (cls.in_delta22 ? ", double-double" : "")
            << "\n";
      }
    }
  });

  // compile
  std::string traj_arg;
  auto* cmd_compile = app.add_subcommand("compile", "compile a trajectory loop to a group element");
  add_group_flags(cmd_compile);
  cmd_compile->add_option("--policy", policy, "coincidence policy (default: the family's)");
  cmd_compile->add_option("trajectory", traj_arg, "trajectory JSON (inline or file path)")->required();
  cmd_compile->callback([&] {
    Presentation pres = presentation();
    Trajectory traj = trajectory_from_json(detail::load_json_arg(traj_arg));
    CoincidencePolicy pol =
        policy.empty() ? policy_for_family(pres.family) : parse_policy(policy);
    CompiledLoop loop = compile_loop(traj, pres, pol);
    if (json) {
      nlohmann::json j{{"word", word_to_text(loop.word)}, {"pure", loop.pure}};
      nlohmann::json events = nlohmann::json::array();
      for (const Event& e : loop.log.events) events.push_back(detail::event_to_json(e));
      j["events"] = events;
      if (loop.ring_element)
        j["element"] = detail::wreath_to_json(*loop.ring_element);
      else
        j["element"] = {{"normal_form", word_to_text(loop.interval_element->word)}};
      out << j.dump() << "\n";
    } else {
      out << word_to_text(loop.word) << "\n";
    }
  });

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "check a trajectory against a policy");
  cmd_validate->add_option("--policy", policy, "coincidence policy")->required();
  cmd_validate->add_option("trajectory", traj_arg, "trajectory JSON (inline or file path)")->required();
  cmd_validate->callback([&] {
    Trajectory traj = trajectory_from_json(detail::load_json_arg(traj_arg));
    ValidationReport rep = validate(traj, parse_policy(policy));
    if (json) {
      nlohmann::json violations = nlohmann::json::array();
      for (const PolicyViolation& v : rep.violations)
        violations.push_back(nlohmann::json{{"time", rat_str(v.time)},
                                            {"what", v.what},
                                            {"participants", v.participants}});
      out << nlohmann::json{{"ok", rep.ok()},
                            {"violations", violations},
                            {"structural", rep.structural}}
                 .dump()
          << "\n";
    } else {
      if (rep.ok()) {
        out << "ok\n";
      } else {
        for (const std::string& s : rep.structural) out << "structural: " << s << "\n";
        for (const PolicyViolation& v : rep.violations) {
          out << "t = " << rat_str(v.time) << ": " << v.what << " (particles";
          for (int p : v.participants) out << " " << p;
          out << ")\n";
        }
      }
    }
  });

  // render
  std::string style = "ascii", out_path;
  int ring_cut_flag = -1, canvas_cap = 2000;
  auto* cmd_render = app.add_subcommand("render", "strand diagram of a word");
  add_group_flags(cmd_render);
  cmd_render->add_option("--style", style, "ascii or svg (default ascii)");
  cmd_render->add_flag("--ring-cut,!--no-ring-cut", ring_cut_flag,
                       "draw the dashed cut verticals (default: ring geometry)");
  cmd_render->add_option("--canvas-cap", canvas_cap, "maximum diagram rows (default 2000)");
  cmd_render->add_option("--out", out_path, "write the document to a file");
  cmd_render->add_option("word", word_text, "word to draw")->required();
  cmd_render->callback([&] {
    Presentation pres = presentation();
    Word w = parse_word(word_text, pres);
    DiagramSpec spec;
    spec.word = w;
    if (style == "ascii")
      spec.style = DiagramStyle::Ascii;
    else if (style == "svg")
      spec.style = DiagramStyle::Svg;
    else
      throw DomainError("style", "unknown style \"" + style + "\"; expected ascii or svg");
    spec.ring_cut = ring_cut_flag < 0 ? pres.geometry == Geometry::Ring : ring_cut_flag > 0;
    spec.max_rows = canvas_cap;
    std::string doc = render(spec);
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw DomainError("io", "cannot write \"" + out_path + "\"");
      f << doc;
      if (json)
        out << nlohmann::json{{"written", out_path}, {"bytes", doc.size()}}.dump() << "\n";
    } else if (json) {
      out << nlohmann::json{{"document", doc}}.dump() << "\n";
    } else {
      out << doc;
    }
  });

  // ball
  int radius = 0;
  std::size_t cap = 1'000'000;
  auto* cmd_ball = app.add_subcommand("ball", "Cayley ball up to a radius");
  add_group_flags(cmd_ball);
  cmd_ball->add_option("--radius", radius, "ball radius")->required();
  cmd_ball->add_option("--cap", cap, "element cap (default 1e6)");
  cmd_ball->callback([&] {
    Presentation pres = presentation();
    if (pres.geometry == Geometry::Interval) {
      auto ball = cayley_ball(pres, radius, cap);
      if (json) {
        nlohmann::json list = nlohmann::json::array();
        for (const BallEntry& e : ball)
          list.push_back(nlohmann::json{{"length", e.length},
                                        {"word", word_to_text(e.element.word)}});
        out << nlohmann::json{{"count", ball.size()}, {"elements", list}}.dump() << "\n";
      } else {
        out << ball.size() << " elements\n";
        for (const BallEntry& e : ball)
          out << e.length << "\t" << word_to_text(e.element.word) << "\n";
      }
    } else {
      auto ball = wreath_ball(pres, radius, cap);
      if (json) {
        nlohmann::json list = nlohmann::json::array();
        for (const WreathBallEntry& e : ball)
          list.push_back(nlohmann::json{
              {"length", e.length},
              {"word", word_to_text(wreath_canonical_word(e.element))}});
        out << nlohmann::json{{"count", ball.size()}, {"elements", list}}.dump() << "\n";
      } else {
        out << ball.size() << " elements\n";
        for (const WreathBallEntry& e : ball)
          out << e.length << "\t" << word_to_text(wreath_canonical_word(e.element)) << "\n";
      }
    }
  });

  // affine-check
  auto* cmd_affine = app.add_subcommand("affine-check",
                                        "verify the affine presentation inside the ring group");
  cmd_affine->add_option("--n", n, "number of particles")->required();
  cmd_affine->callback([&] {
    AffineReport rep = verify_affine_presentation(n);
    if (json) {
      nlohmann::json checks = nlohmann::json::array();
      for (const AffineRelationCheck& c : rep.checks)
        checks.push_back(nlohmann::json{{"relation", c.relation}, {"holds", c.holds}});
      out << nlohmann::json{{"all_hold", rep.all_hold}, {"checks", checks}}.dump() << "\n";
    } else {
      for (const AffineRelationCheck& c : rep.checks)
        out << (c.holds ? "ok   " : "FAIL ") << c.relation << "\n";
      out << (rep.all_hold ? "all relations hold" : "some relations FAIL") << "\n";
    }
  });

  // let flags like --json land on the parent from any position
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("strands");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << nlohmann::json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
        << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli
}  // namespace strands
