// pdef: command-line front end.
//
// Exit status: 0 when a result or certificate was produced, 1 for an
// Inconclusive outcome (including an exceeded coset bound or a rejected
// certificate), 2 for usage, parse and resource errors.

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdef/pdef.hpp"

namespace {

  using nlohmann::json;
  using namespace pdef;

  constexpr int exit_ok           = 0;
  constexpr int exit_inconclusive = 1;
  constexpr int exit_error        = 2;

  struct Options {
    std::string file;
    long long   p             = 0;
    std::size_t max_index     = 0;
    std::size_t max_cosets    = default_max_cosets;
    std::size_t kill_budget   = 2;
    std::size_t tietze_budget = default_tietze_budget;
    bool        json          = false;
    bool        normal        = false;
    std::string subgroup_gens;
    std::size_t rank     = 0;
    std::size_t count    = 0;
    std::size_t exponent = 0;
  };

  std::string read_input(std::string const& file) {
    if (file == "-") {
      return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw Error("cannot open " + file);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  std::string display_name(std::string const& file) {
    return file == "-" ? "<stdin>" : file;
  }

  Presentation load(std::string const& file) {
    std::vector<ParseWarning> warnings;
    std::string const         text = read_input(file);
    Presentation              P;
    try {
      P = parse_presentation(text, &warnings);
    } catch (ParseError const& e) {
      throw Error(display_name(file) + ": " + e.what());
    }
    for (auto const& w : warnings) {
      std::cerr << display_name(file) << ':' << w.line << ':' << w.column
                << ": warning: " << w.message << '\n';
    }
    return P;
  }

  std::vector<Word> subgroup_words(Presentation const& P, std::string const& spec) {
    std::vector<Word> out;
    std::size_t       start = 0;
    while (start <= spec.size()) {
      auto end = spec.find(';', start);
      if (end == std::string::npos) {
        end = spec.size();
      }
      std::string piece = spec.substr(start, end - start);
      if (piece.find_first_not_of(" \t") != std::string::npos) {
        try {
          out.push_back(parse_word(piece, P.generator_names));
        } catch (ParseError const& e) {
          throw Error("--subgroup-gens: " + std::string(e.what()));
        }
      }
      start = end + 1;
    }
    return out;
  }

  json presentation_json(Presentation const& P) {
    json rels = json::array();
    for (auto const& r : P.relators) {
      rels.push_back(to_string(r, P.generator_names));
    }
    return {{"generators", P.generator_names}, {"relators", rels}};
  }

  int emit_certificate(Certificate const& c) {
    std::cout << to_json_string(c) << '\n';
    return c.kind == CertificateKind::Inconclusive ? exit_inconclusive : exit_ok;
  }

  // Enumerates cosets of the subgroup named by --subgroup-gens; exit 1 with
  // a "bound exceeded" record when max_cosets is hit.
  std::optional<CosetTable> enumerate(Presentation const& P, Options const& o) {
    auto result = todd_coxeter(P, subgroup_words(P, o.subgroup_gens), o.max_cosets);
    if (auto const* ex = std::get_if<Exhausted>(&result)) {
      json record = {{"result", "bound exceeded"}, {"max_cosets", ex->max_cosets}};
      std::cout << (o.json ? record.dump(2) : "bound exceeded: more than "
                                                  + std::to_string(ex->max_cosets)
                                                  + " cosets")
                << '\n';
      return std::nullopt;
    }
    return std::get<CosetTable>(std::move(result));
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int run_def(Options const& o) {
    auto P      = load(o.file);
    auto report = p_deficiency(P, o.p);
    if (o.json) {
      json rows = json::array();
      for (auto const& rv : report.per_relator) {
        rows.push_back({{"relator", to_string(P.relators[rv.relator], P.generator_names)},
                        {"nu", rv.nu ? json(*rv.nu) : json(nullptr)},
                        {"contribution", to_string(rv.contribution)}});
      }
      std::cout << json({{"p", o.p}, {"value", to_string(report.value)}, {"relators", rows}})
                       .dump(2)
                << '\n';
      return exit_ok;
    }
    std::cout << "def_" << o.p << " = " << to_string(report.value) << '\n';
    if (report.per_relator.empty()) {
      return exit_ok;
    }
    std::vector<std::string> names;
    std::size_t              width = std::string("relator").size();
    for (auto const& rv : report.per_relator) {
      names.push_back(to_string(P.relators[rv.relator], P.generator_names));
      width = std::max(width, names.back().size());
    }
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "relator"
              << std::setw(6) << "nu" << "p^-nu\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto const& rv = report.per_relator[i];
      std::cout << std::setw(static_cast<int>(width) + 2) << names[i] << std::setw(6)
                << (rv.nu ? std::to_string(*rv.nu) : std::string("inf"))
                << to_string(rv.contribution) << '\n';
    }
    return exit_ok;
  }

  int run_deficiency(Options const& o) {
    auto P = load(o.file);
    if (o.json) {
      std::cout << json({{"generators", P.num_generators()},
                         {"relators", P.num_relators()},
                         {"deficiency", deficiency_count(P)}})
                       .dump(2)
                << '\n';
    } else {
      std::cout << "deficiency = " << deficiency_count(P) << '\n';
    }
    return exit_ok;
  }

  int run_lowindex(Options const& o) {
    auto P       = load(o.file);
    auto records = o.normal ? low_index_normal(P, o.max_index)
                            : low_index_subgroups(P, o.max_index);
    if (o.json) {
      json out = json::array();
      for (auto const& rec : records) {
        json gens = json::array();
        for (auto const& w : rec.schreier_generators) {
          gens.push_back(to_string(w, P.generator_names));
        }
        out.push_back({{"index", rec.index},
                       {"normal", rec.normal},
                       {"table", rec.table.rows},
                       {"generators", gens}});
      }
      std::cout << out.dump(2) << '\n';
      return exit_ok;
    }
    for (auto const& rec : records) {
      std::cout << "index " << rec.index << (rec.normal ? "  normal    " : "  nonnormal ")
                << "gens:";
      for (std::size_t i = 0; i < rec.schreier_generators.size(); ++i) {
        std::cout << (i == 0 ? " " : ", ")
                  << to_string(rec.schreier_generators[i], P.generator_names);
      }
      std::cout << '\n';
    }
    std::cout << records.size() << (records.size() == 1 ? " subgroup\n" : " subgroups\n");
    return exit_ok;
  }

  // Unsimplified Reidemeister-Schreier output, so the generator and relator
  // counts stay visible; pipe through `simplify` to reduce it.
  int run_rewrite(Options const& o) {
    auto P = load(o.file);
    auto T = enumerate(P, o);
    if (!T) {
      return exit_inconclusive;
    }
    auto H = reidemeister_schreier(P, *T);
    if (o.json) {
      auto j     = presentation_json(H);
      j["index"] = T->index();
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << to_string(H);
    }
    return exit_ok;
  }

  int run_abelianize(Options const& o) {
    auto P   = load(o.file);
    auto inv = abelian_invariants(P);
    if (o.json) {
      json torsion = json::array();
      for (auto const& d : inv.torsion) {
        torsion.push_back(d.str());
      }
      std::cout << json({{"rank", inv.free_rank}, {"torsion", torsion}}).dump(2) << '\n';
    } else {
      std::cout << to_string(inv) << '\n';
    }
    return exit_ok;
  }

  int run_simplify(Options const& o) {
    auto P = load(o.file);
    auto r = tietze_simplify(P, o.tietze_budget);
    if (r.budget_exhausted) {
      std::cerr << "warning: tietze budget of " << o.tietze_budget
                << " steps exhausted; result is partially simplified\n";
    }
    if (o.json) {
      auto j                = presentation_json(r.presentation);
      j["steps"]            = r.steps;
      j["budget_exhausted"] = r.budget_exhausted;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << to_string(r.presentation);
    }
    return exit_ok;
  }

  int run_dump_table(Options const& o) {
    auto P = load(o.file);
    auto T = enumerate(P, o);
    if (!T) {
      return exit_inconclusive;
    }
    if (o.json) {
      std::cout << json({{"cosets", T->index()},
                         {"gens", T->n_generators},
                         {"table", T->rows}})
                       .dump(2)
                << '\n';
    } else {
      std::cout << dump_table(*T);
    }
    return exit_ok;
  }

  int run_verify(Options const& o) {
    auto c      = certificate_from_json_string(read_input(o.file));
    auto defect = find_certificate_defect(c);
    if (defect) {
      std::cout << "rejected: " << *defect << '\n';
      return exit_inconclusive;
    }
    std::cout << "verified: " << to_string(c.kind) << '\n';
    return exit_ok;
  }

  int run_certify(std::string const& kind, Options const& o) {
    if (kind == "power-quotient") {
      return emit_certificate(power_quotient_largeness(o.rank, o.count, o.exponent));
    }
    auto P = load(o.file);
    if (kind == "p-large-def") {
      return emit_certificate(certify_p_large_by_deficiency(P, o.p));
    }
    if (kind == "p-large") {
      return emit_certificate(
          certify_p_large_witness(P, o.p, o.max_index, o.kill_budget, o.tietze_budget));
    }
    if (kind == "z-surjection") {
      return emit_certificate(find_z_surjection(P, o.max_index, o.tietze_budget));
    }
    if (kind == "allcock") {
      return emit_certificate(
          allcock_rank_bound(P, subgroup_words(P, o.subgroup_gens), o.max_cosets));
    }
    return emit_certificate(certify_free_quotient(P, o.kill_budget, o.tietze_budget));
  }

  ////////////////////////////////////////////////////////////////////////
  // Command line
  ////////////////////////////////////////////////////////////////////////

  void add_file(CLI::App* app, Options& o, std::string const& what = "presentation file") {
    app->add_option("file", o.file, what + " (\"-\" for stdin)")->required();
  }

  void add_prime(CLI::App* app, Options& o) {
    app->add_option("-p,--prime", o.p, "prime p")->required();
  }

  void add_json(CLI::App* app, Options& o) {
    app->add_flag("--json", o.json, "JSON output");
  }

  void add_subgroup(CLI::App* app, Options& o) {
    app->add_option("--subgroup-gens", o.subgroup_gens,
                    "subgroup generators as semicolon-separated words");
    app->add_option("--max-cosets", o.max_cosets, "coset enumeration limit")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }

  void add_max_index(CLI::App* app, Options& o) {
    app->add_option("--max-index", o.max_index, "largest subgroup index searched")
        ->required()
        ->check(CLI::PositiveNumber);
  }

  void add_tietze_budget(CLI::App* app, Options& o) {
    app->add_option("--tietze-budget", o.tietze_budget, "Tietze step limit")
        ->capture_default_str();
  }

  void add_kill_budget(CLI::App* app, Options& o) {
    app->add_option("--kill-budget", o.kill_budget, "largest kill set tried")
        ->capture_default_str();
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-deficiency, subgroup search and largeness certificates for "
               "finitely presented groups"};
  app.require_subcommand(1);
  Options o;

  auto* def = app.add_subcommand("def", "p-deficiency with per-relator valuations");
  add_prime(def, o);
  add_file(def, o);
  add_json(def, o);

  auto* deficiency = app.add_subcommand("deficiency", "generators minus relators");
  add_file(deficiency, o);
  add_json(deficiency, o);

  auto* lowindex = app.add_subcommand("lowindex", "subgroups of bounded index");
  add_max_index(lowindex, o);
  lowindex->add_flag("--normal", o.normal, "normal subgroups only");
  add_file(lowindex, o);
  add_json(lowindex, o);

  auto* rewrite = app.add_subcommand("rewrite", "Reidemeister-Schreier presentation of a subgroup");
  add_subgroup(rewrite, o);
  add_file(rewrite, o);
  add_json(rewrite, o);

  auto* abelianize = app.add_subcommand("abelianize", "abelian invariants");
  add_file(abelianize, o);
  add_json(abelianize, o);

  auto* simplify = app.add_subcommand("simplify", "Tietze simplification");
  add_tietze_budget(simplify, o);
  add_file(simplify, o);
  add_json(simplify, o);

  auto* dump = app.add_subcommand("dump-table", "coset table of a subgroup");
  add_subgroup(dump, o);
  add_file(dump, o);
  add_json(dump, o);

  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate");
  add_file(verify_cmd, o, "certificate JSON file");

  auto* certify = app.add_subcommand("certify", "issue a certificate (JSON)");
  certify->require_subcommand(1);
  // --json is accepted for uniformity; certificates are always JSON
  add_json(certify, o);

  auto* c_def = certify->add_subcommand("p-large-def", "p-large from p-deficiency > 1");
  add_prime(c_def, o);
  add_file(c_def, o);

  auto* c_plarge = certify->add_subcommand("p-large", "normal p-power index free quotient");
  add_prime(c_plarge, o);
  add_max_index(c_plarge, o);
  add_kill_budget(c_plarge, o);
  add_tietze_budget(c_plarge, o);
  add_file(c_plarge, o);

  auto* c_z = certify->add_subcommand("z-surjection", "normal subgroup surjecting onto Z");
  add_max_index(c_z, o);
  add_tietze_budget(c_z, o);
  add_file(c_z, o);

  auto* c_allcock = certify->add_subcommand("allcock", "abelianization rank bound");
  add_subgroup(c_allcock, o);
  c_allcock->get_option("--subgroup-gens")->required();
  add_file(c_allcock, o);

  auto* c_free = certify->add_subcommand("free-quotient", "non-abelian free quotient");
  add_kill_budget(c_free, o);
  add_tietze_budget(c_free, o);
  add_file(c_free, o);

  auto* c_power = certify->add_subcommand("power-quotient", "F_r/<<g_1^q..g_k^q>> largeness");
  c_power->add_option("--rank", o.rank, "free rank r")->required();
  c_power->add_option("--count", o.count, "number of relators k")->required();
  c_power->add_option("--exponent", o.exponent, "exponent q")->required();

  for (auto* sub : certify->get_subcommands({})) {
    sub->add_flag("--json", o.json, "accepted; output is always JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (*def) {
      return run_def(o);
    }
    if (*deficiency) {
      return run_deficiency(o);
    }
    if (*lowindex) {
      return run_lowindex(o);
    }
    if (*rewrite) {
      return run_rewrite(o);
    }
    if (*abelianize) {
      return run_abelianize(o);
    }
    if (*simplify) {
      return run_simplify(o);
    }
    if (*dump) {
      return run_dump_table(o);
    }
    if (*verify_cmd) {
      return run_verify(o);
    }
    for (auto* sub : certify->get_subcommands()) {
      return run_certify(sub->get_name(), o);
    }
  } catch (std::bad_alloc const&) {
    std::cerr << "pdef: out of memory\n";
    return exit_error;
  } catch (std::exception const& e) {
    std::cerr << "pdef: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
