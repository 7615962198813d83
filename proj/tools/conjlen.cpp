// conjlen: exact conjugacy problem and conjugacy length measurements for
// BS(1,m), Gamma_M and Z^d x| Z^k.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "conjlen/ball.hpp"
#include "conjlen/errors.hpp"
#include "conjlen/harness.hpp"
#include "conjlen/io.hpp"
#include "conjlen/metrics.hpp"
#include "conjlen/oracle.hpp"
#include "conjlen/solvers.hpp"

using namespace conjlen;
using nlohmann::json;

namespace {

enum Exit { kConjugate = 0, kNotConjugate = 1, kUsage = 2, kExhausted = 3, kCap = 4, kFailure = 5 };

std::vector<std::string> split_numbers(std::string text) {
  for (char& c : text)
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

IntVector parse_int_vector(const std::string& text) {
  IntVector v;
  for (const auto& tok : split_numbers(text)) {
    Int x;
    if (x.set_str(tok, 10) != 0) throw ParseError("not an integer: '" + tok + "'", 0);
    v.push_back(x);
  }
  return v;
}

std::vector<std::int64_t> parse_exponents(const std::string& text) {
  std::vector<std::int64_t> y;
  for (const auto& x : parse_int_vector(text)) {
    if (!x.fits_slong_p()) throw ParseError("exponent out of range", 0);
    y.push_back(x.get_si());
  }
  return y;
}

std::string metadata_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".json");
  if (p == std::filesystem::path(out)) p += ".meta.json";
  return p.string();
}

// CSV to --out (plus JSON metadata next to it), or to stdout.
void emit(const std::string& out, const std::string& csv, const json& meta) {
  if (out.empty()) {
    std::cout << csv;
    return;
  }
  write_file_atomic(out, csv);
  write_file_atomic(metadata_path(out), meta.dump(2) + "\n");
}

json fit_json(const FitResult& f) {
  return {{"model", std::string(model_name(f.model))}, {"constant", f.constant}, {"max_residual", f.max_residual}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact conjugacy problem solver and conjugacy length measurements"};
  app.require_subcommand(1);

  std::string config_path, out, model_text = "linear";
  std::uint32_t n_max = 0, radius = 0, conj_radius = 0, r_max = 0;
  std::size_t cap = kDefaultBallCap;
  std::string word_u, word_v, vec_u, vec_y, subgroup = "a", metric = "a";

  auto add_config = [&](CLI::App* c) { c->add_option("--config", config_path, "group config JSON")->required(); };
  auto add_cap = [&](CLI::App* c) { c->add_option("--cap", cap, "element enumeration cap"); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "output CSV path (metadata goes to .json)"); };

  auto* nf = app.add_subcommand("normal-form", "print the canonical form of a word");
  add_config(nf);
  nf->add_option("word", word_u)->required();

  auto* cj = app.add_subcommand("conjugate", "decide conjugacy of two words; JSON report on stdout");
  add_config(cj);
  cj->add_option("u", word_u)->required();
  cj->add_option("v", word_v)->required();
  radius = 16;
  cj->add_option("--radius", radius, "search shortest conjugators up to this length")->capture_default_str();
  add_cap(cj);

  auto* clf = app.add_subcommand("clf", "empirical conjugacy length function");
  add_config(clf);
  clf->add_option("--n-max", n_max)->required();
  clf->add_option("--radius", conj_radius, "longest conjugator searched (default 4 n_max)");
  clf->add_option("--model", model_text)->check(CLI::IsMember({"linear", "exponential"}));
  add_cap(clf);
  add_out(clf);

  auto* tclf = app.add_subcommand("tclf", "twisted conjugacy length in Z^d for the config's automorphism");
  add_config(tclf);
  tclf->add_option("--n-max", n_max)->required();
  tclf->add_option("--model", model_text)->check(CLI::IsMember({"linear", "exponential"}));
  add_cap(tclf);
  add_out(tclf);

  auto* rclf = app.add_subcommand("rclf", "restricted conjugacy length of <a> in BS(1,m)");
  add_config(rclf);
  rclf->add_option("--r-max", r_max)->required();
  rclf->add_option("--model", model_text)->check(CLI::IsMember({"linear", "exponential"}));
  add_cap(rclf);
  add_out(rclf);

  auto* rh = app.add_subcommand("rho", "stabilizer lattice and its covering radius");
  add_config(rh);
  rh->add_option("u", vec_u, "kernel vector, e.g. 1,0")->required();
  rh->add_option("y", vec_y, "quotient exponents, e.g. 2")->required();
  add_cap(rh);

  auto* bl = app.add_subcommand("ball", "Cayley ball as CSV");
  add_config(bl);
  bl->add_option("--radius", radius)->required();
  add_cap(bl);
  add_out(bl);

  auto* wl = app.add_subcommand("wordlen", "word length of an element by BFS");
  add_config(wl);
  wl->add_option("word", word_u)->required();
  wl->add_option("--radius", radius, "ball radius")->capture_default_str();
  add_cap(wl);

  auto* ds = app.add_subcommand("distortion", "distortion of the a-subgroup");
  add_config(ds);
  ds->add_option("--n-max", n_max)->required();
  ds->add_option("--subgroup", subgroup)->check(CLI::IsMember({"a", "whole"}));
  ds->add_option("--metric", metric)->check(CLI::IsMember({"a", "restricted"}));
  add_cap(ds);
  add_out(ds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const GroupConfig cfg = config_from_file(config_path);
    const FitModel model = model_text == "linear" ? FitModel::linear : FitModel::exponential;
    json meta{{"config", json::parse(config_to_json(cfg))}, {"cap", cap}};

    if (*nf) {
      std::cout << to_string(eval_word(cfg, parse_word(cfg, word_u))) << "\n";
      return 0;
    }

    if (*cj) {
      const Element u = eval_word(cfg, parse_word(cfg, word_u));
      const Element v = eval_word(cfg, parse_word(cfg, word_v));
      const ConjReport rep = conj_solve(cfg, u, v);
      json j{{"conjugate", rep.conjugate},
             {"case_taken", std::string(case_name(rep.case_taken))},
             {"search_exhausted", rep.search_exhausted}};
      std::optional<ShortestConjugator> best;
      if (rep.conjugate || rep.search_exhausted) {
        try {
          best = shortest_conjugator(cfg, u, v, radius, cap);
        } catch (const CapExceeded&) {
        }
      }
      if (best) {
        j["conjugate"] = true;
        j["search_exhausted"] = false;
        j["witness"] = word_to_string(cfg, best->word);
        j["witness_element"] = to_string(best->g);
        j["witness_length"] = best->length;
      } else if (rep.witness) {
        j["witness"] = word_to_string(cfg, normal_form_word(cfg, *rep.witness));
        j["witness_element"] = to_string(*rep.witness);
        j["witness_length"] = nullptr;
      } else {
        j["witness"] = nullptr;
        j["witness_length"] = nullptr;
      }
      std::cout << j.dump() << "\n";
      if (j["conjugate"].get<bool>()) return kConjugate;
      return rep.search_exhausted ? kExhausted : kNotConjugate;
    }

    if (*clf) {
      ClfOptions opts;
      opts.n_max = n_max;
      opts.conjugator_radius = conj_radius;
      opts.cap = cap;
      const ClfTable table = empirical_clf(cfg, opts);
      meta["n_max"] = n_max;
      meta["conjugator_radius"] = table.conjugator_radius_reached;
      meta["solver_calls"] = table.solver_calls;
      try {
        meta["fit"] = fit_json(fit_bound(table, model));
      } catch (const EmptyTable&) {
        meta["fit"] = nullptr;
      }
      emit(out, clf_to_csv(cfg, table), meta);
      return 0;
    }

    if (*tclf) {
      IntMatrix phi;
      if (cfg.family() == Family::semidirect && cfg.k() == 1)
        phi = cfg.phi_gens()[0];
      else if (cfg.family() != Family::semidirect)
        phi = cfg.matrix_m();
      else
        throw DomainError("tclf needs a config with a single automorphism");
      const auto rows = empirical_tclf(phi, n_max, cap);
      meta["n_max"] = n_max;
      meta["fit"] = fit_json(fit_bound(rows, model));
      emit(out, series_to_csv(rows, "tclf"), meta);
      return 0;
    }

    if (*rclf) {
      if (cfg.family() != Family::bs) throw DomainError("rclf needs a bs config");
      const auto rows = empirical_rclf_bs(cfg.m().get_si(), r_max, cap);
      meta["r_max"] = r_max;
      meta["fit"] = fit_json(fit_bound(rows, model));
      emit(out, series_to_csv(rows, "rclf"), meta);
      return 0;
    }

    if (*rh) {
      const IntVector u = parse_int_vector(vec_u);
      const auto y = parse_exponents(vec_y);
      const StabilizerLattice lat = stabilizer_lattice(cfg, u, y, cap);
      std::ostringstream basis;
      basis << lat.basis;
      const Int r = covering_radius(lat, cap);
      std::cout << json{{"basis", basis.str()}, {"index", lat.index.get_str()}, {"rho", r.get_str()}}.dump() << "\n";
      return 0;
    }

    if (*bl) {
      const Ball ball = bfs_ball(cfg, radius, cap);
      meta["radius"] = radius;
      meta["size"] = ball.size();
      emit(out, ball_to_csv(ball), meta);
      return 0;
    }

    if (*wl) {
      const Element g = eval_word(cfg, parse_word(cfg, word_u));
      const Ball ball = bfs_ball(cfg, radius, cap);
      const Word w = geodesic_word(ball, g);
      std::cout << json{{"element", to_string(g)}, {"length", w.size()}, {"geodesic", word_to_string(cfg, w)}}.dump()
                << "\n";
      return 0;
    }

    if (*ds) {
      SubgroupSelector sel;
      sel.subgroup = subgroup == "a" ? SubgroupSelector::Subgroup::a_subgroup : SubgroupSelector::Subgroup::whole;
      sel.metric = metric == "a" ? SubgroupSelector::Metric::a_generator : SubgroupSelector::Metric::restricted;
      const auto rows = distortion_table(cfg, sel, n_max, cap);
      meta["n_max"] = n_max;
      meta["subgroup"] = subgroup;
      meta["metric"] = metric;
      emit(out, distortion_to_csv(rows), meta);
      return 0;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kCap;
  } catch (const SearchExhausted& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kExhausted;
  } catch (const ParseError& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "conjlen: " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}
