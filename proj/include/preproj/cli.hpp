#pragma once

// Command-line front end. run_cli never throws: input problems become exit
// code 2, mathematical mismatches exit code 1.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "preproj/algebra.hpp"
#include "preproj/koszul.hpp"
#include "preproj/quiver.hpp"
#include "preproj/torsion.hpp"

namespace preproj::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::string file;
  std::string field;  // empty: the file's field line, else q
  std::size_t degree = 10;
  std::size_t i_max = 3;
  std::size_t d_max = 8;
  std::string format = "tsv";
  std::uint64_t seed = 0;
};

inline Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_quiver(text.str());
}

inline FieldSpec resolve_field(const RunConfig& cfg, const Quiver& q) {
  if (!cfg.field.empty()) return FieldSpec::parse(cfg.field);
  return q.declared_field().value_or(FieldSpec::rationals());
}

inline nlohmann::json config_json(const RunConfig& cfg, const FieldSpec& f) {
  return {{"command", cfg.command}, {"file", cfg.file},     {"field", f.to_string()}, {"degree", cfg.degree},
          {"imax", cfg.i_max},      {"dmax", cfg.d_max}, {"seed", cfg.seed}};
}

inline int cmd_classify(const RunConfig& cfg, const Quiver& q, std::ostream& out) {
  const auto c = classify(q);
  if (cfg.format == "json") {
    nlohmann::json j{{"connected", c.connected}, {"description", c.describe()}};
    j["verdict"] = !c.verdict ? nlohmann::json(nullptr)
                   : *c.verdict == Classification::Verdict::Dynkin        ? nlohmann::json("dynkin")
                   : *c.verdict == Classification::Verdict::ExtendedDynkin ? nlohmann::json("extended-dynkin")
                                                                           : nlohmann::json("non-dynkin");
    j["type"] = c.type ? nlohmann::json(c.type->name()) : nlohmann::json(nullptr);
    if (c.verdict == Classification::Verdict::OtherNonDynkin) {
      const auto sub = find_extended_dynkin_subquiver(q);
      const auto sq = sub.as_quiver(q);
      j["extended_dynkin_subquiver"] = {{"vertices", sq.vertices()}, {"type", classify(sq).type->name()}};
    }
    out << j.dump(2) << '\n';
  } else {
    out << c.describe() << '\n';
  }
  return kOk;
}

inline int cmd_hilbert(const RunConfig& cfg, const Quiver& q, const FieldSpec& f, std::ostream& out) {
  const auto h = hilbert_series(preprojective_presentation(q, f), cfg.degree);
  if (cfg.format == "json")
    out << nlohmann::json{{"config", config_json(cfg, f)}, {"series", to_json(h)}}.dump(2) << '\n';
  else
    write_tsv(out, h);
  return kOk;
}

inline int cmd_closed_form(const RunConfig& cfg, const Quiver& q, const FieldSpec& f, std::ostream& out) {
  const auto s = closed_form(adjacency_double(q), relation_count_matrix(q), cfg.degree);
  if (cfg.format == "json")
    out << nlohmann::json{{"config", config_json(cfg, f)}, {"series", to_json(s)}}.dump(2) << '\n';
  else
    write_tsv(out, s);
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, const Quiver& q, const FieldSpec& f, std::ostream& out) {
  const auto h = hilbert_series(preprojective_presentation(q, f), cfg.degree);
  const auto s = closed_form(adjacency_double(q), relation_count_matrix(q), cfg.degree);
  const auto cmp = termwise_compare(h, s);
  const bool ok = cmp.outcome == Comparison::Outcome::Equal;
  if (cfg.format == "json") {
    nlohmann::json j{{"config", config_json(cfg, f)}, {"verified", ok}, {"comparison", to_string(cmp.outcome)}};
    j["witness"] = cmp.witness ? to_json(*cmp.witness) : nlohmann::json(nullptr);
    if (cmp.witness) {
      const auto& w = *cmp.witness;
      j["computed"] = h[w.degree](w.row, w.col);
      j["closed_form"] = s[w.degree](w.row, w.col);
    }
    out << j.dump(2) << '\n';
  } else if (ok) {
    out << "verified: hilbert series equals closed form up to degree " << cfg.degree << " over " << f.to_string()
        << '\n';
  } else {
    const auto& w = *cmp.witness;
    out << "mismatch at degree " << w.degree << " entry (" << w.row << "," << w.col << "): computed "
        << h[w.degree](w.row, w.col) << ", closed form " << s[w.degree](w.row, w.col) << '\n';
  }
  return ok ? kOk : kMismatch;
}

inline int cmd_koszul(const RunConfig& cfg, const Quiver& q, const FieldSpec& f, std::ostream& out) {
  const auto p = preprojective_presentation(q, f);
  const auto v = koszulity_verdict(p, cfg.degree, cfg.i_max, cfg.d_max);
  const auto tor = tor_dimensions(p, cfg.i_max, cfg.d_max);
  if (cfg.format == "json") {
    out << nlohmann::json{{"config", config_json(cfg, f)}, {"verdict", to_json(v)}, {"tor", to_json(tor)}}.dump(2)
        << '\n';
  } else {
    out << v.summary() << '\n';
    write_tsv(out, tor);
  }
  return v.koszul() ? kOk : kMismatch;
}

inline int cmd_torsion(const RunConfig& cfg, const Quiver& q, const FieldSpec& f, std::ostream& out) {
  const auto r = torsion_check(q, cfg.degree);
  if (cfg.format == "json") {
    out << nlohmann::json{{"config", config_json(cfg, f)}, {"report", to_json(r)}}.dump(2) << '\n';
  } else {
    out << r.summary() << '\n';
    write_tsv(out, r);
  }
  return r.torsion_found ? kMismatch : kOk;
}

inline int run(const RunConfig& cfg, std::ostream& out) {
  Quiver q;
  FieldSpec f;
  try {
    q = load_quiver(cfg.file);
    f = resolve_field(cfg, q);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    // Anything thrown while reading the file is a malformed-input problem.
    throw InputError(e.what());
  }
  if (cfg.command == "classify") return cmd_classify(cfg, q, out);
  if (cfg.command == "hilbert") return cmd_hilbert(cfg, q, f, out);
  if (cfg.command == "closed-form") return cmd_closed_form(cfg, q, f, out);
  if (cfg.command == "verify") return cmd_verify(cfg, q, f, out);
  if (cfg.command == "koszul") return cmd_koszul(cfg, q, f, out);
  if (cfg.command == "torsion") return cmd_torsion(cfg, q, f, out);
  throw InputError("unknown command '" + cfg.command + "'");
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert series, Koszulity and torsion checks for (partial) preprojective algebras", "preproj"};
  RunConfig cfg;
  app.add_option("command", cfg.command, "classify | hilbert | closed-form | verify | koszul | torsion")
      ->required()
      ->check(CLI::IsMember({"classify", "hilbert", "closed-form", "verify", "koszul", "torsion"}));
  app.add_option("file", cfg.file, "quiver file")->required();
  app.add_option("--field", cfg.field, "q or f<p> for GF(p); defaults to the file's field line, else q");
  app.add_option("--degree,-N", cfg.degree, "series truncation degree N")->capture_default_str();
  app.add_option("--imax", cfg.i_max, "largest homological degree for Tor")->capture_default_str();
  app.add_option("--dmax", cfg.d_max, "largest internal degree for Tor")->capture_default_str();
  app.add_option("--format", cfg.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed recorded with randomized runs")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  try {
    return run(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, out, err);
}

}  // namespace preproj::cli
