#include "singfold/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "singfold/flatmap.hpp"
#include "singfold/parallel.hpp"

#ifndef SINGFOLD_CATALOGUE_PATH
#define SINGFOLD_CATALOGUE_PATH "data/catalogue.json"
#endif

namespace singfold {

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json point_json(const ParamPoint& t) {
  Json o = Json::object();
  for (const auto& [k, v] : t) o[k] = to_string(v);
  return o;
}

Json check_json(const CheckReport& r) {
  Json lines = Json::array();
  for (const auto& l : r.lines) {
    Json e = {{"check", l.what}, {"ok", l.ok}};
    if (!l.detail.empty()) e["detail"] = l.detail;
    lines.push_back(e);
  }
  return {{"pass", r.ok()}, {"checks", lines}};
}

Json section_error(const std::exception& e) { return {{"pass", false}, {"error", e.what()}}; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string rational_list(const std::vector<Rational>& v) {
  std::vector<std::string> s;
  for (const auto& q : v) s.push_back(to_string(q));
  return "(" + join(s, ", ") + ")";
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& r : rows)
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t j = 0; j < r.size(); ++j) {
      s += r[j];
      if (j + 1 < r.size()) s += std::string(width[j] - r[j].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Json meta_json(const CaseMeta& m) {
  return {{"id", m.id},
          {"source_type", m.source_type},
          {"gamma", m.gamma},
          {"gamma_prime", m.gamma_prime},
          {"omega", m.omega},
          {"inhomogeneous_type", m.inhomogeneous_type},
          {"quotient_type", m.quotient_type},
          {"rank", m.rank},
          {"theta", m.theta}};
}

Json descriptor_json(const CaseDescriptor& d) {
  Json j = meta_json(d.meta);
  j["fiber_variables"] = d.fiber_variables;
  j["quotient_variables"] = d.quotient_variables;
  j["parameters"] = d.parameters;
  j["fiber"] = d.fiber.to_string();
  j["quotient"] = d.quotient.to_string();
  Json gens = Json::array();
  for (const auto& g : d.generators) {
    Json images = Json::object();
    for (const auto& [v, p] : g.images) images[v] = p.to_string();
    gens.push_back({{"name", g.name}, {"images", images}});
  }
  j["generators"] = gens;
  Json qgens = Json::array();
  for (const auto& g : d.quotient_generators)
    qgens.push_back({{"name", g.name}, {"invariant", g.poly.to_string()}, {"sqrt_factor", to_string(g.sqrt_factor)}});
  j["quotient_generators"] = qgens;
  Json strata = Json::array();
  for (const auto& s : d.strata)
    strata.push_back({{"id", s.id},
                      {"condition", s.condition},
                      {"quotient_type", s.quotient_type.to_string()},
                      {"prequotient", s.prequotient}});
  j["strata"] = strata;
  return j;
}

Json subsystem_json(const RootSystem& phi, const SubRootSystem& s, int index) {
  std::vector<std::string> gens;
  for (const auto& r : s.simple) gens.push_back(root_label(phi, r));
  return {{"index", index},
          {"type", s.type.to_string()},
          {"rank", s.rank},
          {"generators", gens},
          {"witness", rationals(s.witness)}};
}

Json record_json(const SingularPointRecord& r) {
  const SingularPoint& p = r.point;
  Json coords = Json::object();
  for (std::size_t i = 0; i < p.variables.size(); ++i) coords[p.variables[i]] = p.coordinates[i].to_string();
  return {{"ring_generator", p.ring->generator()},
          {"ring_modulus", p.ring->modulus().to_string(p.ring->generator())},
          {"coordinates", coords},
          {"mu", r.milnor},
          {"corank", r.corank},
          {"cubic_shape", r.cubic_shape ? to_string(*r.cubic_shape) : std::string("none")},
          {"type", r.type},
          {"orbit_size", r.orbit_size()}};
}

Json configuration_json(const FiberConfiguration& c) {
  Json pts = Json::array();
  for (const auto& r : c.points) pts.push_back(record_json(r));
  return {{"type", c.type.to_string()}, {"smooth", c.smooth()}, {"points", pts}};
}

Json correspondence_json(const CorrespondenceReport& r) {
  const RootSystem phi = build_root_system(case_meta(r.case_id).quotient_type);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    std::vector<std::string> gens;
    for (const auto& s : e.simple) gens.push_back(root_label(phi, s));
    Json j = {{"index", e.index},
              {"type", e.type.to_string()},
              {"generators", gens},
              {"witness", rationals(e.witness)},
              {"route", e.route},
              {"xi", rationals(e.xi)},
              {"psi", rationals(e.psi)},
              {"t", point_json(e.t)},
              {"stratum", e.stratum},
              {"expected_stratum", e.expected_stratum},
              {"configuration", e.configuration.to_string()},
              {"match", e.match}};
    if (!e.error.empty()) j["error"] = e.error;
    entries.push_back(j);
  }
  return {{"case", r.case_id},
          {"pass", r.ok()},
          {"witness_route_available", r.witness_route_available},
          {"distinct_types", r.distinct_types},
          {"expected_distinct_types", r.expected_distinct_types},
          {"entries", entries}};
}

Json realization_json(const RealizationReport& r) {
  Json counts = Json::object();
  for (const auto& [t, n] : r.counts) counts[t] = n;
  return {{"pass", r.ok()},
          {"count", r.subsystems.size()},
          {"expected_count", r.expected_count},
          {"paper_table_available", r.paper_table_available},
          {"counts", counts},
          {"failures", r.failures}};
}

Json tables_json(const std::string& case_id, int samples, std::uint64_t seed) {
  const CaseDescriptor& d = descriptor(case_id);
  Json rows = Json::array();
  bool pass = true;
  for (const auto& s : d.strata) {
    Json row = {{"stratum", s.id},
                {"condition", s.condition},
                {"quotient_type", s.quotient_type.to_string()},
                {"prequotient", s.prequotient},
                {"prequotient_required", s.prequotient_required}};
    Json pts = Json::array();
    bool row_ok = true;
    try {
      for (const auto& t : sample_stratum(case_id, s.id, samples, seed)) {
        TypeMultiset conf = fiber_configuration(quotient_at(d, t), d.quotient_variables).type;
        Json p = {{"t", point_json(t)}, {"configuration", conf.to_string()}, {"match", conf == s.quotient_type}};
        bool ok = conf == s.quotient_type;
        if (!s.prequotient.empty()) {
          PreConfiguration pre = prequotient_configuration(d, t);
          bool pre_ok = pre == PreConfiguration::parse(s.prequotient);
          p["prequotient"] = pre.to_string();
          p["prequotient_match"] = pre_ok;
          if (s.prequotient_required) ok = ok && pre_ok;
        }
        row_ok = row_ok && ok;
        pts.push_back(p);
      }
    } catch (const std::exception& e) {
      row["error"] = e.what();
      row_ok = false;
    }
    row["points"] = pts;
    row["pass"] = row_ok;
    pass = pass && row_ok;
    rows.push_back(row);
  }
  return {{"pass", pass}, {"samples", samples}, {"rows", rows}};
}

Json quotient_json(const std::string& case_id) {
  QuotientChart q = derive_quotient_chart(case_id);
  Json j = check_json(q.checks);
  Json gens = Json::array();
  for (std::size_t i = 0; i < q.auto_generators.size(); ++i)
    gens.push_back({{"weight", q.auto_weights[i]}, {"invariant", q.auto_generators[i].second.to_string()}});
  j["generators"] = gens;
  j["relation_weight"] = q.relation_weight;
  j["relation"] = q.auto_relation.to_string();
  Json change = Json::object();
  for (const auto& [k, v] : q.change) change[k] = v.to_string();
  j["change"] = change;
  j["scalar"] = to_string(q.scalar);
  return j;
}

template <class F>
Json guarded(F f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return section_error(e);
  }
}

}  // namespace

Json case_report(const std::string& case_id, int samples, std::uint64_t seed, int theorem2_points) {
  descriptor(case_id);
  Json sections = Json::object();
  sections["equivariance"] = guarded([&] { return check_json(verify_equivariance(case_id)); });
  sections["quotient-derivation"] = guarded([&] { return quotient_json(case_id); });
  sections["flat-relations"] = guarded([&] { return check_json(verify_flat_relations(case_id)); });
  sections["iso"] = guarded([&] { return check_json(verify_iso(case_id)); });
  sections["tables"] = guarded([&] { return tables_json(case_id, samples, seed); });
  sections["correspondence"] = guarded([&] {
    Json c = correspondence_json(correspondence_check(case_id, samples, seed));
    Json r = realization_json(match_realizations(case_id));
    c["pass"] = c["pass"].get<bool>() && r["pass"].get<bool>();
    c["realizations"] = r;
    return c;
  });
  sections["theorem2"] = guarded([&] {
    Json j = check_json(theorem2_spotcheck(case_id, theorem2_points, seed));
    j["points"] = theorem2_points;
    return j;
  });
  bool pass = true;
  for (const auto& [k, v] : sections.items()) pass = pass && v["pass"].get<bool>();
  return {{"schema_version", kSchemaVersion},
          {"case", case_id},
          {"seed", seed},
          {"samples", samples},
          {"pass", pass},
          {"sections", sections}};
}

bool report_passes(const Json& report) { return report.at("pass").get<bool>(); }

Json catalogue_json() {
  Json cases = Json::array();
  for (const auto& id : case_ids()) {
    const CaseDescriptor& d = descriptor(id);
    Json c = descriptor_json(d);
    c.erase("generators");
    c.erase("quotient_generators");
    cases.push_back(c);
  }
  return {{"schema_version", kSchemaVersion}, {"cases", cases}};
}

std::string default_catalogue_path() {
  if (const char* env = std::getenv("SINGFOLD_CATALOGUE")) return env;
  return SINGFOLD_CATALOGUE_PATH;
}

std::vector<std::string> check_catalogue(const std::string& path) {
  std::vector<std::string> problems;
  std::ifstream in(path);
  if (!in) return {"cannot read catalogue " + path};
  Json file;
  try {
    file = Json::parse(in);
  } catch (const std::exception& e) {
    return {"catalogue is not valid JSON: " + std::string(e.what())};
  }
  if (file.value("schema_version", "") != kSchemaVersion) problems.push_back("catalogue schema version differs");
  const auto& listed = file.contains("cases") ? file["cases"] : Json::array();
  if (listed.size() != case_ids().size()) problems.push_back("catalogue lists a different number of cases");
  for (const auto& c : listed) {
    const std::string id = c.value("id", "");
    try {
      const CaseDescriptor& d = descriptor(id);
      auto poly_field = [&](const char* key, const QPoly& expected) {
        if (parse_polynomial(c.at(key).get<std::string>()) != expected)
          problems.push_back(id + ": " + key + " differs from the compiled descriptor");
      };
      poly_field("fiber", d.fiber);
      poly_field("quotient", d.quotient);
      for (const char* key : {"source_type", "gamma", "gamma_prime", "omega", "inhomogeneous_type", "quotient_type"})
        if (c.at(key) != meta_json(d.meta).at(key)) problems.push_back(id + ": " + key + " differs");
      if (c.at("parameters").get<std::vector<std::string>>() != d.parameters)
        problems.push_back(id + ": parameters differ");
      const auto& strata = c.at("strata");
      if (strata.size() != d.strata.size()) {
        problems.push_back(id + ": stratum count differs");
        continue;
      }
      for (std::size_t i = 0; i < strata.size(); ++i) {
        const Stratum& s = d.strata[i];
        if (strata[i].at("id") != s.id || TypeMultiset::parse(strata[i].at("quotient_type")) != s.quotient_type ||
            strata[i].at("prequotient") != s.prequotient)
          problems.push_back(id + ": stratum " + std::to_string(i) + " differs");
      }
    } catch (const std::exception& e) {
      problems.push_back("case '" + id + "': " + e.what());
    }
  }
  return problems;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singular fibers of folded simple singularities", "singfold"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  int samples = 3;
  bool table = false, json = false;
  app.add_option("--seed", seed, "sampling seed")->capture_default_str();
  app.add_option("--samples", samples, "sampled points per stratum")->capture_default_str();
  app.add_flag("--table", table, "aligned table output");
  app.add_flag("--json", json, "JSON output (default)");

  auto* cases = app.add_subcommand("cases", "case catalogue");
  cases->require_subcommand(1);
  cases->add_subcommand("list", "list the cases");
  std::string show_id;
  cases->add_subcommand("show", "show one case")->add_option("id", show_id)->required();

  auto* roots = app.add_subcommand("roots", "root system export");
  std::string roots_type, roots_case;
  auto* type_opt = roots->add_option("--type", roots_type, "D4, D5, D6, E6 or E7");
  roots->add_option("--case", roots_case, "case id (uses its quotient type)")->excludes(type_opt);

  auto* subsystems = app.add_subcommand("subsystems", "subsystems with Theta as a base subset");
  std::string sub_case;
  subsystems->add_option("--case", sub_case)->required();

  auto* classify = app.add_subcommand("classify", "singular points of a surface");
  std::string surface, cls_case, cls_point;
  auto* surf_opt = classify->add_option("--surface", surface, "polynomial in at most three variables");
  auto* case_opt = classify->add_option("--case", cls_case)->excludes(surf_opt);
  classify->add_option("--point", cls_point, "t2=...,t4=...")->needs(case_opt);

  auto* verify = app.add_subcommand("verify", "correspondence check");
  std::string ver_case;
  bool ver_all = false;
  auto* ver_case_opt = verify->add_option("--case", ver_case);
  verify->add_flag("--all", ver_all, "every case")->excludes(ver_case_opt);

  auto* report = app.add_subcommand("report", "full verification reports");
  std::string out_dir = "reports";
  int t2_points = 100;
  report->add_option("--out", out_dir, "output directory")->capture_default_str();
  report->add_option("--theorem2-points", t2_points, "random points per case")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (table && json) throw CLI::ValidationError("--table and --json are exclusive");
    if (samples < 1) throw CLI::ValidationError("--samples must be at least 1");
    if (*classify && surface.empty() && (cls_case.empty() || cls_point.empty()))
      throw CLI::ValidationError("classify needs --surface or --case with --point");
    if (*verify && ver_case.empty() && !ver_all) throw CLI::ValidationError("verify needs --case or --all");
    if (*roots && roots_type.empty() && roots_case.empty()) throw CLI::ValidationError("roots needs --type or --case");
    if (*report && t2_points < 1) throw CLI::ValidationError("--theorem2-points must be at least 1");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (auto problems = check_catalogue(default_catalogue_path()); !problems.empty()) {
      for (const auto& p : problems) err << "catalogue: " << p << "\n";
      return kExitFailure;
    }

    if (*cases) {
      if (cases->got_subcommand("list")) {
        if (table) {
          std::vector<std::vector<std::string>> rows;
          for (const auto& id : case_ids()) {
            CaseMeta m = case_meta(id);
            rows.push_back({m.id, m.source_type, m.gamma, m.omega, m.inhomogeneous_type, m.quotient_type});
          }
          print_table(out, {"id", "source", "gamma", "omega", "folded", "quotient"}, rows);
        } else {
          Json a = Json::array();
          for (const auto& id : case_ids()) a.push_back(meta_json(case_meta(id)));
          out << a.dump(2) << "\n";
        }
        return kExitOk;
      }
      const CaseDescriptor& d = descriptor(show_id);
      if (table) {
        out << d.meta.id << ": " << d.meta.source_type << " folded by " << d.meta.omega << " -> "
            << d.meta.quotient_type << "\nfiber:    " << d.fiber << "\nquotient: " << d.quotient << "\n";
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : d.strata) rows.push_back({s.id, s.condition, s.quotient_type.to_string(), s.prequotient});
        print_table(out, {"stratum", "condition", "type", "prequotient"}, rows);
      } else {
        out << descriptor_json(d).dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*roots) {
      const RootSystem phi = build_root_system(roots_type.empty() ? case_meta(roots_case).quotient_type : roots_type);
      if (table) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : phi.positive_roots()) rows.push_back({root_label(phi, r), rational_list(r)});
        print_table(out, {"root", "coordinates"}, rows);
      } else {
        Json simple = Json::array(), all = Json::array();
        for (const auto& r : phi.simple_roots()) simple.push_back(rationals(r));
        for (const auto& r : phi.roots()) all.push_back(rationals(r));
        out << Json{{"type", phi.type()}, {"rank", phi.rank()}, {"simple_roots", simple}, {"roots", all}}.dump(2)
            << "\n";
      }
      return kExitOk;
    }

    if (*subsystems) {
      const CaseMeta m = case_meta(sub_case);
      const RootSystem phi = build_root_system(m.quotient_type);
      auto subs = enumerate_subsystems(phi, theta_roots(m, phi));
      if (table) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < subs.size(); ++i) {
          std::vector<std::string> gens;
          for (const auto& r : subs[i].simple) gens.push_back(root_label(phi, r));
          rows.push_back({std::to_string(i), subs[i].type.to_string(), "<" + join(gens, ", ") + ">",
                          rational_list(subs[i].witness)});
        }
        print_table(out, {"index", "type", "generators", "witness"}, rows);
      } else {
        Json a = Json::array();
        for (std::size_t i = 0; i < subs.size(); ++i) a.push_back(subsystem_json(phi, subs[i], static_cast<int>(i)));
        out << Json{{"case", sub_case}, {"count", subs.size()}, {"subsystems", a}}.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*classify) {
      Json j;
      FiberConfiguration conf;
      if (!surface.empty()) {
        conf = fiber_configuration(parse_polynomial(surface));
        j = {{"surface", parse_polynomial(surface).to_string()}};
      } else {
        const CaseDescriptor& d = descriptor(cls_case);
        ParamPoint t = parse_point(d, cls_point);
        conf = fiber_configuration(quotient_at(d, t), d.quotient_variables);
        j = {{"case", cls_case}, {"t", point_json(t)}, {"stratum", stratum_membership(cls_case, t)},
             {"surface", quotient_at(d, t).to_string()}};
      }
      Json c = configuration_json(conf);
      j["type"] = c["type"];
      j["points"] = c["points"];
      if (table) {
        out << "type: " << (conf.type.empty() ? "smooth" : conf.type.to_string()) << "\n";
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : c["points"])
          rows.push_back({p["type"], std::to_string(p["mu"].get<int>()), std::to_string(p["corank"].get<int>()),
                          p["cubic_shape"], std::to_string(p["orbit_size"].get<int>()), p["ring_modulus"],
                          p["coordinates"].dump()});
        print_table(out, {"type", "mu", "corank", "cubic", "orbit", "modulus", "coordinates"}, rows);
      } else {
        out << j.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*verify) {
      std::vector<std::string> ids = ver_all ? case_ids() : std::vector<std::string>{ver_case};
      for (const auto& id : ids) case_meta(id);
      std::vector<CorrespondenceReport> reports(ids.size());
      for (std::size_t i = 0; i < ids.size(); ++i) reports[i] = correspondence_check(ids[i], samples, seed);
      bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
      if (table) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : reports)
          for (const auto& e : r.entries)
            rows.push_back({r.case_id, std::to_string(e.index), e.type.to_string(), e.route, e.stratum,
                            e.configuration.to_string(), e.match ? "yes" : "NO"});
        print_table(out, {"case", "index", "type", "route", "stratum", "configuration", "match"}, rows);
        out << (pass ? "all match" : "MISMATCH") << "\n";
      } else {
        Json j = {{"schema_version", kSchemaVersion}, {"seed", seed}, {"samples", samples}, {"pass", pass}};
        if (ver_all) {
          Json a = Json::array();
          for (const auto& r : reports) a.push_back(correspondence_json(r));
          j["cases"] = a;
        } else {
          j.update(correspondence_json(reports.front()));
          j["pass"] = pass;
        }
        out << j.dump(2) << "\n";
      }
      return pass ? kExitOk : kExitFailure;
    }

    if (*report) {
      const auto& ids = case_ids();
      std::vector<Json> reports(ids.size());
      parallel_for(ids.size(), [&](std::size_t i) { reports[i] = case_report(ids[i], samples, seed, t2_points); });
      std::filesystem::create_directories(out_dir);
      Json summary_cases = Json::array();
      bool pass = true;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        std::ofstream f(std::filesystem::path(out_dir) / (ids[i] + ".json"));
        f << reports[i].dump(2) << "\n";
        if (!f) throw std::runtime_error("cannot write report for " + ids[i]);
        Json sections = Json::object();
        for (const auto& [k, v] : reports[i]["sections"].items()) sections[k] = v["pass"];
        summary_cases.push_back({{"case", ids[i]}, {"pass", reports[i]["pass"]}, {"sections", sections}});
        pass = pass && report_passes(reports[i]);
      }
      Json summary = {{"schema_version", kSchemaVersion},
                      {"seed", seed},
                      {"samples", samples},
                      {"theorem2_points", t2_points},
                      {"pass", pass},
                      {"cases", summary_cases}};
      std::ofstream f(std::filesystem::path(out_dir) / "summary.json");
      f << summary.dump(2) << "\n";
      if (!f) throw std::runtime_error("cannot write summary");
      if (table) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : summary_cases) {
          std::vector<std::string> r{c["case"]};
          for (const auto& [k, v] : c["sections"].items()) r.push_back(v.get<bool>() ? "pass" : "FAIL");
          rows.push_back(r);
        }
        print_table(out, {"case", "equivariance", "quotient", "flat", "iso", "tables", "correspondence", "theorem2"},
                    rows);
      } else {
        out << summary.dump(2) << "\n";
      }
      return pass ? kExitOk : kExitFailure;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace singfold
