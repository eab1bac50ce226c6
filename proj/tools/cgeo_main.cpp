// Command-line front end: build spaces, run the standard analyses, reproduce
// the two plane-with-rays counterexamples, and emit JSON/CSV reports.

#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cgeo/boundary.hpp"
#include "cgeo/extension.hpp"
#include "cgeo/hyperbolicity.hpp"
#include "cgeo/json_io.hpp"
#include "cgeo/repro.hpp"

namespace fs = std::filesystem;
using namespace cgeo;

namespace {

struct CommonOpts {
  std::string out_dir = "cgeo_out";
  std::uint64_t seed = 1;
  int jobs = 0;
  int budget = 400;
  Scalar trunc = -1;
  Scalar pitch = -1;
  int m_max = -1;
  int radius = -1;
  std::string grid;  // "K:C,K:C,..." overriding the default gauge grid
  bool dump_witnesses = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "seed for budgeted searches");
  cmd->add_option("--jobs", o.jobs, "worker threads (0 = auto)");
  cmd->add_option("--budget", o.budget, "witness-search budget per grid cell");
  cmd->add_option("--trunc", o.trunc, "truncation radius override");
  cmd->add_option("--pitch", o.pitch, "plane sample pitch override");
  cmd->add_option("--m-max", o.m_max, "plane ray index range override");
  cmd->add_option("--radius", o.radius, "cayley ball radius override");
  cmd->add_option("--grid", o.grid, "gauge grid as K:C,K:C,...");
  cmd->add_flag("--dump-witnesses", o.dump_witnesses,
                "write witness paths next to the gauge report");
}

GaugeGrid parse_grid(const std::string& spec) {
  if (spec.empty()) return GaugeGrid::default_grid();
  GaugeGrid g;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto sep = cell.find(':');
    if (sep == std::string::npos)
      throw ValidationError("bad --grid cell, expected K:C");
    g.cells.emplace_back(std::stod(cell.substr(0, sep)),
                         std::stod(cell.substr(sep + 1)));
  }
  if (g.find(3.0, 0.0) < 0) g.cells.emplace_back(3.0, 0.0);
  return g;
}

SpaceDescription resolve_space(const std::string& preset, const std::string& file,
                               const CommonOpts& o) {
  SpaceDescription sd;
  if (!file.empty()) {
    sd = load_space_description(file);
  } else if (preset == "planeA" || preset == "planeB") {
    PlaneDesc d;
    d.preset = preset.back();
    sd = {d, preset};
  } else if (preset == "F2" || preset == "Z2" || preset == "Z2_star_Z") {
    json j{{"type", "cayley"}, {"preset", preset}};
    sd = parse_space_description(j);
    sd.name = preset;
  } else {
    throw ValidationError("unknown preset: " + preset);
  }
  if (auto* pd = std::get_if<PlaneDesc>(&sd.desc)) {
    if (o.trunc > 0) pd->truncation = o.trunc;
    if (o.pitch > 0) pd->pitch = o.pitch;
    if (o.m_max >= 0) pd->m_max = o.m_max;
  }
  if (auto* cd = std::get_if<CayleyDesc>(&sd.desc)) {
    if (o.radius > 0) cd->radius = o.radius;
  }
  return sd;
}

json options_json(const CommonOpts& o) {
  json j;
  j["seed"] = o.seed;
  j["budget"] = o.budget;
  j["trunc"] = o.trunc;
  j["pitch"] = o.pitch;
  j["m_max"] = o.m_max;
  j["radius"] = o.radius;
  j["grid"] = o.grid;
  return j;
}

void write_report(const fs::path& path, const json& config, json body) {
  write_text_file(path.string(), report_envelope(config, std::move(body)).dump(2) + "\n");
}

Index default_basepoint(const Space& s) {
  if (s.is_plane()) {
    int r0 = s.ray_by_label("r_0");
    if (r0 >= 0) return s.rays[r0].base;
  }
  return 0;
}

std::vector<Index> scan_subset(const Space& s, Index cap) {
  std::vector<Index> subset;
  const Index stride = std::max<Index>(1, (s.size() + cap - 1) / cap);
  for (Index i = 0; i < s.size(); i += stride) subset.push_back(i);
  return subset;
}

int cmd_analyze(const std::string& preset, const std::string& file,
                const CommonOpts& o, Index basepoint_opt) {
  SpaceDescription sd = resolve_space(preset, file, o);
  Space s = build_space(sd);
  GaugeGrid grid = parse_grid(o.grid);
  json config = options_json(o);
  config["space"] = sd.name;
  config["command"] = "analyze";

  fs::create_directories(o.out_dir);
  const Index basepoint = basepoint_opt >= 0 ? basepoint_opt : default_basepoint(s);
  if (basepoint >= s.size()) throw ValidationError("basepoint out of range");

  // Four-point delta on a deterministic subsample, visual metric, sandwich.
  std::vector<Index> subset = scan_subset(s, 220);
  DeltaResult delta = four_point_delta(s, subset, o.jobs);
  Scalar eps = choose_epsilon(delta.delta, 1.0);
  {
    json body = to_json(delta, eps);
    body["subset_size"] = subset.size();
    body["basepoint"] = basepoint;
    write_report(fs::path(o.out_dir) / "delta.json", config, body);
  }
  {
    MetricMatrix prod = gromov_product_table(s, subset, basepoint);
    MetricMatrix vis = visual_metric(prod, eps).d;
    std::ostringstream csv;
    csv << "i,j,product,visual\n";
    for (Index i = 0; i < prod.rows(); ++i)
      for (Index j = i + 1; j < prod.cols(); ++j)
        csv << subset[i] << ',' << subset[j] << ','
            << format_csv_value(prod(i, j)) << ',' << format_csv_value(vis(i, j))
            << '\n';
    write_text_file((fs::path(o.out_dir) / "products.csv").string(), csv.str());
  }

  // Ray-pair contraction table.
  {
    std::ostringstream csv;
    csv << "ray_i,ray_j,contraction,tested_balls\n";
    for (size_t i = 0; i < s.rays.size(); ++i)
      for (size_t j = i + 1; j < s.rays.size(); ++j) {
        ContractionReport r = contraction_constant(
            s, s.ray_geodesic(static_cast<int>(i), static_cast<int>(j)));
        csv << s.rays[i].label << ',' << s.rays[j].label << ','
            << format_csv_value(r.constant) << ',' << r.tested_balls << '\n';
      }
    write_text_file((fs::path(o.out_dir) / "contraction.csv").string(), csv.str());
  }

  // Witnessed gauges of the basepoint-to-ray geodesics.
  {
    json gauges = json::array();
    WitnessSearchConfig wcfg;
    wcfg.budget = o.budget;
    wcfg.seed = o.seed;
    wcfg.jobs = o.jobs;
    wcfg.keep_witnesses = o.dump_witnesses;
    std::ostringstream wcsv;
    for (int r = 0; r < static_cast<int>(s.rays.size()); ++r) {
      Geodesic g = s.point_to_ray_geodesic(basepoint, r);
      GaugeTable t = morse_gauge_lower(s, g, grid, wcfg);
      json item;
      item["ray"] = s.rays[r].label;
      item["gauge"] = to_json(t);
      gauges.push_back(item);
      if (o.dump_witnesses)
        wcsv << "# ray " << s.rays[r].label << '\n' << witness_csv(t);
    }
    write_report(fs::path(o.out_dir) / "gauge.json", config,
                 json{{"rays", gauges}});
    if (o.dump_witnesses)
      write_text_file((fs::path(o.out_dir) / "witnesses.csv").string(),
                      wcsv.str());
  }

  // Coarse-center report for the first qualifying basetriangle.
  {
    auto triples = enumerate_triples(s);
    if (!triples.empty()) {
      const auto& t = triples.front();
      CoarseCenter cc = coarse_center(s, t.triple[0], t.triple[1], t.triple[2]);
      write_report(fs::path(o.out_dir) / "centers.json", config,
                   to_json(cc.set, s));
    }
  }

  // Boundary stratum at a moderate certified bound.
  if (!s.rays.empty()) {
    StratumConfig scfg;
    scfg.stratify.seed = o.seed;
    scfg.stratify.jobs = o.jobs;
    BoundaryStratum st =
        boundary_stratum(s, basepoint, gauge_from_contraction(4.0, grid, {}), scfg);
    write_report(fs::path(o.out_dir) / "stratum.json", config, to_json(st, s));
    std::ostringstream csv;
    csv << "ray_i,ray_j,product,visual\n";
    for (Index i = 0; i < static_cast<Index>(st.members.size()); ++i)
      for (Index j = i + 1; j < static_cast<Index>(st.members.size()); ++j)
        csv << s.rays[st.members[i]].label << ',' << s.rays[st.members[j]].label
            << ',' << format_csv_value(st.products(i, j)) << ','
            << format_csv_value(st.metric(i, j)) << '\n';
    write_text_file((fs::path(o.out_dir) / "stratum_metric.csv").string(),
                    csv.str());
  }
  std::cout << "analyze: wrote reports to " << o.out_dir << "\n";
  return 0;
}

int cmd_extend(const std::string& src_preset, const std::string& src_file,
               const std::string& dst_preset, const std::string& dst_file,
               const std::string& map_file, const CommonOpts& o) {
  SpaceDescription sds = resolve_space(src_preset, src_file, o);
  SpaceDescription sdt = resolve_space(dst_preset.empty() ? src_preset : dst_preset,
                                       dst_file, o);
  Space src = build_space(sds);
  Space dst = build_space(sdt);
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!map_file.empty()) {
    std::ifstream in(map_file);
    if (!in) throw ValidationError("cannot open map file: " + map_file);
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("bad JSON in map file: ") + e.what());
    }
    pairs = parse_map_pairs(j);
  }
  BoundaryMap f = make_boundary_map(src, dst, pairs);
  json config = options_json(o);
  config["command"] = "extend";
  config["source"] = sds.name;
  config["target"] = sdt.name;
  config["map"] = map_file.empty() ? "identity" : map_file;

  fs::create_directories(o.out_dir);
  ExtensionMap ext = extend(src, dst, f);
  write_report(fs::path(o.out_dir) / "extension.json", config,
               to_json(ext, src, dst));

  QiFit fit = fit_qi_constants(src, dst, ext);
  EtaTable eta = eta_modulus(src, dst, ext);
  {
    json body;
    body["K"] = fit.K;
    body["C"] = fit.C;
    body["D"] = fit.D;
    body["c_cap"] = fit.c_cap;
    body["pairs"] = fit.pairs;
    write_report(fs::path(o.out_dir) / "qi.json", config, body);
  }
  {
    std::ostringstream csv;
    csv << "theta,eta\n";
    for (size_t i = 0; i < eta.theta.size(); ++i)
      csv << format_csv_value(eta.theta[i]) << ',' << format_csv_value(eta.eta[i])
          << '\n';
    write_text_file((fs::path(o.out_dir) / "eta.csv").string(), csv.str());
  }
  {
    ExtensionMap back = extend(dst, src, f.inverse());
    DefectReport defect = quasi_inverse_defect(src, dst, ext, back);
    json body;
    body["defect"] = defect.defect;
    body["used"] = defect.used;
    body["skipped"] = defect.skipped;
    body["bound_R_plus_eta"] = ext.R + 1.25 * eta.at(ext.R);
    write_report(fs::path(o.out_dir) / "defect.json", config, body);
    std::ostringstream csv;
    csv << "defect,used,skipped,bound\n"
        << format_csv_value(defect.defect) << ',' << defect.used << ','
        << defect.skipped << ','
        << format_csv_value(ext.R + 1.25 * eta.at(ext.R)) << '\n';
    write_text_file((fs::path(o.out_dir) / "defect.csv").string(), csv.str());
  }
  // Map-property moduli between the default strata, with the ratio samples.
  {
    GaugeGrid grid = parse_grid(o.grid);
    GaugeTable bound = gauge_from_contraction(4.0, grid, {});
    StratumConfig scfg;
    scfg.stratify.seed = o.seed;
    scfg.stratify.jobs = o.jobs;
    BoundaryStratum sst = boundary_stratum(src, default_basepoint(src), bound, scfg);
    BoundaryStratum dstst = boundary_stratum(dst, default_basepoint(dst), bound, scfg);
    if (sst.members.size() >= 3 && dstst.members.size() >= 3) {
      json body;
      body["biholder"] = to_json(fit_biholder(sst, dstst, f));
      body["power_qs"] = to_json(fit_quasisymmetry(sst, dstst, f));
      body["strongly_qc"] = to_json(fit_quasiconformal(sst, dstst, f));
      write_report(fs::path(o.out_dir) / "moduli.json", config, body);
      std::ostringstream csv;
      csv << "t,s\n";
      const Index m = static_cast<Index>(sst.members.size());
      for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b)
          for (Index c = 0; c < m; ++c) {
            if (a == b || b == c || a == c) continue;
            int fa = dstst.member_pos(f(sst.members[a]));
            int fb = dstst.member_pos(f(sst.members[b]));
            int fc = dstst.member_pos(f(sst.members[c]));
            if (fa < 0 || fb < 0 || fc < 0) continue;
            csv << format_csv_value(sst.metric(a, b) / sst.metric(a, c)) << ','
                << format_csv_value(dstst.metric(fa, fb) / dstst.metric(fa, fc))
                << '\n';
          }
      write_text_file((fs::path(o.out_dir) / "qs_samples.csv").string(),
                      csv.str());
    }
  }
  {
    AgreementReport rep = boundary_agreement(src, dst, ext, f);
    json body;
    body["all_pass"] = rep.all_pass;
    body["inconclusive"] = rep.inconclusive;
    body["unsupported"] = rep.unsupported;
    json rays = json::array();
    for (size_t r = 0; r < rep.classified.size(); ++r) {
      json item;
      item["ray"] = src.rays[r].label;
      item["expected"] = dst.rays[rep.expected[r]].label;
      item["classified"] =
          rep.classified[r] >= 0 ? dst.rays[rep.classified[r]].label : "?";
      item["supported"] = static_cast<bool>(rep.supported[r]);
      rays.push_back(item);
    }
    body["rays"] = rays;
    write_report(fs::path(o.out_dir) / "agreement.json", config, body);
  }
  std::cout << "extend: wrote reports to " << o.out_dir << "\n";
  return 0;
}

int cmd_repro(const std::string& example_id, const CommonOpts& o) {
  char example;
  if (example_id == "exampleA")
    example = 'A';
  else if (example_id == "exampleB")
    example = 'B';
  else
    throw ValidationError("unknown example id: " + example_id);
  ReproConfig cfg;
  if (o.trunc > 0) cfg.base_truncation = o.trunc;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  ReproResult res = run_example_repro(example, cfg);

  json config = options_json(o);
  config["command"] = "repro";
  config["example"] = example_id;
  json body;
  body["example"] = example_id;
  body["two_stable_growth"] = res.two_stable_growth;
  body["not_two_stable"] = res.not_two_stable;
  body["basetriangle_growth"] = res.basetriangle_growth;
  body["basetriangle_stable"] = res.basetriangle_stable;
  json sweep = json::array();
  for (const auto& step : res.sweep) {
    json s;
    s["truncation"] = step.truncation;
    s["contraction_in"] = step.contraction_in;
    s["two_stable"] = to_json(step.two_stable);
    s["basetriangle"] = to_json(step.basetriangle);
    sweep.push_back(s);
  }
  body["sweep"] = sweep;
  if (example == 'A') {
    json g;
    g["n"] = res.growth_law.n;
    g["contraction"] = res.growth_law.value;
    g["slope"] = res.growth_law.slope;
    g["intercept"] = res.growth_law.intercept;
    body["growth_law"] = g;
    body["verdict"] = res.not_two_stable
                          ? "not 2-stable: image contraction tracks 4n+1"
                          : "two-stable evidence inconclusive";
  } else {
    body["verdict"] = res.basetriangle_stable && res.not_two_stable
                          ? "basetriangle stable and not 2-stable"
                          : "verdict inconclusive";
  }
  fs::create_directories(o.out_dir);
  write_report(fs::path(o.out_dir) / ("repro_" + example_id + ".json"), config,
               body);
  std::cout << "repro " << example_id << ": "
            << body["verdict"].get<std::string>() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale coarse-geometry toolkit"};
  app.require_subcommand(1);

  CommonOpts o_analyze, o_extend, o_repro;
  std::string a_preset, a_space;
  Index a_basepoint = -1;
  auto* analyze = app.add_subcommand("analyze", "delta/contraction/gauge/stratum reports");
  analyze->add_option("--preset", a_preset, "planeA|planeB|F2|Z2|Z2_star_Z");
  analyze->add_option("--space", a_space, "space description JSON file");
  analyze->add_option("--basepoint", a_basepoint, "basepoint index");
  add_common(analyze, o_analyze);

  std::string e_src_preset, e_src_file, e_dst_preset, e_dst_file, e_map;
  auto* ext = app.add_subcommand("extend", "boundary-map extension reports");
  ext->add_option("--source-preset", e_src_preset, "source preset");
  ext->add_option("--source", e_src_file, "source space JSON file");
  ext->add_option("--target-preset", e_dst_preset, "target preset");
  ext->add_option("--target", e_dst_file, "target space JSON file");
  ext->add_option("--map", e_map, "boundary map JSON file (default identity)");
  add_common(ext, o_extend);

  std::string r_example;
  auto* repro = app.add_subcommand("repro", "reproduce exampleA / exampleB");
  repro->add_option("example", r_example, "exampleA or exampleB")->required();
  add_common(repro, o_repro);

  CLI11_PARSE(app, argc, argv);
  try {
    if (analyze->parsed())
      return cmd_analyze(a_preset, a_space, o_analyze, a_basepoint);
    if (ext->parsed())
      return cmd_extend(e_src_preset, e_src_file, e_dst_preset, e_dst_file, e_map,
                        o_extend);
    if (repro->parsed()) return cmd_repro(r_example, o_repro);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
