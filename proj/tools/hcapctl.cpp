// hcapctl: capacities, comparator areas and claim checks from the command line.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcap/hcap.hpp"
#include "hcap/io.hpp"

namespace {

using hcap::json;

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kEstimator = 3 };

struct Common {
  std::uint64_t walks = 200000;
  double eps_stop = 1e-4;
  double tol_area = 1e-3;
  std::vector<double> y_grid{8.0, 16.0, 32.0, 64.0};
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  unsigned threads = 0;
};

void add_common(CLI::App& app, Common& c, bool seed_required) {
  app.add_option("--walks", c.walks, "walks per estimate")->check(CLI::PositiveNumber);
  app.add_option("--eps-stop", c.eps_stop, "walk stopping distance (disk; half-plane uses eps*(scale+1))")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-area", c.tol_area, "relative tolerance of certified areas")->check(CLI::PositiveNumber);
  app.add_option("--y-grid", c.y_grid, "hcap heights as multiples of the hull scale")->delimiter(',');
  auto* s = app.add_option("--seed", c.seed, "master seed");
  if (seed_required) s->required();
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--threads", c.threads, "worker threads (affects time, never results)");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const Common& c, const json& manifest, const std::vector<hcap::CheckResult>& rows, double seconds) {
  std::string text;
  if (c.format == "csv") {
    text = hcap::report_csv(rows);
  } else {
    json doc = hcap::make_report(manifest, rows);
    doc["envelope"] = json{{"timestamp", utc_now()}, {"wall_time_s", seconds}, {"threads", hcap::worker_count()}};
    text = doc.dump(2) + "\n";
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw hcap::ValidationError("cannot write " + c.out);
    f << text;
  }
}

json walk_manifest(const Common& c) {
  return json{{"walks", c.walks},         {"eps_stop", c.eps_stop},   {"step_cap", hcap::kDefaultStepCap},
              {"seed", c.seed},           {"tol_area", c.tol_area},   {"tol_area_relative", true},
              {"y_grid_multipliers_of_scale", c.y_grid}};
}

int cmd_capacity(const Common& c, const std::string& path, bool exact) {
  const auto t0 = std::chrono::steady_clock::now();
  const hcap::ShapeFile f = hcap::read_shape_file(path);
  hcap::CapacityOptions opt;
  opt.walks.n_walks = c.walks;
  opt.walks.seed = c.seed;
  opt.quad.tol = c.tol_area;
  opt.exact = exact;
  hcap::CapacityReport r;
  json manifest{{"command", "capacity"}, {"version", hcap::kVersion}, {"input", hcap::shape_file_json(f.space, f.shapes)},
                {"exact", exact},        {"config", walk_manifest(c)}};
  if (f.space == hcap::Space::halfplane) {
    const hcap::HalfPlaneHull a(f.shapes);
    opt.walks.eps_stop = c.eps_stop * (a.scale() + 1.0);
    std::vector<double> ys;
    for (double m : c.y_grid) ys.push_back(m * a.scale());
    opt.y_grid = ys;
    manifest["config"]["eps_stop_effective"] = opt.walks.eps_stop;
    manifest["config"]["y_grid"] = ys;
    r = hcap::capacity_report(a, opt);
  } else {
    opt.walks.eps_stop = c.eps_stop;
    r = hcap::capacity_report(hcap::DiskCompact(f.shapes), opt);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(c, manifest, hcap::capacity_rows(r), secs);
  return kOk;
}

hcap::VerifyConfig verify_config(const Common& c, const CLI::App& app, std::size_t corpus_size, std::size_t hp_size,
                                 std::uint64_t corpus_walks, std::uint64_t nb_walks, const std::vector<double>& limit_y) {
  hcap::VerifyConfig v;
  v.seed = c.seed;
  v.n_walks = c.walks;
  v.eps_stop = c.eps_stop;
  v.tol_area = c.tol_area;
  v.y_multipliers = c.y_grid;
  v.corpus_size = corpus_size;
  v.halfplane_corpus_size = hp_size;
  v.corpus_walks = app.count("--corpus-walks") ? corpus_walks : std::max<std::uint64_t>(1, c.walks / 4);
  v.neighborhood_walks = app.count("--neighborhood-walks") ? nb_walks : std::max<std::uint64_t>(1, c.walks / 10);
  if (!limit_y.empty()) v.limit_y = limit_y;
  v.omega_cases = std::min(v.omega_cases, corpus_size);
  v.fattening_cases = std::min(v.fattening_cases, corpus_size);
  v.pair_count = std::min(v.pair_count, hp_size);
  return v;
}

int cmd_verify(const Common& c, const hcap::VerifyConfig& v, const std::string& claim, bool strict) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = hcap::run_claim(claim, v);
  const auto n = hcap::count_verdicts(rows);
  json manifest{{"command", "verify"}, {"claim", claim}, {"version", hcap::kVersion}, {"strict", strict},
                {"config", hcap::verify_config_json(v)}};
  manifest["summary"] = json{{"pass", n.pass}, {"fail", n.fail}, {"inconclusive", n.inconclusive}};
  json per_claim = json::object();
  for (const auto& r : rows) {
    if (!r.verdict) continue;
    auto& e = per_claim[r.claim];
    if (e.is_null()) e = json{{"pass", 0}, {"fail", 0}, {"inconclusive", 0}};
    e[hcap::verdict_name(*r.verdict)] = e[hcap::verdict_name(*r.verdict)].get<int>() + 1;
  }
  manifest["per_claim"] = per_claim;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(c, manifest, rows, secs);
  for (auto it = per_claim.begin(); it != per_claim.end(); ++it)
    std::cerr << it.key() << ": " << it.value()["pass"] << " pass, " << it.value()["fail"] << " fail, "
              << it.value()["inconclusive"] << " inconclusive\n";
  return n.fail > 0 || (strict && n.inconclusive > 0) ? kFailed : kOk;
}

int cmd_corpus(const std::string& kind, std::size_t count, std::uint64_t seed, const std::string& out_dir) {
  const auto k = hcap::parse_corpus_kind(kind);
  if (!k) throw hcap::ValidationError("--kind: unknown corpus kind '" + kind + "'");
  hcap::CorpusSpec spec;
  spec.kind = *k;
  spec.count = count;
  spec.seed = seed;
  std::filesystem::create_directories(out_dir);
  json files = json::array();
  const auto corpus = hcap::corpus_generate(spec);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s-%04zu.json", kind.c_str(), i);
    const std::string text = hcap::shape_file_json(corpus[i].space, corpus[i].shapes).dump(2) + "\n";
    std::ofstream(std::filesystem::path(out_dir) / name) << text;
    files.push_back(json{{"file", name}, {"sha256", hcap::sha256_hex(text)}, {"shapes", corpus[i].shapes.size()},
                         {"size", corpus[i].size}});
  }
  const json manifest{{"command", "corpus"}, {"version", hcap::kVersion}, {"kind", kind}, {"count", count},
                      {"seed", seed},        {"files", files}};
  std::ofstream(std::filesystem::path(out_dir) / "manifest.json") << manifest.dump(2) << "\n";
  std::cout << manifest.dump(2) << "\n";
  return kOk;
}

/// Runs every claim with open fixtures and prints the observed ranges widened by
/// the fixture margin.
int cmd_pilot(const hcap::VerifyConfig& base) {
  hcap::VerifyConfig v = base;
  const double inf = std::numeric_limits<double>::infinity();
  v.fixtures = {{0, inf}, inf, {0, inf}, {0, inf}, {0, inf}, inf, {0, inf}, {0, inf}, {0, inf}, inf, inf, inf, inf, inf, inf};
  const auto rows = hcap::run_claim("all", v);
  std::map<std::string, std::pair<double, double>> seen;
  for (const auto& r : rows) {
    if (r.fixture.empty() || !std::isfinite(r.value)) continue;
    auto [it, fresh] = seen.try_emplace(r.fixture, r.value, r.value);
    if (!fresh) it->second = {std::min(it->second.first, r.value), std::max(it->second.second, r.value)};
  }
  const double m = hcap::kFixtureMargin;
  std::printf("// pilot: seed %llu, walks %llu, corpus walks %llu, neighborhood walks %llu\n",
              static_cast<unsigned long long>(v.seed), static_cast<unsigned long long>(v.n_walks),
              static_cast<unsigned long long>(v.corpus_walks), static_cast<unsigned long long>(v.neighborhood_walks));
  for (const auto& [key, range] : seen)
    std::printf("%-16s observed [%.6g, %.6g]  widened [%.6g, %.6g]\n", key.c_str(), range.first, range.second,
                range.first / m, range.second * m);
  const auto counts = hcap::count_verdicts(rows);
  std::printf("verdicts with open fixtures: %zu pass, %zu fail, %zu inconclusive\n", counts.pass, counts.fail,
              counts.inconclusive);
  for (const auto& r : rows)
    if (r.verdict && *r.verdict != hcap::Verdict::pass)
      std::printf("  %s %s %s %s = %.6g (%s)\n", hcap::verdict_name(*r.verdict), r.claim.c_str(), r.case_id.c_str(),
                  r.quantity.c_str(), r.value, r.note.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-plane capacity, conformal radius and hyperbolic neighborhoods"};
  app.require_subcommand(1);

  Common cap_opts, ver_opts, pilot_opts;
  std::string cap_file;
  bool exact = false;
  auto* cap = app.add_subcommand("capacity", "hcap or dcap of a shape file, with comparator areas");
  cap->add_option("FILE", cap_file, "shape file")->required();
  cap->add_flag("--exact", exact, "closed form for canonical shapes");
  add_common(*cap, cap_opts, false);

  std::string claim;
  std::size_t corpus_size = 30, hp_size = 20;
  std::uint64_t corpus_walks = 0, nb_walks = 0;
  std::vector<double> limit_y;
  bool strict = false;
  auto* ver = app.add_subcommand("verify", "check a claim over canonical cases and a seeded corpus");
  std::vector<std::string> claims = hcap::claim_names();
  claims.push_back("all");
  ver->add_option("CLAIM", claim, "claim id")->required()->check(CLI::IsMember(claims));
  add_common(*ver, ver_opts, true);
  ver->add_option("--corpus-size", corpus_size, "disk corpus size");
  ver->add_option("--halfplane-corpus-size", hp_size, "half-plane corpus size");
  ver->add_option("--corpus-walks", corpus_walks, "walks per corpus element (default walks/4)");
  ver->add_option("--neighborhood-walks", nb_walks, "walks in neighborhood domains (default walks/10)");
  ver->add_option("--y", limit_y, "heights for the corollary and remark tables")->delimiter(',');
  ver->add_flag("--strict", strict, "treat inconclusive verdicts as failures");

  std::string kind;
  std::size_t count = 10;
  std::uint64_t corpus_seed = 1;
  std::string out_dir = "corpus";
  auto* cor = app.add_subcommand("corpus", "write seeded shape files");
  cor->add_option("--kind", kind, "slit-forest|staircase|halfdisk-mix|radial-slit-set|arcbox-set")->required();
  cor->add_option("--count", count, "number of files");
  cor->add_option("--seed", corpus_seed, "seed");
  cor->add_option("--out", out_dir, "output directory");

  std::size_t pilot_corpus = 30, pilot_hp = 20;
  std::uint64_t pilot_cw = 0, pilot_nw = 0;
  auto* pil = app.add_subcommand("pilot", "observe fixture constants with open brackets");
  add_common(*pil, pilot_opts, true);
  pil->add_option("--corpus-size", pilot_corpus, "disk corpus size");
  pil->add_option("--halfplane-corpus-size", pilot_hp, "half-plane corpus size");
  pil->add_option("--corpus-walks", pilot_cw, "walks per corpus element");
  pil->add_option("--neighborhood-walks", pilot_nw, "walks in neighborhood domains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*cap) {
      if (cap_opts.threads) hcap::set_worker_count(cap_opts.threads);
      return cmd_capacity(cap_opts, cap_file, exact);
    }
    if (*ver) {
      if (ver_opts.threads) hcap::set_worker_count(ver_opts.threads);
      return cmd_verify(ver_opts, verify_config(ver_opts, *ver, corpus_size, hp_size, corpus_walks, nb_walks, limit_y), claim,
                        strict);
    }
    if (*cor) return cmd_corpus(kind, count, corpus_seed, out_dir);
    if (*pil) {
      if (pilot_opts.threads) hcap::set_worker_count(pilot_opts.threads);
      return cmd_pilot(verify_config(pilot_opts, *pil, pilot_corpus, pilot_hp, pilot_cw, pilot_nw, {}));
    }
  } catch (const hcap::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const hcap::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const hcap::EstimatorError& e) {
    std::cerr << "estimator failure: " << e.what() << "\n";
    return kEstimator;
  }
  return kOk;
}
