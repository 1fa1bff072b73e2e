// Copyright 2026 The gIoM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "giom/cli.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "giom/evaluation.h"
#include "giom/hashing.h"
#include "giom/io.h"
#include "giom/matching.h"
#include "giom/mcc.h"
#include "giom/security.h"

namespace giom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<int> kDefaultMGrid = {5, 10, 50, 100, 150, 200, 250, 300, 500, 700};
const CLI::Range kQRange(2, 1 << 20, "INT >= 2");
const CLI::Range kPositive(1, 1 << 30, "INT >= 1");
const std::vector<int> kDefaultQGrid = {5, 10, 50, 100, 150, 200, 250, 300};

struct MccFlags {
  double radius = 70.0;
  int ns = 16;
  int nd = 6;
  std::optional<double> sigma_s;
  double sigma_d = std::numbers::pi / 9.0;

  void Register(CLI::App* app) {
    app->add_option("--radius", radius, "Cylinder radius in pixels")
        ->check(CLI::PositiveNumber);
    app->add_option("--ns", ns, "Spatial cells per axis")->check(CLI::Range(2, 256));
    app->add_option("--nd", nd, "Directional cells")->check(CLI::Range(1, 64));
    app->add_option("--sigma-s", sigma_s, "Spatial kernel spread (default radius/7.5)")
        ->check(CLI::PositiveNumber);
    app->add_option("--sigma-d", sigma_d, "Directional kernel spread, radians")
        ->check(CLI::PositiveNumber);
  }

  MccParams Resolve() const {
    MccParams p = MccParams::ForRadius(radius);
    p.ns = ns;
    p.nd = nd;
    if (sigma_s) p.sigma_s = *sigma_s;
    p.sigma_d = sigma_d;
    p.Validate();
    return p;
  }
};

struct LgsFlags {
  LgsParams params;
  bool top = false;

  void Register(CLI::App* app) {
    app->add_option("--min-np", params.min_np, "Minimum averaged pairs")
        ->check(kPositive);
    app->add_option("--max-np", params.max_np, "Maximum averaged pairs")
        ->check(kPositive);
    app->add_option("--mu-p", params.mu_p, "Sigmoid centre");
    app->add_option("--tau-p", params.tau_p, "Sigmoid slope");
    app->add_flag("--lgs-top", top,
                  "Average the plain top-n_p entries instead of greedy unique pairs");
  }

  LgsParams Resolve() const {
    LgsParams p = params;
    p.greedy_unique = !top;
    p.Validate();
    return p;
  }
};

std::uint64_t DatasetDigest(const Dataset& dataset) {
  std::uint64_t h = detail::Mix64(0);
  for (const auto& finger : dataset.fingers) {
    for (const auto& t : finger.samples) {
      for (unsigned char c : FormatMinutiae(t)) h = detail::Mix64(h ^ c);
    }
  }
  return h;
}

json DatasetSummary(const Dataset& dataset) {
  return {{"fingers", dataset.fingers.size()},
          {"templates", dataset.template_count()},
          {"digest", detail::Hex64(DatasetDigest(dataset))}};
}

void PrintWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

std::vector<double> Scores(const std::vector<ScoredPair>& pairs) {
  std::vector<double> out;
  for (const auto& p : pairs) out.push_back(p.score);
  return out;
}

json ScoredPairsJson(const std::vector<ScoredPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) {
    out.push_back({{"a", {p.pair.a.finger, p.pair.a.sample}},
                   {"b", {p.pair.b.finger, p.pair.b.sample}},
                   {"score", p.score}});
  }
  return out;
}

json VectorJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string JoinCodes(const CodeMatrix& codes, Eigen::Index row) {
  std::string line;
  for (Eigen::Index c = 0; c < codes.cols(); ++c) {
    if (c > 0) line += " ";
    line += std::to_string(codes(row, c));
  }
  return line;
}

// ---- analyze --mode invert ----

json CaseStudyReport(const CaseStudy& cs, std::int64_t attempts, std::uint64_t seed,
                     std::int64_t volume_samples) {
  const auto& bank = cs.bank;
  json projections = json::array();
  for (int i = 0; i < bank.m(); ++i) {
    projections.push_back(VectorJson(bank.Matrix(i).transpose() * cs.x));
  }
  const auto code = IomHash(cs.x, bank);
  const auto system = BuildInequalities(bank, code);
  json constraints = json::array();
  for (const auto& c : system.constraints) {
    constraints.push_back({{"normal", VectorJson(c.normal)}, {"strict", c.strict}});
  }
  const auto forged = SamplePreimage(system, attempts, seed);
  json report = {{"name", cs.name},
                 {"x", VectorJson(cs.x)},
                 {"projections", projections},
                 {"code", code},
                 {"constraints", constraints},
                 {"original_satisfies", system.Satisfies(cs.x)},
                 {"attempts_used", forged.attempts_used},
                 {"preimage_volume", PreimageVolumeEstimate(system, volume_samples, seed)}};
  if (forged.vector) {
    report["forged"] = VectorJson(*forged.vector);
    report["forged_domain"] =
        forged.domain == CandidateDomain::kNormal ? "normal" : "unit_cube";
    report["forged_code"] = IomHash(*forged.vector, bank);
  } else {
    report["forged"] = nullptr;
  }
  return report;
}

// Preimage volume of a random code as the number of hash positions grows at
// fixed input dimension.
json VolumeTrend(std::uint64_t seed, std::int64_t samples) {
  constexpr int kDim = 16;
  constexpr int kQ = 4;
  json rows = json::array();
  Rng rng(seed, 7);
  Eigen::VectorXd x(kDim);
  for (int k = 0; k < kDim; ++k) x(k) = rng.Uniform();
  for (int m : {1, 2, 4, 8, 16, 32}) {
    const auto bank = GaussianBank::Derive({seed, m, kQ, kDim});
    const auto system = BuildInequalities(bank, IomHash(x, bank));
    rows.push_back({{"m", m},
                    {"q", kQ},
                    {"d", kDim},
                    {"constraints", system.constraints.size()},
                    {"volume", PreimageVolumeEstimate(system, samples, seed)}});
  }
  return rows;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Cancellable templates via generalized Index-of-Max hashing", "giom"};
  app.require_subcommand(1);

  // gen-data
  SynthParams synth;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "data/synth";
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic minutiae dataset");
  gen->add_option("--fingers", synth.fingers, "Number of fingers")->check(kPositive);
  gen->add_option("--samples", synth.samples_per_finger, "Samples per finger")
      ->check(kPositive);
  gen->add_option("--min-minutiae", synth.min_minutiae)->check(kPositive);
  gen->add_option("--max-minutiae", synth.max_minutiae)->check(kPositive);
  gen->add_option("--jitter-pos", synth.jitter_pos, "Position jitter std-dev, pixels")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--jitter-theta", synth.jitter_theta, "Angle jitter std-dev, radians")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--drop-rate", synth.drop_rate)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--field", synth.field, "Square field side, pixels")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Dataset seed")->required();
  gen->add_option("--out", gen_out, "Output directory");

  // shared key / pipeline flags
  int m = 700, q = 100, threads = 1;
  std::uint64_t seed = 0;
  MccFlags mcc_flags;
  LgsFlags lgs_flags;
  std::string data_dir = "data/synth";

  // hash
  std::string minutiae_path, fixture_path, hash_out;
  auto* hash = app.add_subcommand("hash", "Hash one template (or a fixture) to gIoM codes");
  auto* hash_source = hash->add_option_group("source");
  hash_source->add_option("--minutiae", minutiae_path, "Minutiae text file")
      ->check(CLI::ExistingFile);
  hash_source->add_option("--fixture", fixture_path, "Fixture with vectors and explicit bank")
      ->check(CLI::ExistingFile);
  hash_source->require_option(1);
  hash->add_option("--m", m, "Number of Gaussian matrices")->check(kPositive);
  hash->add_option("--q", q, "Columns per matrix")->check(kQRange);
  hash->add_option("--seed", seed, "Key seed");
  hash->add_option("--out", hash_out, "Write the hashed template as JSON");
  hash->add_option("--threads", threads)->check(kPositive);
  mcc_flags.Register(hash);

  // match
  std::string match_a, match_b, match_detail, match_key;
  auto* match = app.add_subcommand("match", "Score two hashed templates");
  match->add_option("--a", match_a, "First hashed template")->required()->check(CLI::ExistingFile);
  match->add_option("--b", match_b, "Second hashed template")->required()->check(CLI::ExistingFile);
  match->add_option("--key", match_key, "Hash key JSON to check fingerprints against")
      ->check(CLI::ExistingFile);
  match->add_option("--detail", match_detail, "Write selected pairs and n_p as JSON");
  lgs_flags.Register(match);

  // evaluate
  std::string eval_out = "out/evaluate";
  auto* evaluate = app.add_subcommand("evaluate", "FVC-protocol EER on a dataset");
  evaluate->add_option("--data", data_dir, "Dataset directory");
  evaluate->add_option("--m", m)->check(kPositive);
  evaluate->add_option("--q", q)->check(kQRange);
  evaluate->add_option("--seed", seed, "Key seed")->required();
  evaluate->add_option("--out", eval_out, "Output directory");
  evaluate->add_option("--threads", threads)->check(kPositive);
  mcc_flags.Register(evaluate);
  lgs_flags.Register(evaluate);

  // sweep
  std::vector<int> m_list = kDefaultMGrid, q_list = kDefaultQGrid;
  int trials = 3;
  std::string sweep_out = "out/sweep";
  auto* sweep = app.add_subcommand("sweep", "Mean EER over an (m, q) grid");
  sweep->add_option("--data", data_dir, "Dataset directory");
  sweep->add_option("--m", m_list, "Comma-separated m values")
      ->delimiter(',')->check(kPositive);
  sweep->add_option("--q", q_list, "Comma-separated q values")
      ->delimiter(',')->check(kQRange);
  sweep->add_option("--trials", trials)->check(kPositive);
  sweep->add_option("--seed", seed, "Base seed; trial t uses seed + t")->required();
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--threads", threads)->check(kPositive);
  mcc_flags.Register(sweep);
  lgs_flags.Register(sweep);

  // analyze
  std::string mode;
  std::string analyze_out = "out/analyze";
  std::uint64_t seed_b = 1, key_seed = 1000;
  int n_keys = 50;
  std::int64_t attempts = 1000000, volume_samples = 100000;
  auto* analyze = app.add_subcommand("analyze", "Security experiments");
  analyze->add_option("--mode", mode, "invert | unlink | revoke")
      ->required()->check(CLI::IsMember({"invert", "unlink", "revoke"}));
  analyze->add_option("--data", data_dir, "Dataset directory (unlink, revoke)");
  analyze->add_option("--m", m)->check(kPositive);
  analyze->add_option("--q", q)->check(kQRange);
  analyze->add_option("--seed", seed, "Sampling seed (invert); key seed (unlink a, revoke base)")
      ->required();
  analyze->add_option("--seed-b", seed_b, "Second key seed (unlink)");
  analyze->add_option("--keys", n_keys, "Renewed keys per finger (revoke)")
      ->check(kPositive);
  analyze->add_option("--key-seed", key_seed, "First renewed key seed (revoke)");
  analyze->add_option("--attempts", attempts, "Rejection-sampling budget (invert)")
      ->check(kPositive);
  analyze->add_option("--volume-samples", volume_samples, "Monte-Carlo samples (invert)")
      ->check(kPositive);
  analyze->add_option("--out", analyze_out, "Output directory");
  analyze->add_option("--threads", threads)->check(kPositive);
  mcc_flags.Register(analyze);
  lgs_flags.Register(analyze);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      const auto templates = SynthDataset(gen_seed, synth);
      SaveDataset(templates, gen_out);
      const json config = {{"subcommand", "gen-data"},
                           {"seed", gen_seed},
                           {"fingers", synth.fingers},
                           {"samples_per_finger", synth.samples_per_finger},
                           {"minutiae_range", {synth.min_minutiae, synth.max_minutiae}},
                           {"jitter_pos", synth.jitter_pos},
                           {"jitter_theta", synth.jitter_theta},
                           {"drop_rate", synth.drop_rate},
                           {"field", synth.field}};
      WriteJson(config, fs::path(gen_out) / "dataset.json");
      out << "wrote " << templates.size() << " templates to " << gen_out << "\n";
      return kExitOk;
    }

    if (*hash) {
      std::vector<HashedTemplate> hashed;
      if (!fixture_path.empty()) {
        const json fixture = ReadJson(fixture_path);
        const GaussianBank bank = GaussianBankFromJson(fixture.at("bank"));
        for (const auto& row : fixture.at("vectors")) {
          Eigen::VectorXd x(static_cast<Eigen::Index>(row.size()));
          for (std::size_t k = 0; k < row.size(); ++k) {
            x(static_cast<Eigen::Index>(k)) = row[k].get<double>();
          }
          hashed.push_back(GiomHash(Eigen::MatrixXd(x.transpose()), bank, threads));
        }
        if (hashed.empty()) throw ArgumentError("fixture has no vectors");
        CodeMatrix all(static_cast<Eigen::Index>(hashed.size()), bank.m());
        for (std::size_t r = 0; r < hashed.size(); ++r) {
          all.row(static_cast<Eigen::Index>(r)) = hashed[r].codes().row(0);
        }
        hashed = {HashedTemplate(all, bank.q(), bank.Fingerprint())};
      } else {
        std::vector<std::string> warnings;
        const auto templates = LoadMinutiae(minutiae_path, &warnings);
        PrintWarnings(warnings, err);
        const MccParams mcc = mcc_flags.Resolve();
        const HashKey key{seed, m, q, mcc.dim()};
        const GaussianBank bank = GaussianBank::Derive(key);
        hashed.push_back(GiomHash(EncodeCylinders(templates.front(), mcc), bank, threads));
      }
      const HashedTemplate& h = hashed.front();
      for (Eigen::Index r = 0; r < h.codes().rows(); ++r) out << JoinCodes(h.codes(), r) << "\n";
      if (!hash_out.empty()) SaveHashed(h, hash_out);
      return kExitOk;
    }

    if (*match) {
      std::vector<std::string> warnings;
      std::optional<HashKey> key;
      if (!match_key.empty()) key = HashKeyFromJson(ReadJson(match_key));
      const HashedTemplate a = LoadHashed(match_a, key ? &*key : nullptr, &warnings);
      const HashedTemplate b = LoadHashed(match_b, key ? &*key : nullptr, &warnings);
      PrintWarnings(warnings, err);
      const LgsParams lgs = lgs_flags.Resolve();
      const LgsResult result = LgsMatchDetailed(a, b, lgs);
      out << FormatDouble(result.score) << "\n";
      if (!match_detail.empty()) {
        json pairs = json::array();
        for (const auto& p : result.pairs) {
          pairs.push_back({{"a", p.row + 1}, {"b", p.col + 1}, {"similarity", p.similarity}});
        }
        WriteJson({{"score", result.score}, {"np", result.np}, {"lgs", ToJson(lgs)},
                   {"pairs", pairs}},
                  match_detail);
      }
      return kExitOk;
    }

    const MccParams mcc = mcc_flags.Resolve();
    const LgsParams lgs = lgs_flags.Resolve();

    if (*evaluate) {
      std::vector<std::string> warnings;
      Dataset dataset = LoadDataset(data_dir, &warnings);
      PrintWarnings(warnings, err);
      const json summary = DatasetSummary(dataset);
      const Evaluator evaluator(std::move(dataset), mcc);
      const HashKey key{seed, m, q, mcc.dim()};
      const EvalReport report = evaluator.Evaluate(key, lgs, threads);
      json doc = ToJson(report);
      doc["run"] = {{"subcommand", "evaluate"}, {"dataset", summary}};
      WriteJson(doc, fs::path(eval_out) / "report.json");
      WriteText(RocCsv(report.roc), fs::path(eval_out) / "roc.csv");
      out << "eer " << FormatDouble(report.eer) << " genuine " << report.genuine.size()
          << " impostor " << report.impostor.size() << "\n";
      return kExitOk;
    }

    if (*sweep) {
      std::vector<std::string> warnings;
      Dataset dataset = LoadDataset(data_dir, &warnings);
      PrintWarnings(warnings, err);
      const json summary = DatasetSummary(dataset);
      const Evaluator evaluator(std::move(dataset), mcc);
      const auto rows = evaluator.Sweep(m_list, q_list, trials, seed, lgs, threads);
      WriteText(SweepCsv(rows), fs::path(sweep_out) / "sweep.csv");
      json table = json::array();
      for (const auto& row : rows) {
        table.push_back({{"m", row.m}, {"q", row.q}, {"seeds", row.seeds},
                         {"eers", row.eers}, {"mean_eer", row.MeanEer()}});
      }
      WriteJson({{"run", {{"subcommand", "sweep"}, {"dataset", summary},
                          {"base_seed", seed}, {"trials", trials},
                          {"m", m_list}, {"q", q_list}, {"d", mcc.dim()},
                          {"lgs", ToJson(lgs)}, {"mcc", ToJson(mcc)}}},
                 {"rows", table}},
                fs::path(sweep_out) / "sweep.json");
      out << "wrote " << rows.size() << " rows to " << (fs::path(sweep_out) / "sweep.csv").string()
          << "\n";
      return kExitOk;
    }

    if (*analyze) {
      if (mode == "invert") {
        const GuessingSpace space = BruteForceGuessingSpace(4, mcc.dim());
        json doc = {{"run", {{"subcommand", "analyze"}, {"mode", "invert"}, {"seed", seed},
                             {"attempts", attempts}, {"volume_samples", volume_samples}}},
                    {"cases", {CaseStudyReport(CaseStudyOne(), attempts, seed, volume_samples),
                               CaseStudyReport(CaseStudyTwo(), attempts, seed, volume_samples)}},
                    {"volume_trend", VolumeTrend(seed, volume_samples)},
                    {"guessing_space", {{"decimals", space.decimals},
                                        {"dim", space.dim},
                                        {"count", space.symbolic}}}};
        WriteJson(doc, fs::path(analyze_out) / "invert.json");
        for (const auto& c : doc["cases"]) {
          out << c["name"].get<std::string>() << " code";
          for (int v : c["code"]) out << " " << v;
          out << (c["forged"].is_null() ? " (no preimage found)" : " (preimage forged)") << "\n";
        }
        out << "guessing space " << space.symbolic << "\n";
        return kExitOk;
      }

      std::vector<std::string> warnings;
      Dataset dataset = LoadDataset(data_dir, &warnings);
      PrintWarnings(warnings, err);
      const json summary = DatasetSummary(dataset);
      const Evaluator evaluator(std::move(dataset), mcc);
      const HashKey key_a{seed, m, q, mcc.dim()};

      if (mode == "unlink") {
        const HashKey key_b{seed_b, m, q, mcc.dim()};
        const auto result = UnlinkabilityExperiment(evaluator, key_a, key_b, lgs, threads);
        PrintWarnings(result.warnings, err);
        const auto mated = Scores(result.mated_genuine);
        const auto non_mated = Scores(result.non_mated_impostor);
        json doc = {{"run", {{"subcommand", "analyze"}, {"mode", "unlink"}, {"dataset", summary},
                             {"key_a", ToJson(key_a)}, {"key_b", ToJson(key_b)},
                             {"lgs", ToJson(lgs)}, {"mcc", ToJson(mcc)}}},
                    {"mated_genuine", ScoredPairsJson(result.mated_genuine)},
                    {"non_mated_impostor", ScoredPairsJson(result.non_mated_impostor)},
                    {"warnings", result.warnings}};
        if (!mated.empty() && !non_mated.empty()) {
          doc["histogram_intersection"] = HistogramIntersection(mated, non_mated);
        }
        WriteJson(doc, fs::path(analyze_out) / "unlink.json");
        WriteText(HistogramCsv({"mated_genuine", "non_mated_impostor"}, {mated, non_mated}),
                  fs::path(analyze_out) / "unlink_hist.csv");
        if (doc.contains("histogram_intersection")) {
          out << "histogram intersection "
              << FormatDouble(doc["histogram_intersection"].get<double>()) << "\n";
        }
        return kExitOk;
      }

      const auto result =
          RevocabilityExperiment(evaluator, key_a, n_keys, key_seed, lgs, threads);
      const double hi_impostor = HistogramIntersection(result.mated_genuine, result.impostor);
      const double hi_genuine = HistogramIntersection(result.mated_genuine, result.genuine);
      json doc = {{"run", {{"subcommand", "analyze"}, {"mode", "revoke"}, {"dataset", summary},
                           {"base_key", ToJson(key_a)}, {"keys", n_keys},
                           {"key_seed", key_seed}, {"lgs", ToJson(lgs)}, {"mcc", ToJson(mcc)}}},
                  {"mated_genuine", result.mated_genuine},
                  {"renewed_seeds", result.renewed_seeds},
                  {"genuine", result.genuine},
                  {"impostor", result.impostor},
                  {"intersection_with_impostor", hi_impostor},
                  {"intersection_with_genuine", hi_genuine}};
      WriteJson(doc, fs::path(analyze_out) / "revoke.json");
      WriteText(HistogramCsv({"mated_genuine", "genuine", "impostor"},
                             {result.mated_genuine, result.genuine, result.impostor}),
                fs::path(analyze_out) / "revoke_hist.csv");
      out << "mated-genuine " << result.mated_genuine.size() << " intersection impostor "
          << FormatDouble(hi_impostor) << " genuine " << FormatDouble(hi_genuine) << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace giom
