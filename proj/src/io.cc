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

#include "giom/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace giom {

using nlohmann::json;

namespace {

constexpr const char* kHashedFormat = "giom.hashed_template.v1";
constexpr const char* kReportFormat = "giom.eval_report.v1";
constexpr const char* kBankFormat = "giom.gaussian_bank.v1";

std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

bool ParseDouble(const std::string& token, double* value) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *value);
  return ec == std::errc() && ptr == last;
}

bool ParseInt(const std::string& token, int* value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), *value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

[[noreturn]] void Fail(const std::string& source, int line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<MinutiaeTemplate> ParseMinutiae(std::istream& in,
                                            const std::string& source,
                                            std::vector<std::string>* warnings) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::string finger;
  int sample = 0;
  std::vector<Minutia> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = Tokens(line);
    if (tokens.empty()) continue;
    if (tokens.front() == "#") {
      if (have_header) Fail(source, line_no, "second header line");
      bool have_finger = false, have_sample = false;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto eq = tokens[k].find('=');
        if (eq == std::string::npos) Fail(source, line_no, "malformed header field");
        const std::string key = tokens[k].substr(0, eq);
        const std::string value = tokens[k].substr(eq + 1);
        if (key == "finger" && !value.empty()) {
          finger = value;
          have_finger = true;
        } else if (key == "sample" && ParseInt(value, &sample)) {
          have_sample = true;
        } else {
          Fail(source, line_no, "unknown or malformed header field '" + tokens[k] + "'");
        }
      }
      if (!have_finger || !have_sample) {
        Fail(source, line_no, "header needs finger=<id> sample=<int>");
      }
      have_header = true;
      continue;
    }
    if (!have_header) Fail(source, line_no, "missing '# finger=<id> sample=<int>' header");
    double x, y, theta;
    if (tokens.size() != 3 || !ParseDouble(tokens[0], &x) ||
        !ParseDouble(tokens[1], &y) || !ParseDouble(tokens[2], &theta)) {
      Fail(source, line_no, "expected 'x y theta', got '" + line + "'");
    }
    try {
      points.emplace_back(x, y, theta);
    } catch (const ArgumentError& e) {
      Fail(source, line_no, e.what());
    }
    if ((theta < 0.0 || theta >= kTwoPi) && warnings != nullptr) {
      warnings->push_back(source + ":" + std::to_string(line_no) + ": theta " +
                          tokens[2] + " wrapped to " +
                          FormatDouble(points.back().theta));
    }
  }
  if (!have_header) throw ParseError(source + ": missing header line");
  if (points.empty()) throw ParseError(source + ": template must contain ≥1 minutia");
  std::vector<MinutiaeTemplate> out;
  out.emplace_back(finger, sample, std::move(points));
  return out;
}

std::vector<MinutiaeTemplate> LoadMinutiae(const std::filesystem::path& path,
                                           std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ParseMinutiae(in, path.string(), warnings);
}

std::string FormatMinutiae(const MinutiaeTemplate& t) {
  std::string out = "# finger=" + t.finger_id + " sample=" + std::to_string(t.sample_id) + "\n";
  for (const auto& p : t.points) {
    out += FormatDouble(p.x) + " " + FormatDouble(p.y) + " " + FormatDouble(p.theta) + "\n";
  }
  return out;
}

void SaveMinutiae(const MinutiaeTemplate& t, const std::filesystem::path& path) {
  WriteText(FormatMinutiae(t), path);
}

void SaveDataset(const std::vector<MinutiaeTemplate>& templates,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : templates) {
    SaveMinutiae(t, dir / (t.finger_id + "_" + std::to_string(t.sample_id) + ".min"));
  }
}

Dataset LoadDataset(const std::filesystem::path& dir,
                    std::vector<std::string>* warnings) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("dataset directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".min") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .min files in " + dir.string());
  std::vector<MinutiaeTemplate> templates;
  for (const auto& f : files) {
    for (auto& t : LoadMinutiae(f, warnings)) templates.push_back(std::move(t));
  }
  return GroupDataset(std::move(templates));
}

json ToJson(const HashKey& key) {
  return {{"seed", key.seed}, {"m", key.m}, {"q", key.q}, {"d", key.d},
          {"fingerprint", key.Fingerprint()}};
}

HashKey HashKeyFromJson(const json& j) {
  try {
    HashKey key{j.at("seed").get<std::uint64_t>(), j.at("m").get<int>(),
                j.at("q").get<int>(), j.at("d").get<int>()};
    key.Validate();
    return key;
  } catch (const json::exception& e) {
    throw ParseError(std::string("hash key: ") + e.what());
  }
}

json ToJson(const HashedTemplate& t) {
  json codes = json::array();
  for (int r = 0; r < t.size(); ++r) {
    json row = json::array();
    for (int c = 0; c < t.m(); ++c) row.push_back(t.codes()(r, c));
    codes.push_back(std::move(row));
  }
  return {{"format", kHashedFormat}, {"q", t.q()}, {"m", t.m()},
          {"n", t.size()}, {"key_fingerprint", t.key_fingerprint()},
          {"codes", std::move(codes)}};
}

HashedTemplate HashedTemplateFromJson(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kHashedFormat) {
      throw ParseError("not a hashed template document");
    }
    const int q = j.at("q").get<int>();
    const int m = j.at("m").get<int>();
    const auto& rows = j.at("codes");
    if (m < 1 || !rows.is_array() ||
        (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())) {
      throw ParseError("hashed template has inconsistent dimensions");
    }
    CodeMatrix codes(static_cast<Eigen::Index>(rows.size()), m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(m)) {
        throw ParseError("hashed template row " + std::to_string(r) + " is not length m");
      }
      for (int c = 0; c < m; ++c) {
        codes(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)].get<std::int32_t>();
      }
    }
    return HashedTemplate(std::move(codes), q, j.at("key_fingerprint").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("hashed template: ") + e.what());
  }
}

json ToJson(const GaussianBank& bank) {
  json matrices = json::array();
  for (int i = 0; i < bank.m(); ++i) {
    const Eigen::MatrixXd w = bank.Matrix(i);
    json rows = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(w(r, c));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  return {{"format", kBankFormat}, {"m", bank.m()}, {"q", bank.q()},
          {"d", bank.d()}, {"matrices", std::move(matrices)}};
}

GaussianBank GaussianBankFromJson(const json& j) {
  try {
    std::vector<Eigen::MatrixXd> matrices;
    for (const auto& rows : j.at("matrices")) {
      if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
        throw ParseError("bank matrix must be a non-empty array of rows");
      }
      Eigen::MatrixXd w(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows[0].size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw ParseError("ragged bank matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
        }
      }
      matrices.push_back(std::move(w));
    }
    return GaussianBank(std::move(matrices));
  } catch (const json::exception& e) {
    throw ParseError(std::string("gaussian bank: ") + e.what());
  }
}

json ToJson(const LgsParams& p) {
  return {{"min_np", p.min_np}, {"max_np", p.max_np}, {"mu_p", p.mu_p},
          {"tau_p", p.tau_p}, {"greedy_unique", p.greedy_unique}};
}

LgsParams LgsParamsFromJson(const json& j) {
  try {
    LgsParams p{j.at("min_np").get<int>(), j.at("max_np").get<int>(),
                j.at("mu_p").get<double>(), j.at("tau_p").get<double>(),
                j.at("greedy_unique").get<bool>()};
    p.Validate();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("lgs params: ") + e.what());
  }
}

json ToJson(const MccParams& p) {
  return {{"radius", p.radius}, {"ns", p.ns}, {"nd", p.nd},
          {"sigma_s", p.sigma_s}, {"sigma_d", p.sigma_d}, {"d", p.dim()}};
}

MccParams MccParamsFromJson(const json& j) {
  try {
    MccParams p;
    p.radius = j.at("radius").get<double>();
    p.ns = j.at("ns").get<int>();
    p.nd = j.at("nd").get<int>();
    p.sigma_s = j.at("sigma_s").get<double>();
    p.sigma_d = j.at("sigma_d").get<double>();
    p.Validate();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("mcc params: ") + e.what());
  }
}

namespace {

json PairsToJson(const std::vector<ScoredPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) {
    out.push_back({{"a", {p.pair.a.finger, p.pair.a.sample}},
                   {"b", {p.pair.b.finger, p.pair.b.sample}},
                   {"score", p.score}});
  }
  return out;
}

std::vector<ScoredPair> PairsFromJson(const json& j) {
  std::vector<ScoredPair> out;
  for (const auto& e : j) {
    out.push_back({{{e.at("a").at(0).get<int>(), e.at("a").at(1).get<int>()},
                    {e.at("b").at(0).get<int>(), e.at("b").at(1).get<int>()}},
                   e.at("score").get<double>()});
  }
  return out;
}

}  // namespace

json ToJson(const EvalReport& r) {
  json roc = json::array();
  for (const auto& p : r.roc) {
    roc.push_back({{"threshold", p.threshold}, {"fmr", p.fmr}, {"fnmr", p.fnmr}});
  }
  return {{"format", kReportFormat},
          {"config", {{"key", ToJson(r.key)}, {"lgs", ToJson(r.lgs)}, {"mcc", ToJson(r.mcc)}}},
          {"eer", r.eer},
          {"eer_threshold", r.eer_threshold},
          {"genuine_count", r.genuine.size()},
          {"impostor_count", r.impostor.size()},
          {"genuine", PairsToJson(r.genuine)},
          {"impostor", PairsToJson(r.impostor)},
          {"roc", std::move(roc)}};
}

EvalReport EvalReportFromJson(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kReportFormat) {
      throw ParseError("not an evaluation report document");
    }
    EvalReport r;
    r.key = HashKeyFromJson(j.at("config").at("key"));
    r.lgs = LgsParamsFromJson(j.at("config").at("lgs"));
    r.mcc = MccParamsFromJson(j.at("config").at("mcc"));
    r.eer = j.at("eer").get<double>();
    r.eer_threshold = j.at("eer_threshold").get<double>();
    r.genuine = PairsFromJson(j.at("genuine"));
    r.impostor = PairsFromJson(j.at("impostor"));
    for (const auto& p : j.at("roc")) {
      r.roc.push_back({p.at("threshold").get<double>(), p.at("fmr").get<double>(),
                       p.at("fnmr").get<double>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("evaluation report: ") + e.what());
  }
}

void SaveHashed(const HashedTemplate& t, const std::filesystem::path& path) {
  WriteJson(ToJson(t), path);
}

HashedTemplate LoadHashed(const std::filesystem::path& path, const HashKey* expected,
                          std::vector<std::string>* warnings) {
  HashedTemplate t = HashedTemplateFromJson(ReadJson(path));
  if (expected != nullptr && expected->Fingerprint() != t.key_fingerprint() &&
      warnings != nullptr) {
    warnings->push_back(path.string() + ": key fingerprint mismatch (stored " +
                        t.key_fingerprint() + ", expected " +
                        expected->Fingerprint() + ")");
  }
  return t;
}

std::string RocCsv(const std::vector<RocPoint>& roc) {
  std::string out = "threshold,fmr,fnmr\n";
  for (const auto& p : roc) {
    out += FormatDouble(p.threshold) + "," + FormatDouble(p.fmr) + "," +
           FormatDouble(p.fnmr) + "\n";
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "m,q,trials,mean_eer,stddev_eer,eers,seeds\n";
  for (const auto& row : rows) {
    std::string eers, seeds;
    for (std::size_t t = 0; t < row.eers.size(); ++t) {
      if (t > 0) {
        eers += ";";
        seeds += ";";
      }
      eers += FormatDouble(row.eers[t]);
      seeds += std::to_string(row.seeds[t]);
    }
    out += std::to_string(row.m) + "," + std::to_string(row.q) + "," +
           std::to_string(row.eers.size()) + "," + FormatDouble(row.MeanEer()) +
           "," + FormatDouble(row.StddevEer()) + "," + eers + "," + seeds + "\n";
  }
  return out;
}

std::string HistogramCsv(const std::vector<std::string>& names,
                         const std::vector<std::vector<double>>& samples,
                         int bins) {
  std::vector<std::vector<double>> hists;
  for (const auto& s : samples) {
    hists.push_back(s.empty() ? std::vector<double>(static_cast<std::size_t>(bins), 0.0)
                              : Histogram(s, bins));
  }
  std::string out = "bin_lo,bin_hi";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (int b = 0; b < bins; ++b) {
    out += FormatDouble(static_cast<double>(b) / bins) + "," +
           FormatDouble(static_cast<double>(b + 1) / bins);
    for (const auto& h : hists) out += "," + FormatDouble(h[static_cast<std::size_t>(b)]);
    out += "\n";
  }
  return out;
}

json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteJson(const json& j, const std::filesystem::path& path) {
  WriteText(j.dump(2) + "\n", path);
}

void WriteText(const std::string& text, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace giom
