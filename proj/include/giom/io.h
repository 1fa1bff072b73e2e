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

#ifndef GIOM_IO_H_
#define GIOM_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "giom/evaluation.h"
#include "giom/matching.h"
#include "giom/mcc.h"
#include "giom/randomness.h"
#include "giom/types.h"

namespace giom {

// Minutiae text format, one template per file:
//
//   # finger=<id> sample=<int>
//   <x> <y> <theta>
//   ...
//
// Blank lines are ignored. Angles outside [0, 2pi) are wrapped and reported
// through `warnings` (if non-null). Throws ParseError naming the line number
// for malformed input.
std::vector<MinutiaeTemplate> ParseMinutiae(std::istream& in,
                                            const std::string& source,
                                            std::vector<std::string>* warnings);
std::vector<MinutiaeTemplate> LoadMinutiae(const std::filesystem::path& path,
                                           std::vector<std::string>* warnings = nullptr);

std::string FormatMinutiae(const MinutiaeTemplate& t);
void SaveMinutiae(const MinutiaeTemplate& t, const std::filesystem::path& path);

// Writes one file per template as <finger>_<sample>.min.
void SaveDataset(const std::vector<MinutiaeTemplate>& templates,
                 const std::filesystem::path& dir);
// Reads every *.min file in `dir` (sorted by name) and groups them.
Dataset LoadDataset(const std::filesystem::path& dir,
                    std::vector<std::string>* warnings = nullptr);

nlohmann::json ToJson(const HashKey& key);
HashKey HashKeyFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const HashedTemplate& t);
// Throws IntegrityError for indices outside [1, q] and ParseError for a
// structurally invalid document.
HashedTemplate HashedTemplateFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const GaussianBank& bank);  // stores every matrix
GaussianBank GaussianBankFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const LgsParams& p);
LgsParams LgsParamsFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const MccParams& p);
MccParams MccParamsFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const EvalReport& r);
EvalReport EvalReportFromJson(const nlohmann::json& j);

void SaveHashed(const HashedTemplate& t, const std::filesystem::path& path);
// When `expected` is given and its fingerprint differs from the stored one, a
// mismatch warning is appended to `warnings`.
HashedTemplate LoadHashed(const std::filesystem::path& path,
                          const HashKey* expected = nullptr,
                          std::vector<std::string>* warnings = nullptr);

// threshold,fmr,fnmr rows with a header line.
std::string RocCsv(const std::vector<RocPoint>& roc);
// m,q,trials,mean_eer,stddev_eer,eers,seeds rows with a header line.
std::string SweepCsv(const std::vector<SweepRow>& rows);
// bin_lo,bin_hi,<name_1>,<name_2>,... normalized histogram rows.
std::string HistogramCsv(const std::vector<std::string>& names,
                         const std::vector<std::vector<double>>& samples,
                         int bins = 100);

nlohmann::json ReadJson(const std::filesystem::path& path);
void WriteJson(const nlohmann::json& j, const std::filesystem::path& path);
void WriteText(const std::string& text, const std::filesystem::path& path);

// Shortest decimal form that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace giom

#endif  // GIOM_IO_H_
