//
// Copyright 2026 The dialrobust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dialrobust/replay_log.h"

#include <utility>

#include "common/strings.h"
#include "dialrobust/errors.h"
#include "json.hpp"

namespace dialrobust {

ReplayLog::ReplayLog(std::filesystem::path path, Mode mode)
    : path_(std::move(path)), mode_(mode) {
  std::ifstream in(path_);
  if (!in && mode_ == Mode::kReplay) {
    throw ConfigError("replay log not found: " + path_.string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (in && std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const auto value = nlohmann::json::parse(line, nullptr, false);
    if (value.is_discarded() || !value.is_object() ||
        !value.contains("hash") || !value.contains("raw") ||
        !value["hash"].is_string() || !value["raw"].is_string()) {
      throw ConfigError(path_.string() + " line " + std::to_string(line_no) +
                        ": malformed replay entry");
    }
    entries_.emplace(value["hash"].get<std::string>(),
                     value["raw"].get<std::string>());
  }
  if (mode_ == Mode::kRecord) {
    if (path_.has_parent_path()) {
      std::filesystem::create_directories(path_.parent_path());
    }
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw ConfigError("cannot write replay log " + path_.string());
  }
}

std::optional<std::string> ReplayLog::Find(const std::string& hash) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = entries_.find(hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ReplayLog::Append(const std::string& hash, std::string_view raw) {
  std::lock_guard<std::mutex> lock(mu_);
  if (mode_ != Mode::kRecord) return;
  if (!entries_.emplace(hash, std::string(raw)).second) return;
  out_ << nlohmann::json{{"hash", hash}, {"raw", raw}}.dump() << '\n';
  out_.flush();
}

std::size_t ReplayLog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

}  // namespace dialrobust
