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

#ifndef DIALROBUST_REPLAY_LOG_H_
#define DIALROBUST_REPLAY_LOG_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace dialrobust {

// Append-only audit file of {"hash", "raw"} lines. In record mode every
// exchange is appended; in replay mode the file is only read and a lookup
// miss is an error for the caller to raise.
class ReplayLog {
 public:
  enum class Mode { kRecord, kReplay };

  // Throws ConfigError if a replay log is missing or malformed.
  ReplayLog(std::filesystem::path path, Mode mode);

  bool replaying() const { return mode_ == Mode::kReplay; }
  std::optional<std::string> Find(const std::string& hash) const;
  // Thread-safe; flushed per entry. A hash already present is not rewritten.
  void Append(const std::string& hash, std::string_view raw);
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  Mode mode_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> entries_;
  std::ofstream out_;
};

}  // namespace dialrobust

#endif  // DIALROBUST_REPLAY_LOG_H_
