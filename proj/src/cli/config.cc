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

#include <fstream>
#include <set>
#include <sstream>

#include "dialrobust/chat_backend.h"
#include "dialrobust/cli.h"
#include "dialrobust/errors.h"
#include "dialrobust/prompt.h"
#include "dialrobust/subprocess_session.h"

namespace dialrobust {
namespace {

using nlohmann::json;

void CheckKeys(const json& value, const std::set<std::string>& allowed,
               const std::string& where) {
  for (const auto& [key, unused] : value.items()) {
    if (allowed.count(key) == 0) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() || base.empty() ? p : base / p;
}

MetricConfig ParseMetric(const json& value,
                         const std::filesystem::path& base_dir) {
  if (!value.is_object()) throw ConfigError("metric entry is not an object");
  CheckKeys(value,
            {"name", "kind", "mode", "submetrics", "profile", "command",
             "handshake_timeout_ms", "request_timeout_ms", "table", "default",
             "endpoint", "model", "api_key_env", "template", "log",
             "max_retries", "send_prompt"},
            "metric");
  MetricConfig metric;
  metric.name = value.at("name").get<std::string>();
  metric.kind = value.at("kind").get<std::string>();
  const std::string where = "metric '" + metric.name + "'";
  if (metric.name.empty()) throw ConfigError("metric name is empty");

  static const std::map<std::string, std::string> kDefaultProfile = {
      {"baseline", "baseline"},
      {"mock", "reported"},
      {"subprocess", "reported"},
      {"chat", "prompteval"}};
  const auto profile = kDefaultProfile.find(metric.kind);
  if (profile == kDefaultProfile.end()) {
    throw ConfigError(where + ": unknown kind '" + metric.kind +
                      "' (expected baseline, mock, subprocess or chat)");
  }
  metric.profile = value.value("profile", profile->second);
  MetricProfile::Named(metric.profile);  // validates the name
  if (value.contains("mode")) {
    metric.mode = ParseScoreMode(value.at("mode").get<std::string>());
  }
  metric.submetrics =
      value.value("submetrics", std::vector<std::string>{});
  metric.send_prompt = value.value("send_prompt", false);

  if (metric.kind == "subprocess") {
    const json& command = value.at("command");
    metric.command = command.is_string()
                         ? SplitCommand(command.get<std::string>())
                         : command.get<std::vector<std::string>>();
    if (metric.command.empty()) throw ConfigError(where + ": empty command");
    metric.handshake_timeout = std::chrono::milliseconds(
        value.value("handshake_timeout_ms", std::int64_t{30000}));
    metric.request_timeout = std::chrono::milliseconds(
        value.value("request_timeout_ms", std::int64_t{60000}));
  } else if (metric.kind == "mock") {
    if (value.contains("table")) {
      metric.table = Resolve(base_dir, value.at("table").get<std::string>());
    }
    if (value.contains("default")) {
      metric.fallback = ScoreRecordFromJson(value.at("default"));
    }
    if (!metric.table && !metric.fallback) {
      throw ConfigError(where + ": mock needs a table or a default record");
    }
  } else if (metric.kind == "chat") {
    metric.endpoint = value.at("endpoint").get<std::string>();
    metric.model = value.at("model").get<std::string>();
    metric.api_key_env = value.value("api_key_env", metric.api_key_env);
    metric.max_retries = value.value("max_retries", 3);
    metric.request_timeout = std::chrono::milliseconds(
        value.value("request_timeout_ms", std::int64_t{60000}));
    if (value.contains("template")) {
      metric.template_path =
          Resolve(base_dir, value.at("template").get<std::string>());
    }
    if (value.contains("log")) {
      metric.log = Resolve(base_dir, value.at("log").get<std::string>());
    }
  }
  return metric;
}

}  // namespace

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) return kExitConfig;
  if (dynamic_cast<const DataError*>(&error) != nullptr) return kExitData;
  if (dynamic_cast<const BackendError*>(&error) != nullptr) return kExitBackend;
  if (dynamic_cast<const StatsError*>(&error) != nullptr) return kExitStats;
  return kExitUnexpected;
}

RunConfig ParseRunConfig(const json& value,
                         const std::filesystem::path& base_dir) {
  if (!value.is_object()) throw ConfigError("config is not a JSON object");
  RunConfig config;
  try {
    CheckKeys(value,
              {"corpora", "corpus", "metrics", "seed", "jobs", "out", "replay",
               "tie_rule"},
              "config");
    if (value.contains("corpus")) {
      config.corpora.push_back(
          Resolve(base_dir, value.at("corpus").get<std::string>()));
    }
    for (const std::string& path :
         value.value("corpora", std::vector<std::string>{})) {
      config.corpora.push_back(Resolve(base_dir, path));
    }
    for (const json& metric : value.value("metrics", json::array())) {
      config.metrics.push_back(ParseMetric(metric, base_dir));
    }
    std::set<std::string> names;
    for (const MetricConfig& metric : config.metrics) {
      if (!names.insert(metric.name).second) {
        throw ConfigError("duplicate metric name '" + metric.name + "'");
      }
    }
    config.seed = value.value("seed", std::uint64_t{0});
    config.jobs = value.value("jobs", 4);
    if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
    if (value.contains("out")) {
      config.out = Resolve(base_dir, value.at("out").get<std::string>());
    }
    config.replay = value.value("replay", false);
    if (value.contains("tie_rule")) {
      config.tie_rule = ParseTieRule(value.at("tie_rule").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const DataError& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  const json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) {
    throw ConfigError("config " + path.string() + " is not valid JSON");
  }
  return ParseRunConfig(value, path.parent_path());
}

MetricInstance CreateMetric(const MetricConfig& metric, bool grounded,
                            int jobs, bool replay) {
  MetricInstance instance;
  DispatchOptions& options = instance.options;
  options.metric_name = metric.name;
  options.mode = metric.mode;
  options.submetrics = metric.submetrics;
  options.profile_name = metric.profile;
  options.profile = MetricProfile::Named(metric.profile);
  options.jobs = jobs;

  const PromptTemplate prompt = metric.template_path
                                    ? PromptTemplate::Load(*metric.template_path)
                                    : PromptTemplate::BuiltinFor(grounded);
  if (metric.send_prompt) options.prompt = prompt;

  if (metric.kind == "baseline") {
    instance.scorer = std::make_unique<BaselineBackend>(grounded);
  } else if (metric.kind == "mock") {
    instance.scorer =
        metric.table ? std::make_unique<MockBackend>(MockBackend::FromFile(
                           metric.table->string(), metric.fallback))
                     : std::make_unique<MockBackend>(
                           std::map<MockBackend::Key, ScoreRecord>{},
                           metric.fallback);
  } else if (metric.kind == "subprocess") {
    SessionOptions session;
    session.handshake_timeout = metric.handshake_timeout;
    session.request_timeout = metric.request_timeout;
    instance.scorer = SubprocessSession::Start(metric.command, session);
  } else if (metric.kind == "chat") {
    if (metric.log) {
      instance.log = std::make_unique<ReplayLog>(
          *metric.log,
          replay ? ReplayLog::Mode::kReplay : ReplayLog::Mode::kRecord);
    } else if (replay) {
      throw ConfigError("metric '" + metric.name +
                        "' has no audit log to replay");
    }
    ChatOptions chat;
    chat.endpoint = metric.endpoint;
    chat.model = metric.model;
    chat.api_key_env = metric.api_key_env;
    chat.prompt = prompt;
    chat.max_retries = metric.max_retries;
    chat.request_timeout = metric.request_timeout;
    chat.log = instance.log.get();
    instance.scorer = std::make_unique<ChatBackend>(std::move(chat));
  } else {
    throw ConfigError("unknown metric kind '" + metric.kind + "'");
  }
  return instance;
}

}  // namespace dialrobust
