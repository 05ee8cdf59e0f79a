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

#include "dialrobust/dispatcher.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "common/strings.h"
#include "dialrobust/errors.h"

namespace dialrobust {
namespace {

using nlohmann::json;

struct Job {
  const Conversation* conversation;
  std::string response;
  std::optional<ScoreRecord> record;
  std::optional<ResponseError> error;
};

void RunJob(Job& job, std::size_t index, Scorer& scorer,
            const DispatchOptions& options,
            const std::vector<std::string>& submetrics) {
  ScoreRequest request;
  request.request_id = "req-" + std::to_string(index);
  request.conversation_id = job.conversation->id;
  request.history = job.conversation->history;
  request.fact = job.conversation->fact;
  request.response = job.response;
  request.submetrics = submetrics;
  request.mode = options.mode;
  try {
    if (options.prompt) {
      request.prompt = RenderPrompt(*options.prompt, *job.conversation,
                                    job.response, options.labels);
    }
    ScoreResponse response = scorer.Score(request);
    if (response.request_id != request.request_id) {
      job.error = {std::string(error_kind::kProtocol),
                   "reply for '" + response.request_id + "' answered '" +
                       request.request_id + "'"};
    } else if (response.error) {
      job.error = std::move(response.error);
    } else if (response.record) {
      try {
        job.record = FinalizeRecord(std::move(*response.record),
                                    options.profile);
      } catch (const DataError& e) {
        job.error = {std::string(error_kind::kInvalidScore), e.what()};
      }
    } else {
      job.error = {std::string(error_kind::kProtocol), "empty reply"};
    }
  } catch (const ProtocolError& e) {
    job.error = {std::string(error_kind::kProtocol), e.what()};
  } catch (const BackendError& e) {
    job.error = {std::string(error_kind::kTransport), e.what()};
  } catch (const Error& e) {
    job.error = {std::string(error_kind::kAdapter), e.what()};
  }
}

void CheckCapabilities(const Handshake& info, const DispatchOptions& options,
                       const std::vector<std::string>& submetrics) {
  if (options.mode == ScoreMode::kWeighted && !info.weighted) {
    throw CapabilityError("backend '" + info.name +
                          "' does not support weighted scoring");
  }
  for (const std::string& name : submetrics) {
    if (std::find(info.submetrics.begin(), info.submetrics.end(), name) ==
        info.submetrics.end()) {
      throw CapabilityError("backend '" + info.name +
                            "' does not declare submetric '" + name + "'");
    }
  }
}

std::string Where(std::size_t line_no) {
  return "score file line " + std::to_string(line_no) + ": ";
}

}  // namespace

std::string_view EntryRoleName(EntryRole role) {
  switch (role) {
    case EntryRole::kReference:
      return "reference";
    case EntryRole::kCandidate:
      return "candidate";
    case EntryRole::kAdversarial:
      return "adversarial";
  }
  return "reference";
}

EntryRole ParseEntryRole(std::string_view name) {
  if (name == "reference") return EntryRole::kReference;
  if (name == "candidate") return EntryRole::kCandidate;
  if (name == "adversarial") return EntryRole::kAdversarial;
  throw DataError("unknown entry role '" + std::string(name) + "'");
}

std::map<std::string, std::size_t> ScoreTable::ErrorCounts() const {
  std::map<std::string, std::size_t> counts;
  for (const ScoreEntry& entry : entries) {
    if (entry.error) ++counts[entry.error->kind];
  }
  return counts;
}

std::size_t ScoreTable::ExcludedCount() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [](const ScoreEntry& e) { return e.error.has_value(); }));
}

ScoreTable ScoreSuite(const Corpus& corpus,
                      const std::vector<AdversarialResponse>& suite,
                      Scorer& scorer, const DispatchOptions& options) {
  const Handshake& info = scorer.info();
  const std::vector<std::string> submetrics =
      options.submetrics.empty() ? info.submetrics : options.submetrics;
  CheckCapabilities(info, options, submetrics);

  std::map<std::string, std::vector<const AdversarialResponse*>, std::less<>>
      by_conversation;
  for (const AdversarialResponse& adv : suite) {
    if (corpus.FindConversation(adv.conversation_id) == nullptr) {
      throw DataError("suite entry for unknown conversation '" +
                      adv.conversation_id + "'");
    }
    by_conversation[adv.conversation_id].push_back(&adv);
  }

  ScoreTable table;
  table.metric = options.metric_name.empty() ? info.name : options.metric_name;
  table.backend = info;
  table.corpus = corpus.name;
  table.grounded = corpus.grounded;
  table.mode = options.mode;
  table.profile = options.profile_name;
  for (const AdversarialResponse& adv : suite) {
    if (adv.suite_seed != 0) {
      table.seed = adv.suite_seed;
      break;
    }
  }

  // Build entries and the de-duplicated job list.
  std::vector<Job> jobs;
  std::map<std::pair<std::string, std::string>, std::size_t> job_index;
  std::vector<std::size_t> entry_job;
  const auto add = [&](const Conversation& conversation, ScoreEntry entry) {
    std::size_t index = static_cast<std::size_t>(-1);
    if (!entry.skipped_reason) {
      const auto [it, inserted] = job_index.emplace(
          std::make_pair(conversation.id, entry.response), jobs.size());
      if (inserted) jobs.push_back({&conversation, entry.response, {}, {}});
      index = it->second;
    }
    entry_job.push_back(index);
    table.entries.push_back(std::move(entry));
  };

  for (const Conversation& conversation : corpus.conversations) {
    ScoreEntry reference;
    reference.conversation_id = conversation.id;
    reference.role = EntryRole::kReference;
    reference.response = conversation.reference;
    add(conversation, std::move(reference));

    for (std::size_t i = 0; i < conversation.candidates.size(); ++i) {
      const AnnotatedCandidate& candidate = conversation.candidates[i];
      ScoreEntry entry;
      entry.conversation_id = conversation.id;
      entry.role = EntryRole::kCandidate;
      entry.candidate_index = static_cast<int>(i);
      entry.response = candidate.response;
      entry.annotations = candidate.annotations;
      entry.human_overall = candidate.OverallRating();
      add(conversation, std::move(entry));
    }

    const auto it = by_conversation.find(conversation.id);
    if (it == by_conversation.end()) continue;
    for (const AdversarialResponse* adv : it->second) {
      ScoreEntry entry;
      entry.conversation_id = conversation.id;
      entry.role = EntryRole::kAdversarial;
      entry.attack_id = adv->attack_id;
      entry.response = adv->text;
      entry.skipped_reason = adv->skipped_reason;
      add(conversation, std::move(entry));
    }
  }

  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(options.jobs, 1)), 1,
      std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        RunJob(jobs[i], i, scorer, options, submetrics);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  table.dispatched = jobs.size();
  for (std::size_t e = 0; e < table.entries.size(); ++e) {
    if (entry_job[e] == static_cast<std::size_t>(-1)) continue;
    const Job& job = jobs[entry_job[e]];
    table.entries[e].record = job.record;
    table.entries[e].error = job.error;
  }
  return table;
}

std::string SerializeScoreTable(const ScoreTable& table) {
  std::string out;
  json header{{"metric", table.metric},
              {"backend", HandshakeToJson(table.backend)},
              {"corpus", table.corpus},
              {"grounded", table.grounded},
              {"seed", table.seed},
              {"mode", ScoreModeName(table.mode)},
              {"profile", table.profile},
              {"dispatched", table.dispatched}};
  out += header.dump() + "\n";
  for (const ScoreEntry& entry : table.entries) {
    json line{{"conversation_id", entry.conversation_id},
              {"role", EntryRoleName(entry.role)},
              {"response", entry.response}};
    if (entry.role == EntryRole::kAdversarial) line["attack_id"] = entry.attack_id;
    if (entry.role == EntryRole::kCandidate) {
      line["candidate"] = entry.candidate_index;
      line["annotations"] = entry.annotations;
      if (entry.human_overall) line["human_overall"] = *entry.human_overall;
    }
    if (entry.record) line["record"] = ScoreRecordToJson(*entry.record);
    if (entry.error) {
      line["error"] = {{"kind", entry.error->kind},
                       {"message", entry.error->message}};
    }
    if (entry.skipped_reason) line["skipped_reason"] = *entry.skipped_reason;
    out += EncodeLine(line) + "\n";
  }
  return out;
}

void SaveScoreTable(const ScoreTable& table,
                    const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << SerializeScoreTable(table);
}

ScoreTable ParseScoreTable(std::istream& in) {
  ScoreTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const json value = json::parse(line, nullptr, false);
    if (value.is_discarded() || !value.is_object()) {
      throw DataError(Where(line_no) + "not a JSON object");
    }
    try {
      if (!have_header) {
        if (!value.contains("metric")) {
          throw DataError(Where(line_no) + "missing header record");
        }
        table.metric = value.at("metric").get<std::string>();
        table.backend = HandshakeFromJson(value.at("backend"));
        table.corpus = value.at("corpus").get<std::string>();
        table.grounded = value.at("grounded").get<bool>();
        table.seed = value.at("seed").get<std::uint64_t>();
        table.mode = ParseScoreMode(value.at("mode").get<std::string>());
        table.profile = value.value("profile", std::string("reported"));
        table.dispatched = value.value("dispatched", std::size_t{0});
        have_header = true;
        continue;
      }
      ScoreEntry entry;
      entry.conversation_id = value.at("conversation_id").get<std::string>();
      entry.role = ParseEntryRole(value.at("role").get<std::string>());
      entry.response = value.at("response").get<std::string>();
      if (entry.role == EntryRole::kAdversarial) {
        entry.attack_id = value.at("attack_id").get<std::string>();
        if (FindAttack(entry.attack_id) == nullptr) {
          throw DataError(Where(line_no) + "unknown attack '" +
                          entry.attack_id + "'");
        }
      }
      if (entry.role == EntryRole::kCandidate) {
        entry.candidate_index = value.at("candidate").get<int>();
        entry.annotations =
            value.value("annotations", std::map<std::string, double>{});
        if (value.contains("human_overall")) {
          entry.human_overall = value.at("human_overall").get<double>();
        }
      }
      if (value.contains("record")) {
        entry.record = ScoreRecordFromJson(value.at("record"));
      }
      if (value.contains("error")) {
        entry.error = ResponseError{
            value.at("error").at("kind").get<std::string>(),
            value.at("error").value("message", std::string())};
      }
      if (value.contains("skipped_reason")) {
        entry.skipped_reason = value.at("skipped_reason").get<std::string>();
      }
      table.entries.push_back(std::move(entry));
    } catch (const json::exception& e) {
      throw DataError(Where(line_no) + e.what());
    } catch (const ProtocolError& e) {
      throw DataError(Where(line_no) + e.what());
    } catch (const ConfigError& e) {
      throw DataError(Where(line_no) + e.what());
    }
  }
  if (!have_header) throw DataError("score file is empty");
  return table;
}

ScoreTable LoadScoreTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open score file " + path.string());
  return ParseScoreTable(in);
}

}  // namespace dialrobust
