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

#include <string>

#include "dialrobust/backend.h"
#include "dialrobust/baseline.h"

namespace dialrobust {

BaselineBackend::BaselineBackend(bool grounded) {
  info_.name = std::string(kBaselineName);
  info_.version = std::string(kBaselineVersion);
  info_.submetrics =
      grounded ? std::vector<std::string>{"content", "naturalness", "relevance",
                                          "groundedness"}
               : std::vector<std::string>{"content", "grammar", "relevance"};
  info_.weighted = false;
}

ScoreResponse BaselineBackend::Score(const ScoreRequest& request) {
  Conversation conversation;
  conversation.id = request.conversation_id;
  conversation.history = request.history;
  conversation.fact = request.fact;
  conversation.grounded = request.fact.has_value();
  return ScoreResponse::Ok(request.request_id,
                           BaselineScore(conversation, request.response));
}

}  // namespace dialrobust
