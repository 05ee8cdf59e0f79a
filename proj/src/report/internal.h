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

#ifndef DIALROBUST_REPORT_INTERNAL_H_
#define DIALROBUST_REPORT_INTERNAL_H_

#include <string>
#include <string_view>

namespace dialrobust::internal {

std::string CsvField(std::string_view text);
std::string XmlEscape(std::string_view text);
// Keeps [A-Za-z0-9._-], replaces anything else with '_'.
std::string FileStem(std::string_view name);

}  // namespace dialrobust::internal

#endif  // DIALROBUST_REPORT_INTERNAL_H_
