// Copyright 2026 The ontoexplain Authors
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

#ifndef ONTOEXPLAIN_RESOURCES_H_
#define ONTOEXPLAIN_RESOURCES_H_

#include <string>
#include <vector>

#include "ontoexplain/textproc.h"

namespace ontoexplain {

// Built-in word lists. The files under data/ are verbatim exports of these.
const WordSet& DefaultStopwords();
const std::vector<std::string>& DefaultAnchorSeeds();
const WordSet& DefaultVerbs();
// Words inserted into ontology explanations when they sit between two
// explanation words.
const WordSet& CausalWords();

// Renders a list in the one-entry-per-line file format.
std::string FormatWordList(const std::vector<std::string>& words,
                           const std::string& header);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_RESOURCES_H_
