// Copyright 2026 The Affekt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace affekt {

using Tokens = std::vector<std::string>;

// Shared preprocessing for the matcher (upper case) and the sentiment
// analyzer (lower case). Strips .,!?;:"() and collapses whitespace.
// Apostrophes stay inside tokens. Only ASCII letters change case.
enum class Case { Upper, Lower };

Tokens tokenize(std::string_view text, Case letter_case);

// Upper-cased tokens for pattern matching.
inline Tokens normalize(std::string_view text) { return tokenize(text, Case::Upper); }

// Splits on . ? and ! then tokenizes each piece. Empty sentences are dropped.
std::vector<Tokens> segment_sentences(std::string_view text, Case letter_case);

std::string join(const Tokens& tokens, std::string_view separator = " ");

}  // namespace affekt
