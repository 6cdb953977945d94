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

// Minimal XML reader for knowledge base documents: elements, attributes,
// character data, comments, CDATA, processing instructions and the five
// predefined entities plus numeric references. No DTDs, no namespaces.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affekt::markup::xml {

struct Node {
  enum class Kind { Element, Text };
  Kind kind = Kind::Element;
  std::string name;  // element name
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;  // character data for Kind::Text
  std::size_t line = 1;

  const std::string* attribute(std::string_view key) const;
};

// Returns the root element. Throws LocatedError(MalformedDocument).
Node parse(std::string_view document, const std::string& file);

std::string escape(std::string_view text);

}  // namespace affekt::markup::xml
