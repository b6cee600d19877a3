/*
 * Copyright 2026 The Novelty Workbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NOVELTY_UTF8_H_
#define NOVELTY_UTF8_H_

#include <string>
#include <string_view>

namespace novelty::utf8 {

// Decodes UTF-8 into Unicode scalar values. Malformed sequences decode to
// U+FFFD, one replacement per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

// Number of scalar values in `text`.
std::size_t length(std::string_view text);

// Substring by scalar offsets [start, end).
std::string slice(std::string_view text, std::size_t start, std::size_t end);

}  // namespace novelty::utf8

#endif  // NOVELTY_UTF8_H_
