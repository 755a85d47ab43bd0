/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "spl/value.hpp"

namespace spl {

//! Signature of a built-in scalar function. Kind::Null in `params` accepts
//! any kind.
struct FunctionSig {
  std::string_view name;
  std::vector<Kind> params;
  Kind result;
};

//! Case-insensitive lookup; nullptr when unknown.
const FunctionSig* find_function(std::string_view name);
std::span<const FunctionSig> all_functions();

//! Applies a function to already kind-checked arguments. Any Null argument
//! gives Null.
Value call_function(const FunctionSig& fn, std::span<const Value> args);

}  // namespace spl
