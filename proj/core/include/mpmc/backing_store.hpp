/*
 * Copyright 2026 The mpmc-sim Authors
 *
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

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace mpmc::dram {

/// Sparse beat-addressed store. Unwritten beats read as kPoison.
class BackingStore {
 public:
  static constexpr std::uint32_t kPoison = 0xBAADF00D;
  static constexpr std::uint64_t kPageBeats = 4096;

  explicit BackingStore(std::uint64_t capacity_beats);

  std::uint32_t read(std::uint64_t beat) const;
  void write(std::uint64_t beat, std::uint32_t value);

  std::uint64_t capacity_beats() const { return capacity_; }
  std::size_t pages_allocated() const { return allocated_; }

 private:
  using Page = std::array<std::uint32_t, kPageBeats>;
  void check(std::uint64_t beat) const;

  std::uint64_t capacity_;
  std::vector<std::unique_ptr<Page>> pages_;
  std::size_t allocated_ = 0;
};

}  // namespace mpmc::dram
