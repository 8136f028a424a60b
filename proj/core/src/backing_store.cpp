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

#include "mpmc/backing_store.hpp"

#include <string>

#include "mpmc/common.hpp"

namespace mpmc::dram {

BackingStore::BackingStore(std::uint64_t capacity_beats)
    : capacity_(capacity_beats), pages_((capacity_beats + kPageBeats - 1) / kPageBeats) {}

void BackingStore::check(std::uint64_t beat) const {
  if (beat >= capacity_)
    throw SimulationError("beat address " + std::to_string(beat) + " beyond backing store");
}

std::uint32_t BackingStore::read(std::uint64_t beat) const {
  check(beat);
  const auto& page = pages_[beat / kPageBeats];
  return page ? (*page)[beat % kPageBeats] : kPoison;
}

void BackingStore::write(std::uint64_t beat, std::uint32_t value) {
  check(beat);
  auto& page = pages_[beat / kPageBeats];
  if (!page) {
    page = std::make_unique<Page>();
    page->fill(kPoison);
    ++allocated_;
  }
  (*page)[beat % kPageBeats] = value;
}

}  // namespace mpmc::dram
