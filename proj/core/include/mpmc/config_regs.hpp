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
#include <vector>

#include "mpmc/address_map.hpp"
#include "mpmc/common.hpp"

namespace mpmc::config {

/// SA/EA/CA/BC for one port and one direction.
struct TransferRegs {
  WordAddress sa = 0;
  WordAddress ea = 0;
  WordAddress ca = 0;
  std::uint32_t bc = 0;
  bool configured = false;
  bool finished = true;
};

struct PortConfig {
  std::array<TransferRegs, 2> regs;  // indexed by Direction

  TransferRegs& operator[](Direction d) { return regs[index(d)]; }
  const TransferRegs& operator[](Direction d) const { return regs[index(d)]; }
};

struct AdvanceResult {
  WordAddress new_ca = 0;
  bool finished = false;
};

/// Number of grants a region needs: ceil((EA - SA) / BC), or one when SA == EA.
std::uint64_t grants_for(WordAddress sa, WordAddress ea, std::uint32_t bc);

/// CONFIG register file. Read and write parameter sets are independent.
class RegisterFile {
 public:
  RegisterFile(std::uint32_t ports, std::uint64_t capacity_words);

  /// Loads a new transfer and resets CA to SA. Throws ConfigError on bad input.
  void load_config(std::uint32_t port, Direction dir, WordAddress sa, WordAddress ea,
                   std::uint32_t bc);

  /// CA <- CA + BC while CA < EA; reports whether the transfer is now done.
  AdvanceResult advance_ca(std::uint32_t port, Direction dir);

  /// True while the transfer still has grants to hand out.
  bool has_pending(std::uint32_t port, Direction dir) const;

  const TransferRegs& regs(std::uint32_t port, Direction dir) const;
  std::uint32_t port_count() const { return static_cast<std::uint32_t>(ports_.size()); }
  std::uint64_t capacity_words() const { return capacity_words_; }

 private:
  PortConfig& port(std::uint32_t id);
  const PortConfig& port(std::uint32_t id) const;

  std::vector<PortConfig> ports_;
  std::uint64_t capacity_words_;
};

}  // namespace mpmc::config
