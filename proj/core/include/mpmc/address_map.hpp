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
#include <string>
#include <string_view>
#include <vector>

#include "mpmc/common.hpp"

namespace mpmc::config {

/// Physical organisation of the DRAM behind the controller.
struct Geometry {
  std::uint32_t banks = 8;
  std::uint32_t rows = 1U << 15;
  std::uint32_t columns = 1U << 10;  // one column = one data-bus beat
  std::uint32_t bus_width_bits = 32;
  std::uint32_t burst_length = 8;

  std::uint32_t beats_per_word() const { return kControllerWordBits / bus_width_bits; }
  std::uint32_t words_per_row() const { return columns / beats_per_word(); }
  std::uint64_t capacity_words() const {
    return std::uint64_t{banks} * rows * words_per_row();
  }
  std::uint64_t capacity_beats() const { return std::uint64_t{banks} * rows * columns; }
  void validate() const;
};

enum class Field : std::uint8_t { Row, Bank, Col };

struct DecodedAddress {
  std::uint32_t bank = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;  // word column within the row

  friend bool operator==(const DecodedAddress&, const DecodedAddress&) = default;
};

/// Word address <-> (bank, row, col) bit-field mapping. `order` lists the
/// fields from most to least significant.
class AddressMap {
 public:
  AddressMap(std::uint32_t col_bits, std::uint32_t bank_bits, std::uint32_t row_bits,
             std::array<Field, 3> order);

  static AddressMap for_geometry(const Geometry& geometry, std::array<Field, 3> order);

  DecodedAddress decode(WordAddress address) const;
  WordAddress encode(std::uint32_t bank, std::uint32_t row, std::uint32_t col) const;
  WordAddress encode(const DecodedAddress& d) const { return encode(d.bank, d.row, d.col); }

  std::uint64_t capacity_words() const { return 1ULL << total_bits(); }
  std::uint32_t total_bits() const { return col_bits_ + bank_bits_ + row_bits_; }
  std::uint32_t col_bits() const { return col_bits_; }
  std::uint32_t bank_bits() const { return bank_bits_; }
  std::uint32_t row_bits() const { return row_bits_; }
  const std::array<Field, 3>& order() const { return order_; }

 private:
  std::uint32_t width(Field f) const;
  std::uint32_t shift(Field f) const;

  std::uint32_t col_bits_;
  std::uint32_t bank_bits_;
  std::uint32_t row_bits_;
  std::array<Field, 3> order_;
};

inline constexpr std::array<Field, 3> kBankRowCol{Field::Bank, Field::Row, Field::Col};
inline constexpr std::array<Field, 3> kRowBankCol{Field::Row, Field::Bank, Field::Col};

/// Parses "bank-row-col" style names (any permutation).
std::array<Field, 3> parse_order(std::string_view text);
std::string order_name(const std::array<Field, 3>& order);

/// One column command worth of data: at most one burst, never crossing a row.
struct ColumnSpan {
  std::uint32_t bank = 0;
  std::uint32_t row = 0;
  std::uint32_t col_start = 0;  // device column (beat index within the row)
  std::uint32_t beat_count = 0;
  std::uint32_t first_word = 0;  // offset of the span's first word in the transaction

  friend bool operator==(const ColumnSpan&, const ColumnSpan&) = default;
};

/// Splits `word_count` controller words at `start` into burst-aligned column
/// commands in address order.
std::vector<ColumnSpan> expand_transaction(const AddressMap& map, const Geometry& geometry,
                                           WordAddress start, std::uint32_t word_count);

}  // namespace mpmc::config
