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

#include "mpmc/address_map.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace mpmc::config {

namespace {

std::uint32_t log2_exact(std::uint32_t v, const char* what) {
  if (v == 0 || !std::has_single_bit(v))
    throw ConfigError(std::string(what) + " must be a power of two, got " + std::to_string(v));
  return static_cast<std::uint32_t>(std::countr_zero(v));
}

}  // namespace

void Geometry::validate() const {
  log2_exact(banks, "bank count");
  log2_exact(rows, "row count");
  log2_exact(columns, "column count");
  if (bus_width_bits != 8 && bus_width_bits != 16 && bus_width_bits != 32)
    throw ConfigError("bus width must be 8, 16 or 32 bits");
  if (burst_length != 8) throw ConfigError("only BL8 devices are supported");
  if (beats_per_word() > burst_length)
    throw ConfigError("a controller word must fit in one burst");
  if (columns < burst_length) throw ConfigError("row shorter than one burst");
}

AddressMap::AddressMap(std::uint32_t col_bits, std::uint32_t bank_bits, std::uint32_t row_bits,
                       std::array<Field, 3> order)
    : col_bits_(col_bits), bank_bits_(bank_bits), row_bits_(row_bits), order_(order) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<Field, 3>{Field::Row, Field::Bank, Field::Col})
    throw ConfigError("address map order must be a permutation of row, bank, col");
  if (total_bits() > 40) throw ConfigError("address map wider than 40 bits");
}

AddressMap AddressMap::for_geometry(const Geometry& geometry, std::array<Field, 3> order) {
  geometry.validate();
  return AddressMap(static_cast<std::uint32_t>(std::countr_zero(geometry.words_per_row())),
                    static_cast<std::uint32_t>(std::countr_zero(geometry.banks)),
                    static_cast<std::uint32_t>(std::countr_zero(geometry.rows)), order);
}

std::uint32_t AddressMap::width(Field f) const {
  switch (f) {
    case Field::Row: return row_bits_;
    case Field::Bank: return bank_bits_;
    case Field::Col: return col_bits_;
  }
  return 0;
}

std::uint32_t AddressMap::shift(Field f) const {
  std::uint32_t s = 0;
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (*it == f) return s;
    s += width(*it);
  }
  return s;
}

DecodedAddress AddressMap::decode(WordAddress address) const {
  if (address >= capacity_words())
    throw SimulationError("address " + std::to_string(address) + " beyond device capacity");
  auto field = [&](Field f) {
    const std::uint64_t mask = (1ULL << width(f)) - 1;
    return static_cast<std::uint32_t>((address >> shift(f)) & mask);
  };
  return DecodedAddress{field(Field::Bank), field(Field::Row), field(Field::Col)};
}

WordAddress AddressMap::encode(std::uint32_t bank, std::uint32_t row, std::uint32_t col) const {
  if ((std::uint64_t{bank} >> bank_bits_) != 0 || (std::uint64_t{row} >> row_bits_) != 0 ||
      (std::uint64_t{col} >> col_bits_) != 0)
    throw SimulationError("encode: field out of range");
  return (WordAddress{bank} << shift(Field::Bank)) | (WordAddress{row} << shift(Field::Row)) |
         (WordAddress{col} << shift(Field::Col));
}

std::array<Field, 3> parse_order(std::string_view text) {
  std::array<Field, 3> out{};
  std::size_t n = 0;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, '-')) {
    if (n == 3) throw ConfigError("address order has too many fields: " + std::string(text));
    if (token == "row") out[n++] = Field::Row;
    else if (token == "bank") out[n++] = Field::Bank;
    else if (token == "col") out[n++] = Field::Col;
    else throw ConfigError("unknown address field '" + token + "'");
  }
  if (n != 3) throw ConfigError("address order must name row, bank and col: " + std::string(text));
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<Field, 3>{Field::Row, Field::Bank, Field::Col})
    throw ConfigError("address order repeats a field: " + std::string(text));
  return out;
}

std::string order_name(const std::array<Field, 3>& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += '-';
    out += order[i] == Field::Row ? "row" : order[i] == Field::Bank ? "bank" : "col";
  }
  return out;
}

std::vector<ColumnSpan> expand_transaction(const AddressMap& map, const Geometry& geometry,
                                           WordAddress start, std::uint32_t word_count) {
  const std::uint32_t bpw = geometry.beats_per_word();
  const std::uint32_t bl = geometry.burst_length;
  std::vector<ColumnSpan> spans;
  spans.reserve(word_count * bpw / bl + 2);
  std::uint32_t done = 0;
  while (done < word_count) {
    const DecodedAddress d = map.decode(start + done);
    const std::uint32_t col = d.col * bpw;
    const std::uint32_t block_room = (bl - col % bl) / bpw;
    const std::uint32_t limit = std::min(word_count - done, block_room);
    std::uint32_t words = 1;
    // extend while the next word is the next column of the same open row
    while (words < limit) {
      const DecodedAddress next = map.decode(start + done + words);
      if (next.bank != d.bank || next.row != d.row || next.col != d.col + words) break;
      ++words;
    }
    spans.push_back(ColumnSpan{d.bank, d.row, col, words * bpw, done});
    done += words;
  }
  return spans;
}

}  // namespace mpmc::config
