// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cawd/model.hpp"

namespace cawd {

/// Parse failure carrying the 1-based line number of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance text format (ASCII, whitespace-separated, '#' starts a comment):
//
//   goods n
//   units k_1 k_2 ... k_n
//   bids m
//   price q_1 q_2 ... q_n      (m such lines)
//
// Prices are decimals with at most four fractional digits; quantities are
// integers. This is the interchange contract between the generators, the
// solver CLI and the benchmark harness.

Auction read_instance(std::istream& in);
Auction read_instance_file(const std::filesystem::path& path);

/// Writes an instance in the canonical form that reading reproduces exactly.
/// `header_comments` lines (without the leading '#') are emitted up front;
/// generators use them to embed the spec that produced the instance.
void write_instance(const Auction& auction, std::ostream& out,
                    const std::vector<std::string>& header_comments = {});
void write_instance_file(const Auction& auction, const std::filesystem::path& path,
                         const std::vector<std::string>& header_comments = {});

}  // namespace cawd
