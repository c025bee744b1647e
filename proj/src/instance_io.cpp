// SPDX-License-Identifier: Apache-2.0
#include "cawd/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cawd {

namespace {

// Lines with comments stripped, blank lines skipped, line numbers kept.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool next(std::vector<std::string>& tokens, int& line_no) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream iss(line);
      tokens.clear();
      std::string tok;
      while (iss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) {
        line_no = line_;
        return true;
      }
    }
    return false;
  }

  int current_line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

long parse_int(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  return value;
}

}  // namespace

Auction read_instance(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> tokens;
  int line = 0;

  if (!reader.next(tokens, line) || tokens.size() != 2 || tokens[0] != "goods") {
    throw ParseError(reader.current_line(), "expected header 'goods n'");
  }
  long goods = parse_int(tokens[1], line, "good count");
  if (goods < 1) throw ParseError(line, "good count must be >= 1");

  if (!reader.next(tokens, line) || tokens[0] != "units") {
    throw ParseError(reader.current_line(), "expected 'units k_1 ... k_n'");
  }
  if (tokens.size() != static_cast<std::size_t>(goods) + 1) {
    throw ParseError(line, "expected " + std::to_string(goods) + " unit counts");
  }
  Auction auction;
  auction.stock.resize(goods);
  for (long j = 0; j < goods; ++j) {
    long units = parse_int(tokens[j + 1], line, "unit count");
    if (units < 1) throw ParseError(line, "units of good " + std::to_string(j) + " must be >= 1");
    auction.stock[j] = static_cast<int>(units);
  }

  if (!reader.next(tokens, line) || tokens.size() != 2 || tokens[0] != "bids") {
    throw ParseError(reader.current_line(), "expected header 'bids m'");
  }
  long num_bids = parse_int(tokens[1], line, "bid count");
  if (num_bids < 0) throw ParseError(line, "bid count must be >= 0");

  auction.bids.reserve(num_bids);
  for (long i = 0; i < num_bids; ++i) {
    if (!reader.next(tokens, line)) {
      throw ParseError(reader.current_line(),
                       "expected bid line " + std::to_string(i) + " of " +
                           std::to_string(num_bids));
    }
    if (tokens.size() != static_cast<std::size_t>(goods) + 1) {
      throw ParseError(line, "bid " + std::to_string(i) + ": expected price plus " +
                                 std::to_string(goods) + " quantities");
    }
    Bid bid;
    try {
      bid.price = Money::parse(tokens[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    if (bid.price <= Money{}) {
      throw ParseError(line, "bid " + std::to_string(i) + ": price must be positive");
    }
    bid.quantity.resize(goods);
    for (long j = 0; j < goods; ++j) {
      long q = parse_int(tokens[j + 1], line, "quantity");
      if (q < 0) throw ParseError(line, "bid " + std::to_string(i) + ": negative quantity");
      bid.quantity[j] = static_cast<int>(q);
    }
    if (bid.quantity.isZero()) {
      throw ParseError(line, "bid " + std::to_string(i) + ": requests nothing");
    }
    for (long j = 0; j < goods; ++j) {
      if (bid.quantity[j] > auction.stock[j]) {
        throw ParseError(line, "bid " + std::to_string(i) + " requests " +
                                   std::to_string(bid.quantity[j]) + " units of good " +
                                   std::to_string(j) + " but stock is " +
                                   std::to_string(auction.stock[j]));
      }
    }
    auction.bids.push_back(std::move(bid));
  }

  if (reader.next(tokens, line)) {
    throw ParseError(line, "unexpected trailing content");
  }
  validate(auction);
  return auction;
}

Auction read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
  return read_instance(in);
}

void write_instance(const Auction& auction, std::ostream& out,
                    const std::vector<std::string>& header_comments) {
  for (const std::string& c : header_comments) out << "# " << c << "\n";
  out << "goods " << auction.num_goods() << "\n";
  out << "units";
  for (int j = 0; j < auction.num_goods(); ++j) out << ' ' << auction.stock[j];
  out << "\n";
  out << "bids " << auction.num_bids() << "\n";
  for (const Bid& bid : auction.bids) {
    out << bid.price.str();
    for (int j = 0; j < auction.num_goods(); ++j) out << ' ' << bid.quantity[j];
    out << "\n";
  }
}

void write_instance_file(const Auction& auction, const std::filesystem::path& path,
                         const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  write_instance(auction, out, header_comments);
  if (!out) throw std::runtime_error("failed writing instance file: " + path.string());
}

}  // namespace cawd
