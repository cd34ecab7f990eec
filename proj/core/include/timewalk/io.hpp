#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "timewalk/types.hpp"
#include "timewalk/walk_engine.hpp"

namespace timewalk {

/// Fail-fast parse failure carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Magic header of the packed binary edge format: little-endian 64-bit
/// (source, target, timestamp) triples after an 8-byte tag.
inline constexpr char kEdgeBinaryMagic[8] = {'T', 'M', 'P', 'W', '0', '0', '0', '1'};
/// Magic header of the binary walk format (fixed-stride WalkSet image).
inline constexpr char kWalkBinaryMagic[8] = {'T', 'M', 'P', 'W', '0', '0', '0', '2'};

/// Text edges: one `source<TAB>target<TAB>timestamp` triple per line,
/// non-negative integers; `#`-prefixed lines and blank lines are skipped.
std::vector<TemporalEdge> read_edges_tsv(std::istream& in);
void write_edges_tsv(std::ostream& out, std::span<const TemporalEdge> edges);

std::vector<TemporalEdge> read_edges_binary(std::istream& in);
void write_edges_binary(std::ostream& out, std::span<const TemporalEdge> edges);

/// Reads either format, sniffing the binary magic.
std::vector<TemporalEdge> read_edges(const std::string& path);
void write_edges(const std::string& path, std::span<const TemporalEdge> edges, bool binary);

/// Text walks: one walk per line, hops as `node@time`; a start sentinel
/// prints as `node@-`. Walks that never recorded a hop are suppressed.
void write_walks_text(std::ostream& out, const WalkSet& walks);

/// One parsed walk line. Timed lines carry a time per entry (sentinel at
/// entry 0 allowed); untimed lines are bare node sequences from external
/// engines.
struct WalkRecord {
  std::vector<NodeId> nodes;
  std::vector<Timestamp> times;  // empty iff untimed
  [[nodiscard]] bool timed() const { return !times.empty(); }
};

std::vector<WalkRecord> read_walks_text(std::istream& in);

void write_walks_binary(std::ostream& out, const WalkSet& walks);
WalkSet read_walks_binary(std::istream& in);

void write_walks(const std::string& path, const WalkSet& walks, bool binary);
std::vector<WalkRecord> read_walks(const std::string& path);

}  // namespace timewalk
