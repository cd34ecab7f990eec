#include "timewalk/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace timewalk {

namespace {

std::int64_t parse_int(std::string_view token, std::size_t line, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
  }
  if (value < 0) throw ParseError(std::string("negative ") + what, line);
  return value;
}

template <class T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("binary input truncated");
  return value;
}

bool is_sentinel(Timestamp t) { return t == kTimeUnset || t == kTimeInfinite; }

}  // namespace

std::vector<TemporalEdge> read_edges_tsv(std::istream& in) {
  std::vector<TemporalEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::string_view view{line};
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;

    const auto tab1 = view.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : view.find('\t', tab1 + 1);
    if (tab1 == std::string_view::npos || tab2 == std::string_view::npos) {
      throw ParseError("expected source<TAB>target<TAB>timestamp", line_no);
    }
    edges.push_back({parse_int(view.substr(0, tab1), line_no, "source"),
                     parse_int(view.substr(tab1 + 1, tab2 - tab1 - 1), line_no, "target"),
                     parse_int(view.substr(tab2 + 1), line_no, "timestamp")});
  }
  return edges;
}

void write_edges_tsv(std::ostream& out, std::span<const TemporalEdge> edges) {
  for (const TemporalEdge& e : edges) {
    out << e.source << '\t' << e.target << '\t' << e.time << '\n';
  }
}

std::vector<TemporalEdge> read_edges_binary(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kEdgeBinaryMagic, 8) != 0) {
    throw std::runtime_error("edge binary: bad magic header");
  }
  const auto count = read_raw<std::uint64_t>(in);
  std::vector<TemporalEdge> edges;
  edges.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto s = read_raw<std::int64_t>(in);
    const auto t = read_raw<std::int64_t>(in);
    const auto ts = read_raw<std::int64_t>(in);
    edges.push_back({s, t, ts});
  }
  return edges;
}

void write_edges_binary(std::ostream& out, std::span<const TemporalEdge> edges) {
  out.write(kEdgeBinaryMagic, 8);
  write_raw<std::uint64_t>(out, edges.size());
  for (const TemporalEdge& e : edges) {
    write_raw<std::int64_t>(out, e.source);
    write_raw<std::int64_t>(out, e.target);
    write_raw<std::int64_t>(out, e.time);
  }
}

std::vector<TemporalEdge> read_edges(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  const bool binary = in.gcount() == 8 && std::memcmp(magic, kEdgeBinaryMagic, 8) == 0;
  in.clear();
  in.seekg(0);
  return binary ? read_edges_binary(in) : read_edges_tsv(in);
}

void write_edges(const std::string& path, std::span<const TemporalEdge> edges, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (binary) {
    write_edges_binary(out, edges);
  } else {
    write_edges_tsv(out, edges);
  }
}

void write_walks_text(std::ostream& out, const WalkSet& walks) {
  for (std::uint64_t w = 0; w < walks.walk_count; ++w) {
    const std::uint32_t len = walks.lengths[w];
    if (len < 2) continue;  // never left the start node
    for (std::uint32_t j = 0; j < len; ++j) {
      if (j > 0) out << ' ';
      out << walks.node_at(w, j) << '@';
      const Timestamp t = walks.time_at(w, j);
      if (is_sentinel(t)) {
        out << '-';
      } else {
        out << t;
      }
    }
    out << '\n';
  }
}

std::vector<WalkRecord> read_walks_text(std::istream& in) {
  std::vector<WalkRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    WalkRecord record;
    std::istringstream tokens(line);
    std::string token;
    bool has_timed = false;
    bool has_untimed = false;
    while (tokens >> token) {
      const auto at = token.find('@');
      if (at == std::string::npos) {
        has_untimed = true;
        record.nodes.push_back(parse_int(token, line_no, "node"));
        record.times.push_back(kTimeUnset);
      } else {
        has_timed = true;
        record.nodes.push_back(parse_int(std::string_view(token).substr(0, at), line_no, "node"));
        const auto time_part = std::string_view(token).substr(at + 1);
        if (time_part == "-") {
          record.times.push_back(kTimeUnset);
        } else {
          record.times.push_back(parse_int(time_part, line_no, "timestamp"));
        }
      }
    }
    if (record.nodes.empty()) continue;
    if (has_timed && has_untimed) {
      throw ParseError("walk mixes timed and untimed entries", line_no);
    }
    if (has_untimed) record.times.clear();
    records.push_back(std::move(record));
  }
  return records;
}

void write_walks_binary(std::ostream& out, const WalkSet& walks) {
  out.write(kWalkBinaryMagic, 8);
  write_raw<std::uint32_t>(out, walks.stride);
  write_raw<std::uint64_t>(out, walks.walk_count);
  out.write(reinterpret_cast<const char*>(walks.nodes.data()),
            static_cast<std::streamsize>(walks.nodes.size() * sizeof(NodeId)));
  out.write(reinterpret_cast<const char*>(walks.times.data()),
            static_cast<std::streamsize>(walks.times.size() * sizeof(Timestamp)));
  out.write(reinterpret_cast<const char*>(walks.lengths.data()),
            static_cast<std::streamsize>(walks.lengths.size() * sizeof(std::uint32_t)));
}

WalkSet read_walks_binary(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kWalkBinaryMagic, 8) != 0) {
    throw std::runtime_error("walk binary: bad magic header");
  }
  WalkSet walks;
  walks.stride = read_raw<std::uint32_t>(in);
  walks.walk_count = read_raw<std::uint64_t>(in);
  const std::size_t slots = walks.walk_count * walks.stride;
  walks.nodes.resize(slots);
  walks.times.resize(slots);
  walks.lengths.resize(walks.walk_count);
  in.read(reinterpret_cast<char*>(walks.nodes.data()),
          static_cast<std::streamsize>(slots * sizeof(NodeId)));
  in.read(reinterpret_cast<char*>(walks.times.data()),
          static_cast<std::streamsize>(slots * sizeof(Timestamp)));
  in.read(reinterpret_cast<char*>(walks.lengths.data()),
          static_cast<std::streamsize>(walks.walk_count * sizeof(std::uint32_t)));
  if (!in) throw std::runtime_error("walk binary: truncated payload");
  return walks;
}

void write_walks(const std::string& path, const WalkSet& walks, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (binary) {
    write_walks_binary(out, walks);
  } else {
    write_walks_text(out, walks);
  }
}

std::vector<WalkRecord> read_walks(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() == 8 && std::memcmp(magic, kWalkBinaryMagic, 8) == 0) {
    in.clear();
    in.seekg(0);
    const WalkSet walks = read_walks_binary(in);
    std::vector<WalkRecord> records;
    for (std::uint64_t w = 0; w < walks.walk_count; ++w) {
      const std::uint32_t len = walks.lengths[w];
      if (len < 2) continue;
      WalkRecord record;
      for (std::uint32_t j = 0; j < len; ++j) {
        record.nodes.push_back(walks.node_at(w, j));
        record.times.push_back(walks.time_at(w, j));
      }
      records.push_back(std::move(record));
    }
    return records;
  }
  in.clear();
  in.seekg(0);
  return read_walks_text(in);
}

}  // namespace timewalk
