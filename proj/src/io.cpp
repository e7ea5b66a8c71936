#include "glt/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "glt/error.hpp"

namespace glt {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary CSR snapshots are little-endian");

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path,
                       bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Strips comments ('#' or '%' to end of line) and splits on whitespace.
std::vector<std::string_view> tokenize(std::string_view line) {
  auto cut = line.find_first_of("#%");
  if (cut != std::string_view::npos) line = line.substr(0, cut);
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

std::int64_t parse_int(std::string_view tok, std::int64_t lineno) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad integer '" +
                     std::string(tok) + "'");
  return value;
}

double parse_double(std::string_view tok, std::int64_t lineno) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" +
                     std::string(tok) + "'");
  return value;
}

void format_weight(std::ostream& os, double w) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  os << buf;
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path, bool directed) {
  auto in = open_in(path);
  std::unordered_map<std::int64_t, VertexId> compact;
  std::vector<Arc> arcs;
  bool any_weight = false;
  std::string line;
  std::int64_t lineno = 0;
  auto id_of = [&](std::int64_t raw) {
    auto [it, fresh] =
        compact.emplace(raw, static_cast<VertexId>(compact.size()));
    (void)fresh;
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'u v [w]'");
    std::int64_t ru = parse_int(toks[0], lineno);
    std::int64_t rv = parse_int(toks[1], lineno);
    if (ru < 0 || rv < 0)
      throw ParseError("line " + std::to_string(lineno) + ": negative id");
    double w = 1.0;
    if (toks.size() == 3) {
      w = parse_double(toks[2], lineno);
      if (w < 0.0)
        throw DomainError("line " + std::to_string(lineno) +
                          ": negative weight");
      any_weight = true;
    }
    VertexId u = id_of(ru), v = id_of(rv);
    arcs.push_back({u, v, w});
    if (!directed) arcs.push_back({v, u, w});
  }
  return build_graph(static_cast<VertexId>(compact.size()), arcs, directed,
                     any_weight, /*sort_rows=*/false);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  auto out = open_out(path);
  auto emit = [&](VertexId u, VertexId v, std::int64_t arc) {
    out << u << ' ' << v;
    if (g.has_weights()) {
      out << ' ';
      format_weight(out, g.weights[arc]);
    }
    out << '\n';
  };
  for (VertexId u = 0; u < g.n; ++u) {
    std::int64_t self_seen = 0;
    for (std::int64_t i = g.row_offsets[u]; i < g.row_offsets[u + 1]; ++i) {
      VertexId v = g.adjacency[i];
      if (g.directed) {
        emit(u, v, i);
      } else if (u < v) {
        emit(u, v, i);
      } else if (u == v) {
        // self-loops are stored as two identical arcs; emit every other one
        if (self_seen++ % 2 == 0) emit(u, v, i);
      }
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Graph load_metis(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::int64_t lineno = 0;
  auto next_line = [&](std::vector<std::string_view>& toks,
                       std::string& store) -> bool {
    while (std::getline(in, store)) {
      ++lineno;
      if (!store.empty() && store[0] == '%') continue;
      toks = tokenize(store);
      return true;  // blank lines are degree-0 vertices, keep them
    }
    return false;
  };

  std::vector<std::string_view> toks;
  std::string store;
  // Header: n m [fmt [ncon]], skipping leading comments.
  do {
    if (!next_line(toks, store)) throw FormatError("metis: missing header");
  } while (toks.empty());
  if (toks.size() < 2 || toks.size() > 4)
    throw FormatError("metis: bad header");
  std::int64_t n = parse_int(toks[0], lineno);
  std::int64_t m_und = parse_int(toks[1], lineno);
  int fmt = toks.size() >= 3
                ? static_cast<int>(parse_int(toks[2], lineno))
                : 0;
  bool has_ewgt = fmt % 10 != 0;
  bool has_vwgt = (fmt / 10) % 10 != 0;
  bool has_vsize = (fmt / 100) % 10 != 0;
  if (has_vsize) throw FormatError("metis: vertex sizes unsupported");
  std::int64_t ncon = toks.size() >= 4 ? parse_int(toks[3], lineno)
                                       : (has_vwgt ? 1 : 0);
  if (n < 0 || m_und < 0) throw FormatError("metis: negative header value");

  std::vector<Arc> arcs;
  arcs.reserve(2 * m_und);
  for (std::int64_t u = 0; u < n; ++u) {
    if (!next_line(toks, store))
      throw FormatError("metis: expected " + std::to_string(n) +
                        " vertex lines, got " + std::to_string(u));
    std::size_t at = has_vwgt ? static_cast<std::size_t>(ncon) : 0;
    if (at > toks.size()) throw FormatError("metis: truncated vertex weights");
    if (has_ewgt && (toks.size() - at) % 2 != 0)
      throw FormatError("metis: line " + std::to_string(lineno) +
                        ": dangling edge weight");
    while (at < toks.size()) {
      std::int64_t v = parse_int(toks[at++], lineno);
      if (v < 1 || v > n)
        throw FormatError("metis: line " + std::to_string(lineno) +
                          ": neighbor out of range");
      double w = 1.0;
      if (has_ewgt) w = parse_double(toks[at++], lineno);
      arcs.push_back({u, v - 1, w});
    }
  }
  if (static_cast<std::int64_t>(arcs.size()) != 2 * m_und)
    throw FormatError("metis: adjacency entries (" +
                      std::to_string(arcs.size()) + ") != 2m (" +
                      std::to_string(2 * m_und) + ")");

  // Symmetry with equal weights is required of the format.
  auto key = [](const Arc& a) { return std::tuple(a.u, a.v, a.w); };
  std::vector<Arc> fwd = arcs, rev = arcs;
  for (Arc& a : rev) std::swap(a.u, a.v);
  auto lt = [&](const Arc& a, const Arc& b) { return key(a) < key(b); };
  std::sort(fwd.begin(), fwd.end(), lt);
  std::sort(rev.begin(), rev.end(), lt);
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    if (key(fwd[i]) != key(rev[i]))
      throw FormatError("metis: asymmetric adjacency listing");
  }

  return build_graph(n, arcs, /*directed=*/false, has_ewgt,
                     /*sort_rows=*/false);
}

void save_metis(const Graph& g, const std::filesystem::path& path) {
  if (g.directed) throw DomainError("metis format is undirected");
  for (VertexId v = 0; v < g.n; ++v)
    for (VertexId u : g.neighbors(v))
      if (u == v) throw DomainError("metis format has no self-loops");
  auto out = open_out(path);
  out << g.n << ' ' << g.undirected_edge_count();
  if (g.has_weights()) out << " 1";
  out << '\n';
  for (VertexId v = 0; v < g.n; ++v) {
    bool first = true;
    for (std::int64_t i = g.row_offsets[v]; i < g.row_offsets[v + 1]; ++i) {
      if (!first) out << ' ';
      first = false;
      out << g.adjacency[i] + 1;
      if (g.has_weights()) {
        out << ' ';
        format_weight(out, g.weights[i]);
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

constexpr char kCsrMagic[6] = {'G', 'L', 'C', 'S', 'R', '1'};

template <class T>
void write_pod(std::ostream& os, const T* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(count * sizeof(T)));
}

template <class T>
void read_pod(std::istream& is, T* data, std::size_t count) {
  is.read(reinterpret_cast<char*>(data),
          static_cast<std::streamsize>(count * sizeof(T)));
  if (!is) throw FormatError("csr: truncated file");
}

}  // namespace

void save_csr(const Graph& g, const std::filesystem::path& path) {
  auto out = open_out(path, /*binary=*/true);
  out.write(kCsrMagic, sizeof(kCsrMagic));
  std::uint8_t flags = (g.directed ? 1 : 0) | (g.has_weights() ? 2 : 0);
  std::uint8_t zero = 0;
  write_pod(out, &flags, 1);
  write_pod(out, &zero, 1);
  std::uint64_t n = static_cast<std::uint64_t>(g.n);
  std::uint64_t m = static_cast<std::uint64_t>(g.m);
  write_pod(out, &n, 1);
  write_pod(out, &m, 1);
  write_pod(out, g.row_offsets.data(), g.row_offsets.size());
  write_pod(out, g.adjacency.data(), g.adjacency.size());
  if (g.has_weights()) write_pod(out, g.weights.data(), g.weights.size());
  if (!out) throw IoError("write failed: " + path.string());
}

Graph load_csr(const std::filesystem::path& path) {
  auto in = open_in(path, /*binary=*/true);
  char magic[6];
  read_pod(in, magic, 6);
  if (std::memcmp(magic, kCsrMagic, 6) != 0)
    throw FormatError("csr: bad magic");
  std::uint8_t flags = 0, zero = 0;
  read_pod(in, &flags, 1);
  read_pod(in, &zero, 1);
  if (flags & ~std::uint8_t{3})
    throw FormatError("csr: unknown flags");
  std::uint64_t n = 0, m = 0;
  read_pod(in, &n, 1);
  read_pod(in, &m, 1);
  Graph g;
  g.n = static_cast<VertexId>(n);
  g.m = static_cast<std::int64_t>(m);
  g.directed = (flags & 1) != 0;
  g.row_offsets.resize(n + 1);
  g.adjacency.resize(m);
  read_pod(in, g.row_offsets.data(), g.row_offsets.size());
  read_pod(in, g.adjacency.data(), g.adjacency.size());
  if (flags & 2) {
    g.weights.resize(m);
    read_pod(in, g.weights.data(), g.weights.size());
  }
  g.validate();
  return g;
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format,
                 bool directed) {
  switch (format) {
    case GraphFormat::edgelist:
      return load_edge_list(path, directed);
    case GraphFormat::metis:
      return load_metis(path);
    case GraphFormat::csr:
      return load_csr(path);
  }
  throw DomainError("unknown graph format");
}

void save_graph(const Graph& g, const std::filesystem::path& path,
                GraphFormat format) {
  switch (format) {
    case GraphFormat::edgelist:
      return save_edge_list(g, path);
    case GraphFormat::metis:
      return save_metis(g, path);
    case GraphFormat::csr:
      return save_csr(g, path);
  }
  throw DomainError("unknown graph format");
}

}  // namespace glt
