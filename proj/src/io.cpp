#include "eigengame/io.hpp"

#include <bit>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "eigengame/errors.hpp"

namespace eigengame {

namespace {

constexpr char kMagic[4] = {'E', 'G', 'M', '1'};

void put_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::istream& in, std::size_t at,
                         const std::string& what) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw ParseError("truncated " + what + " at byte " + std::to_string(at));
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

bool is_csv(const std::filesystem::path& path) {
  return path.extension() == ".csv";
}

void save_matrix_csv(const std::filesystem::path& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  char buf[64];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw ParseError("write failed for " + path.string());
}

void save_matrix_binary(const std::filesystem::path& path, const Mat& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  put_u64_le(out, m.rows());
  put_u64_le(out, m.cols());
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i)
    put_u64_le(out, std::bit_cast<std::uint64_t>(m.data()[i]));
  if (!out) throw ParseError("write failed for " + path.string());
}

Mat load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      const std::string cell = line.substr(pos, comma - pos);
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError("non-numeric cell '" + cell + "' at line " +
                         std::to_string(lineno) + " of " + path.string());
      row.push_back(v);
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row at line " + std::to_string(lineno) + " of " +
                       path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix file " + path.string());
  Mat m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

Mat load_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("bad magic at byte 0 of " + path.string());
  const std::uint64_t rows = get_u64_le(in, 4, "row count");
  const std::uint64_t cols = get_u64_le(in, 12, "column count");
  if (rows == 0 || cols == 0 || rows > (1u << 30) || cols > (1u << 30))
    throw ParseError("implausible shape " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " in " + path.string());
  Mat m(rows, cols);
  for (std::uint64_t i = 0; i < rows * cols; ++i) {
    const std::uint64_t bits =
        get_u64_le(in, 20 + 8 * static_cast<std::size_t>(i), "payload");
    m.data()[i] = std::bit_cast<double>(bits);
  }
  return m;
}

}  // namespace

void save_matrix(const std::filesystem::path& path, const Mat& m) {
  if (is_csv(path))
    save_matrix_csv(path, m);
  else
    save_matrix_binary(path, m);
}

Mat load_matrix(const std::filesystem::path& path) {
  return is_csv(path) ? load_matrix_csv(path) : load_matrix_binary(path);
}

EdgeList load_edges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::size_t nodes_directive = 0;
  std::uint64_t max_id = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // "# nodes=N" pins the node count.
      const std::size_t eq = line.find("nodes=");
      if (eq != std::string::npos) {
        errno = 0;
        char* end = nullptr;
        const unsigned long long n = std::strtoull(line.c_str() + eq + 6, &end, 10);
        if (end != line.c_str() + eq + 6 && errno != ERANGE && n > 0)
          nodes_directive = static_cast<std::size_t>(n);
      }
      continue;
    }
    std::istringstream ss(line);
    long long out_id = -1, in_id = -1;
    if (!(ss >> out_id >> in_id) || out_id < 0 || in_id < 0)
      throw ParseError("malformed edge at line " + std::to_string(lineno) +
                       " of " + path.string());
    std::string trailing;
    if (ss >> trailing)
      throw ParseError("trailing tokens at line " + std::to_string(lineno) +
                       " of " + path.string());
    if (out_id == in_id)
      throw ParseError("self-loop at line " + std::to_string(lineno) + " of " +
                       path.string());
    pairs.emplace_back(out_id, in_id);
    max_id = std::max({max_id, static_cast<std::uint64_t>(out_id),
                       static_cast<std::uint64_t>(in_id)});
  }
  const std::size_t num_nodes =
      nodes_directive ? nodes_directive : static_cast<std::size_t>(max_id) + 1;
  EdgeList edges(num_nodes);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      edges.add(static_cast<std::uint32_t>(pairs[i].first),
                static_cast<std::uint32_t>(pairs[i].second));
    } catch (const Error& e) {
      throw ParseError(std::string(e.what()) + " in " + path.string());
    }
  }
  return edges;
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(line.c_str() + first, &end, 10);
    if (end == line.c_str() + first || errno == ERANGE || v < 0)
      throw ParseError("bad label at line " + std::to_string(lineno) + " of " +
                       path.string());
    labels.push_back(static_cast<int>(v));
  }
  if (labels.empty()) throw ParseError("no labels in " + path.string());
  return labels;
}

void save_labels(const std::filesystem::path& path, const Labeling& labels) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  for (int a : labels.assignments) out << a << '\n';
}

void save_trace_csv(const std::filesystem::path& path, const MetricTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << "iteration,wall_ms,streak,subspace_distance";
  for (std::size_t i = 1; i <= trace.k; ++i) out << ",u_" << i;
  out << ",skipped_players\n";
  for (const MetricRow& row : trace.rows) {
    out << row.iteration << ',' << format_double(row.wall_ms) << ',';
    if (row.has_truth)
      out << row.streak << ',' << format_double(row.subspace_distance);
    else
      out << "nan,nan";
    for (double u : row.utilities) out << ',' << format_double(u);
    out << ',' << row.skipped_players << '\n';
  }
}

KvPairs load_kv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  KvPairs kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t eq = line.find('=', first);
    if (eq == std::string::npos)
      throw ParseError("expected key=value at line " + std::to_string(lineno) +
                       " of " + path.string());
    std::string key = line.substr(first, eq - first);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
      key.pop_back();
    while (!value.empty() &&
           std::isspace(static_cast<unsigned char>(value.back())))
      value.pop_back();
    const std::size_t vstart = value.find_first_not_of(" \t");
    if (vstart != std::string::npos) value = value.substr(vstart);
    if (key.empty())
      throw ParseError("empty key at line " + std::to_string(lineno) + " of " +
                       path.string());
    kv.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

void save_kv(const std::filesystem::path& path, const KvPairs& kv) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  for (const auto& [key, value] : kv) out << key << '=' << value << '\n';
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::uint64_t hash = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return hash;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace eigengame
