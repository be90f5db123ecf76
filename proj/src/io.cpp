#include "wngf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wngf::io {

namespace {

namespace fs = std::filesystem;

std::string describe(const fs::path &path, std::size_t line, const std::string &message) {
  return line > 0 ? path.string() + ":" + std::to_string(line) + ": " + message
                  : path.string() + ": " + message;
}

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(delim, start);
    if (end == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, end - start));
    start = end + 1;
  }
}

std::string join(const std::vector<std::string> &fields, char delim) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0)
      out += delim;
    out += fields[i];
  }
  return out;
}

/// Reads a text file as lines with line numbers, dropping CR, a leading BOM
/// and blank lines.
class LineReader {
public:
  explicit LineReader(const fs::path &path) : path_(path), in_(path) {
    if (!in_)
      throw IoError(path, 0, "cannot open for reading");
  }

  bool next(std::string &line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (number_ == 1 && line.starts_with("\xEF\xBB\xBF"))
        line.erase(0, 3);
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (!line.empty())
        return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }
  [[noreturn]] void fail(const std::string &message) const {
    throw IoError(path_, number_, message);
  }

private:
  fs::path path_;
  std::ifstream in_;
  std::size_t number_ = 0;
};

double parse_real(const LineReader &reader, const std::string &field, std::string_view what) {
  double v = 0.0;
  const char *first = field.data();
  const char *last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || field.empty())
    reader.fail("non-numeric " + std::string(what) + " '" + field + "'");
  if (!std::isfinite(v))
    reader.fail("non-finite " + std::string(what) + " '" + field + "'");
  return v;
}

std::uint64_t parse_count(const LineReader &reader, const std::string &field) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    reader.fail("invalid count '" + field + "'");
  return v;
}

void expect_header(LineReader &reader, const std::vector<std::string> &expected, char delim) {
  std::string line;
  if (!reader.next(line))
    reader.fail("missing header '" + join(expected, delim) + "'");
  if (split(line, delim) != expected)
    reader.fail("expected header '" + join(expected, delim) + "', found '" + line + "'");
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_text(const std::string &text, const fs::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError(path, 0, "cannot open for writing");
  out << text;
  out.flush();
  if (!out)
    throw IoError(path, 0, "write failed");
}

const std::vector<std::string> kProfileHeader = {
    "node",           "group",           "coordinator_count",   "gatekeeper_count",
    "representative_count", "itinerant_count", "liaison_count", "coordinator_norm",
    "gatekeeper_norm", "representative_norm", "itinerant_norm", "liaison_norm"};

} // namespace

IoError::IoError(std::filesystem::path path, std::size_t line, const std::string &message)
    : std::runtime_error(describe(path, line, message)), path_(std::move(path)), line_(line) {}

std::string format_real(double v) {
  if (v == 0.0)
    return "0"; // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<EdgeRecord> read_edge_list(const fs::path &path, const EdgeListFormat &format) {
  LineReader reader(path);
  if (format.has_header)
    expect_header(reader, {"source", "target", "weight"}, format.delimiter);
  std::vector<EdgeRecord> records;
  std::string line;
  while (reader.next(line)) {
    auto fields = split(line, format.delimiter);
    if (fields.size() != 3)
      reader.fail("expected 3 fields, found " + std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      reader.fail("empty node label");
    const double w = parse_real(reader, fields[2], "weight");
    if (w <= 0.0)
      reader.fail("non-positive weight '" + fields[2] + "'");
    records.push_back({std::move(fields[0]), std::move(fields[1]), w});
  }
  return records;
}

AdjacencyData load_adjacency_matrices(const MatrixInput &input) {
  if (input.paths.empty())
    throw std::invalid_argument("no matrix files given");
  if (input.paths.size() > 1 && !input.aggregate)
    throw IoError(input.paths[1], 0, "several matrices given without aggregation");

  AdjacencyData data;
  std::vector<double> sum;
  for (const auto &path : input.paths) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line))
      reader.fail("empty matrix file");
    auto header = split(line, input.delimiter);
    std::vector<std::string> labels(header.begin() + 1, header.end());
    if (labels.empty())
      reader.fail("matrix has no columns");
    if (data.labels.empty()) {
      data.labels = labels;
      sum.assign(labels.size() * labels.size(), 0.0);
    } else if (labels != data.labels) {
      reader.fail("column labels differ from " + input.paths.front().string());
    }
    const std::size_t n = labels.size();
    std::size_t row = 0;
    while (reader.next(line)) {
      const auto fields = split(line, input.delimiter);
      if (row >= n)
        reader.fail("more rows than columns");
      if (fields.size() != n + 1)
        reader.fail("expected " + std::to_string(n + 1) + " fields, found " +
                    std::to_string(fields.size()));
      if (fields[0] != labels[row])
        reader.fail("row label '" + fields[0] + "' does not match column label '" +
                    labels[row] + "'");
      for (std::size_t col = 0; col < n; ++col) {
        const double v = parse_real(reader, fields[col + 1], "matrix entry");
        if (v < 0.0)
          reader.fail("negative matrix entry '" + fields[col + 1] + "'");
        if (row == col && v > 0.0 && !input.drop_self_loops)
          reader.fail("self-loop flow on '" + labels[row] + "' (set drop_self_loops)");
        sum[row * n + col] += v;
      }
      ++row;
    }
    if (row != n)
      throw IoError(path, 0, "matrix has " + std::to_string(row) + " rows, expected " +
                                 std::to_string(n));
  }

  const std::size_t n = data.labels.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      if (r != s && sum[r * n + s] > 0.0)
        data.records.push_back({data.labels[r], data.labels[s], sum[r * n + s]});
  return data;
}

GroupPartition read_partition(const fs::path &path) {
  LineReader reader(path);
  expect_header(reader, {"node", "group"}, ',');
  GroupPartition p;
  std::string line;
  while (reader.next(line)) {
    auto fields = split(line, ',');
    if (fields.size() != 2)
      reader.fail("expected 2 fields, found " + std::to_string(fields.size()));
    try {
      p.assign(std::move(fields[0]), std::move(fields[1]));
    } catch (const GraphError &e) {
      reader.fail(e.what());
    }
  }
  return p;
}

std::string format_partition(const GroupPartition &p) {
  std::string out = "node,group\n";
  for (const auto &[node, group] : p.assignment())
    out += node + ',' + group + '\n';
  return out;
}

std::string format_edge_list(const WeightedDigraph &g) {
  std::string out = "source,target,weight\n";
  for (const Edge &e : g.edges())
    out += g.label(e.source) + ',' + g.label(e.target) + ',' + shortest(e.weight) + '\n';
  return out;
}

std::string format_profile(const BrokerageProfile &profile) {
  std::string out = join(kProfileHeader, ',') + '\n';
  for (const auto &row : profile.nodes) {
    out += row.node + ',' + row.group;
    for (std::uint64_t c : row.counts)
      out += ',' + std::to_string(c);
    for (double s : row.scores)
      out += ',' + format_real(s);
    out += '\n';
  }
  return out;
}

std::string format_report(const ComparisonReport &report) {
  std::string out = "role,kind,coefficient,p_value,n\n";
  for (const auto &rc : report.roles)
    for (const CorrelationResult *c : {&rc.pearson, &rc.spearman}) {
      out += std::string(role_name(rc.role)) + ',' + std::string(correlation_name(c->kind)) +
             ',' + (c->coefficient ? format_real(*c->coefficient) : "NA") + ',' +
             (c->p_value ? format_real(*c->p_value) : "NA") + ',' + std::to_string(c->n) + '\n';
    }
  out += "\nrole,rank,node,score_a,score_b,abs_diff\n";
  for (const auto &rc : report.roles)
    for (std::size_t i = 0; i < rc.top.size(); ++i) {
      const Divergence &d = rc.top[i];
      out += std::string(role_name(rc.role)) + ',' + std::to_string(i + 1) + ',' + d.node +
             ',' + format_real(d.score_a) + ',' + format_real(d.score_b) + ',' +
             format_real(d.abs_diff) + '\n';
    }
  return out;
}

std::string format_ecdf(const std::vector<EcdfSeries> &series) {
  std::string out = "role,method,value,cum_fraction\n";
  for (Role role : kRoles)
    for (const auto &s : series) {
      if (s.role != role)
        continue;
      for (const auto &pt : s.curve.points)
        out += std::string(role_name(role)) + ',' + s.method + ',' + format_real(pt.value) +
               ',' + format_real(pt.cum_fraction) + '\n';
    }
  return out;
}

void write_partition(const GroupPartition &p, const fs::path &path) {
  write_text(format_partition(p), path);
}
void write_edge_list(const WeightedDigraph &g, const fs::path &path) {
  write_text(format_edge_list(g), path);
}
void write_profile(const BrokerageProfile &profile, const fs::path &path) {
  write_text(format_profile(profile), path);
}
void write_report(const ComparisonReport &report, const fs::path &path) {
  write_text(format_report(report), path);
}
void write_ecdf(const std::vector<EcdfSeries> &series, const fs::path &path) {
  write_text(format_ecdf(series), path);
}

BrokerageProfile read_profile(const fs::path &path) {
  LineReader reader(path);
  expect_header(reader, kProfileHeader, ',');
  std::vector<NodeProfile> rows;
  std::vector<PerRole<double>> stored;
  std::vector<std::size_t> line_of;
  std::string line;
  while (reader.next(line)) {
    auto fields = split(line, ',');
    if (fields.size() != kProfileHeader.size())
      reader.fail("expected " + std::to_string(kProfileHeader.size()) + " fields, found " +
                  std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      reader.fail("empty node or group field");
    NodeProfile row;
    row.node = std::move(fields[0]);
    row.group = std::move(fields[1]);
    PerRole<double> scores{};
    for (std::size_t i = 0; i < kRoleCount; ++i) {
      row.counts[i] = parse_count(reader, fields[2 + i]);
      scores[i] = parse_real(reader, fields[2 + kRoleCount + i], "normalized score");
    }
    rows.push_back(std::move(row));
    stored.push_back(scores);
    line_of.push_back(reader.number());
  }

  // Scores are stored rounded; keep the file's value per node for the check.
  std::map<std::string, std::pair<PerRole<double>, std::size_t>> by_node;
  for (std::size_t i = 0; i < rows.size(); ++i)
    by_node.emplace(rows[i].node, std::make_pair(stored[i], line_of[i]));

  BrokerageProfile profile;
  try {
    profile = profile_from_counts(std::move(rows));
  } catch (const std::exception &e) {
    throw IoError(path, 0, e.what());
  }
  for (const auto &row : profile.nodes) {
    const auto &[scores, line_no] = by_node.at(row.node);
    for (std::size_t i = 0; i < kRoleCount; ++i)
      if (std::abs(scores[i] - row.scores[i]) > 1e-9)
        throw IoError(path, line_no,
                      "normalized " + std::string(role_name(kRoles[i])) +
                          " score disagrees with counts and group sizes");
  }
  return profile;
}

} // namespace wngf::io
