#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wngf/brokerage.hpp"
#include "wngf/dichotomize.hpp"
#include "wngf/graph.hpp"
#include "wngf/stats.hpp"

namespace wngf::io {

/// A file-level failure. what() reads "path:line: message", or "path: message"
/// when no line applies.
class IoError : public std::runtime_error {
public:
  IoError(std::filesystem::path path, std::size_t line, const std::string &message);

  const std::filesystem::path &path() const { return path_; }
  std::size_t line() const { return line_; }

private:
  std::filesystem::path path_;
  std::size_t line_;
};

struct EdgeListFormat {
  char delimiter = ',';
  bool has_header = true; // expects "source,target,weight"
};

/// Records in file order. Weights must parse as finite positive reals; the
/// remaining graph invariants are left to build_graph.
std::vector<EdgeRecord> read_edge_list(const std::filesystem::path &path,
                                       const EdgeListFormat &format = {});

/// Square matrices: first row holds column labels, first column row labels,
/// cell (r, s) the flow r -> s. Several files require `aggregate`.
struct MatrixInput {
  std::vector<std::filesystem::path> paths;
  bool aggregate = false;
  bool drop_self_loops = false;
  char delimiter = ',';
};

struct AdjacencyData {
  std::vector<std::string> labels; // matrix order, including all-zero nodes
  std::vector<EdgeRecord> records; // row-major, positive entries only
};

AdjacencyData load_adjacency_matrices(const MatrixInput &input);
inline std::vector<EdgeRecord> read_adjacency_matrices(const MatrixInput &input) {
  return load_adjacency_matrices(input).records;
}

/// "node,group" CSV; repeated nodes and empty fields are errors.
GroupPartition read_partition(const std::filesystem::path &path);

std::string format_partition(const GroupPartition &p);
std::string format_edge_list(const WeightedDigraph &g);
/// Normalized scores at 12 significant digits, rows by node label.
std::string format_profile(const BrokerageProfile &profile);
/// Correlation table, a blank line, then the top-difference table.
std::string format_report(const ComparisonReport &report);

struct EcdfSeries {
  Role role = Role::Coordinator;
  std::string method;
  EcdfCurve curve;
};
std::string format_ecdf(const std::vector<EcdfSeries> &series);

void write_partition(const GroupPartition &p, const std::filesystem::path &path);
void write_edge_list(const WeightedDigraph &g, const std::filesystem::path &path);
void write_profile(const BrokerageProfile &profile, const std::filesystem::path &path);
void write_report(const ComparisonReport &report, const std::filesystem::path &path);
void write_ecdf(const std::vector<EcdfSeries> &series, const std::filesystem::path &path);

/// Parses a profile CSV. Denominators and scores are recomputed from the
/// counts and the group sizes implied by the rows; the stored scores must
/// agree with them.
BrokerageProfile read_profile(const std::filesystem::path &path);

/// "%.12g" rendering used by every writer.
std::string format_real(double v);

} // namespace wngf::io
