#include "sparse_lcp/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sparse_lcp {

namespace {

std::vector<double> parse_reals(const std::string& line, int line_no) {
  std::istringstream ls(line);
  std::vector<double> out;
  std::string tok;
  while (ls >> tok) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw std::runtime_error("instance line " + std::to_string(line_no) +
                               ": cannot parse '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

VectorXd to_vector(const std::vector<double>& v, int n, int line_no) {
  if (static_cast<int>(v.size()) != n) {
    throw std::runtime_error("instance line " + std::to_string(line_no) + ": expected " +
                             std::to_string(n) + " values, got " +
                             std::to_string(v.size()));
  }
  return Eigen::Map<const VectorXd>(v.data(), n);
}

bool next_content_line(std::istream& is, std::string& line, int& line_no) {
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_vector(std::ostream& os, const VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << format_real(v(i));
  }
  os << '\n';
}

void write_instance(std::ostream& os, const LcpInstance& inst) {
  inst.validate();
  const int n = inst.n();
  os << n << '\n';
  for (int i = 0; i < n; ++i) write_vector(os, inst.M.row(i).transpose());
  write_vector(os, inst.q);
  if (inst.ground_truth) {
    os << "x*: ";
    write_vector(os, *inst.ground_truth);
  }
}

void write_instance_file(const std::string& path, const LcpInstance& inst) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_instance(os, inst);
}

LcpInstance read_instance(std::istream& is) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(is, line, line_no)) throw std::runtime_error("instance: empty input");
  int n = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n) || n < 1 || (ls >> extra)) {
      throw std::runtime_error("instance line 1: expected a positive dimension");
    }
  }
  MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    if (!next_content_line(is, line, line_no)) {
      throw std::runtime_error("instance: missing row " + std::to_string(i + 1) + " of M");
    }
    M.row(i) = to_vector(parse_reals(line, line_no), n, line_no).transpose();
  }
  if (!next_content_line(is, line, line_no)) throw std::runtime_error("instance: missing q");
  VectorXd q = to_vector(parse_reals(line, line_no), n, line_no);

  std::optional<VectorXd> truth;
  if (next_content_line(is, line, line_no)) {
    const auto pos = line.find("x*:");
    if (pos == std::string::npos) {
      throw std::runtime_error("instance line " + std::to_string(line_no) +
                               ": expected 'x*:' prefix");
    }
    truth = to_vector(parse_reals(line.substr(pos + 3), line_no), n, line_no);
    if (next_content_line(is, line, line_no)) {
      throw std::runtime_error("instance line " + std::to_string(line_no) +
                               ": trailing content");
    }
  }
  return LcpInstance(std::move(M), std::move(q), std::move(truth));
}

LcpInstance read_instance_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open instance '" + path + "'");
  return read_instance(is);
}

VectorXd read_vector_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open vector file '" + path + "'");
  std::string line;
  int line_no = 0;
  std::vector<double> values;
  while (next_content_line(is, line, line_no)) {
    for (double v : parse_reals(line, line_no)) values.push_back(v);
  }
  return Eigen::Map<const VectorXd>(values.data(), values.size());
}

}  // namespace sparse_lcp
