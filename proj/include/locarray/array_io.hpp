#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "locarray/test_array.hpp"

namespace locarray {

// Text format, one array per file:
//   line 1:       N k v t lambda
//   lines 2..N+1: k space-separated levels in [0, v)
// Lines starting with '#' are comments and do not count.  LF endings.
//
// The JSON variant carries the same fields plus run metadata (generator name,
// seed, resample count, wall time).

class ArrayFormatError : public std::runtime_error {
public:
  ArrayFormatError(int line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct ArrayMetadata {
  std::string generator;     // "ipo", "lll", or "" when unknown
  std::uint64_t seed = 0;
  int resamples = -1;        // lll only; -1 = not applicable
  double wall_seconds = 0.0;
};

inline void write_array(const TestArray &a, std::ostream &out) {
  const Params &p = a.params();
  out << a.rows() << ' ' << p.factors << ' ' << p.levels << ' ' << p.strength
      << ' ' << p.redundancy << '\n';
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      if (c) out << ' ';
      out << a.at(r, c);
    }
    out << '\n';
  }
}

inline void write_array_json(const TestArray &a, const ArrayMetadata &meta,
                             std::ostream &out) {
  const Params &p = a.params();
  nlohmann::json j;
  j["schema"] = "locarray-array/1";
  j["rows"] = a.rows();
  j["factors"] = p.factors;
  j["levels"] = p.levels;
  j["strength"] = p.strength;
  j["redundancy"] = p.redundancy;
  if (!meta.generator.empty()) {
    j["generator"] = meta.generator;
    j["seed"] = meta.seed;
    if (meta.resamples >= 0) j["resamples"] = meta.resamples;
    j["wall_seconds"] = meta.wall_seconds;
  }
  auto &m = j["matrix"] = nlohmann::json::array();
  for (int r = 0; r < a.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(a.at(r, c));
    m.push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

namespace detail {

inline bool parse_int(const std::string &tok, long long &out) {
  if (tok.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoll(tok, &pos);
  } catch (...) {
    return false;
  }
  return pos == tok.size();
}

inline TestArray read_array_text(std::istream &in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0, k = 0, v = 0, t = 0, lambda = 0;
  TestArray array;
  int rows_seen = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);

    if (!have_header) {
      if (toks.size() != 5)
        throw ArrayFormatError(line_no, "malformed header: expected 'N k v t lambda'");
      long long *fields[5] = {&n, &k, &v, &t, &lambda};
      for (int i = 0; i < 5; ++i) {
        if (!parse_int(toks[i], *fields[i]))
          throw ArrayFormatError(line_no, "malformed header: '" + toks[i] +
                                              "' is not an integer");
      }
      if (n == 0) throw ArrayFormatError(line_no, "zero rows");
      if (n < 0) throw ArrayFormatError(line_no, "negative row count");
      Params p;
      try {
        p = make_params(static_cast<int>(k), static_cast<int>(v),
                        static_cast<int>(t), 1, static_cast<int>(lambda));
      } catch (const std::invalid_argument &e) {
        throw ArrayFormatError(line_no, std::string("invalid parameters: ") + e.what());
      }
      array = TestArray(p, 0);
      have_header = true;
      continue;
    }

    if (rows_seen == n)
      throw ArrayFormatError(line_no, "more rows than the header's row count");
    if (static_cast<long long>(toks.size()) != k)
      throw ArrayFormatError(line_no, "ragged row: expected " + std::to_string(k) +
                                          " entries, found " +
                                          std::to_string(toks.size()));
    std::vector<int> row(static_cast<size_t>(k));
    for (size_t i = 0; i < toks.size(); ++i) {
      long long x;
      if (!parse_int(toks[i], x))
        throw ArrayFormatError(line_no, "entry '" + toks[i] + "' is not an integer");
      if (x < 0 || x >= v)
        throw ArrayFormatError(line_no, "entry " + std::to_string(x) +
                                            " out of range [0, " +
                                            std::to_string(v) + ")");
      row[i] = static_cast<int>(x);
    }
    array.append_row(row);
    ++rows_seen;
  }

  if (!have_header) throw ArrayFormatError(line_no, "missing header");
  if (rows_seen != n)
    throw ArrayFormatError(line_no, "expected " + std::to_string(n) +
                                        " rows, found " + std::to_string(rows_seen));
  return array;
}

inline TestArray read_array_json(std::istream &in, ArrayMetadata *meta) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ArrayFormatError(1, std::string("invalid JSON: ") + e.what());
  }
  try {
    const long long n = j.at("rows").get<long long>();
    if (n == 0) throw ArrayFormatError(1, "zero rows");
    Params p = make_params(j.at("factors").get<int>(), j.at("levels").get<int>(),
                           j.at("strength").get<int>(), 1,
                           j.at("redundancy").get<int>());
    TestArray array(p, 0);
    for (const auto &row : j.at("matrix")) {
      std::vector<int> r = row.get<std::vector<int>>();
      array.append_row(r);
    }
    if (array.rows() != n)
      throw ArrayFormatError(1, "matrix row count does not match 'rows' field");
    if (meta) {
      meta->generator = j.value("generator", std::string{});
      meta->seed = j.value("seed", std::uint64_t{0});
      meta->resamples = j.value("resamples", -1);
      meta->wall_seconds = j.value("wall_seconds", 0.0);
    }
    return array;
  } catch (const nlohmann::json::exception &e) {
    throw ArrayFormatError(1, std::string("bad array JSON: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw ArrayFormatError(1, std::string("invalid parameters: ") + e.what());
  }
}

} // namespace detail

// Reads either format; JSON is detected by a leading '{'.
inline TestArray read_array(std::istream &in, ArrayMetadata *meta = nullptr) {
  int c = in.peek();
  while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
    in.get();
    c = in.peek();
  }
  if (c == '{') return detail::read_array_json(in, meta);
  return detail::read_array_text(in);
}

inline TestArray read_array_file(const std::string &path,
                                 ArrayMetadata *meta = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open array file: " + path);
  return read_array(in, meta);
}

inline void write_array_file(const TestArray &a, const std::string &path) {
  std::ofstream out(path, std::ios::binary); // keep LF endings everywhere
  if (!out) throw std::runtime_error("cannot write array file: " + path);
  write_array(a, out);
}

inline void write_array_json_file(const TestArray &a, const ArrayMetadata &meta,
                                  const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write array file: " + path);
  write_array_json(a, meta, out);
}

} // namespace locarray
