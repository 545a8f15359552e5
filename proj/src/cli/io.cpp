#include "copcone/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "copcone/error.hpp"

namespace copcone {

namespace {

using nlohmann::json;

std::vector<double> flatten_numbers(const json& j, const char* what) {
  std::vector<double> out;
  auto take = [&](const json& v) {
    if (!v.is_number()) throw DataError(std::string(what) + ": expected numbers");
    out.push_back(v.get<double>());
  };
  if (!j.is_array()) throw DataError(std::string(what) + ": expected an array");
  for (const json& row : j) {
    if (row.is_array())
      for (const json& v : row) take(v);
    else
      take(row);
  }
  return out;
}

SymMat make_matrix(std::size_t n, const std::vector<double>& values) {
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("non-finite matrix entry");
  try {
    return SymMat::from_dense(n, values);
  } catch (const Error& e) {
    throw DataError(e.what());
  }
}

void append_json(std::string& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      // nlohmann objects are std::map based, so iteration is already sorted;
      // sort explicitly anyway to not depend on the object type.
      std::map<std::string, const json*> sorted;
      for (auto it = j.begin(); it != j.end(); ++it) sorted.emplace(it.key(), &it.value());
      out += '{';
      bool first = true;
      for (const auto& [k, v] : sorted) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        append_json(out, *v);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        append_json(out, j[i]);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MatrixFile parse_matrix_file(std::string_view text) {
  MatrixFile f;
  f.digest = fnv1a_hex(text);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) throw DataError("empty input");

  if (text[start] != '{') {
    std::istringstream in{std::string(text)};
    long long n = 0;
    if (!(in >> n) || n < 1) throw DataError("plain text input must start with a positive order");
    f.n = static_cast<std::size_t>(n);
    std::vector<double> values;
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw DataError("bad number '" + tok + "'");
      } catch (const std::logic_error&) {
        throw DataError("bad number '" + tok + "'");
      }
    }
    if (values.size() != f.n * f.n)
      throw DataError("expected " + std::to_string(f.n * f.n) + " values, got " + std::to_string(values.size()));
    f.matrix = make_matrix(f.n, values);
    return f;
  }

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw DataError("missing or invalid \"n\"");
  f.n = j["n"].get<std::size_t>();
  if (j.contains("data")) f.matrix = make_matrix(f.n, flatten_numbers(j["data"], "data"));
  if (j.contains("factor")) {
    const json& rows = j["factor"];
    if (!rows.is_array() || rows.size() != f.n) throw DataError("factor must have n rows");
    const std::size_t p = rows[0].is_array() ? rows[0].size() : 0;
    Matrix v(f.n, p);
    for (std::size_t i = 0; i < f.n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != p) throw DataError("factor rows must have equal length");
      for (std::size_t c = 0; c < p; ++c) {
        if (!rows[i][c].is_number()) throw DataError("factor: expected numbers");
        v(i, c) = rows[i][c].get<double>();
        if (!std::isfinite(v(i, c))) throw DataError("non-finite factor entry");
      }
    }
    try {
      f.factor = NonnegFactor(v);
    } catch (const Error& e) {
      throw DataError(e.what());
    }
  }
  if (!f.matrix && !f.factor) throw DataError("file has neither \"data\" nor \"factor\"");
  return f;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix_file(ss.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string canonical_json(const nlohmann::json& j) {
  std::string out;
  append_json(out, j);
  out += '\n';
  return out;
}

nlohmann::json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const SymMat& m) { return to_json(m.dense()); }

}  // namespace copcone
