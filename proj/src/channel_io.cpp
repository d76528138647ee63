// Copyright 2026 The choikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choi/channel_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace choi::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& doc, const char* key) {
  if (!doc.is_object()) throw FormatError("document: expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string(key) + ": missing field");
  return *it;
}

std::size_t positive_int(const json& doc, const char* key) {
  const json& v = member(doc, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw FormatError(std::string(key) + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where + ": expected a number");
  return v.get<double>();
}

Matrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw FormatError(where + ": expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<Complex> data;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.empty()) throw FormatError(row_where + ": expected a non-empty row");
    if (r == 0) cols = row.size();
    if (row.size() != cols) {
      throw FormatError(row_where + ": row has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& z = row[c];
      const std::string z_where = row_where + "[" + std::to_string(c) + "]";
      if (!z.is_array() || z.size() != 2) throw FormatError(z_where + ": expected a [re, im] pair");
      data.emplace_back(number(z[0], z_where + "[0]"), number(z[1], z_where + "[1]"));
    }
  }
  try {
    return Matrix(rows, cols, std::move(data));
  } catch (const InvalidInput& e) {
    throw FormatError(where + ": " + e.what());
  }
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& where) {
  if (m.rows() != rows || m.cols() != cols) {
    throw FormatError(where + ": matrix is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostringstream& os, const Matrix& m, const std::string& indent) {
  os << "[\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << indent << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << "[" << format_number(m(r, c).real()) << ", " << format_number(m(r, c).imag()) << "]";
    }
    os << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
  }
  os << indent << "]";
}

}  // namespace

Channel parse_channel(std::string_view text) {
  const json doc = parse_json(text);
  const json& kind = member(doc, "kind");
  if (!kind.is_string()) throw FormatError("kind: expected \"kraus\" or \"choi\"");
  const std::size_t d_in = positive_int(doc, "d_in");
  const std::size_t d_out = positive_int(doc, "d_out");

  if (kind == "kraus") {
    const json& ops = member(doc, "operators");
    if (!ops.is_array() || ops.empty()) {
      throw FormatError("operators: expected a non-empty array of matrices");
    }
    std::vector<Matrix> matrices;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::string where = "operators[" + std::to_string(k) + "]";
      Matrix m = parse_matrix(ops[k], where);
      require_shape(m, d_out, d_in, where);
      matrices.push_back(std::move(m));
    }
    return KrausRepr(d_in, d_out, std::move(matrices));
  }
  if (kind == "choi") {
    Matrix m = parse_matrix(member(doc, "matrix"), "matrix");
    require_shape(m, d_in * d_out, d_in * d_out, "matrix");
    try {
      return ChoiMatrix(d_in, d_out, std::move(m));
    } catch (const FormatError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw FormatError(std::string("matrix: ") + e.what());
    }
  }
  throw FormatError("kind: expected \"kraus\" or \"choi\", got \"" + kind.get<std::string>() + "\"");
}

std::string serialize_channel(const Channel& channel) {
  std::ostringstream os;
  if (const auto* k = std::get_if<KrausRepr>(&channel)) {
    os << "{\n  \"kind\": \"kraus\",\n  \"d_in\": " << k->d_in() << ",\n  \"d_out\": " << k->d_out()
       << ",\n  \"operators\": [\n";
    for (std::size_t i = 0; i < k->size(); ++i) {
      os << "    ";
      write_matrix(os, k->operators()[i], "    ");
      os << (i + 1 < k->size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
  } else {
    const auto& x = std::get<ChoiMatrix>(channel);
    os << "{\n  \"kind\": \"choi\",\n  \"d_in\": " << x.d_in() << ",\n  \"d_out\": " << x.d_out()
       << ",\n  \"matrix\": ";
    write_matrix(os, x.matrix(), "  ");
    os << "\n}\n";
  }
  return os.str();
}

DensityMatrix parse_state(std::string_view text, double tol) {
  const json doc = parse_json(text);
  const std::size_t d = positive_int(doc, "d");
  Matrix m = parse_matrix(member(doc, "matrix"), "matrix");
  require_shape(m, d, d, "matrix");
  try {
    return DensityMatrix(std::move(m), tol);
  } catch (const InvalidInput& e) {
    throw FormatError(std::string("matrix: ") + e.what());
  }
}

std::string serialize_state(const Matrix& m) {
  std::ostringstream os;
  os << "{\n  \"d\": " << m.rows() << ",\n  \"matrix\": ";
  write_matrix(os, m, "  ");
  os << "\n}\n";
  return os.str();
}

Matrix parse_matrix_document(std::string_view text) {
  const json doc = parse_json(text);
  return parse_matrix(member(doc, "matrix"), "matrix");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw FormatError(path.string() + ": write failed");
}

Channel read_channel(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_channel(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_channel(const std::filesystem::path& path, const Channel& channel) {
  write_text(path, serialize_channel(channel));
}

ChoiMatrix to_choi(const Channel& channel) {
  if (const auto* k = std::get_if<KrausRepr>(&channel)) return kraus_to_choi(*k);
  return std::get<ChoiMatrix>(channel);
}

std::size_t channel_d_in(const Channel& channel) {
  return std::visit([](const auto& c) { return c.d_in(); }, channel);
}

}  // namespace choi::io
