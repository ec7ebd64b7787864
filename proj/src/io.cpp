#include "cqfc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "cqfc/complex_matrix.hpp"
#include "cqfc/errors.hpp"
#include "json.hpp"

namespace cqfc::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw validation_error(std::string(what) + " is not valid JSON");
  }
  return j;
}

int get_positive_int(const json& j, const char* field, const char* what) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw validation_error(std::string(what) + " needs an integer field '" + field + "'");
  }
  const int v = j[field].get<int>();
  if (v < 1) {
    throw validation_error(std::string(what) + " field '" + field + "' must be positive");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ComplexMatrix parse_matrix(const json& m, int dim, const std::string& label) {
  if (!m.is_array() || m.size() != static_cast<std::size_t>(dim)) {
    throw validation_error(label + " must have " + std::to_string(dim) + " rows");
  }
  ComplexMatrix out(dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = m[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw validation_error(label + " row " + std::to_string(r) + " must have " +
                             std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw validation_error(label + " entry (" + std::to_string(r) + "," + std::to_string(c) +
                               ") must be an [re, im] pair");
      }
      out.at(r, c) = {entry[0].get<double>(), entry[1].get<double>()};
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // normalize the sign of zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

cq::Cq2Channel parse_channel(const std::string& text) {
  const json j = parse_json(text, "channel file");
  if (!j.is_object()) throw validation_error("channel file must be a JSON object");
  const int a1 = get_positive_int(j, "alphabet1", "channel file");
  const int a2 = get_positive_int(j, "alphabet2", "channel file");
  const int dim = get_positive_int(j, "dim", "channel file");
  if (!j.contains("states") || !j["states"].is_array() ||
      j["states"].size() != static_cast<std::size_t>(a1) * a2) {
    throw validation_error("channel file needs a 'states' array with one matrix per input pair");
  }
  std::vector<DensityOperator> states;
  states.reserve(static_cast<std::size_t>(a1) * a2);
  for (int x1 = 0; x1 < a1; ++x1) {
    for (int x2 = 0; x2 < a2; ++x2) {
      const std::string label =
          "channel state (" + std::to_string(x1) + "," + std::to_string(x2) + ")";
      const ComplexMatrix m =
          parse_matrix(j["states"][static_cast<std::size_t>(x1) * a2 + x2], dim, label);
      try {
        states.push_back(DensityOperator::validated(m));
      } catch (const validation_error& e) {
        throw validation_error(label + " is not a density matrix: " + e.what());
      }
    }
  }
  return {a1, a2, std::move(states)};
}

cq::Cq2Channel load_channel(const std::string& path) { return parse_channel(read_file(path)); }

classical::SourceModel parse_source(const std::string& text) {
  const json j = parse_json(text, "source file");
  if (!j.is_object()) throw validation_error("source file must be a JSON object");
  if (!j.contains("masses") || !j["masses"].is_array() || j["masses"].empty()) {
    throw validation_error("source file needs a nonempty 'masses' array");
  }
  const json& masses = j["masses"];
  const int s1n = static_cast<int>(masses.size());
  if (!masses[0].is_array() || masses[0].empty()) {
    throw validation_error("source file 'masses' rows must be nonempty arrays");
  }
  const int s2n = static_cast<int>(masses[0].size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(s1n) * s2n);
  for (int r = 0; r < s1n; ++r) {
    const json& row = masses[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(s2n)) {
      throw validation_error("source file 'masses' must be rectangular");
    }
    for (int c = 0; c < s2n; ++c) {
      if (!row[c].is_number()) {
        throw validation_error("source file mass (" + std::to_string(r) + "," +
                               std::to_string(c) + ") must be a number");
      }
      flat.push_back(row[c].get<double>());
    }
  }

  if (!j.contains("function") || !j["function"].is_array() ||
      j["function"].size() != static_cast<std::size_t>(s1n)) {
    throw validation_error("source file needs a 'function' array shaped like 'masses'");
  }
  std::vector<std::vector<int>> f(static_cast<std::size_t>(s1n));
  for (int r = 0; r < s1n; ++r) {
    const json& row = j["function"][r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(s2n)) {
      throw validation_error("source file 'function' must be rectangular like 'masses'");
    }
    for (int c = 0; c < s2n; ++c) {
      if (!row[c].is_number_integer()) {
        throw validation_error("source file function value (" + std::to_string(r) + "," +
                               std::to_string(c) + ") must be an integer");
      }
      f[r].push_back(row[c].get<int>());
    }
  }

  std::optional<classical::Embedding> embedding;
  if (j.contains("embedding")) {
    const json& e = j["embedding"];
    if (!e.is_object()) throw validation_error("source file 'embedding' must be an object");
    classical::Embedding emb;
    emb.q = get_positive_int(e, "q", "source embedding");
    auto get_ints = [&](const char* field) {
      if (!e.contains(field) || !e[field].is_array()) {
        throw validation_error(std::string("source embedding needs an array field '") + field +
                               "'");
      }
      std::vector<int> out;
      for (const json& v : e[field]) {
        if (!v.is_number_integer()) {
          throw validation_error(std::string("source embedding '") + field +
                                 "' entries must be integers");
        }
        out.push_back(v.get<int>());
      }
      return out;
    };
    emb.h1 = get_ints("h1");
    emb.h2 = get_ints("h2");
    emb.g = get_ints("g");
    embedding = std::move(emb);
  }

  return {classical::JointPmf({s1n, s2n}, std::move(flat)), std::move(f), std::move(embedding)};
}

classical::SourceModel load_source(const std::string& path) { return parse_source(read_file(path)); }

}  // namespace cqfc::io
