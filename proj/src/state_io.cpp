#include "phimap/state_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace phimap {

namespace {

void append_number(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

template <typename Part>
void append_matrix(std::string& out, const ComplexMatrix& m, Part part) {
  out += "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r == 0 ? "\n    [" : ",\n    [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c != 0) out += ", ";
      append_number(out, part(m(r, c)));
    }
    out += "]";
  }
  out += "\n  ]";
}

}  // namespace

std::string serialize_state(const ComplexMatrix& m, Dims dims) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw InvalidInput("serialize_state: matrix size does not equal d1*d2");
  }
  std::string out = "{\n  \"dims\": [" + std::to_string(dims.d1) + ", " + std::to_string(dims.d2) + "],\n";
  out += "  \"re\": ";
  append_matrix(out, m, [](const cplx& z) { return z.real(); });
  out += ",\n  \"im\": ";
  append_matrix(out, m, [](const cplx& z) { return z.imag(); });
  out += "\n}\n";
  return out;
}

DensityState parse_state(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("state file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("re") || !doc.contains("im")) {
    throw InvalidInput("state file: expected keys \"dims\", \"re\", \"im\"");
  }
  const auto& jd = doc["dims"];
  if (!jd.is_array() || jd.size() != 2 || !jd[0].is_number_unsigned() || !jd[1].is_number_unsigned()) {
    throw InvalidInput("state file: \"dims\" must be two positive integers");
  }
  const Dims dims{jd[0].get<std::size_t>(), jd[1].get<std::size_t>()};
  if (dims.d1 == 0 || dims.d2 == 0) throw InvalidInput("state file: zero dimension");
  const std::size_t d = dims.total();

  ComplexMatrix m(d, d);
  auto read_part = [&](const char* key, bool imag) {
    const auto& rows = doc[key];
    if (!rows.is_array() || rows.size() != d) {
      throw InvalidInput(std::string("state file: \"") + key + "\" must have d1*d2 rows");
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (!rows[r].is_array() || rows[r].size() != d) {
        throw InvalidInput(std::string("state file: \"") + key + "\" row " + std::to_string(r) +
                           " must have d1*d2 entries");
      }
      for (std::size_t c = 0; c < d; ++c) {
        if (!rows[r][c].is_number()) throw InvalidInput("state file: non-numeric entry");
        const double x = rows[r][c].get<double>();
        if (imag) {
          m(r, c).imag(x);
        } else {
          m(r, c).real(x);
        }
      }
    }
  };
  read_part("re", false);
  read_part("im", true);
  return DensityState(std::move(m), dims);
}

void write_state_file(const std::filesystem::path& path, const ComplexMatrix& m, Dims dims) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInput("cannot open " + path.string() + " for writing");
  os << serialize_state(m, dims);
  if (!os) throw InvalidInput("failed writing " + path.string());
}

DensityState read_state_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_state(ss.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace phimap
