#include "varlp/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "varlp/error.hpp"

namespace varlp {

namespace {

double number_field(const Json& piece, const char* key, std::optional<double> fallback) {
  const auto it = piece.find(key);
  if (it == piece.end()) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::ParseError, std::string("piece is missing \"") + key + "\"");
  }
  if (!it->is_number()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a number");
  return it->get<double>();
}

const Json& pieces_array(const Json& j) {
  if (!j.is_object() || !j.contains("pieces") || !j.at("pieces").is_array()) {
    throw Error(ErrorKind::ParseError, "expected an object with a \"pieces\" array");
  }
  const Json& arr = j.at("pieces");
  for (const auto& piece : arr) {
    if (!piece.is_object()) throw Error(ErrorKind::ParseError, "each piece must be an object");
  }
  return arr;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json pieces = Json::array();
  for (const auto& pc : inst.pieces()) pieces.push_back({{"len", pc.len}, {"f", pc.f}, {"p", pc.p}});
  return Json{{"pieces", std::move(pieces)}};
}

Instance instance_from_json(const Json& j) {
  std::vector<Piece> pieces;
  for (const auto& piece : pieces_array(j)) {
    pieces.push_back({number_field(piece, "len", std::nullopt), number_field(piece, "f", std::nullopt),
                      number_field(piece, "p", 1.0)});
  }
  return Instance(std::move(pieces));
}

Json halfline_to_json(const HalfLineInstance& inst) {
  Json pieces = Json::array();
  for (const auto& pc : inst.pieces()) {
    pieces.push_back({{"len", pc.len}, {"f", pc.f}, {"p", pc.r}, {"w", pc.w}});
  }
  return Json{{"pieces", std::move(pieces)}};
}

HalfLineInstance halfline_from_json(const Json& j) {
  std::vector<HalfLinePiece> pieces;
  for (const auto& piece : pieces_array(j)) {
    pieces.push_back({number_field(piece, "len", std::nullopt), number_field(piece, "f", std::nullopt),
                      number_field(piece, "p", 1.0), number_field(piece, "w", 1.0)});
  }
  return HalfLineInstance(std::move(pieces));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

Instance read_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

HalfLineInstance read_halfline_file(const std::string& path) { return halfline_from_json(read_json_file(path)); }

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::ParseError, "write failed for " + path);
}

}  // namespace varlp
