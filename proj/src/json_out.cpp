#include "fixlab/json_out.hpp"

#include <cmath>
#include <cstdio>

#include "fixlab/errors.hpp"

namespace fixlab {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw NumericError("refusing to serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write(const nlohmann::ordered_json& node, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (node.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = node.begin(); it != node.end(); ++it, ++i) {
        out += pad_in;
        out += nlohmann::ordered_json(it.key()).dump();
        out += ": ";
        write(it.value(), out, indent, depth + 1);
        if (i + 1 < node.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < node.size(); ++i) {
        out += pad_in;
        write(node[i], out, indent, depth + 1);
        if (i + 1 < node.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_double(node.get<double>());
      return;
    default:
      out += node.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const nlohmann::ordered_json& doc, int indent) {
  std::string out;
  write(doc, out, indent, 0);
  out += "\n";
  return out;
}

namespace {

void write_compact(const nlohmann::ordered_json& node, std::string& out) {
  switch (node.type()) {
    case nlohmann::ordered_json::value_t::object: {
      out += "{";
      std::size_t i = 0;
      for (auto it = node.begin(); it != node.end(); ++it, ++i) {
        if (i) out += ",";
        out += nlohmann::ordered_json(it.key()).dump();
        out += ":";
        write_compact(it.value(), out);
      }
      out += "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      out += "[";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out += ",";
        write_compact(node[i], out);
      }
      out += "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_double(node.get<double>());
      return;
    default:
      out += node.dump();
      return;
  }
}

}  // namespace

std::string dump_compact(const nlohmann::ordered_json& doc) {
  std::string out;
  write_compact(doc, out);
  return out;
}

}  // namespace fixlab
