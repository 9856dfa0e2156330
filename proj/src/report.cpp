// SPDX-License-Identifier: MIT
#include "symindex/report.hpp"

#include <cstdio>

namespace symindex {

#ifndef SYMINDEX_VERSION
#define SYMINDEX_VERSION "0.0.0"
#endif

const char* tool_version() { return SYMINDEX_VERSION; }

namespace {

std::string scalar_text(const Report& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const Report& v) {
  return v.is_primitive();
}

// array of scalars -> "[a, b, c]"
std::string inline_array(const Report& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += scalar_text(a[i]);
  }
  return out + "]";
}

// one line per element: "key[i]: f1=v1 f2=v2"
void emit_object_array(std::string& out, const std::string& key, const Report& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += key + "[" + std::to_string(i) + "]:";
    for (const auto& item : a[i].items()) {
      out += " " + item.key() + "=";
      out += item.value().is_array() ? inline_array(item.value())
                                     : scalar_text(item.value());
    }
    out += "\n";
  }
}

void emit_entries(std::string& out, const std::string& prefix, const Report& obj) {
  for (const auto& item : obj.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    const Report& v = item.value();
    if (is_scalar(v)) {
      out += key + ": " + scalar_text(v) + "\n";
    } else if (v.is_object()) {
      emit_entries(out, key, v);
    } else if (!v.empty() && v[0].is_object()) {
      emit_object_array(out, key, v);
    } else {
      out += key + ": " + inline_array(v) + "\n";
    }
  }
}

}  // namespace

std::string render_text(const Report& root) {
  std::string out;
  for (const auto& item : root.items()) {
    const Report& v = item.value();
    if (is_scalar(v)) {
      out += item.key() + ": " + scalar_text(v) + "\n";
    } else if (v.is_object()) {
      out += "\n[" + item.key() + "]\n";
      emit_entries(out, "", v);
    } else if (!v.empty() && v[0].is_object()) {
      out += "\n[" + item.key() + "]\n";
      emit_object_array(out, "", v);
    } else {
      out += item.key() + ": " + inline_array(v) + "\n";
    }
  }
  return out;
}

std::string render_json(const Report& root) { return root.dump(2) + "\n"; }

}  // namespace symindex
