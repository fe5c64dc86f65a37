// core/src/common/kv_config.cc

// Copyright 2026 The hybridasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "hasr/common/kv_config.h"

#include <fstream>
#include <sstream>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr {

KvConfig KvConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return FromString(ss.str(), path);
}

KvConfig KvConfig::FromString(const std::string& text, const std::string& origin) {
  KvConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": expected 'key = value', got '" + trimmed + "'");
    }
    const std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) {
      throw ParseError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

bool KvConfig::Has(const std::string& key) const { return entries_.count(key) > 0; }

void KvConfig::Set(const std::string& key, const std::string& value) { entries_[key] = value; }

const std::string& KvConfig::Lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(origin_ + ": missing required key '" + key + "'");
  }
  used_.insert(key);
  return it->second;
}

std::string KvConfig::GetString(const std::string& key) const { return Lookup(key); }

std::string KvConfig::GetString(const std::string& key, const std::string& fallback) const {
  return Has(key) ? Lookup(key) : fallback;
}

std::int64_t KvConfig::GetInt(const std::string& key) const {
  long long v = 0;
  if (!ParseInt(Lookup(key), &v)) {
    throw ConfigError(origin_ + ": key '" + key + "' expects an integer, got '" +
                      entries_.at(key) + "'");
  }
  return v;
}

std::int64_t KvConfig::GetInt(const std::string& key, std::int64_t fallback) const {
  return Has(key) ? GetInt(key) : fallback;
}

double KvConfig::GetDouble(const std::string& key) const {
  double v = 0;
  if (!ParseDouble(Lookup(key), &v)) {
    throw ConfigError(origin_ + ": key '" + key + "' expects a number, got '" +
                      entries_.at(key) + "'");
  }
  return v;
}

double KvConfig::GetDouble(const std::string& key, double fallback) const {
  return Has(key) ? GetDouble(key) : fallback;
}

bool KvConfig::GetBool(const std::string& key, bool fallback) const {
  if (!Has(key)) return fallback;
  const std::string& v = Lookup(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(origin_ + ": key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<std::string> KvConfig::GetList(const std::string& key) const {
  std::string v = Lookup(key);
  for (auto& c : v) {
    if (c == ',') c = ' ';
  }
  return SplitWhitespace(v);
}

std::vector<double> KvConfig::GetDoubleList(const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : GetList(key)) {
    double v;
    if (!ParseDouble(tok, &v)) {
      throw ConfigError(origin_ + ": key '" + key + "' has non-numeric entry '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> KvConfig::GetIntList(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const auto& tok : GetList(key)) {
    long long v;
    if (!ParseInt(tok, &v)) {
      throw ConfigError(origin_ + ": key '" + key + "' has non-integer entry '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> KvConfig::UnusedKeys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (!used_.count(k)) out.push_back(k);
  }
  return out;
}

}  // namespace hasr
