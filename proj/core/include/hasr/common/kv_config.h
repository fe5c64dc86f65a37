// core/include/hasr/common/kv_config.h

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

#ifndef HASR_COMMON_KV_CONFIG_H_
#define HASR_COMMON_KV_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hasr {

// Flat `key = value` configuration file. Lines starting with '#' and blank
// lines are ignored; later duplicates override earlier ones. Every Get*
// call marks the key as consumed so that typos can be reported with
// UnusedKeys().
class KvConfig {
 public:
  KvConfig() = default;

  static KvConfig FromFile(const std::string& path);
  static KvConfig FromString(const std::string& text,
                             const std::string& origin = "<string>");

  bool Has(const std::string& key) const;
  void Set(const std::string& key, const std::string& value);

  std::string GetString(const std::string& key) const;
  std::string GetString(const std::string& key, const std::string& fallback) const;
  std::int64_t GetInt(const std::string& key) const;
  std::int64_t GetInt(const std::string& key, std::int64_t fallback) const;
  double GetDouble(const std::string& key) const;
  double GetDouble(const std::string& key, double fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;
  // Whitespace- or comma-separated list.
  std::vector<std::string> GetList(const std::string& key) const;
  std::vector<double> GetDoubleList(const std::string& key) const;
  std::vector<std::int64_t> GetIntList(const std::string& key) const;

  std::vector<std::string> UnusedKeys() const;
  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& origin() const { return origin_; }

 private:
  const std::string& Lookup(const std::string& key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
  std::string origin_ = "<empty>";
};

}  // namespace hasr

#endif  // HASR_COMMON_KV_CONFIG_H_
