// core/src/lm/arpa.cc

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

#include "hasr/lm/arpa.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::lm {
namespace {

constexpr double kLn10 = std::numbers::ln10;

std::string Log10Text(double natural_log) {
  if (!std::isfinite(natural_log)) return "-99";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", natural_log / kLn10);
  // Avoid "-0.0000000", which would not be stable through a read/write.
  if (std::string(buf) == "-0.0000000") return "0.0000000";
  return buf;
}

double FromLog10(double v) {
  if (v <= -99.0) return -std::numeric_limits<double>::infinity();
  return v * kLn10;
}

}  // namespace

void WriteArpa(std::ostream& os, const NgramModel& model) {
  const Vocabulary& vocab = model.vocab();
  os << "\n\\data\\\n";
  for (int k = 1; k <= model.order(); ++k) os << "ngram " << k << '=' << model.NumEntries(k) << '\n';
  for (int k = 1; k <= model.order(); ++k) {
    os << "\n\\" << k << "-grams:\n";
    for (const auto& [gram, e] : model.entries(k)) {
      os << Log10Text(e.log_prob) << '\t';
      for (std::size_t i = 0; i < gram.size(); ++i) os << (i ? " " : "") << vocab.Word(gram[i]);
      if (k < model.order()) os << '\t' << Log10Text(e.log_backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpaFile(const std::string& path, const NgramModel& model) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  WriteArpa(os, model);
  if (!os) throw IoError("failed writing '" + path + "'");
}

NgramModel ReadArpa(std::istream& is, const std::string& origin) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
  };
  auto next = [&](std::vector<std::string>* tokens) {
    while (std::getline(is, line)) {
      ++lineno;
      *tokens = SplitWhitespace(line);
      if (!tokens->empty()) return true;
    }
    return false;
  };

  std::vector<std::string> tok;
  if (!next(&tok) || tok.size() != 1 || tok[0] != "\\data\\") fail("expected '\\data\\'");
  std::vector<long long> declared(1, 0);
  while (next(&tok)) {
    if (tok[0] != "ngram") break;
    const std::string spec = tok.size() == 2 ? tok[1] : "";
    const auto eq = spec.find('=');
    long long k = 0, count = 0;
    if (eq == std::string::npos || !ParseInt(spec.substr(0, eq), &k) || !ParseInt(spec.substr(eq + 1), &count) ||
        count < 0) {
      fail("malformed header line '" + Trim(line) + "'");
    }
    if (k != static_cast<long long>(declared.size())) fail("header orders must be listed as 1, 2, ...");
    declared.push_back(count);
  }
  const int order = static_cast<int>(declared.size()) - 1;
  if (order < 1) fail("header declares no n-gram orders");

  std::vector<std::vector<std::pair<std::vector<std::string>, NgramEntry>>> sections(order + 1);
  int current = 0;
  bool ended = false;
  auto close_section = [&]() {
    if (current > 0 && static_cast<long long>(sections[current].size()) != declared[current]) {
      fail("section \\" + std::to_string(current) + "-grams: header declares " + std::to_string(declared[current]) +
           " entries but the body has " + std::to_string(sections[current].size()));
    }
  };
  do {
    if (tok.size() == 1 && tok[0] == "\\end\\") {
      close_section();
      ended = true;
      break;
    }
    if (tok.size() == 1 && tok[0].size() > 8 && tok[0][0] == '\\' && tok[0].ends_with("-grams:")) {
      close_section();
      long long k = 0;
      if (!ParseInt(tok[0].substr(1, tok[0].size() - 8), &k) || k != current + 1 || k > order) {
        fail("unexpected section header '" + tok[0] + "'");
      }
      current = static_cast<int>(k);
      continue;
    }
    if (current == 0) fail("entry outside an n-gram section");
    const std::size_t need = 1 + current;
    if (tok.size() != need && tok.size() != need + 1) {
      fail("\\" + std::to_string(current) + "-grams: expected " + std::to_string(need) + " or " +
           std::to_string(need + 1) + " fields");
    }
    double logp = 0, bow = 0;
    if (!ParseDouble(tok[0], &logp)) fail("bad log probability '" + tok[0] + "'");
    if (tok.size() == need + 1 && !ParseDouble(tok.back(), &bow)) fail("bad backoff weight '" + tok.back() + "'");
    if (logp > 0) fail("log probability above zero");
    sections[current].push_back(
        {std::vector<std::string>(tok.begin() + 1, tok.begin() + need), {FromLog10(logp), bow * kLn10}});
  } while (next(&tok));
  if (!ended) fail("missing '\\end\\'");
  if (current != order) fail("expected " + std::to_string(order) + " sections, found " + std::to_string(current));

  Vocabulary vocab;
  for (const auto& [words, e] : sections[1]) vocab.Add(words[0]);
  NgramModel model(order, vocab);
  for (int k = 1; k <= order; ++k) {
    auto& table = model.entries(k);
    for (const auto& [words, e] : sections[k]) {
      Ngram gram;
      for (const auto& w : words) {
        const auto id = vocab.Find(w);
        if (!id) throw ParseError(origin + ": " + std::to_string(k) + "-gram uses '" + w + "', which has no unigram");
        gram.push_back(*id);
      }
      if (!table.emplace(std::move(gram), e).second) {
        throw ParseError(origin + ": duplicate " + std::to_string(k) + "-gram entry");
      }
    }
  }
  return model;
}

NgramModel ReadArpaFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open ARPA file '" + path + "'");
  return ReadArpa(is, path);
}

}  // namespace hasr::lm
