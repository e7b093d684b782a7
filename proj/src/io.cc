// Copyright 2026 The sbmrd Authors.
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

#include "sbmrd/io.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "sbmrd/errors.h"

namespace sbmrd {
namespace {

using nlohmann::json;

const json& Field(const json& config, const char* key) {
  auto it = config.find(key);
  if (it == config.end()) {
    throw InvalidParams(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::int64_t NodeCount(const json& config) {
  const json& n = Field(config, "n");
  if (!n.is_number_integer()) {
    throw InvalidParams("field \"n\" must be an integer");
  }
  return n.get<std::int64_t>();
}

double Number(const json& value, const std::string& what) {
  if (!value.is_number()) throw InvalidParams(what + " must be a number");
  return value.get<double>();
}

std::vector<double> NumberArray(const json& value, const std::string& what) {
  if (!value.is_array()) throw InvalidParams(what + " must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(Number(value[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Reads one whitespace-separated integer or throws.
std::int64_t ReadInt(std::istream& in, const char* what) {
  std::int64_t v = 0;
  if (!(in >> v)) throw InvalidParams(std::string("expected ") + what);
  return v;
}

}  // namespace

ModelParams ParseModel(const json& config) {
  if (!config.is_object()) {
    throw InvalidParams("configuration must be a JSON object");
  }
  const json& model = Field(config, "model");
  if (!model.is_string()) {
    throw InvalidParams("field \"model\" must be a string");
  }
  const std::string name = model.get<std::string>();
  if (name == "sbm") {
    SbmParams params;
    params.n = NodeCount(config);
    params.p = ProbVector(NumberArray(Field(config, "p"), "p"));
    const json& w = Field(config, "W");
    if (!w.is_array()) throw InvalidParams("field \"W\" must be an array");
    std::vector<std::vector<double>> rows;
    for (std::size_t l = 0; l < w.size(); ++l) {
      rows.push_back(NumberArray(w[l], "W[" + std::to_string(l) + "]"));
    }
    try {
      params.w = SymMatrix(rows);
    } catch (const DimensionError& e) {
      throw InvalidParams(e.what());
    }
    return ValidateSbm(std::move(params));
  }
  if (name == "er") {
    ErParams params;
    params.n = NodeCount(config);
    params.p = Number(Field(config, "p"), "p");
    return ValidateEr(params);
  }
  if (name == "inhom_er") {
    InhomErParams params;
    params.n = NodeCount(config);
    params.edge_probs =
        NumberArray(Field(config, "edge_probs"), "edge_probs");
    return ValidateInhomEr(std::move(params));
  }
  throw InvalidParams("unknown model \"" + name +
                      "\" (expected sbm, er or inhom_er)");
}

std::string ModelName(const ModelParams& params) {
  switch (params.index()) {
    case 0:
      return "sbm";
    case 1:
      return "er";
    default:
      return "inhom_er";
  }
}

json ModelToJson(const ModelParams& params) {
  json out;
  out["model"] = ModelName(params);
  if (const auto* sbm = std::get_if<SbmParams>(&params)) {
    out["n"] = sbm->n;
    out["p"] = std::vector<double>(sbm->p.values().begin(),
                                   sbm->p.values().end());
    out["W"] = sbm->w.Rows();
  } else if (const auto* er = std::get_if<ErParams>(&params)) {
    out["n"] = er->n;
    out["p"] = er->p;
  } else {
    const auto& inhom = std::get<InhomErParams>(params);
    out["n"] = inhom.n;
    out["edge_probs"] = inhom.edge_probs;
  }
  return out;
}

void WriteGraph(std::ostream& out, const Graph& g) {
  out << g.n() << '\n';
  std::uint64_t pair = 0;
  for (std::int64_t i = 0; i < g.n(); ++i) {
    for (std::int64_t j = i + 1; j < g.n(); ++j, ++pair) {
      if (g.Edge(pair)) out << i << ' ' << j << '\n';
    }
  }
}

Graph ReadGraph(std::istream& in) {
  const std::int64_t n = ReadInt(in, "vertex count");
  if (n < 0) throw InvalidParams("negative vertex count");
  Graph g(n);
  std::int64_t previous = -1;
  std::int64_t i = 0;
  while (in >> i) {
    const std::int64_t j = ReadInt(in, "second endpoint");
    if (i < 0 || j <= i || j >= n) {
      throw InvalidParams("bad edge \"" + std::to_string(i) + " " +
                          std::to_string(j) + "\"");
    }
    const auto pair = static_cast<std::int64_t>(PairIndex(i, j, n));
    if (pair <= previous) {
      throw InvalidParams("edges must be unique and sorted by pair index");
    }
    previous = pair;
    g.SetEdge(static_cast<std::uint64_t>(pair), true);
  }
  if (!in.eof()) throw InvalidParams("trailing garbage in graph file");
  return g;
}

void WriteLabels(std::ostream& out, const LabelVector& labels) {
  for (std::uint32_t l : labels.labels()) out << (l + 1) << '\n';
}

LabelVector ReadLabels(std::istream& in, std::size_t k) {
  std::vector<std::int64_t> labels;
  std::int64_t l = 0;
  while (in >> l) labels.push_back(l);
  if (!in.eof()) throw InvalidParams("labels must be integers");
  return LabelVector::FromOneBased(labels, k);
}

std::string FormatNumber(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

}  // namespace sbmrd
