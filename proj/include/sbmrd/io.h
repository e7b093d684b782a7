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
//
// File formats.
//
// Model parameters (JSON):
//   {"model": "sbm", "n": 100, "p": [0.4, 0.3, 0.3], "W": [[...], ...]}
//   {"model": "er", "n": 100, "p": 0.5}
//   {"model": "inhom_er", "n": 3, "edge_probs": [0.1, 0.2, 0.5]}
// `edge_probs` is dense, Binomial(n, 2) entries in PairIndex order.
//
// Graph text: first line "n", then one "i j" line per edge, 0-based, i < j,
// in PairIndex order.
//
// Labels text: n lines, one 1-based community index each.

#ifndef SBMRD_IO_H_
#define SBMRD_IO_H_

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "sbmrd/models.h"
#include "sbmrd/rdf.h"

namespace sbmrd {

// Parses and validates a model block. Throws InvalidParams naming the bad
// field; other keys of `config` are ignored.
ModelParams ParseModel(const nlohmann::json& config);
nlohmann::json ModelToJson(const ModelParams& params);
std::string ModelName(const ModelParams& params);

void WriteGraph(std::ostream& out, const Graph& g);
// Throws InvalidParams on malformed input, out-of-order or duplicate edges.
Graph ReadGraph(std::istream& in);

void WriteLabels(std::ostream& out, const LabelVector& labels);
LabelVector ReadLabels(std::istream& in, std::size_t k);

// printf("%.{digits}g").
std::string FormatNumber(double value, int digits = 12);

}  // namespace sbmrd

#endif  // SBMRD_IO_H_
