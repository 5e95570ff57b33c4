#pragma once

#include <string>
#include <string_view>

#include "qcompose/composition.hpp"
#include "qcompose/electric.hpp"
#include "qcompose/promise.hpp"

namespace qcompose {

// Graph JSON:    {"n": 3, "edges": [[0, 1, 1.0], [1, 2, 2.5]], "boundary": {"0": 1.0}}
// Profile JSON:  {"Q": 2, "subroutine_times": [1, 100], "L": 0,
//                 "weights": [[0.5, 0.5], [0.5, 0.5]]}
// Instance JSON: {"m": 4, "blocks": ["0e", "f0", ...]}, each block the
//                2m-bit string left||right packed by BitString::to_hex.
// Malformed text or wrong field types raise ErrorKind::ParseError; contents
// that parse but break an invariant raise the module's own error kind.

WeightedGraph parse_graph(std::string_view json_text);
std::string graph_to_json(const WeightedGraph& g);

CostProfile parse_profile(std::string_view json_text);
std::string profile_to_json(const CostProfile& profile);

ComposedInstance parse_instance(std::string_view json_text);
std::string instance_to_json(const ComposedInstance& inst);

/// Whole-file read; missing or unreadable files raise ParseError.
std::string read_text_file(const std::string& path);

}  // namespace qcompose
