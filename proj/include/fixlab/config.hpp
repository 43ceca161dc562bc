#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixlab/contraction.hpp"
#include "fixlab/examples.hpp"
#include "fixlab/f_function.hpp"
#include "fixlab/space.hpp"
#include "fixlab/terrain.hpp"

namespace fixlab {

using json = nlohmann::ordered_json;

// Config files use a strict schema: any key the parser does not know is an
// error, so typos cannot silently fall back to defaults.
json load_json_file(const std::string& path);
void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& context);

/// A scalar (space, map, aux, gauge) instance assembled from config, plus
/// the fully resolved form that gets echoed into every output header.
struct ScalarInstance {
  ScalarSpace space;
  SelfMap<double> map;
  AuxiliaryMap<double> aux;
  std::optional<FFunction> f;
  json resolved;
};

FFunction parse_f(const json& spec, json& resolved);

struct CertifyJob {
  ScalarInstance instance;
  ContractionKind kind;
  CertifyOptions options;
};
CertifyJob parse_certify_config(const json& doc);

struct PicardJob {
  ScalarInstance instance;
  double start = 0.0;
  std::size_t max_iter = 100;
  double tol = 0.0;
  std::optional<double> omega;  // enables the decrement-margin column
};
PicardJob parse_picard_config(const json& doc);

struct SpaceVerifyJob {
  ScalarInstance instance;           // scalar spaces
  std::optional<double> function_p;  // set for function-grid spaces
  std::size_t function_grid_size = 0;
  std::vector<SequenceWitness<double>> witnesses;
  std::size_t triple_count = 0;  // random relaxed-triangle triples
  std::uint64_t triple_seed = 1;
  std::size_t tail_window = kDefaultTailWindow;
  double tol = kDefaultTailTol;
  json resolved;
};
SpaceVerifyJob parse_space_verify_config(const json& doc);

struct FCheckJob {
  FFunction f;
  double w3_tol = kDefaultW3Tol;
  double w2_floor = kDefaultW2Floor;
  bool suggest_k = false;
  json resolved;
};
FCheckJob parse_f_check_config(const json& doc);

struct TerrainJob {
  TerrainConfig config;
  json resolved;
};
TerrainJob parse_terrain_config(const json& doc);

}  // namespace fixlab
