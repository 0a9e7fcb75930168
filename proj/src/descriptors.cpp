#include "structsparse/descriptors.hpp"

#include <stdexcept>
#include <string>

#include "structsparse/wavelet.hpp"

namespace structsparse {

namespace {

using nlohmann::json;

Index require_index(const json& spec, const char* key) {
  if (!spec.contains(key))
    throw std::invalid_argument(std::string("descriptor missing field: ") + key);
  return spec.at(key).get<Index>();
}

int wavelet_levels(const json& spec, Index h, Index w) {
  return spec.contains("levels") ? spec.at("levels").get<int>()
                                 : max_haar_levels(h, w);
}

}  // namespace

BlockSet block_set_from_json(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "singleton") return singleton_blocks(require_index(spec, "p"));
  if (kind == "line") {
    const Index p = require_index(spec, "p");
    const Index max_len = spec.contains("max_len")
                              ? spec.at("max_len").get<Index>()
                              : default_block_extent(p);
    return line_connected_blocks(p, max_len);
  }
  if (kind == "grid") {
    const Index h = require_index(spec, "h");
    const Index w = require_index(spec, "w");
    const Index max_area = spec.contains("max_area")
                               ? spec.at("max_area").get<Index>()
                               : default_block_extent(h * w);
    return grid_connected_blocks(h, w, max_area);
  }
  if (kind == "group") {
    const Index p = require_index(spec, "p");
    return group_blocks(p, consecutive_groups(p, require_index(spec, "group_size")));
  }
  if (kind == "tree-wavelet") {
    const Index h = require_index(spec, "h");
    const Index w = require_index(spec, "w");
    return tree_path_blocks(wavelet_tree(h, w, wavelet_levels(spec, h, w)), h * w);
  }
  throw std::invalid_argument("unknown block set kind: " + kind);
}

std::unique_ptr<CodingScheme> scheme_from_json(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "standard")
    return std::make_unique<StandardCoding>(require_index(spec, "p"));
  if (kind == "nonuniform") {
    auto costs = spec.at("costs").get<std::vector<double>>();
    const Index p = static_cast<Index>(costs.size());
    return std::make_unique<NonUniformSingletonCoding>(p, std::move(costs));
  }
  if (kind == "group") {
    const Index p = require_index(spec, "p");
    return std::make_unique<GroupCoding>(
        p, consecutive_groups(p, require_index(spec, "group_size")));
  }
  if (kind == "graph-line")
    return std::make_unique<GraphCoding>(GraphCoding::line(require_index(spec, "p")));
  if (kind == "graph-grid")
    return std::make_unique<GraphCoding>(
        GraphCoding::grid(require_index(spec, "h"), require_index(spec, "w")));
  if (kind == "tree-wavelet") {
    const Index h = require_index(spec, "h");
    const Index w = require_index(spec, "w");
    return std::make_unique<TreeCoding>(
        wavelet_tree(h, w, wavelet_levels(spec, h, w)), h * w);
  }
  if (kind == "tree-binary") {
    const int depth = spec.at("depth").get<int>();
    return std::make_unique<TreeCoding>(complete_binary_tree(depth),
                                        Index{1} << depth);
  }
  if (kind == "block") {
    const auto mode = spec.value("mode", std::string("exact")) == "greedy"
                          ? BlockInducedCoding::Mode::greedy
                          : BlockInducedCoding::Mode::exact;
    return std::make_unique<BlockInducedCoding>(
        block_set_from_json(spec.at("blocks")), mode);
  }
  throw std::invalid_argument("unknown coding scheme kind: " + kind);
}

}  // namespace structsparse
