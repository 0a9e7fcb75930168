#pragma once

#include <memory>

#include <json.hpp>

#include "structsparse/blocks.hpp"
#include "structsparse/coding.hpp"

namespace structsparse {

/// Builds a block dictionary from a JSON descriptor {"kind": ..., params}.
/// Kinds: singleton{p}, line{p, max_len?}, grid{h, w, max_area?},
/// group{p, group_size}, tree-wavelet{h, w, levels?}.
BlockSet block_set_from_json(const nlohmann::json& spec);

/// Builds a coding scheme from a JSON descriptor. Kinds: standard{p},
/// nonuniform{costs}, group{p, group_size}, graph-line{p}, graph-grid{h, w},
/// tree-wavelet{h, w, levels?}, tree-binary{depth},
/// block{mode?, blocks: <block set descriptor>}.
std::unique_ptr<CodingScheme> scheme_from_json(const nlohmann::json& spec);

}  // namespace structsparse
