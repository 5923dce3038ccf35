#pragma once

// Box file format: JSON object {parties, outputs, inputs, table} with the
// table flat in row-major (input tuple, then output tuple) order, first party
// slowest in both. Used by the CLI and good for goldens.

#include <string>

#include "qnet/boxes.hpp"

namespace qnet {

std::string box_to_json(const BoxN& b);
BoxN box_from_json(const std::string& text);

BoxN load_box(const std::string& path);
void save_box(const BoxN& b, const std::string& path);

}  // namespace qnet
