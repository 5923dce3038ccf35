#include "qnet/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qnet {

std::string box_to_json(const BoxN& b) {
  nlohmann::ordered_json j;
  j["parties"] = b.shape.n_parties;
  j["outputs"] = b.shape.outputs;
  j["inputs"] = b.shape.inputs;
  j["table"] = b.table;
  return j.dump(2) + "\n";
}

BoxN box_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("box_from_json: ") + e.what());
  }

  BoxN b;
  try {
    b.shape.n_parties = j.at("parties").get<int>();
    b.shape.outputs = j.at("outputs").get<Dims>();
    b.shape.inputs = j.at("inputs").get<Dims>();
    b.table = j.at("table").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("box_from_json: ") + e.what());
  }

  if (b.shape.n_parties <= 0 ||
      b.shape.outputs.size() != static_cast<size_t>(b.shape.n_parties) ||
      b.shape.inputs.size() != static_cast<size_t>(b.shape.n_parties))
    throw std::invalid_argument("box_from_json: party count does not match the dimension lists");
  for (int d : b.shape.outputs)
    if (d <= 0) throw std::invalid_argument("box_from_json: nonpositive output count");
  for (int d : b.shape.inputs)
    if (d <= 0) throw std::invalid_argument("box_from_json: nonpositive input count");
  if (static_cast<long>(b.table.size()) != b.shape.size())
    throw std::invalid_argument("box_from_json: table length does not match the shape");
  return b;
}

BoxN load_box(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_box: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return box_from_json(buf.str());
}

void save_box(const BoxN& b, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_box: cannot open " + path);
  out << box_to_json(b);
}

}  // namespace qnet
