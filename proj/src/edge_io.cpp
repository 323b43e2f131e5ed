#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "crossperc/errors.hpp"
#include "crossperc/strip.hpp"

namespace crossperc {

namespace {

std::string encode(const EdgeFlags &flags) {
  std::string bits;
  bits.reserve(flags.size());
  for (const auto f : flags)
    bits.push_back(f ? '1' : '0');
  return bits;
}

EdgeFlags decode(const std::string &field, const char *prefix, std::size_t line_no) {
  const std::string p(prefix);
  if (field.rfind(p, 0) != 0)
    throw ParameterError("edge file line " + std::to_string(line_no) + ": expected '" + p + "'");
  EdgeFlags flags;
  for (const char ch : field.substr(p.size())) {
    if (ch != '0' && ch != '1')
      throw ParameterError("edge file line " + std::to_string(line_no) + ": bad bit '" +
                           std::string(1, ch) + "'");
    flags.push_back(ch == '1' ? 1 : 0);
  }
  return flags;
}

} // namespace

void write_edges(std::ostream &out, const StripConfig &config) {
  config.validate();
  const auto &geom = config.geometry;
  out << "# crossperc edges v1\n";
  out << "K " << geom.half_width() << " model " << to_string(geom.model()) << '\n';
  if (geom.model() == Model::Standard)
    out << "init V:" << encode(config.first_vertical) << '\n';
  for (std::size_t i = 0; i < config.columns.size(); ++i) {
    const auto &col = config.columns[i];
    out << i << " H:" << encode(col.horizontal) << " V:";
    if (col.vertical)
      out << encode(*col.vertical);
    out << '\n';
  }
}

StripConfig read_edges(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<StripGeometry> geom;
  StripConfig config{StripGeometry(1, Model::Cross), {}, {}};

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "K") {
      int K = 0;
      std::string key, model;
      if (!(fields >> K >> key >> model) || key != "model" || (model != "cross" && model != "standard"))
        throw ParameterError("edge file line " + std::to_string(line_no) + ": malformed header");
      geom.emplace(K, model == "cross" ? Model::Cross : Model::Standard);
      config.geometry = *geom;
      continue;
    }
    if (!geom)
      throw ParameterError("edge file: header line 'K <K> model <m>' must come first");
    if (head == "init") {
      std::string v;
      fields >> v;
      config.first_vertical = decode(v, "V:", line_no);
      continue;
    }
    std::size_t index = 0;
    try {
      index = std::stoul(head);
    } catch (const std::exception &) {
      throw ParameterError("edge file line " + std::to_string(line_no) + ": bad column index");
    }
    if (index != config.columns.size())
      throw ParameterError("edge file line " + std::to_string(line_no) + ": expected column " +
                           std::to_string(config.columns.size()));
    std::string h, v;
    fields >> h >> v;
    EdgeColumn col;
    col.horizontal = decode(h, "H:", line_no);
    auto vertical = decode(v, "V:", line_no);
    if (geom->model() == Model::Standard)
      col.vertical = std::move(vertical);
    else if (!vertical.empty())
      throw ParameterError("edge file line " + std::to_string(line_no) +
                           ": Cross-model columns carry no vertical flags");
    config.columns.push_back(std::move(col));
  }
  if (!geom)
    throw ParameterError("edge file: missing header line");
  try {
    config.validate();
  } catch (const ContractError &e) {
    throw ParameterError(std::string("edge file: ") + e.what());
  }
  return config;
}

} // namespace crossperc
