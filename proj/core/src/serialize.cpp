#include "samac/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "samac/errors.hpp"

namespace samac {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw validation_error("invalid JSON document");
  return doc;
}

void require_keys(const json& doc, std::initializer_list<const char*> keys, const char* what) {
  if (!doc.is_object()) throw validation_error(std::string(what) + ": expected a JSON object");
  for (const char* k : keys)
    if (!doc.contains(k)) throw validation_error(std::string(what) + ": missing field '" + k + "'");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw validation_error(std::string(what) + ": unknown field '" + key + "'");
  }
}

Distribution distribution_from_doc(const json& doc) {
  require_keys(doc, {"alphabet", "probs"}, "Distribution");
  if (!doc["alphabet"].is_number_unsigned() && !doc["alphabet"].is_number_integer())
    throw validation_error("Distribution: 'alphabet' must be an integer");
  if (!doc["probs"].is_array()) throw validation_error("Distribution: 'probs' must be an array");
  const auto alphabet = doc["alphabet"].get<std::int64_t>();
  if (alphabet < 1) throw validation_error("Distribution: alphabet must be positive");
  std::vector<double> probs;
  for (const auto& v : doc["probs"]) {
    if (!v.is_number()) throw validation_error("Distribution: probs entries must be numbers");
    probs.push_back(v.get<double>());
  }
  if (static_cast<std::int64_t>(probs.size()) != alphabet)
    throw validation_error("Distribution: probs length does not match alphabet");
  try {
    return Distribution(std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw validation_error(e.what());
  }
}

Channel channel_from_doc(const json& doc) {
  require_keys(doc, {"inputs", "outputs", "idle", "rows"}, "Channel");
  for (const char* k : {"inputs", "outputs", "idle"})
    if (!doc[k].is_number_integer() && !doc[k].is_number_unsigned())
      throw validation_error(std::string("Channel: '") + k + "' must be an integer");
  const auto inputs = doc["inputs"].get<std::int64_t>();
  const auto outputs = doc["outputs"].get<std::int64_t>();
  const auto idle = doc["idle"].get<std::int64_t>();
  if (inputs < 1 || outputs < 1 || idle < 0)
    throw validation_error("Channel: sizes must be positive and idle non-negative");
  if (!doc["rows"].is_array() || static_cast<std::int64_t>(doc["rows"].size()) != inputs)
    throw validation_error("Channel: 'rows' must have one row per input");
  std::vector<double> rows;
  rows.reserve(static_cast<std::size_t>(inputs * outputs));
  for (const auto& row : doc["rows"]) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != outputs)
      throw validation_error("Channel: each row must list every output probability");
    for (const auto& v : row) {
      if (!v.is_number()) throw validation_error("Channel: row entries must be numbers");
      rows.push_back(v.get<double>());
    }
  }
  try {
    return Channel(static_cast<std::size_t>(inputs), static_cast<std::size_t>(outputs),
                   std::move(rows), static_cast<std::size_t>(idle));
  } catch (const std::invalid_argument& e) {
    throw validation_error(e.what());
  }
}

double parse_param(const std::string& spec, std::size_t colon, const char* what) {
  try {
    std::size_t used = 0;
    const std::string tail = spec.substr(colon + 1);
    const double v = std::stod(tail, &used);
    if (used != tail.size()) throw validation_error(std::string(what) + ": trailing characters");
    return v;
  } catch (const std::exception&) {
    throw validation_error(std::string(what) + ": bad numeric parameter in '" + spec + "'");
  }
}

}  // namespace

std::string to_json(const Distribution& d) {
  json doc;
  doc["alphabet"] = d.alphabet_size();
  doc["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  return doc.dump();
}

std::string to_json(const Channel& q) {
  json doc;
  doc["inputs"] = q.input_size();
  doc["outputs"] = q.output_size();
  doc["idle"] = q.idle_symbol();
  json rows = json::array();
  for (std::size_t x = 0; x < q.input_size(); ++x) {
    const auto s = q.row_span(x);
    rows.push_back(std::vector<double>(s.begin(), s.end()));
  }
  doc["rows"] = std::move(rows);
  return doc.dump();
}

Distribution distribution_from_json(const std::string& text) {
  return distribution_from_doc(parse(text));
}

Channel channel_from_json(const std::string& text) { return channel_from_doc(parse(text)); }

Channel parse_channel_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return channel_from_json(spec);
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw validation_error("channel spec: expected bsc:<d>, bec:<e>, dmc:<file>, or JSON");
  const std::string kind = spec.substr(0, colon);
  if (kind == "bsc") {
    const double d = parse_param(spec, colon, "bsc");
    if (!(d >= 0.0 && d <= 1.0)) throw validation_error("bsc: delta outside [0,1]");
    return Channel::bsc(d);
  }
  if (kind == "bec") {
    const double e = parse_param(spec, colon, "bec");
    if (!(e >= 0.0 && e <= 1.0)) throw validation_error("bec: erasure outside [0,1]");
    return Channel::bec(e);
  }
  if (kind == "dmc") {
    const std::string path = spec.substr(colon + 1);
    std::ifstream in(path);
    if (!in) throw validation_error("dmc: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return channel_from_json(buf.str());
  }
  throw validation_error("channel spec: unknown kind '" + kind + "'");
}

Distribution parse_distribution_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return distribution_from_json(spec);
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw validation_error("distribution spec: expected ber:<p>, uniform:<k>, or JSON");
  const std::string kind = spec.substr(0, colon);
  if (kind == "ber") {
    const double p = parse_param(spec, colon, "ber");
    if (!(p >= 0.0 && p <= 1.0)) throw validation_error("ber: p outside [0,1]");
    return Distribution::bernoulli(p);
  }
  if (kind == "uniform") {
    const double k = parse_param(spec, colon, "uniform");
    if (k < 1.0 || k != std::floor(k)) throw validation_error("uniform: bad alphabet size");
    return Distribution::uniform(static_cast<std::size_t>(k));
  }
  throw validation_error("distribution spec: unknown kind '" + kind + "'");
}

}  // namespace samac
