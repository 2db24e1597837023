#include "twsplit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "twsplit/error.hpp"

namespace twsplit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> words;
  for (std::string w; ss >> w;) words.push_back(w);
  return words;
}

std::optional<long long> as_integer(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Numeric order when every id is an integer, first-appearance order otherwise.
std::vector<std::string> canonical_id_order(std::vector<std::string> ids) {
  std::vector<std::pair<long long, std::string>> numeric;
  numeric.reserve(ids.size());
  for (const auto& id : ids) {
    const auto v = as_integer(id);
    if (!v) return ids;
    numeric.emplace_back(*v, id);
  }
  std::stable_sort(numeric.begin(), numeric.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = numeric[i].second;
  return ids;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw InputError(what + ": '" + s + "' is not a number");
  }
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  const auto v = as_integer(s);
  if (!v || *v < 0) throw InputError(what + ": '" + s + "' is not a nonnegative integer");
  return static_cast<std::size_t>(*v);
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::vector<std::string> seen_order;
  std::unordered_map<std::string, bool> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto words = split_words(line);
    if (words.size() != 2) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected two node ids, got " +
                       std::to_string(words.size()) + " fields");
    }
    for (const auto& w : words) {
      if (seen.emplace(w, true).second) seen_order.push_back(w);
    }
    raw.emplace_back(words[0], words[1]);
  }

  IdMap ids(canonical_id_order(std::move(seen_order)));
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const NodeIndex u = *ids.find(raw[k].first);
    const NodeIndex v = *ids.find(raw[k].second);
    if (u == v) throw InputError(source + ": self loop at node '" + raw[k].first + "'");
    edges.push_back({u, v});
  }
  std::vector<std::string> labels;
  labels.reserve(ids.size());
  for (NodeIndex i = 0; i < ids.size(); ++i) labels.push_back(ids.id(i));

  LoadedGraph out;
  const std::size_t n = labels.size();
  out.graph = build_graph(n, edges, std::move(labels), &out.diagnostics);
  return out;
}

LoadedGraph read_edge_list_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

IdMap::IdMap(const std::vector<std::string>& ids) : ids_(ids) {
  index_.reserve(ids_.size());
  for (NodeIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) throw InputError("duplicate node id '" + ids_[i] + "'");
  }
}

IdMap IdMap::for_graph(const Graph& g) {
  std::vector<std::string> ids;
  ids.reserve(g.num_nodes());
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) ids.push_back(g.label(i));
  return IdMap(ids);
}

std::optional<NodeIndex> IdMap::find(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex IdMap::at(const std::string& id, const std::string& what) const {
  const auto i = find(id);
  if (!i) throw InputError(what + ": unknown node id '" + id + "'");
  return *i;
}

std::vector<std::vector<std::string>> read_truth_sets(std::istream& in) {
  std::vector<std::vector<std::string>> sets;
  for (std::string line; std::getline(in, line);) {
    if (skippable(line)) continue;
    sets.push_back(split_words(line));
  }
  return sets;
}

std::vector<std::pair<std::string, std::string>> read_flat_labels(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (skippable(line)) continue;
    const auto words = split_words(line);
    if (words.size() != 2) {
      throw InputError("label line " + std::to_string(line_no) + ": expected 'node cluster'");
    }
    out.emplace_back(words[0], words[1]);
  }
  return out;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InputError(source + ":" + std::to_string(line_no) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse(in, path.string());
}

std::string KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InputError(source_ + ": missing key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_double(get(key), source_ + ": " + key);
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::size_t KeyValueConfig::get_size(const std::string& key) const {
  return parse_size(get(key), source_ + ": " + key);
}

std::size_t KeyValueConfig::get_size_or(const std::string& key, std::size_t fallback) const {
  return has(key) ? get_size(key) : fallback;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : get_words(key)) out.push_back(parse_double(w, source_ + ": " + key));
  return out;
}

std::vector<std::string> KeyValueConfig::get_words(const std::string& key) const {
  return split_words(get(key));
}

SbmParams model_from_config(const KeyValueConfig& cfg) {
  SbmParams params;
  if (cfg.has("p")) {
    params.block_sizes = {cfg.get_size("n")};
    params.probabilities = Eigen::MatrixXd::Constant(1, 1, cfg.get_double("p"));
  } else {
    for (const auto& w : cfg.get_words("block_sizes")) {
      params.block_sizes.push_back(parse_size(w, cfg.source() + ": block_sizes"));
    }
    const auto b = cfg.get_doubles("B");
    const auto k = static_cast<Eigen::Index>(params.block_sizes.size());
    if (static_cast<Eigen::Index>(b.size()) != k * k) {
      throw InputError(cfg.source() + ": B needs " + std::to_string(k * k) + " entries for " +
                       std::to_string(k) + " blocks");
    }
    params.probabilities.resize(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) params.probabilities(r, c) = b[static_cast<std::size_t>(r * k + c)];
    }
  }
  params.validate();
  return params;
}

Json to_json(const TestReport& r) {
  return Json{{"theta", r.theta},
              {"theta_prime", r.theta_prime},
              {"p_value", r.p_value},
              {"boot_mean", r.boot_mean},
              {"boot_std", r.boot_std},
              {"n", r.n},
              {"p_hat", r.p_hat},
              {"statistic", std::string(to_string(r.variant))},
              {"bootstrap_samples", r.bootstrap_samples}};
}

Json tree_to_json(const ClusterTree& t, const Graph& g) {
  Json j;
  j["id"] = t.node_id;
  j["size"] = t.members.size();
  j["depth"] = t.depth;
  j["p_hat"] = t.p_hat;
  j["p_value"] = t.p_value ? Json(*t.p_value) : Json(nullptr);
  j["theta"] = t.theta ? Json(*t.theta) : Json(nullptr);
  j["stop_reason"] = std::string(to_string(t.stop_reason));
  if (t.is_leaf()) {
    Json members = Json::array();
    for (NodeIndex i : t.members) members.push_back(g.label(i));
    j["members"] = std::move(members);
    j["children"] = Json::array();
  } else {
    j["split"] = std::string(to_string(t.split));
    Json children = Json::array();
    for (const ClusterTree& c : t.children) children.push_back(tree_to_json(c, g));
    j["children"] = std::move(children);
  }
  return j;
}

namespace {

void collect_leaf_ids(const Json& j, std::vector<std::string>& out) {
  const auto& children = j.at("children");
  if (children.empty()) {
    for (const auto& m : j.at("members")) out.push_back(m.get<std::string>());
    return;
  }
  for (const auto& c : children) collect_leaf_ids(c, out);
}

ClusterTree node_from_json(const Json& j, const IdMap& ids) {
  ClusterTree t;
  t.node_id = j.at("id").get<int>();
  t.depth = j.at("depth").get<int>();
  t.p_hat = j.at("p_hat").get<double>();
  if (j.contains("p_value") && !j["p_value"].is_null()) t.p_value = j["p_value"].get<double>();
  if (j.contains("theta") && !j["theta"].is_null()) t.theta = j["theta"].get<double>();
  t.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
  const auto& children = j.at("children");
  if (children.empty()) {
    for (const auto& m : j.at("members")) t.members.push_back(ids.at(m.get<std::string>(), "tree"));
    std::sort(t.members.begin(), t.members.end());
    return t;
  }
  t.split = parse_split_kind(j.value("split", std::string("spectral")));
  for (const auto& c : children) {
    t.children.push_back(node_from_json(c, ids));
    const auto& cm = t.children.back().members;
    t.members.insert(t.members.end(), cm.begin(), cm.end());
  }
  std::sort(t.members.begin(), t.members.end());
  return t;
}

}  // namespace

LoadedTree tree_from_json(const Json& j, const IdMap* ids) {
  LoadedTree out;
  try {
    if (ids) {
      out.ids = *ids;
    } else {
      std::vector<std::string> leaf_ids;
      collect_leaf_ids(j, leaf_ids);
      std::vector<std::string> unique;
      std::unordered_map<std::string, bool> seen;
      for (auto& id : leaf_ids) {
        if (seen.emplace(id, true).second) unique.push_back(id);
      }
      out.ids = IdMap(canonical_id_order(std::move(unique)));
    }
    out.tree = node_from_json(j, out.ids);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed tree JSON: ") + e.what());
  }
  return out;
}

void write_permutation(std::ostream& out, const DensityOrdering& d, const Graph& g) {
  for (NodeIndex i : d.permutation) out << g.label(i) << '\n';
}

void write_blocks_csv(std::ostream& out, const DensityOrdering& d) {
  out << "start,end,depth,p_hat\n";
  for (const DensityBlock& b : d.blocks) {
    out << b.start << ',' << b.end << ',' << b.depth << ',' << format_double(b.p_hat) << '\n';
  }
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize k = 0; k < in.gcount(); ++k) {
      h ^= static_cast<unsigned char>(buf[k]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace twsplit
