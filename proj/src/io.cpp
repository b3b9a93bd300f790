#include "fairdiv/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "fairdiv/errors.hpp"
#include "json.hpp"

namespace fairdiv::io {

namespace {

using nlohmann::json;

// Byte iterator that remembers how far the parser has read.
class CountingIter {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIter() = default;
  CountingIter(const char* base, const char* p, std::size_t* seen) : base_(base), p_(p), seen_(seen) {}
  reference operator*() const {
    const auto at = static_cast<std::size_t>(p_ - base_);
    if (at > *seen_) *seen_ = at;
    return *p_;
  }
  CountingIter& operator++() {
    ++p_;
    return *this;
  }
  CountingIter operator++(int) {
    CountingIter t = *this;
    ++p_;
    return t;
  }
  bool operator==(const CountingIter& o) const { return p_ == o.p_; }

 private:
  const char* base_ = nullptr;
  const char* p_ = nullptr;
  std::size_t* seen_ = nullptr;
};

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

Pos position_of(std::string_view text, std::size_t offset) {
  Pos p;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Builds the document and records where every value starts, keyed by JSON
// pointer.
class LocatingSax {
 public:
  LocatingSax(std::string_view text, const std::size_t* seen) : text_(text), seen_(seen) {}

  json root;
  std::map<std::string, Pos> where;

  bool null() { return put(json(nullptr)); }
  bool boolean(bool b) { return put(json(b)); }
  bool number_integer(json::number_integer_t v) { return put(json(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return put(json(v)); }
  bool number_float(json::number_float_t v, const std::string& raw) {
    // Integers too large for 64 bits arrive here; keep their digits.
    const bool digits = !raw.empty() && raw.find_first_not_of("0123456789") == std::string::npos;
    return digits ? put(json(raw)) : put(json(v));
  }
  bool string(std::string& s) { return put(json(s)); }
  bool binary(json::binary_t&) { return put(json(nullptr)); }
  bool start_object(std::size_t) { return open(json::object()); }
  bool end_object() { return close(); }
  bool start_array(std::size_t) { return open(json::array()); }
  bool end_array() { return close(); }
  bool key(std::string& k) {
    key_ = k;
    return true;
  }
  bool parse_error(std::size_t byte, const std::string&, const nlohmann::detail::exception& ex) {
    const Pos p = position_of(text_, byte == 0 ? 0 : byte - 1);
    std::string msg = ex.what();
    if (const auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError("malformed JSON: " + msg, p.line, p.column);
  }

 private:
  std::string_view text_;
  const std::size_t* seen_;
  std::vector<std::pair<json*, std::string>> stack_;
  std::string key_;

  Pos here() const { return position_of(text_, *seen_); }

  // The lexer has read one char past numbers, up to the closing quote of
  // strings and to the last letter of literals. Walk back to the first char.
  Pos scalar_start() const {
    auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.'; };
    std::size_t k = std::min(*seen_, text_.empty() ? 0 : text_.size() - 1);
    if (k < text_.size() && text_[k] == '"') {
      while (k > 0) {
        --k;
        std::size_t slashes = 0;
        while (slashes < k && text_[k - 1 - slashes] == '\\') ++slashes;
        if (text_[k] == '"' && slashes % 2 == 0) break;
      }
      return position_of(text_, k);
    }
    if (k < text_.size() && !word(text_[k]) && k > 0) --k;
    while (k > 0 && word(text_[k - 1])) --k;
    return position_of(text_, k);
  }

  std::pair<json*, std::string> insert(json v, bool scalar = false) {
    const Pos at = scalar ? scalar_start() : here();
    if (stack_.empty()) {
      root = std::move(v);
      where[""] = at;
      return {&root, ""};
    }
    auto& [top, ptr] = stack_.back();
    std::string child;
    json* slot;
    if (top->is_array()) {
      child = ptr + "/" + std::to_string(top->size());
      top->push_back(std::move(v));
      slot = &top->back();
    } else {
      child = ptr + "/" + key_;
      (*top)[key_] = std::move(v);
      slot = &(*top)[key_];
    }
    where[child] = at;
    return {slot, child};
  }
  bool put(json v) {
    insert(std::move(v), true);
    return true;
  }
  bool open(json v) {
    stack_.push_back(insert(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }
};

struct Doc {
  std::string_view text;
  json root;
  std::map<std::string, Pos> where;

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    auto it = where.find(ptr);
    const Pos p = it == where.end() ? Pos{} : it->second;
    throw ParseError(what, p.line, p.column);
  }
};

Doc load(std::string_view text) {
  std::size_t seen = 0;
  LocatingSax sax(text, &seen);
  const char* b = text.data();
  json::sax_parse(CountingIter(b, b, &seen), CountingIter(b, b + text.size(), &seen), &sax);
  return Doc{text, std::move(sax.root), std::move(sax.where)};
}

Rational rational_at(const Doc& d, const json& v, const std::string& ptr) {
  if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
  if (v.is_number_integer()) d.fail(ptr, "negative value");
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      d.fail(ptr, std::string("bad rational: ") + e.what());
    }
  }
  d.fail(ptr, "expected a non-negative integer or a \"p/q\" string");
}

std::size_t index_at(const Doc& d, const json& v, const std::string& ptr, std::size_t bound,
                     const std::string& what) {
  if (!v.is_number_unsigned()) d.fail(ptr, "expected a " + what + " index");
  const auto k = v.get<std::uint64_t>();
  if (k >= bound) d.fail(ptr, what + " index " + std::to_string(k) + " out of range");
  return static_cast<std::size_t>(k);
}

const json& array_at(const Doc& d, const json& v, const std::string& ptr) {
  if (!v.is_array()) d.fail(ptr, "expected an array");
  return v;
}

std::string number(const Rational& r) {
  const std::string s = to_string(r);
  // Integers that fit comfortably stay numbers; anything else is quoted.
  if (s.find('/') == std::string::npos && s.size() <= 18) return s;
  return "\"" + s + "\"";
}

template <class Range>
std::string id_list(const Range& ids) {
  std::string out = "[";
  bool first = true;
  for (auto k : ids) {
    if (!first) out += ", ";
    out += std::to_string(k);
    first = false;
  }
  return out + "]";
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  const Doc d = load(text);
  const json& r = d.root;
  if (!r.is_object()) d.fail("", "instance must be a JSON object");
  InstanceFile out;
  if (r.contains("model")) {
    if (!r["model"].is_string()) d.fail("/model", "model must be a string");
    out.model = r["model"].get<std::string>();
  }
  if (!r.contains("values")) d.fail("", "missing \"values\"");
  const json& rows = array_at(d, r["values"], "/values");
  const std::size_t n = rows.size();
  std::size_t m = 0;
  std::vector<std::vector<Rational>> table;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = "/values/" + std::to_string(i);
    const json& row = array_at(d, rows[i], rp);
    if (i == 0) m = row.size();
    if (row.size() != m) d.fail(rp, "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                        " entries, expected " + std::to_string(m));
    std::vector<Rational> vals;
    for (std::size_t g = 0; g < m; ++g) vals.push_back(rational_at(d, row[g], rp + "/" + std::to_string(g)));
    table.push_back(std::move(vals));
  }
  auto check_count = [&](const char* key, std::size_t expect) {
    if (!r.contains(key)) return;
    const std::string ptr = std::string("/") + key;
    if (!r[key].is_number_unsigned() || r[key].get<std::uint64_t>() != expect) {
      d.fail(ptr, std::string(key) + " disagrees with the values table (" + std::to_string(expect) + ")");
    }
  };
  check_count("num_agents", n);
  if (r.contains("num_goods") && n == 0) m = r["num_goods"].is_number_unsigned() ? r["num_goods"].get<std::size_t>() : 0;
  check_count("num_goods", m);

  std::optional<RestrictedCertificate> cert;
  if (r.contains("inherent") != r.contains("relevance")) {
    d.fail("", "\"inherent\" and \"relevance\" must be given together");
  }
  if (r.contains("inherent")) {
    cert = RestrictedCertificate{};
    const json& inh = array_at(d, r["inherent"], "/inherent");
    const json& rel = array_at(d, r["relevance"], "/relevance");
    if (inh.size() != m) d.fail("/inherent", "expected " + std::to_string(m) + " inherent values");
    if (rel.size() != m) d.fail("/relevance", "expected " + std::to_string(m) + " relevance sets");
    for (std::size_t g = 0; g < m; ++g) {
      cert->inherent.push_back(rational_at(d, inh[g], "/inherent/" + std::to_string(g)));
      const std::string gp = "/relevance/" + std::to_string(g);
      std::vector<AgentId> agents;
      for (std::size_t k = 0; k < array_at(d, rel[g], gp).size(); ++k) {
        const AgentId a = index_at(d, rel[g][k], gp + "/" + std::to_string(k), n, "agent");
        if (!agents.empty() && a <= agents.back()) d.fail(gp, "relevance set must be strictly ascending");
        agents.push_back(a);
      }
      cert->relevance.push_back(std::move(agents));
    }
  }
  try {
    out.instance = Instance(std::move(table), std::move(cert));
  } catch (const InvalidInstance& e) {
    d.fail(r.contains("inherent") ? "/inherent" : "/values", e.what());
  }
  return out;
}

std::string serialize_instance(const Instance& inst, std::string_view model) {
  std::ostringstream os;
  os << "{\n  \"model\": " << json(std::string(model)).dump() << ",\n"
     << "  \"num_agents\": " << inst.num_agents() << ",\n"
     << "  \"num_goods\": " << inst.num_goods() << ",\n"
     << "  \"values\": [";
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (GoodId g = 0; g < inst.num_goods(); ++g) os << (g ? ", " : "") << number(inst.value(i, g));
    os << "]";
  }
  os << (inst.num_agents() ? "\n  ]" : "]");
  if (const auto& cert = inst.restricted()) {
    os << ",\n  \"inherent\": [";
    for (GoodId g = 0; g < cert->inherent.size(); ++g) os << (g ? ", " : "") << number(cert->inherent[g]);
    os << "],\n  \"relevance\": [";
    for (GoodId g = 0; g < cert->relevance.size(); ++g) os << (g ? ", " : "") << id_list(cert->relevance[g]);
    os << "]";
  }
  os << "\n}\n";
  return os.str();
}

Allocation parse_allocation(std::string_view text, const Instance& inst) {
  const Doc d = load(text);
  const json& r = d.root;
  if (!r.is_object()) d.fail("", "allocation must be a JSON object");
  if (!r.contains("pool")) d.fail("", "missing \"pool\"");
  if (!r.contains("bundles")) d.fail("", "missing \"bundles\"");
  const std::size_t m = inst.num_goods();
  std::vector<int> owner(m, -2);
  Allocation out;
  auto read_set = [&](const json& arr, const std::string& ptr, int who) {
    GoodSet s;
    for (std::size_t k = 0; k < array_at(d, arr, ptr).size(); ++k) {
      const std::string gp = ptr + "/" + std::to_string(k);
      const GoodId g = index_at(d, arr[k], gp, m, "good");
      if (owner[g] != -2) d.fail(gp, "good " + std::to_string(g) + " appears twice");
      owner[g] = who;
      s.insert(g);
    }
    return s;
  };
  out.pool = read_set(r["pool"], "/pool", -1);
  const json& bundles = array_at(d, r["bundles"], "/bundles");
  if (bundles.size() != inst.num_agents()) {
    d.fail("/bundles", "expected " + std::to_string(inst.num_agents()) + " bundles, found " +
                           std::to_string(bundles.size()));
  }
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    out.bundles.push_back(read_set(bundles[i], "/bundles/" + std::to_string(i), static_cast<int>(i)));
  }
  for (GoodId g = 0; g < m; ++g) {
    if (owner[g] == -2) d.fail("", "good " + std::to_string(g) + " is neither pooled nor allocated");
  }
  return out;
}

std::string serialize_allocation(const Allocation& alloc) {
  std::ostringstream os;
  os << "{\n  \"pool\": " << id_list(alloc.pool) << ",\n  \"bundles\": [";
  for (std::size_t i = 0; i < alloc.bundles.size(); ++i) os << (i ? ",\n    " : "\n    ") << id_list(alloc.bundles[i]);
  os << (alloc.bundles.empty() ? "]" : "\n  ]") << "\n}\n";
  return os.str();
}

std::string trace_line(const TraceEntry& e) {
  nlohmann::ordered_json j;
  j["step"] = e.step;
  j["rule"] = e.rule;
  j["agents"] = e.agents;
  j["goods"] = e.goods;
  j["phi"] = e.phi.describe();
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace fairdiv::io
