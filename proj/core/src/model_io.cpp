#include "semid/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace semid {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail_at_offset(const std::string& text, std::size_t byte, const std::string& msg) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw ParseError(msg, line, column);
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ParseError("unknown key '" + it.key() + "' in " + where, 1, 1);
        }
    }
}

std::string require_string(const ordered_json& obj, const std::string& key,
                           const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        throw ParseError("missing or non-string '" + key + "' in " + where, 1, 1);
    }
    return obj[key].get<std::string>();
}

}  // namespace

ModelFile parse_model(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail_at_offset(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_object()) throw ParseError("model file must be a JSON object", 1, 1);
    reject_unknown_keys(doc, {"variables", "directed", "bidirected", "params"}, "model file");

    ModelFile m;
    if (!doc.contains("variables") || !doc["variables"].is_array()) {
        throw ParseError("model file needs a 'variables' array", 1, 1);
    }
    for (const auto& v : doc["variables"]) {
        if (!v.is_string()) throw ParseError("variable names must be strings", 1, 1);
        m.spec.variables.push_back(v.get<std::string>());
    }

    if (doc.contains("directed")) {
        if (!doc["directed"].is_array()) throw ParseError("'directed' must be an array", 1, 1);
        for (const auto& e : doc["directed"]) {
            if (!e.is_object()) throw ParseError("directed edges must be objects", 1, 1);
            reject_unknown_keys(e, {"from", "to", "param"}, "directed edge");
            m.spec.directed.push_back({require_string(e, "from", "directed edge"),
                                       require_string(e, "to", "directed edge"),
                                       require_string(e, "param", "directed edge")});
        }
    }
    if (doc.contains("bidirected")) {
        if (!doc["bidirected"].is_array()) throw ParseError("'bidirected' must be an array", 1, 1);
        for (const auto& e : doc["bidirected"]) {
            if (!e.is_object()) throw ParseError("bidirected arcs must be objects", 1, 1);
            reject_unknown_keys(e, {"a", "b", "param"}, "bidirected arc");
            m.spec.bidirected.push_back({require_string(e, "a", "bidirected arc"),
                                         require_string(e, "b", "bidirected arc"),
                                         require_string(e, "param", "bidirected arc")});
        }
    }
    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw ParseError("'params' must be an object", 1, 1);
        for (auto it = doc["params"].begin(); it != doc["params"].end(); ++it) {
            if (!it.value().is_number()) {
                throw ParseError("parameter value for '" + it.key() + "' must be a number", 1, 1);
            }
            m.params[it.key()] = it.value().get<double>();
        }
    }
    return m;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

std::string serialize_model(const ModelFile& m) {
    ordered_json doc;
    doc["variables"] = m.spec.variables;
    doc["directed"] = ordered_json::array();
    for (const auto& e : m.spec.directed) {
        doc["directed"].push_back({{"from", e.from}, {"to", e.to}, {"param", e.param}});
    }
    doc["bidirected"] = ordered_json::array();
    for (const auto& e : m.spec.bidirected) {
        doc["bidirected"].push_back({{"a", e.a}, {"b", e.b}, {"param", e.param}});
    }
    if (!m.params.empty()) {
        doc["params"] = ordered_json::object();
        for (const auto& [k, v] : m.params) doc["params"][k] = v;
    }
    return doc.dump(2) + "\n";
}

}  // namespace semid
