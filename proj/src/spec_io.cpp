#include "heis/spec_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace heis {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed spec: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational scalar(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError("scalars must be fraction strings or integers");
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

SpacePtr parse_space(const std::string& json_text) {
    const json j = parse_json(json_text);
    try {
        const auto labels = require(j, "basis").get<std::vector<std::string>>();
        std::vector<bool> odd;
        for (const auto& p : require(j, "parity")) {
            const auto s = p.get<std::string>();
            if (s != "even" && s != "odd") throw ParseError("parity must be 'even' or 'odd'");
            odd.push_back(s == "odd");
        }
        std::vector<std::vector<Rational>> chi;
        for (const auto& row : require(j, "chi")) {
            chi.emplace_back();
            for (const auto& v : row) chi.back().push_back(scalar(v));
        }
        return std::make_shared<const GradedSpace>(labels, odd, chi);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad space spec: ") + e.what());
    }
}

namespace {

SpacePtr builtin_space(const std::string& name) {
    if (name == "rank1-even")
        return std::make_shared<const GradedSpace>(std::vector<std::string>{"e"}, std::vector<bool>{false},
                                                   std::vector<std::vector<Rational>>{{1}});
    if (name == "rank1-odd")
        return std::make_shared<const GradedSpace>(std::vector<std::string>{"f"}, std::vector<bool>{true},
                                                   std::vector<std::vector<Rational>>{{1}});
    if (name == "rank2-mixed")
        return std::make_shared<const GradedSpace>(std::vector<std::string>{"e", "f"}, std::vector<bool>{false, true},
                                                   std::vector<std::vector<Rational>>{{1, 0}, {0, 1}});
    return nullptr;
}

}  // namespace

// A missing "<builtin>.spec" file resolves to the built-in of that name.
SpacePtr load_space(const std::string& path_or_name) {
    if (auto s = builtin_space(path_or_name)) return s;
    const std::filesystem::path p(path_or_name);
    if (!std::filesystem::exists(p) && p.extension() == ".spec" && !p.has_parent_path())
        if (auto s = builtin_space(p.stem().string())) return s;
    return parse_space(read_file(path_or_name));
}

namespace {

SparseVec combination(const LinCat& c, const json& j) {
    std::map<int, Rational> acc;
    for (const auto& [label, v] : j.items()) {
        const int m = c.find_morphism(label);
        if (m < 0) throw ParseError("unknown morphism '" + label + "'");
        acc[m] += scalar(v);
    }
    return sparse_from_map(acc);
}

int object_named(const LinCat& c, const json& j) {
    const int o = c.find_object(j.get<std::string>());
    if (o < 0) throw ParseError("unknown object '" + j.get<std::string>() + "'");
    return o;
}

ActionPtr parse_action(const CatPtr& cat, const json& j) {
    std::vector<std::vector<int>> perms;
    for (const auto& e : require(j, "elements")) perms.push_back(require(e, "perm").get<std::vector<int>>());
    auto act = std::make_shared<GroupAction>();
    act->group = permutation_group(perms);
    act->cat = cat;
    for (const auto& e : require(j, "elements")) {
        auto F = std::make_shared<LinFunctor>();
        F->source = cat;
        F->target = cat;
        const json& objs = require(e, "objects");
        const json& mors = require(e, "morphisms");
        for (std::size_t o = 0; o < cat->num_objects(); ++o)
            F->object_map.push_back(object_named(*cat, objs.at(cat->object_label(static_cast<int>(o)))));
        for (std::size_t m = 0; m < cat->num_morphisms(); ++m)
            F->morphism_map.push_back(combination(*cat, mors.at(cat->morphism(static_cast<int>(m)).label)));
        act->act.push_back(F);
    }
    const Report r = act->check();
    if (!r.all_pass()) throw ActionMismatch("action table fails " + r.records[0].id);
    return act;
}

}  // namespace

CategorySpec parse_category(const std::string& json_text) {
    const json j = parse_json(json_text);
    try {
        auto C = std::make_shared<LinCat>(j.value("name", std::string("custom")));
        for (const auto& o : require(j, "objects")) C->add_object(o.get<std::string>());
        for (const auto& h : require(j, "homs")) {
            const int src = object_named(*C, require(h, "src"));
            const int tgt = object_named(*C, require(h, "tgt"));
            const int m = C->add_morphism(src, tgt, h.value("degree", 0), require(h, "label").get<std::string>());
            if (h.value("identity", false)) {
                if (src != tgt) throw ParseError("identity morphism between different objects");
                C->set_identity(src, m);
            }
        }
        if (j.contains("differential"))
            for (const auto& [label, v] : j.at("differential").items()) {
                const int m = C->find_morphism(label);
                if (m < 0) throw ParseError("unknown morphism '" + label + "'");
                C->set_differential(m, combination(*C, v));
            }
        C->fill_identity_compositions();
        if (j.contains("composition"))
            for (const auto& entry : j.at("composition")) {
                const int g = C->find_morphism(require(entry, "g").get<std::string>());
                const int f = C->find_morphism(require(entry, "f").get<std::string>());
                if (g < 0 || f < 0) throw ParseError("composition names an unknown morphism");
                C->set_composition(g, f, combination(*C, require(entry, "value")));
            }
        C->validate();
        CategorySpec spec{C, nullptr};
        if (j.contains("action")) spec.action = parse_action(C, j.at("action"));
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad category spec: ") + e.what());
    }
}

CategorySpec load_category(const std::string& path_or_name) {
    if (path_or_name == "point") return {point_cat(), nullptr};
    if (path_or_name == "two-points") return {two_points_cat(), nullptr};
    if (path_or_name == "acyclic-pair") return {acyclic_pair_cat(), nullptr};
    const std::string dual = "dual-numbers:";
    if (path_or_name.rfind(dual, 0) == 0) {
        try {
            return {dual_numbers_cat(std::stoi(path_or_name.substr(dual.size()))), nullptr};
        } catch (const std::logic_error&) {
            throw ParseError("bad degree in '" + path_or_name + "'");
        }
    }
    if (path_or_name.rfind("sym:", 0) == 0) {
        const auto last = path_or_name.rfind(':');
        if (last <= 4) throw ParseError("expected sym:<name>:<n>");
        int n = 0;
        try {
            n = std::stoi(path_or_name.substr(last + 1));
        } catch (const std::logic_error&) {
            throw ParseError("bad order in '" + path_or_name + "'");
        }
        const CategorySpec inner = load_category(path_or_name.substr(4, last - 4));
        SymPtr s = sym_power(inner.cat, n);
        return {s->cat(), nullptr};
    }
    return parse_category(read_file(path_or_name));
}

}  // namespace heis
