#include "affchar/scene.hpp"

#include "affchar/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace affchar {

namespace {

using nlohmann::json;

// ---- exact nested-array parsing (text form; no whitespace inside) ----

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char take() {
        require(pos < s.size(), "SceneSyntax", "unexpected end of array literal: " + s);
        return s[pos++];
    }
    void expect(char c) {
        require(take() == c, "SceneSyntax",
                std::string("expected '") + c + "' in array literal: " + s);
    }
};

Int parse_scalar(Cursor& c) {
    size_t start = c.pos;
    if (c.peek() == '-' || c.peek() == '+') ++c.pos;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
    require(c.pos > start + (c.s[start] == '-' || c.s[start] == '+' ? 1 : 0), "SceneSyntax",
            "expected an integer in array literal: " + c.s);
    return Int(c.s.substr(start, c.pos - start));
}

Vec parse_vec_at(Cursor& c) {
    Vec v;
    c.expect('[');
    if (c.peek() == ']') {
        c.take();
        return v;
    }
    for (;;) {
        v.push_back(parse_scalar(c));
        char ch = c.take();
        if (ch == ']') return v;
        require(ch == ',', "SceneSyntax", "expected ',' or ']' in vector literal: " + c.s);
    }
}

IntMat parse_mat_at(Cursor& c) {
    std::vector<Vec> rows;
    c.expect('[');
    if (c.peek() == ']') {
        c.take();
        return IntMat(0, 0);
    }
    for (;;) {
        rows.push_back(parse_vec_at(c));
        char ch = c.take();
        if (ch == ']') break;
        require(ch == ',', "SceneSyntax", "expected ',' or ']' in matrix literal: " + c.s);
    }
    size_t cols = rows[0].size();
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == cols, "SceneSyntax", "ragged matrix literal: " + c.s);
        for (size_t j = 0; j < cols; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

std::vector<IntMat> parse_mat_list_at(Cursor& c) {
    std::vector<IntMat> out;
    c.expect('[');
    if (c.peek() == ']') {
        c.take();
        return out;
    }
    for (;;) {
        out.push_back(parse_mat_at(c));
        char ch = c.take();
        if (ch == ']') return out;
        require(ch == ',', "SceneSyntax", "expected ',' or ']' in matrix list literal: " + c.s);
    }
}

MorphismKind kind_from_string(const std::string& s) {
    if (s == "local_injection") return MorphismKind::local_injection;
    if (s == "finite_covering") return MorphismKind::finite_covering;
    if (s == "product_inclusion_first_factor") return MorphismKind::product_inclusion_first_factor;
    if (s == "general") return MorphismKind::general;
    fail("SceneSyntax", "unknown morphism kind: " + s);
}

// ---- JSON helpers (integers accepted as numbers or decimal strings) ----

Int json_to_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
    if (j.is_string()) return Int(j.get<std::string>());
    fail("SceneSyntax", "expected an exact integer in JSON scene");
}

Vec json_to_vec(const json& j) {
    require(j.is_array(), "SceneSyntax", "expected a JSON array of integers");
    Vec v;
    for (const auto& e : j) v.push_back(json_to_int(e));
    return v;
}

IntMat json_to_mat(const json& j) {
    require(j.is_array(), "SceneSyntax", "expected a JSON array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(json_to_vec(r));
    if (rows.empty()) return IntMat(0, 0);
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == rows[0].size(), "SceneSyntax", "ragged JSON matrix");
        for (size_t k = 0; k < rows[i].size(); ++k)
            m.at(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
    }
    return m;
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json mat_to_json(const IntMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

SceneFile parse_scene_text(const std::string& content) {
    SceneFile scene;
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;

        auto at = [&](size_t i) -> const std::string& {
            require(i < tok.size(), "SceneSyntax",
                    "line " + std::to_string(lineno) + ": missing field");
            return tok[i];
        };
        if (tok[0] == "torus") {
            require(tok.size() == 3, "SceneSyntax", "line " + std::to_string(lineno) +
                        ": torus NAME RANK");
            scene.tori[at(1)] = std::stoi(at(2));
        } else if (tok[0] == "level") {
            require(tok.size() == 4, "SceneSyntax", "line " + std::to_string(lineno) +
                        ": level NAME TORUS K");
            Cursor c{at(3)};
            scene.levels[at(1)] = SceneLevel{at(2), parse_mat_at(c)};
        } else if (tok[0] == "morphism") {
            require(tok.size() == 6, "SceneSyntax", "line " + std::to_string(lineno) +
                        ": morphism NAME SOURCE TARGET KIND F");
            Cursor c{at(5)};
            scene.morphisms[at(1)] = SceneMorphism{at(2), at(3), kind_from_string(at(4)),
                                                   parse_mat_at(c)};
        } else if (tok[0] == "group") {
            require(tok.size() == 6, "SceneSyntax", "line " + std::to_string(lineno) +
                        ": group NAME RANK K WEYL_GENS RHO");
            SceneGroup g;
            g.rank = std::stoi(at(2));
            Cursor ck{at(3)};
            g.k = parse_mat_at(ck);
            Cursor cw{at(4)};
            g.weyl = parse_mat_list_at(cw);
            if (at(5) != "-") {
                Cursor cr{at(5)};
                g.rho = parse_vec_at(cr);
            }
            scene.groups[at(1)] = std::move(g);
        } else if (tok[0] == "group_morphism") {
            require(tok.size() == 6, "SceneSyntax", "line " + std::to_string(lineno) +
                        ": group_morphism NAME SOURCE TARGET F F_STAR");
            SceneGroupMorphism gm;
            gm.source = at(2);
            gm.target = at(3);
            Cursor cf{at(4)};
            gm.f = parse_mat_at(cf);
            Cursor cs{at(5)};
            gm.f_star = parse_mat_list_at(cs);
            scene.group_morphisms[at(1)] = std::move(gm);
        } else {
            fail("SceneSyntax", "line " + std::to_string(lineno) + ": unknown declaration '" +
                     tok[0] + "'");
        }
    }
    return scene;
}

SceneFile parse_scene_json_text(const std::string& content) {
    json j;
    try {
        j = json::parse(content);
    } catch (const json::exception& e) {
        fail("SceneSyntax", std::string("JSON parse error: ") + e.what());
    }
    SceneFile scene;
    if (j.contains("tori"))
        for (auto& [name, rank] : j.at("tori").items())
            scene.tori[name] = json_to_int(rank).get_si();
    if (j.contains("levels"))
        for (auto& [name, lv] : j.at("levels").items())
            scene.levels[name] = SceneLevel{lv.at("torus").get<std::string>(),
                                            json_to_mat(lv.at("K"))};
    if (j.contains("morphisms"))
        for (auto& [name, m] : j.at("morphisms").items())
            scene.morphisms[name] =
                SceneMorphism{m.at("source").get<std::string>(), m.at("target").get<std::string>(),
                              kind_from_string(m.at("kind").get<std::string>()),
                              json_to_mat(m.at("F"))};
    if (j.contains("groups"))
        for (auto& [name, g] : j.at("groups").items()) {
            SceneGroup sg;
            sg.rank = json_to_int(g.at("rank")).get_si();
            sg.k = json_to_mat(g.at("K"));
            for (const auto& w : g.at("weyl")) sg.weyl.push_back(json_to_mat(w));
            if (g.contains("rho") && !g.at("rho").is_null()) sg.rho = json_to_vec(g.at("rho"));
            scene.groups[name] = std::move(sg);
        }
    if (j.contains("group_morphisms"))
        for (auto& [name, gm] : j.at("group_morphisms").items()) {
            SceneGroupMorphism s;
            s.source = gm.at("source").get<std::string>();
            s.target = gm.at("target").get<std::string>();
            s.f = json_to_mat(gm.at("F"));
            for (const auto& w : gm.at("f_star")) s.f_star.push_back(json_to_mat(w));
            scene.group_morphisms[name] = std::move(s);
        }
    return scene;
}

}  // namespace

SceneFile parse_scene(const std::string& content) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_scene_json_text(content);
        break;
    }
    return parse_scene_text(content);
}

std::string serialize_scene_text(const SceneFile& scene) {
    std::ostringstream out;
    for (const auto& [name, rank] : scene.tori) out << "torus " << name << " " << rank << "\n";
    for (const auto& [name, lv] : scene.levels)
        out << "level " << name << " " << lv.torus << " " << lv.k.to_string() << "\n";
    for (const auto& [name, m] : scene.morphisms)
        out << "morphism " << name << " " << m.source << " " << m.target << " "
            << to_string(m.kind) << " " << m.f.to_string() << "\n";
    for (const auto& [name, g] : scene.groups) {
        out << "group " << name << " " << g.rank << " " << g.k.to_string() << " [";
        for (size_t i = 0; i < g.weyl.size(); ++i) {
            if (i) out << ",";
            out << g.weyl[i].to_string();
        }
        out << "] " << (g.rho ? vec_to_string(*g.rho) : "-") << "\n";
    }
    for (const auto& [name, gm] : scene.group_morphisms) {
        out << "group_morphism " << name << " " << gm.source << " " << gm.target << " "
            << gm.f.to_string() << " [";
        for (size_t i = 0; i < gm.f_star.size(); ++i) {
            if (i) out << ",";
            out << gm.f_star[i].to_string();
        }
        out << "]\n";
    }
    return out.str();
}

std::string serialize_scene_json(const SceneFile& scene) {
    json j;
    j["tori"] = json::object();
    for (const auto& [name, rank] : scene.tori) j["tori"][name] = rank;
    j["levels"] = json::object();
    for (const auto& [name, lv] : scene.levels)
        j["levels"][name] = {{"torus", lv.torus}, {"K", mat_to_json(lv.k)}};
    j["morphisms"] = json::object();
    for (const auto& [name, m] : scene.morphisms)
        j["morphisms"][name] = {{"source", m.source},
                                {"target", m.target},
                                {"kind", to_string(m.kind)},
                                {"F", mat_to_json(m.f)}};
    j["groups"] = json::object();
    for (const auto& [name, g] : scene.groups) {
        json weyl = json::array();
        for (const auto& w : g.weyl) weyl.push_back(mat_to_json(w));
        json entry = {{"rank", g.rank}, {"K", mat_to_json(g.k)}, {"weyl", weyl}};
        if (g.rho) entry["rho"] = vec_to_json(*g.rho);
        j["groups"][name] = entry;
    }
    j["group_morphisms"] = json::object();
    for (const auto& [name, gm] : scene.group_morphisms) {
        json fs = json::array();
        for (const auto& w : gm.f_star) fs.push_back(mat_to_json(w));
        j["group_morphisms"][name] = {{"source", gm.source},
                                      {"target", gm.target},
                                      {"F", mat_to_json(gm.f)},
                                      {"f_star", fs}};
    }
    return j.dump(2) + "\n";
}

Torus resolve_torus(const SceneFile& scene, const std::string& name) {
    auto it = scene.tori.find(name);
    require(it != scene.tori.end(), "SceneReference", "unknown torus: " + name);
    return Torus{it->second};
}

Level resolve_level(const SceneFile& scene, const std::string& name) {
    auto it = scene.levels.find(name);
    require(it != scene.levels.end(), "SceneReference", "unknown level: " + name);
    return Level(resolve_torus(scene, it->second.torus), it->second.k);
}

TorusMorphism resolve_morphism(const SceneFile& scene, const std::string& name) {
    auto it = scene.morphisms.find(name);
    require(it != scene.morphisms.end(), "SceneReference", "unknown morphism: " + name);
    return TorusMorphism(resolve_torus(scene, it->second.source),
                         resolve_torus(scene, it->second.target), it->second.f, it->second.kind);
}

CompactGroupData resolve_group(const SceneFile& scene, const std::string& name, long cap) {
    auto it = scene.groups.find(name);
    require(it != scene.groups.end(), "SceneReference", "unknown group: " + name);
    const SceneGroup& g = it->second;
    CompactGroupData data(Level(Torus{g.rank}, g.k), WeylGroup(g.rank, g.weyl), g.rho);
    data.weyl.closure(cap);
    return data;
}

GroupMorphismData resolve_group_morphism(const SceneFile& scene, const std::string& name,
                                         long cap) {
    auto it = scene.group_morphisms.find(name);
    require(it != scene.group_morphisms.end(), "SceneReference", "unknown group morphism: " + name);
    const SceneGroupMorphism& gm = it->second;
    CompactGroupData source = resolve_group(scene, gm.source, cap);
    CompactGroupData target = resolve_group(scene, gm.target, cap);
    TorusMorphism torus_map(Torus{source.rank}, Torus{target.rank}, gm.f,
                            MorphismKind::local_injection);
    return GroupMorphismData(std::move(source), std::move(target), std::move(torus_map),
                             gm.f_star, cap);
}

void validate_scene(const SceneFile& scene, long cap) {
    for (const auto& [name, lv] : scene.levels) resolve_level(scene, name);
    for (const auto& [name, m] : scene.morphisms) resolve_morphism(scene, name);
    for (const auto& [name, g] : scene.groups) resolve_group(scene, name, cap);
    for (const auto& [name, gm] : scene.group_morphisms) resolve_group_morphism(scene, name, cap);
}

SceneFile builtin_scene() {
    SceneFile s;
    s.tori = {{"T", 1}, {"T2a", 2}, {"T2b", 2}, {"T3", 3}};
    s.levels["tau"] = {"T2b", IntMat::from_rows({{-1, 0}, {0, -1}})};
    s.levels["gstar_tau"] = {"T2a", IntMat::from_rows({{-2, 0}, {0, -2}})};
    s.levels["hstar_tau"] = {"T", IntMat::from_rows({{-4}})};
    s.levels["tau3"] = {"T3", IntMat::from_rows({{-3, 0, 0}, {0, -3, 0}, {0, 0, -3}})};

    s.morphisms["f"] = {"T", "T2a", MorphismKind::local_injection,
                        IntMat::from_rows({{1}, {-1}})};
    s.morphisms["g"] = {"T2a", "T2b", MorphismKind::local_injection,
                        IntMat::from_rows({{1, 1}, {1, -1}})};
    s.morphisms["h"] = {"T", "T2b", MorphismKind::local_injection,
                        IntMat::from_rows({{0}, {2}})};
    s.morphisms["i1"] = {"T", "T3", MorphismKind::local_injection,
                         IntMat::from_rows({{1}, {0}, {0}})};

    IntMat swap01 = IntMat::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    IntMat swap12 = IntMat::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    s.groups["U3"] = {3,
                      IntMat::from_rows({{-3, 0, 0}, {0, -3, 0}, {0, 0, -3}}),
                      {swap01, swap12},
                      Vec{Int(1), Int(0), Int(-1)}};
    s.groups["TH"] = {1, IntMat::from_rows({{-3}}), {}, std::nullopt};
    s.group_morphisms["u3_restrict"] = {"TH", "U3", IntMat::from_rows({{1}, {0}, {0}}), {}};

    // Rho-shift demonstration data. A1low/A1high is the genuine rank-one
    // level 1 -> 3 instance; A1bad is the deliberately inconsistent variant
    // whose shifted orbit [2] is fixed by negation mod 4.
    IntMat neg1 = IntMat::from_rows({{-1}});
    s.groups["A1low"] = {1, IntMat::from_rows({{-2}}), {neg1}, std::nullopt};
    s.groups["A1high"] = {1, IntMat::from_rows({{-6}}), {neg1}, Vec{Int(1)}};
    s.groups["A1bad"] = {1, IntMat::from_rows({{-4}}), {neg1}, Vec{Int(1)}};

    IntMat swap2 = IntMat::from_rows({{0, 1}, {1, 0}});
    s.groups["S2low"] = {2, IntMat::from_rows({{-1, 0}, {0, -1}}), {swap2}, std::nullopt};
    s.groups["S2high"] = {2, IntMat::from_rows({{-2, 0}, {0, -2}}), {swap2}, Vec{Int(1), Int(0)}};

    s.groups["Zlow"] = {2, IntMat::from_rows({{-2, 0}, {0, -3}}), {}, std::nullopt};
    s.groups["Zhigh"] = {2, IntMat::from_rows({{-2, 0}, {0, -3}}), {}, Vec{Int(1), Int(1)}};

    s.groups["U3low"] = {3, -IntMat::identity(3), {swap01, swap12}, std::nullopt};
    return s;
}

Vec parse_int_vector(const std::string& text) {
    Cursor c{text};
    Vec v = parse_vec_at(c);
    require(c.pos == text.size(), "SceneSyntax", "trailing characters in vector literal: " + text);
    return v;
}

IntMat parse_int_matrix(const std::string& text) {
    Cursor c{text};
    IntMat m = parse_mat_at(c);
    require(c.pos == text.size(), "SceneSyntax", "trailing characters in matrix literal: " + text);
    return m;
}

}  // namespace affchar
