#pragma once

#include "affchar/weyl.hpp"

#include <map>
#include <optional>
#include <string>

namespace affchar {

/// Declarative input for the CLI: named tori, levels, morphisms, groups and
/// group morphisms. Two concrete syntaxes carry the same schema, a
/// line-oriented text form and JSON; parse and serialize are exact inverses.
///
/// Text form, one declaration per line ('#' starts a comment; arrays must
/// not contain whitespace):
///   torus NAME RANK
///   level NAME TORUS K
///   morphism NAME SOURCE TARGET KIND F
///   group NAME RANK K WEYL_GENS RHO   (RHO = vector or '-')
///   group_morphism NAME SOURCE_GROUP TARGET_GROUP F F_STAR
struct SceneLevel {
    std::string torus;
    IntMat k;
    bool operator==(const SceneLevel& r) const { return torus == r.torus && k == r.k; }
};

struct SceneMorphism {
    std::string source, target;
    MorphismKind kind = MorphismKind::general;
    IntMat f;
    bool operator==(const SceneMorphism& r) const {
        return source == r.source && target == r.target && kind == r.kind && f == r.f;
    }
};

struct SceneGroup {
    int rank = 0;
    IntMat k;
    std::vector<IntMat> weyl;
    std::optional<Vec> rho;
    bool operator==(const SceneGroup& r) const {
        return rank == r.rank && k == r.k && weyl == r.weyl && rho == r.rho;
    }
};

struct SceneGroupMorphism {
    std::string source, target;  // group names
    IntMat f;
    std::vector<IntMat> f_star;
    bool operator==(const SceneGroupMorphism& r) const {
        return source == r.source && target == r.target && f == r.f && f_star == r.f_star;
    }
};

struct SceneFile {
    std::map<std::string, int> tori;
    std::map<std::string, SceneLevel> levels;
    std::map<std::string, SceneMorphism> morphisms;
    std::map<std::string, SceneGroup> groups;
    std::map<std::string, SceneGroupMorphism> group_morphisms;

    bool operator==(const SceneFile& r) const {
        return tori == r.tori && levels == r.levels && morphisms == r.morphisms &&
               groups == r.groups && group_morphisms == r.group_morphisms;
    }
};

/// Errors: SceneSyntax on malformed input; SceneReference when a
/// cross-reference does not resolve (all declared kinds are re-validated).
SceneFile parse_scene(const std::string& content);

/// Resolves every declaration once: unknown names, bad shapes, non-symmetric
/// levels, kind mismatches and invalid Weyl data all surface at load time.
void validate_scene(const SceneFile& scene, long cap = kDefaultClosureCap);
std::string serialize_scene_text(const SceneFile& scene);
std::string serialize_scene_json(const SceneFile& scene);

/// Resolution into validated engine objects.
Torus resolve_torus(const SceneFile& scene, const std::string& name);
Level resolve_level(const SceneFile& scene, const std::string& name);
TorusMorphism resolve_morphism(const SceneFile& scene, const std::string& name);
CompactGroupData resolve_group(const SceneFile& scene, const std::string& name,
                               long cap = kDefaultClosureCap);
GroupMorphismData resolve_group_morphism(const SceneFile& scene, const std::string& name,
                                         long cap = kDefaultClosureCap);

/// The built-in scene: the counterexample data, the U(3) worked example and
/// the rho-shift demonstration groups. Printed by `affine-char examples`.
SceneFile builtin_scene();

/// Parse helpers shared with the CLI (exact integers, no floats).
Vec parse_int_vector(const std::string& text);
IntMat parse_int_matrix(const std::string& text);

}  // namespace affchar
