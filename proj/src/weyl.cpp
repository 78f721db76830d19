#include "affchar/weyl.hpp"

#include "affchar/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace affchar {

namespace {

struct MatLess {
    bool operator()(const IntMat& a, const IntMat& b) const {
        if (a.rows() != b.rows()) return a.rows() < b.rows();
        if (a.cols() != b.cols()) return a.cols() < b.cols();
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                int c = cmp(a.at(i, j), b.at(i, j));
                if (c != 0) return c < 0;
            }
        return false;
    }
};

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const { return vec_cmp(a, b) < 0; }
};

}  // namespace

WeylGroup::WeylGroup(int rank, std::vector<IntMat> generators)
    : rank_(rank), generators_(std::move(generators)), cache_(std::make_shared<ClosureCache>()) {
    for (const auto& g : generators_) {
        require(g.rows() == rank_ && g.cols() == rank_, "ShapeMismatch",
                "Weyl generator must be rank x rank");
        require(abs(g.det()) == 1, "NotUnimodular", "Weyl generator must be unimodular");
    }
}

const std::vector<IntMat>& WeylGroup::closure(long cap) const {
    // call_once leaves the flag unset when the computation throws, so a
    // ClosureCapExceeded attempt can be retried with a larger cap.
    std::call_once(cache_->once, [&] {
        std::vector<IntMat> elements;
        std::set<IntMat, MatLess> seen;
        IntMat id = IntMat::identity(rank_);
        elements.push_back(id);
        seen.insert(id);
        size_t head = 0;
        while (head < elements.size()) {
            IntMat current = elements[head++];
            for (const auto& g : generators_) {
                IntMat next = current * g;
                if (seen.insert(next).second) {
                    require(static_cast<long>(elements.size()) < cap, "ClosureCapExceeded",
                            "Weyl closure exceeded the element cap");
                    elements.push_back(std::move(next));
                }
            }
        }
        cache_->elements = std::move(elements);
    });
    return cache_->elements;
}

bool WeylGroup::same_group(const WeylGroup& rhs, long cap) const {
    if (rank_ != rhs.rank_) return false;
    const auto& a = closure(cap);
    const auto& b = rhs.closure(cap);
    if (a.size() != b.size()) return false;
    std::set<IntMat, MatLess> sa(a.begin(), a.end());
    for (const auto& m : b)
        if (!sa.count(m)) return false;
    return true;
}

CompactGroupData::CompactGroupData(Level lv, WeylGroup w, std::optional<Vec> r)
    : rank(lv.rank()), level(std::move(lv)), weyl(std::move(w)), rho(std::move(r)) {
    require(weyl.rank() == rank, "ShapeMismatch", "Weyl group must act on the weight lattice");
    // kappa must be W-equivariant: the Weyl action on weights and the
    // contragredient action on the integral lattice commute with K, which
    // for unimodular w reads w K w^t = K. Checking generators suffices.
    for (const auto& g : weyl.generators())
        require(g * level.k() * g.transpose() == level.k(), "NotEquivariant",
                "level must be invariant under the Weyl action");
    if (rho) require(static_cast<int>(rho->size()) == rank, "ShapeMismatch", "rho length mismatch");
}

void GroupCharElement::add(const Vec& orbit_rep, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), orbit_rep,
                               [](const auto& t, const Vec& r) { return vec_cmp(t.first, r) < 0; });
    if (it != terms_.end() && vec_cmp(it->first, orbit_rep) == 0) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {orbit_rep, c});
    }
}

std::string GroupCharElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        if (terms_[i].second != 1) s += terms_[i].second.get_str() + "*";
        s += vec_to_string(terms_[i].first);
    }
    return s;
}

namespace {

// W-orbit of a class, as the sorted set of canonical class representatives.
std::vector<Vec> class_orbit(const Vec& rep, const OrbitSpace& space,
                             const std::vector<IntMat>& elements) {
    std::set<Vec, VecLess> orbit;
    for (const auto& w : elements) orbit.insert(space.reduce(w.apply(rep)));
    return {orbit.begin(), orbit.end()};
}

}  // namespace

bool is_regular(const Vec& lambda, const CompactGroupData& g, long cap) {
    require_positive(g.level, "level");
    OrbitSpace space = orbit_space_of(g.level);
    const auto& elements = g.weyl.closure(cap);
    return class_orbit(space.reduce(lambda), space, elements).size() == elements.size();
}

Vec group_orbit_handle(const CompactGroupData& g, const Vec& weight, long cap) {
    require_positive(g.level, "level");
    OrbitSpace space = orbit_space_of(g.level);
    return class_orbit(space.reduce(weight), space, g.weyl.closure(cap)).front();
}

GroupCharElement group_basis_orbit(const CompactGroupData& g, const Vec& weight, long cap) {
    require(is_regular(weight, g, cap), "NotRegular",
            "weight " + vec_to_string(weight) + " does not generate a regular orbit");
    GroupCharElement e;
    e.add(group_orbit_handle(g, weight, cap), Int(1));
    return e;
}

std::vector<RegularOrbit> char_group(const CompactGroupData& g, long cap) {
    require_positive(g.level, "level");
    OrbitSpace space = orbit_space_of(g.level);
    const auto& elements = g.weyl.closure(cap);

    std::vector<RegularOrbit> out;
    std::set<Vec, VecLess> consumed;
    for (const Vec& rep : space.orbits()) {
        if (consumed.count(rep)) continue;
        std::vector<Vec> orbit = class_orbit(rep, space, elements);
        for (const Vec& m : orbit) consumed.insert(m);
        if (orbit.size() == elements.size()) out.push_back({std::move(orbit)});
    }
    return out;  // space.orbits() is sorted, so handles appear in sorted order
}

CharElement char_max_torus(const CompactGroupData& g, const GroupCharElement& x, long cap) {
    require_positive(g.level, "level");
    OrbitSpace space = orbit_space_of(g.level);
    const auto& elements = g.weyl.closure(cap);

    CharElement out(space);
    for (const auto& [rep, c] : x.terms()) {
        std::vector<Vec> orbit = class_orbit(space.reduce(rep), space, elements);
        require(orbit.size() == elements.size(), "NotRegular",
                "char(i) is defined on regular orbits only");
        for (const Vec& m : orbit) out.add(m, c);
    }
    return out;
}

GroupMorphismData::GroupMorphismData(CompactGroupData src, CompactGroupData tgt, TorusMorphism t,
                                     std::vector<IntMat> fs, long cap)
    : source(std::move(src)), target(std::move(tgt)), torus_map(std::move(t)), f_star(std::move(fs)) {
    require(torus_map.source().rank == source.rank && torus_map.target().rank == target.rank,
            "ShapeMismatch", "torus map must connect the maximal tori");
    require(f_star.size() == source.weyl.generators().size(), "ShapeMismatch",
            "f_star must give one image per source Weyl generator");

    std::set<IntMat, MatLess> target_elements;
    for (const auto& w : target.weyl.closure(cap)) target_elements.insert(w);
    for (const auto& m : f_star)
        require(target_elements.count(m) != 0, "InvalidGroupMorphism",
                "f_star image is not an element of the target Weyl group");

    // f_star must extend to a homomorphism of the closures: map words in the
    // generators breadth-first and reject any conflicting assignment; the
    // extension must also be injective.
    std::map<IntMat, IntMat, MatLess> image;
    std::vector<IntMat> queue;
    IntMat id_s = IntMat::identity(source.rank), id_t = IntMat::identity(target.rank);
    image.emplace(id_s, id_t);
    queue.push_back(id_s);
    size_t head = 0;
    while (head < queue.size()) {
        IntMat w = queue[head++];
        const IntMat& img = image.at(w);
        for (size_t i = 0; i < f_star.size(); ++i) {
            IntMat next = w * source.weyl.generators()[i];
            IntMat next_img = img * f_star[i];
            auto it = image.find(next);
            if (it == image.end()) {
                image.emplace(next, std::move(next_img));
                queue.push_back(std::move(next));
            } else {
                require(it->second == next_img, "InvalidGroupMorphism",
                        "f_star does not extend to a homomorphism of the Weyl groups");
            }
        }
    }
    std::set<IntMat, MatLess> image_set;
    for (const auto& [w, img] : image) image_set.insert(img);
    require(image_set.size() == image.size(), "InvalidGroupMorphism",
            "f_star must extend to an injective homomorphism");
}

DecomposableReport check_decomposable(const GroupMorphismData& m, const Level& tau) {
    DecomposableReport report;
    require(m.torus_map.target() == tau.torus(), "ShapeMismatch",
            "level must live on the target maximal torus");

    IntMat pulled = m.torus_map.transposed_df() * tau.k() * m.torus_map.f();
    report.pullback_positive = is_positive(Level(m.torus_map.source(), pulled));

    IntMat tdf = m.torus_map.transposed_df();
    report.weight_equivariant = true;
    for (size_t i = 0; i < m.f_star.size(); ++i)
        if (tdf * m.f_star[i] != m.source.weyl.generators()[i] * tdf) {
            report.weight_equivariant = false;
            report.equivariance_witness = static_cast<int>(i);
            break;
        }

    // f_star(W(H)) must act trivially on the orthogonal completion lattice.
    report.perp_action_trivial = true;
    if (m.torus_map.is_local_injection_matrix()) {
        IntMat perp = kernel_saturated(tdf * tau.k());
        for (size_t i = 0; i < m.f_star.size() && report.perp_action_trivial; ++i)
            for (int j = 0; j < perp.cols(); ++j) {
                Vec b = perp.col(j);
                if (m.f_star[i].transpose().apply(b) != b) {
                    report.perp_action_trivial = false;
                    report.perp_witness = static_cast<int>(i);
                    break;
                }
            }
    } else {
        report.perp_action_trivial = false;
    }
    return report;
}

GroupCharElement char_general(const GroupMorphismData& m, const Level& tau,
                              const GroupCharElement& x, long cap) {
    DecomposableReport cond = check_decomposable(m, tau);
    require(cond.passed(), "GroupingFailure",
            "decomposable condition proxies failed; char(f) is not defined");

    // Reduce to the torus, push along f|_S, then peel W(H)-orbit blocks.
    CharElement on_torus = char_max_torus(m.target, x, cap);
    CharElement pushed = char_local_injection(m.torus_map, tau, on_torus);

    Level pulled = pullback_level(m.torus_map, tau);
    OrbitSpace target_space = orbit_space_of(pulled);
    const auto& wh = m.source.weyl.closure(cap);

    std::map<Vec, Int, VecLess> remaining;
    for (const auto& [rep, c] : pushed.terms()) remaining.emplace(rep, c);

    GroupCharElement out;
    while (!remaining.empty()) {
        const Vec rep = remaining.begin()->first;
        const Int mult = remaining.begin()->second;
        std::vector<Vec> orbit = class_orbit(rep, target_space, wh);
        require(orbit.size() == wh.size(), "GroupingFailure",
                "image orbit is not regular for the source Weyl group");
        for (const Vec& member : orbit) {
            auto it = remaining.find(member);
            require(it != remaining.end() && it->second == mult, "GroupingFailure",
                    "image multiset is not a uniform union of source Weyl orbits");
            remaining.erase(it);
        }
        out.add(orbit.front(), mult);
    }
    return out;
}

RhoShiftTable rho_shift(const CompactGroupData& g_low, const CompactGroupData& g_high, long cap) {
    require(g_low.rank == g_high.rank, "ShapeMismatch", "rho shift needs equal ranks");
    require(g_low.weyl.same_group(g_high.weyl, cap), "ShapeMismatch",
            "rho shift needs the same Weyl group on both sides");
    require(g_high.rho.has_value(), "ShapeMismatch", "high level data must carry rho");
    require_positive(g_low.level, "low level");
    require_positive(g_high.level, "high level");

    OrbitSpace low_space = orbit_space_of(g_low.level);
    OrbitSpace high_space = orbit_space_of(g_high.level);
    const auto& elements = g_low.weyl.closure(cap);
    const Vec& rho = *g_high.rho;

    // All low orbits (regular or not), by canonical handle.
    std::vector<Vec> low_orbits;
    {
        std::set<Vec, VecLess> consumed;
        for (const Vec& rep : low_space.orbits()) {
            if (consumed.count(rep)) continue;
            std::vector<Vec> orbit = class_orbit(rep, low_space, elements);
            for (const Vec& mmb : orbit) consumed.insert(mmb);
            low_orbits.push_back(orbit.front());
        }
    }

    std::vector<RegularOrbit> high_regular = char_group(g_high, cap);
    std::set<Vec, VecLess> unhit;
    for (const auto& o : high_regular) unhit.insert(o.rep());

    RhoShiftTable table;
    for (const Vec& low_rep : low_orbits) {
        Vec shifted = high_space.reduce(vec_add(low_rep, rho));
        std::vector<Vec> orbit = class_orbit(shifted, high_space, elements);
        require(orbit.size() == elements.size(), "NotBijective",
                "orbit " + vec_to_string(low_rep) + " shifts onto a non-regular orbit " +
                    vec_to_string(shifted));
        require(unhit.erase(orbit.front()) == 1, "NotBijective",
                "orbit " + vec_to_string(low_rep) + " collides with an earlier image");
        table.pairs.emplace_back(low_rep, orbit.front());
    }
    if (!unhit.empty())
        fail("NotBijective", "regular orbit " + vec_to_string(*unhit.begin()) + " is not in the image");
    return table;
}

}  // namespace affchar
