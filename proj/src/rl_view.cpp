#include "affchar/rl_view.hpp"

#include "affchar/errors.hpp"

#include <algorithm>

namespace affchar {

PosEnergyRep PosEnergyRep::irreducible(const OrbitSpace& space, const Vec& lowest_weight) {
    PosEnergyRep v(space);
    v.add(lowest_weight, Int(1));
    return v;
}

PosEnergyRep PosEnergyRep::from_weights(const OrbitSpace& space,
                                        std::vector<std::pair<Vec, Int>>&& raw) {
    PosEnergyRep v(space);
    v.terms_ = reduce_and_merge(space, std::move(raw));
    return v;
}

void PosEnergyRep::add(const Vec& weight, const Int& c) {
    if (c == 0) return;
    Vec rep = space_.reduce(weight);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), rep,
                               [](const auto& t, const Vec& r) { return vec_cmp(t.first, r) < 0; });
    if (it != terms_.end() && vec_cmp(it->first, rep) == 0) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {std::move(rep), c});
    }
}

std::string PosEnergyRep::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        if (terms_[i].second != 1) s += terms_[i].second.get_str() + "*";
        s += "V" + vec_to_string(terms_[i].first);
    }
    return s;
}

CharElement lw(const PosEnergyRep& v) {
    CharElement out(v.space());
    for (const auto& [rep, c] : v.terms()) out.add(rep, c);
    return out;
}

PosEnergyRep lw_inv(const CharElement& x) {
    PosEnergyRep out(x.space());
    for (const auto& [rep, c] : x.terms()) out.add(rep, c);
    return out;
}

PosEnergyRep q_bang(const TorusMorphism& q, const Level& tau, const PosEnergyRep& v) {
    require(v.space() == orbit_space_of(tau), "ShapeMismatch", "input lives on the wrong orbit space");
    PreparedCovering prepared(q, tau);
    std::vector<std::pair<Vec, Int>> raw;
    for (const auto& [lambda, c] : v.terms()) {
        Vec base = prepared.base_image(lambda);
        for (const Vec& s : prepared.shifts()) raw.emplace_back(vec_add(base, s), c);
    }
    return PosEnergyRep::from_weights(prepared.target(), std::move(raw));
}

PosEnergyRep i1_bang(const Level& tau1, const Level& tau2, const PosEnergyRep& v) {
    Level prod = product_level(tau1, tau2);
    require(v.space() == orbit_space_of(prod), "NotBlockDiagonal",
            "input must live on the orbit space of the block-diagonal product level");
    OrbitSpace target = orbit_space_of(tau1);
    const int n1 = tau1.rank();
    std::vector<std::pair<Vec, Int>> raw;
    raw.reserve(v.terms().size());
    for (const auto& [rep, c] : v.terms()) raw.emplace_back(Vec(rep.begin(), rep.begin() + n1), c);
    return PosEnergyRep::from_weights(target, std::move(raw));
}

PosEnergyRep f_bang(const TorusMorphism& f, const Level& tau, const PosEnergyRep& v) {
    require(f.is_local_injection_matrix(), "NotLocalInjection", "f_bang needs a local injection");
    require_positive(tau, "level");
    MorphismDecomposition dec = decompose(f, tau);
    PosEnergyRep stage1 = q_bang(dec.fj, tau, v);
    PosEnergyRep stage2 = i1_bang(dec.split_first, dec.split_second, stage1);
    return q_bang(dec.q, dec.split_first, stage2);
}

TeKClass fht(const Level& tau, const PosEnergyRep& v) {
    require_positive(tau, "level");
    require(v.space() == orbit_space_of(tau), "ShapeMismatch", "input lives on the wrong orbit space");
    return md_iso_inv(lw(v));
}

FhtNaturalityReport verify_fht_naturality(const TorusMorphism& f, const Level& tau) {
    Level pulled = pullback_level(f, tau);
    OrbitSpace source_space = orbit_space_of(tau);

    FhtNaturalityReport report;
    for (const Vec& orbit : source_space.orbits()) {
        PosEnergyRep v = PosEnergyRep::irreducible(source_space, orbit);
        TeKClass via_bang = fht(pulled, f_bang(f, tau, v));
        TeKClass via_sharp = f_sharp(f, tau, fht(tau, v));
        report.irreducibles_checked += 1;
        if (via_bang != via_sharp) {
            report.commutes = false;
            report.mismatches.push_back({orbit, via_bang, via_sharp});
        }
    }
    return report;
}

}  // namespace affchar
