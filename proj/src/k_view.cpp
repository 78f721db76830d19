#include "affchar/k_view.hpp"

#include "affchar/errors.hpp"

#include <algorithm>
#include <map>

namespace affchar {

TeKClass TeKClass::basis(const OrbitSpace& space, const Vec& weight) {
    TeKClass k(space, Parity::even);
    k.add(weight, Int(1));
    return k;
}

TeKClass TeKClass::from_weights(const OrbitSpace& space, std::vector<std::pair<Vec, Int>>&& raw) {
    TeKClass k(space, Parity::even);
    k.terms_ = reduce_and_merge(space, std::move(raw));
    return k;
}

void TeKClass::add(const Vec& weight, const Int& c) {
    if (c == 0) return;
    require(parity_ == Parity::even, "ParityMismatch",
            "odd-degree classes vanish; a nonzero odd class cannot exist");
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

std::string TeKClass::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        if (terms_[i].second != 1) s += terms_[i].second.get_str() + "*";
        s += vec_to_string(terms_[i].first);
    }
    return s;
}

CharElement md_iso(const TeKClass& x) {
    require(x.parity() == Parity::even, "ParityMismatch",
            "the Mackey decomposition identifies the even-degree group");
    CharElement out(x.space());
    for (const auto& [rep, c] : x.terms()) out.add(rep, c);
    return out;
}

TeKClass md_iso_inv(const CharElement& x) {
    TeKClass out(x.space(), Parity::even);
    for (const auto& [rep, c] : x.terms()) out.add(rep, c);
    return out;
}

TeKClass pushforward_finite(const std::function<Vec(const Vec&)>& map, const OrbitSpace& target,
                            const TeKClass& x) {
    if (x.parity() == Parity::odd) return TeKClass(target, Parity::odd);
    std::vector<std::pair<Vec, Int>> raw;
    raw.reserve(x.terms().size());
    for (const auto& [rep, c] : x.terms()) raw.emplace_back(map(rep), c);
    return TeKClass::from_weights(target, std::move(raw));
}

TeKClass q_sharp(const TorusMorphism& q, const Level& tau, const TeKClass& x) {
    require(q.is_finite_covering_matrix(), "NotCovering", "q_sharp needs a finite covering");
    require(q.target() == tau.torus(), "ShapeMismatch", "level must live on the covering target");
    require_positive(tau, "level");
    require(x.space() == orbit_space_of(tau), "ShapeMismatch", "input lives on the wrong orbit space");

    IntMat tdq = q.transposed_df();
    const int ns = q.source().rank;
    OrbitSpace intermediate =
        orbit_space_mod(tdq * tau.k(), ns, "weights mod tdq(K*Pi)");

    // Stage 1: push forward along lambda -> tdq(lambda); injective on orbits,
    // so this is a relabeling into the intermediate quotient.
    TeKClass mid = pushforward_finite([&](const Vec& rep) { return tdq.apply(rep); },
                                      intermediate, x);

    // Stage 2: pull back along the surjection r from the fine quotient,
    // copying each coefficient to every preimage class. The fiber of r over
    // [mu] is exactly { [mu + tdq(K m)] : m in Pi/dq(Pi') }, one fine class
    // per coset representative.
    PreparedCovering prepared(q, tau);
    if (x.parity() == Parity::odd) return TeKClass(prepared.target(), Parity::odd);
    std::vector<std::pair<Vec, Int>> raw;
    for (const auto& [mrep, c] : mid.terms())
        for (const Vec& s : prepared.shifts()) raw.emplace_back(vec_add(mrep, s), c);
    return TeKClass::from_weights(prepared.target(), std::move(raw));
}

TeKClass i1_sharp(const Level& tau1, const Level& tau2, const TeKClass& x) {
    Level prod = product_level(tau1, tau2);
    OrbitSpace prod_space = orbit_space_of(prod);
    require(x.space() == prod_space, "NotBlockDiagonal",
            "input must live on the orbit space of the block-diagonal product level");
    OrbitSpace s1 = orbit_space_of(tau1);
    OrbitSpace s2 = orbit_space_of(tau2);
    const int n1 = tau1.rank();

    // The splitting (tdi_1, tdi_2) must biject the product orbit set with the
    // product of the factor orbit sets. For a block level the splitting is a
    // group homomorphism with trivial kernel, so bijectivity reduces to the
    // counting identity; the terms actually touched are re-checked below.
    require(prod_space.size() == s1.size() * s2.size(), "SplitFailure",
            "product orbit count must factor");
    for (const auto& [rep, c] : x.terms()) {
        Vec first(rep.begin(), rep.begin() + n1);
        Vec second(rep.begin() + n1, rep.end());
        Vec glued(rep.size());
        Vec r1 = s1.reduce(first), r2 = s2.reduce(second);
        std::copy(r1.begin(), r1.end(), glued.begin());
        std::copy(r2.begin(), r2.end(), glued.begin() + n1);
        require(prod_space.reduce(glued) == rep, "SplitFailure",
                "product splitting failed to separate orbits");
    }

    return pushforward_finite(
        [&](const Vec& rep) { return Vec(rep.begin(), rep.begin() + n1); }, s1, x);
}

TeKClass f_sharp(const TorusMorphism& f, const Level& tau, const TeKClass& x) {
    require(f.is_local_injection_matrix(), "NotLocalInjection", "f_sharp needs a local injection");
    require_positive(tau, "level");
    MorphismDecomposition dec = decompose(f, tau);
    TeKClass stage1 = q_sharp(dec.fj, tau, x);
    TeKClass stage2 = i1_sharp(dec.split_first, dec.split_second, stage1);
    return q_sharp(dec.q, dec.split_first, stage2);
}

}  // namespace affchar
