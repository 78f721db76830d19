#include "affchar/orbit_char.hpp"

#include "affchar/errors.hpp"

#include <algorithm>

namespace affchar {

OrbitSpace orbit_space_of(const Level& tau) {
    require_positive(tau, "level");
    return OrbitSpace(quotient(tau.k(), tau.rank()), "weights mod K*Pi");
}

OrbitSpace orbit_space_mod(const IntMat& sublattice, int rank, std::string label) {
    return OrbitSpace(quotient(sublattice, rank), std::move(label));
}

std::vector<std::pair<Vec, Int>> reduce_and_merge(const OrbitSpace& space,
                                                  std::vector<std::pair<Vec, Int>>&& raw) {
    std::vector<std::pair<Vec, Int>> terms;
    terms.reserve(raw.size());
    for (auto& [w, c] : raw) {
        if (c == 0) continue;
        terms.emplace_back(space.reduce(w), std::move(c));
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return vec_cmp(a.first, b.first) < 0; });
    size_t out = 0;
    for (size_t i = 0; i < terms.size();) {
        size_t j = i + 1;
        Int sum = terms[i].second;
        while (j < terms.size() && vec_cmp(terms[j].first, terms[i].first) == 0)
            sum += terms[j++].second;
        if (sum != 0) terms[out++] = {std::move(terms[i].first), std::move(sum)};
        i = j;
    }
    terms.resize(out);
    return terms;
}

CharElement CharElement::basis(const OrbitSpace& space, const Vec& weight) {
    CharElement e(space);
    e.add(weight, Int(1));
    return e;
}

CharElement CharElement::from_weights(const OrbitSpace& space,
                                      std::vector<std::pair<Vec, Int>>&& raw) {
    CharElement e(space);
    e.terms_ = reduce_and_merge(space, std::move(raw));
    return e;
}

const Int& CharElement::coeff(const Vec& rep) const {
    static const Int zero(0);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), rep,
                               [](const auto& t, const Vec& r) { return vec_cmp(t.first, r) < 0; });
    if (it != terms_.end() && vec_cmp(it->first, rep) == 0) return it->second;
    return zero;
}

void CharElement::add(const Vec& weight, const Int& c) {
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

CharElement CharElement::operator+(const CharElement& rhs) const {
    require(space_ == rhs.space_, "ShapeMismatch", "sum of elements over different orbit spaces");
    CharElement out = *this;
    for (const auto& [rep, c] : rhs.terms_) out.add(rep, c);
    return out;
}

CharElement CharElement::operator*(const Int& c) const {
    CharElement out(space_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.second *= c;
    return out;
}

std::string CharElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        if (terms_[i].second != 1) s += terms_[i].second.get_str() + "*";
        s += vec_to_string(terms_[i].first);
    }
    return s;
}

std::vector<Vec> orbit_space(const Level& tau) {
    return orbit_space_of(tau).orbits();
}

namespace {

// Extends a basis-orbit map linearly over the terms of x.
CharElement extend_linearly(const CharElement& x, const OrbitSpace& target,
                            const std::function<CharElement(const Vec&)>& on_basis) {
    std::vector<std::pair<Vec, Int>> raw;
    for (const auto& [rep, c] : x.terms()) {
        CharElement img = on_basis(rep);
        for (const auto& [irep, ic] : img.terms()) raw.emplace_back(irep, ic * c);
    }
    return CharElement::from_weights(target, std::move(raw));
}

}  // namespace

PreparedLocalInjection::PreparedLocalInjection(const TorusMorphism& f, const Level& tau)
    : tdf_(f.transposed_df()) {
    require(f.is_local_injection_matrix(), "NotLocalInjection",
            "char_local_injection needs a local injection");
    require(f.target() == tau.torus(), "ShapeMismatch", "level must live on the morphism target");
    require_positive(tau, "level");
    Level pulled = pullback_level(f, tau);
    target_ = orbit_space_of(pulled);
    IntMat image_lattice = column_hermite_basis(tdf_ * tau.k());
    shifts_ = coset_reps_of_inclusion(pulled.k(), image_lattice);
}

CharElement PreparedLocalInjection::apply_basis(const Vec& weight) const {
    Vec base = tdf_.apply(weight);
    std::vector<std::pair<Vec, Int>> raw;
    raw.reserve(shifts_.size());
    for (const Vec& shift : shifts_) raw.emplace_back(vec_add(base, shift), Int(1));
    return CharElement::from_weights(target_, std::move(raw));
}

PreparedCovering::PreparedCovering(const TorusMorphism& q, const Level& tau)
    : tdq_(q.transposed_df()) {
    require(q.is_finite_covering_matrix(), "NotCovering", "finite covering required");
    require(q.target() == tau.torus(), "ShapeMismatch", "level must live on the covering target");
    require_positive(tau, "level");
    target_ = orbit_space_of(pullback_level(q, tau));
    reps_ = coset_reps_of_inclusion(q.f(), IntMat::identity(q.target().rank));
    shifts_.reserve(reps_.size());
    for (const Vec& m : reps_) shifts_.push_back(tdq_.apply(tau.k().apply(m)));
}

CharElement PreparedCovering::apply_basis(const Vec& weight) const {
    Vec base = tdq_.apply(weight);
    std::vector<std::pair<Vec, Int>> raw;
    raw.reserve(shifts_.size());
    for (const Vec& s : shifts_) raw.emplace_back(vec_add(base, s), Int(1));
    return CharElement::from_weights(target_, std::move(raw));
}

CharElement char_i1(const Level& tau1, const Level& tau2, const CharElement& x) {
    Level prod = product_level(tau1, tau2);
    OrbitSpace prod_space = orbit_space_of(prod);
    require(x.space() == prod_space, "NotBlockDiagonal",
            "input must live on the orbit space of the block-diagonal product level");
    OrbitSpace target = orbit_space_of(tau1);
    const int n1 = tau1.rank();
    return extend_linearly(x, target, [&](const Vec& rep) {
        Vec first(rep.begin(), rep.begin() + n1);
        return CharElement::basis(target, first);
    });
}

CharElement char_covering(const TorusMorphism& q, const Level& tau, const CharElement& x) {
    require(x.space() == orbit_space_of(tau), "ShapeMismatch",
            "input lives on the wrong orbit space");
    PreparedCovering prepared(q, tau);
    return extend_linearly(x, prepared.target(),
                           [&](const Vec& lambda) { return prepared.apply_basis(lambda); });
}

CharElement char_local_injection_basis(const TorusMorphism& f, const Level& tau, const Vec& weight) {
    return PreparedLocalInjection(f, tau).apply_basis(weight);
}

CharElement char_local_injection(const TorusMorphism& f, const Level& tau, const CharElement& x) {
    require(x.space() == orbit_space_of(tau), "ShapeMismatch",
            "input lives on the wrong orbit space");
    PreparedLocalInjection prepared(f, tau);
    return extend_linearly(x, prepared.target(),
                           [&](const Vec& rep) { return prepared.apply_basis(rep); });
}

FunctorialityReport verify_partial_functoriality(const TorusMorphism& f, const Level& tau) {
    MorphismDecomposition dec = decompose(f, tau);
    OrbitSpace source_space = orbit_space_of(tau);

    PreparedLocalInjection direct_map(f, tau);
    PreparedCovering fj_stage(dec.fj, tau);
    PreparedCovering q_stage(dec.q, dec.split_first);
    OrbitSpace mid_space = orbit_space_of(dec.split_first);
    const int ns = f.source().rank;

    FunctorialityReport report;
    for (const Vec& orbit : source_space.orbits()) {
        CharElement direct = direct_map.apply_basis(orbit);

        CharElement stage1 = fj_stage.apply_basis(orbit);
        std::vector<std::pair<Vec, Int>> projected;
        projected.reserve(stage1.terms().size());
        for (const auto& [rep, c] : stage1.terms())
            projected.emplace_back(Vec(rep.begin(), rep.begin() + ns), c);
        CharElement stage2 = CharElement::from_weights(mid_space, std::move(projected));
        std::vector<std::pair<Vec, Int>> raw;
        for (const auto& [rep, c] : stage2.terms()) {
            Vec base = q_stage.base_image(rep);
            for (const Vec& s : q_stage.shifts()) raw.emplace_back(vec_add(base, s), c);
        }
        CharElement composite = CharElement::from_weights(q_stage.target(), std::move(raw));

        report.orbits_checked += 1;
        if (direct != composite) {
            report.equal = false;
            report.mismatches.push_back({orbit, direct, composite});
        }
    }
    return report;
}

NonfunctorialityReport demo_nonfunctoriality() {
    NonfunctorialityReport r;
    Torus t1{1}, t2a{2}, t2b{2};
    r.tau = Level(t2b, IntMat::from_rows({{-1, 0}, {0, -1}}));
    r.f = TorusMorphism(t1, t2a, IntMat::from_rows({{1}, {-1}}), MorphismKind::local_injection);
    r.g = TorusMorphism(t2a, t2b, IntMat::from_rows({{1, 1}, {1, -1}}), MorphismKind::local_injection);
    r.h = TorusMorphism(t1, t2b, IntMat::from_rows({{0}, {2}}), MorphismKind::local_injection);
    r.g_star_tau = pullback_level(r.g, r.tau);
    r.h_star_tau = pullback_level(r.h, r.tau);

    OrbitSpace top = orbit_space_of(r.tau);
    CharElement zero_orbit = CharElement::basis(top, Vec(2, Int(0)));
    r.char_h = char_local_injection(r.h, r.tau, zero_orbit);
    r.char_g = char_local_injection(r.g, r.tau, zero_orbit);
    r.composite = char_local_injection(r.f, r.g_star_tau, r.char_g);
    r.factor_two = (r.composite == r.char_h * Int(2));
    return r;
}

}  // namespace affchar
