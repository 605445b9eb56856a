#pragma once

#include <gl2/characters.hpp>
#include <gl2/numtheory.hpp>
#include <gl2/rational.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace gl2 {

/** Central character datum: behavior on units plus the value at p. */
struct CentralCharacter {
    FiniteCharacter restriction;
    RootOfUnity at_uniformizer = RootOfUnity::one();

    long p() const { return restriction.group()->p(); }
    int conductor() const { return restriction.conductor(); }

    static CentralCharacter trivial(long p, int level = 2) {
        return {FiniteCharacter::trivial(UnitGroup::base(p, level)), RootOfUnity::one()};
    }
};

/**
 * Unramified-twist classes of tempered representations of GL2(Q_p).  Each
 * class is keyed by the unit behavior of its inducing data; the unramified
 * twist direction is quotiented out.
 */
enum class OrbitKind {
    PrincipalSeriesSame,      ///< chi x chi' with chi, chi' equal on units
    PrincipalSeriesDistinct,  ///< chi x chi' with distinct unit behavior
    SteinbergTwist,           ///< twists of the Steinberg representation
    DihedralSupercuspidal,    ///< induced from a quadratic-extension character
};

enum class QuadraticExtensionClass {
    None,                   ///< not a dihedral class
    Unramified,             ///< residue-field extension
    RamifiedScaleOne,       ///< pi^2 = p
    RamifiedScaleNonresidue ///< pi^2 = p u, u the smallest non-residue
};

struct TemperedOrbit {
    OrbitKind kind = OrbitKind::PrincipalSeriesSame;
    /** Unit behavior of the inducing character (both kinds of principal
        series and Steinberg); for distinct pairs this is the lex-smaller. */
    std::optional<FiniteCharacter> chi0;
    std::optional<FiniteCharacter> chi0_prime;  ///< lex-larger partner, distinct pairs only
    std::optional<FiniteCharacter> eta0;        ///< lex-smaller of the Galois pair, dihedral only
    QuadraticExtensionClass extension = QuadraticExtensionClass::None;
};

inline TemperedOrbit principal_series_orbit(FiniteCharacter chi0) {
    TemperedOrbit o;
    o.kind = OrbitKind::PrincipalSeriesSame;
    o.chi0 = std::move(chi0);
    return o;
}

inline TemperedOrbit principal_series_orbit(FiniteCharacter a, FiniteCharacter b) {
    if (a == b) throw std::invalid_argument("distinct-pair class needs two distinct characters");
    if (b < a) std::swap(a, b);
    TemperedOrbit o;
    o.kind = OrbitKind::PrincipalSeriesDistinct;
    o.chi0 = std::move(a);
    o.chi0_prime = std::move(b);
    return o;
}

inline TemperedOrbit steinberg_orbit(FiniteCharacter chi0) {
    TemperedOrbit o;
    o.kind = OrbitKind::SteinbergTwist;
    o.chi0 = std::move(chi0);
    return o;
}

inline TemperedOrbit dihedral_orbit(FiniteCharacter eta0) {
    const auto& g = eta0.group();
    QuadraticExtensionClass ext;
    if (g->kind() == RingKind::UnramifiedQuadratic) {
        ext = QuadraticExtensionClass::Unramified;
    } else if (g->kind() == RingKind::RamifiedQuadratic) {
        ext = g->unit_scale() == 1 ? QuadraticExtensionClass::RamifiedScaleOne
                                   : QuadraticExtensionClass::RamifiedScaleNonresidue;
    } else {
        throw std::invalid_argument("dihedral class needs a quadratic-extension character");
    }
    FiniteCharacter conj = eta0.galois_conjugate();
    if (conj == eta0)
        throw std::invalid_argument("Galois-fixed characters do not induce irreducibly");
    if (conj < eta0) eta0 = std::move(conj);
    TemperedOrbit o;
    o.kind = OrbitKind::DihedralSupercuspidal;
    o.eta0 = std::move(eta0);
    o.extension = ext;
    return o;
}

namespace detail {

using CharacterKey = std::tuple<int, long, int, long, std::vector<long>>;

inline CharacterKey character_key(const FiniteCharacter& c) {
    const auto& g = c.group();
    return {static_cast<int>(g->kind()), g->p(), g->level(), g->unit_scale(), c.exponents()};
}

inline std::vector<CharacterKey> orbit_key(const TemperedOrbit& o) {
    std::vector<CharacterKey> ks;
    if (o.chi0) ks.push_back(character_key(*o.chi0));
    if (o.chi0_prime) ks.push_back(character_key(*o.chi0_prime));
    if (o.eta0) ks.push_back(character_key(*o.eta0));
    return ks;
}

}  // namespace detail

inline bool operator==(const TemperedOrbit& x, const TemperedOrbit& y) {
    return x.kind == y.kind && x.extension == y.extension &&
           detail::orbit_key(x) == detail::orbit_key(y);
}

inline bool operator<(const TemperedOrbit& x, const TemperedOrbit& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.extension != y.extension) return x.extension < y.extension;
    return detail::orbit_key(x) < detail::orbit_key(y);
}

/** Equality of characters that may be presented at different truncation depths. */
inline bool same_character(const FiniteCharacter& x, const FiniteCharacter& y) {
    const auto& gx = x.group();
    const auto& gy = y.group();
    if (gx.get() == gy.get()) return x == y;
    if (gx->kind() != gy->kind() || gx->p() != gy->p() || gx->unit_scale() != gy->unit_scale())
        return false;
    if (gx->level() < gy->level()) return x.lift_to(gy) == y;
    return y.lift_to(gx) == x;
}

/** Exponent of the arithmetic conductor, constant across the class. */
inline long orbit_conductor(const TemperedOrbit& o) {
    switch (o.kind) {
        case OrbitKind::PrincipalSeriesSame:
            return 2 * o.chi0->conductor();
        case OrbitKind::PrincipalSeriesDistinct:
            return o.chi0->conductor() + o.chi0_prime->conductor();
        case OrbitKind::SteinbergTwist: {
            long c = o.chi0->conductor();
            return c == 0 ? 1 : 2 * c;
        }
        case OrbitKind::DihedralSupercuspidal: {
            long c = o.eta0->conductor();
            return o.eta0->group()->kind() == RingKind::UnramifiedQuadratic ? 2 * c : c + 1;
        }
    }
    throw std::logic_error("unreachable");
}

/** The unit behavior every member of the class forces on the center. */
inline FiniteCharacter central_restriction(const TemperedOrbit& o) {
    switch (o.kind) {
        case OrbitKind::PrincipalSeriesSame:
        case OrbitKind::SteinbergTwist:
            return o.chi0->square();
        case OrbitKind::PrincipalSeriesDistinct:
            return *o.chi0 * *o.chi0_prime;
        case OrbitKind::DihedralSupercuspidal: {
            FiniteCharacter r = o.eta0->restrict_to_base();
            if (o.eta0->group()->kind() == RingKind::UnramifiedQuadratic) return r;
            return quadratic_character(o.eta0->group()->base_group()) * r;
        }
    }
    throw std::logic_error("unreachable");
}

/**
 * Minimal conductor of eta twisted by norm pullbacks of base characters at
 * the presentation depth.  For ramified extensions the minimum is even.
 */
inline long supercuspidal_alpha(const FiniteCharacter& eta0) {
    const auto& g = eta0.group();
    if (g->kind() == RingKind::Base)
        throw std::invalid_argument("twist-minimal conductor needs a quadratic-extension character");
    if (eta0.galois_conjugate() == eta0)
        throw std::invalid_argument("Galois-fixed characters do not induce irreducibly");
    long best = std::numeric_limits<long>::max();
    for_each_character(g->base_group(), [&](const FiniteCharacter& chi) {
        long c = (eta0 * FiniteCharacter::norm_pullback(chi, g)).conductor();
        best = std::min(best, c);
    });
    if (g->kind() == RingKind::RamifiedQuadratic && best % 2 != 0)
        throw std::logic_error("twist-minimal conductor of a ramified datum must be even");
    return best;
}

enum class SliceShape { Circle, Points };

/**
 * The fixed-central-character slice through one twist class: a full circle
 * of unramified twists or finitely many points, with its Plancherel mass.
 */
struct OrbitSlice {
    TemperedOrbit orbit;
    long conductor = 0;
    SliceShape shape = SliceShape::Circle;
    long point_count = 1;
    Rational mass_per_point = 0;

    Rational total_mass() const { return mass_per_point * point_count; }
};

inline OrbitSlice fixed_central_slice(const TemperedOrbit& o) {
    OrbitSlice s;
    s.orbit = o;
    s.conductor = orbit_conductor(o);
    switch (o.kind) {
        case OrbitKind::PrincipalSeriesSame:
            s.shape = SliceShape::Circle;
            s.point_count = 1;
            s.mass_per_point = 1;
            break;
        case OrbitKind::PrincipalSeriesDistinct: {
            long q = o.chi0->group()->p();
            long c = (o.chi0->inverse() * *o.chi0_prime).conductor();
            s.shape = SliceShape::Circle;
            s.point_count = 1;
            s.mass_per_point = Rational(q + 1) * rational_pow(q, c - 1);
            break;
        }
        case OrbitKind::SteinbergTwist: {
            long q = o.chi0->group()->p();
            s.shape = SliceShape::Points;
            s.point_count = 2;
            s.mass_per_point = Rational(q - 1) / 2;
            break;
        }
        case OrbitKind::DihedralSupercuspidal: {
            long q = o.eta0->group()->p();
            long a = supercuspidal_alpha(*o.eta0);
            s.shape = SliceShape::Points;
            if (o.eta0->group()->kind() == RingKind::UnramifiedQuadratic) {
                s.point_count = 1;
                s.mass_per_point = Rational(q - 1) * rational_pow(q, a - 1);
            } else {
                s.point_count = 2;
                s.mass_per_point = Rational(q * q - 1) / 2 * rational_pow(q, a / 2 - 1);
            }
            break;
        }
    }
    return s;
}

/**
 * All slices of conductor at most max_conductor compatible with the given
 * central character, sorted by conductor then class key.  Supported up to
 * conductor 4.
 */
inline std::vector<OrbitSlice> enumerate_slices(long p, const CentralCharacter& omega,
                                                int max_conductor) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (max_conductor < 0 || max_conductor > 4)
        throw std::invalid_argument("conductor bound must lie in [0, 4]");
    const FiniteCharacter& w0 = omega.restriction;
    if (w0.group()->kind() != RingKind::Base || w0.group()->p() != p)
        throw std::invalid_argument("central character must live on the base-field units");

    int base_level = std::max({2, std::min(max_conductor, 4), w0.group()->level()});
    auto B = UnitGroup::base(p, base_level);
    FiniteCharacter w = w0.lift_to(B);

    std::vector<OrbitSlice> out;
    auto emit = [&](const TemperedOrbit& o) {
        if (orbit_conductor(o) <= max_conductor) out.push_back(fixed_central_slice(o));
    };

    for_each_character(B, [&](const FiniteCharacter& chi0) {
        if (chi0.square() == w) {
            emit(principal_series_orbit(chi0));
            emit(steinberg_orbit(chi0));
        }
        FiniteCharacter partner = w * chi0.inverse();
        if (partner != chi0 && chi0 < partner &&
            chi0.conductor() + partner.conductor() <= max_conductor)
            emit(principal_series_orbit(chi0, partner));
    });

    if (max_conductor >= 2) {
        auto U = UnitGroup::unramified_quadratic(p, max_conductor >= 4 ? 2 : 1);
        for_each_character(U, [&](const FiniteCharacter& eta) {
            if (2 * eta.conductor() > max_conductor) return;
            FiniteCharacter conj = eta.galois_conjugate();
            if (conj == eta || conj < eta) return;
            if (!same_character(eta.restrict_to_base(), w)) return;
            emit(dihedral_orbit(eta));
        });
    }

    if (max_conductor >= 3) {
        for (long scale : {1L, smallest_nonresidue(p)}) {
            auto R = UnitGroup::ramified_quadratic(p, max_conductor >= 4 ? 4 : 2, scale);
            FiniteCharacter quad = quadratic_character(R->base_group());
            for_each_character(R, [&](const FiniteCharacter& eta) {
                if (eta.conductor() + 1 > max_conductor) return;
                FiniteCharacter conj = eta.galois_conjugate();
                if (conj == eta || conj < eta) return;
                if (!same_character(quad * eta.restrict_to_base(), w)) return;
                emit(dihedral_orbit(eta));
            });
        }
    }

    std::sort(out.begin(), out.end(), [](const OrbitSlice& a, const OrbitSlice& b) {
        if (a.conductor != b.conductor) return a.conductor < b.conductor;
        return a.orbit < b.orbit;
    });
    return out;
}

struct MassCheckResult {
    Rational lhs;
    Rational rhs;
    bool holds = false;
};

/**
 * Total slice mass through conductor r, each slice weighted by its count of
 * depth-r old vectors, against the closed form q^{r-1}(q+1) (1 when r = 0).
 */
inline MassCheckResult mass_identity_check(long p, int r, const CentralCharacter& omega) {
    if (r < 0 || r > 4) throw std::invalid_argument("depth must lie in [0, 4]");
    if (omega.conductor() > r)
        throw std::invalid_argument("central character conductor must be at most the depth");
    Rational lhs = 0;
    for (const OrbitSlice& s : enumerate_slices(p, omega, r))
        lhs += s.total_mass() * (r - s.conductor + 1);
    Rational rhs = r == 0 ? Rational(1) : Rational(p + 1) * rational_pow(p, r - 1);
    return {lhs, rhs, lhs == rhs};
}

/**
 * Every twist class with conductor in [min_conductor, max_conductor], over
 * all central characters.  Supported up to conductor 4.
 */
inline std::vector<TemperedOrbit> enumerate_orbits(long p, int min_conductor, int max_conductor) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (min_conductor < 0 || min_conductor > max_conductor || max_conductor > 4)
        throw std::invalid_argument("conductor range must satisfy 0 <= min <= max <= 4");

    auto B = UnitGroup::base(p, std::max(2, std::min(max_conductor, 4)));
    std::vector<TemperedOrbit> out;
    auto keep = [&](TemperedOrbit o) {
        long c = orbit_conductor(o);
        if (c >= min_conductor && c <= max_conductor) out.push_back(std::move(o));
    };

    std::vector<std::vector<FiniteCharacter>> by_conductor(max_conductor + 1);
    for_each_character(B, [&](const FiniteCharacter& chi0) {
        keep(principal_series_orbit(chi0));
        keep(steinberg_orbit(chi0));
        int c = chi0.conductor();
        if (c <= max_conductor) by_conductor[c].push_back(chi0);
    });
    for (int ca = 0; ca <= max_conductor; ++ca) {
        for (int cb = ca; ca + cb <= max_conductor; ++cb) {
            if (ca + cb < min_conductor) continue;
            const auto& lo = by_conductor[ca];
            if (ca < cb) {
                for (const auto& x : lo)
                    for (const auto& y : by_conductor[cb]) keep(principal_series_orbit(x, y));
            } else {
                for (size_t i = 0; i < lo.size(); ++i)
                    for (size_t j = i + 1; j < lo.size(); ++j)
                        keep(principal_series_orbit(lo[i], lo[j]));
            }
        }
    }

    if (max_conductor >= 2) {
        auto U = UnitGroup::unramified_quadratic(p, max_conductor >= 4 ? 2 : 1);
        for_each_character(U, [&](const FiniteCharacter& eta) {
            if (2 * eta.conductor() > max_conductor) return;
            FiniteCharacter conj = eta.galois_conjugate();
            if (conj == eta || conj < eta) return;
            keep(dihedral_orbit(eta));
        });
    }
    if (max_conductor >= 3) {
        for (long scale : {1L, smallest_nonresidue(p)}) {
            auto R = UnitGroup::ramified_quadratic(p, max_conductor >= 4 ? 4 : 2, scale);
            for_each_character(R, [&](const FiniteCharacter& eta) {
                if (eta.conductor() + 1 > max_conductor) return;
                FiniteCharacter conj = eta.galois_conjugate();
                if (conj == eta || conj < eta) return;
                keep(dihedral_orbit(eta));
            });
        }
    }

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gl2
