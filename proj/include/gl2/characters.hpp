#pragma once

// Characters of truncated unit groups of Q_p and its quadratic extensions.
//
// Three rings appear, all with p an odd prime:
//   Base      (Z/p^m)^x                      elements a,        a mod p^m
//   UnramQuad ((Z/p^m)[x]/(x^2 - n))^x       elements a + b x,  n a non-residue
//   RamQuad   (O'/pi^l)^x, pi^2 = p n'       elements a + b pi, l even
//
// Every group is presented by an explicit generator list with known orders
// whose cyclic factors form a direct product; a full discrete-log table is
// built by enumerating all exponent combinations, and the required bijection
// is asserted during construction (a collision would mean the presentation is
// wrong, not that input data is bad).  Characters are stored as integer
// exponent vectors against that fixed basis, so products, inverses, Galois
// twists, restrictions and norm pullbacks are all exact integer arithmetic.

#include "gl2/numtheory.hpp"
#include "gl2/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace gl2 {

/** e^{2 pi i t} stored as the exact exponent t in [0,1). */
struct RootOfUnity {
    Rational exponent;  // reduced mod 1

    static Rational mod1(const Rational& x) {
        Integer fl = num(x) >= 0 ? num(x) / den(x) : (num(x) - den(x) + 1) / den(x);
        return x - Rational(fl);
    }
    static RootOfUnity from(const Rational& t) { return RootOfUnity{mod1(t)}; }
    static RootOfUnity one() { return RootOfUnity{0}; }

    bool is_one() const { return exponent == 0; }
    long order() const { return static_cast<long>(den(exponent).convert_to<long long>()); }

    RootOfUnity operator*(const RootOfUnity& o) const { return from(exponent + o.exponent); }
    RootOfUnity inverse() const { return from(-exponent); }
    RootOfUnity power(long e) const { return from(exponent * e); }

    friend bool operator==(const RootOfUnity& x, const RootOfUnity& y) {
        return x.exponent == y.exponent;
    }
    friend bool operator!=(const RootOfUnity& x, const RootOfUnity& y) { return !(x == y); }
    friend bool operator<(const RootOfUnity& x, const RootOfUnity& y) {
        return x.exponent < y.exponent;
    }
};

enum class RingKind { Base, UnramifiedQuadratic, RamifiedQuadratic };

/** Coordinates (a, b) of a unit; b = 0 for base-ring elements. */
struct UnitElem {
    long a = 1, b = 0;
    friend bool operator==(const UnitElem& x, const UnitElem& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const UnitElem& x, const UnitElem& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    }
};

class UnitGroup {
public:
    static std::shared_ptr<const UnitGroup> base(long p, int level);
    static std::shared_ptr<const UnitGroup> unramified_quadratic(long p, int level);
    /** unit_scale is n' in pi^2 = p n'; pi_level must be even (2 or 4). */
    static std::shared_ptr<const UnitGroup> ramified_quadratic(long p, int pi_level, long unit_scale);

    RingKind kind() const { return kind_; }
    long p() const { return p_; }
    /** Truncation depth: p-level for Base/UnramQuad, pi-level for RamQuad. */
    int level() const { return level_; }
    long unit_scale() const { return scale_; }
    long order() const { return order_; }
    size_t generator_count() const { return gens_.size(); }
    const std::vector<UnitElem>& generators() const { return gens_; }
    const std::vector<long>& generator_orders() const { return orders_; }
    long lcm_of_orders() const { return lcm_; }
    std::shared_ptr<const UnitGroup> base_group() const { return base_; }
    long coord_modulus_a() const { return mod_a_; }
    long coord_modulus_b() const { return mod_b_; }

    bool is_unit(long a, long b) const {
        a %= p_;
        b %= p_;
        if (kind_ == RingKind::RamifiedQuadratic) return a != 0;
        return a != 0 || b != 0;
    }

    UnitElem make(long a, long b) const {
        a %= mod_a_;
        if (a < 0) a += mod_a_;
        b %= mod_b_;
        if (b < 0) b += mod_b_;
        if (!is_unit(a, b)) throw std::domain_error("not a unit of the truncated ring");
        return UnitElem{a, b};
    }

    UnitElem one() const { return UnitElem{1, 0}; }

    UnitElem mul(UnitElem x, UnitElem y) const {
        long a, b;
        switch (kind_) {
            case RingKind::Base:
                a = x.a * y.a % mod_a_;
                b = 0;
                break;
            case RingKind::UnramifiedQuadratic:
                a = (x.a * y.a + x.b * y.b % mod_a_ * scale_) % mod_a_;
                b = (x.a * y.b + x.b * y.a) % mod_b_;
                break;
            case RingKind::RamifiedQuadratic:
                a = (x.a * y.a + x.b * y.b % mod_a_ * (p_ * scale_ % mod_a_)) % mod_a_;
                b = (x.a * y.b + x.b * y.a) % mod_b_;
                break;
            default:
                throw std::logic_error("bad ring kind");
        }
        return UnitElem{a % mod_a_, b};
    }

    UnitElem pow(UnitElem x, long long e) const {
        e %= order_;
        if (e < 0) e += order_;
        UnitElem r = one();
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    UnitElem inverse(UnitElem x) const { return pow(x, order_ - 1); }

    /** Nontrivial Galois automorphism; negates x (unramified) or pi (ramified). */
    UnitElem galois_sigma(UnitElem x) const {
        require_quadratic();
        return UnitElem{x.a, x.b == 0 ? 0 : mod_b_ - x.b};
    }

    /** x * sigma(x), landing in the base group's coordinates. */
    UnitElem norm_to_base(UnitElem x) const {
        require_quadratic();
        long twist = kind_ == RingKind::UnramifiedQuadratic ? scale_ : p_ * scale_;
        long a = (x.a * x.a - x.b * x.b % mod_a_ * (twist % mod_a_)) % mod_a_;
        return base_->make(a, 0);
    }

    UnitElem embed_from_base(UnitElem x) const {
        require_quadratic();
        return make(x.a, 0);
    }

    /** Reduce an element of the same ring at a deeper truncation to this level. */
    UnitElem reduce_from_higher(const UnitGroup& high, UnitElem x) const {
        if (high.kind_ != kind_ || high.p_ != p_ || high.scale_ != scale_ || high.level_ < level_)
            throw std::invalid_argument("reduction requires the same ring at deeper level");
        return make(x.a, x.b);
    }

    const std::vector<long>& dlog(UnitElem x) const {
        auto it = index_.find(key(x));
        if (it == index_.end()) throw std::domain_error("element not in unit group table");
        return exps_[it->second];
    }

    long element_order(UnitElem x) const {
        long ord = order_;
        long n = order_;
        for (long d = 2; d * d <= n; ++d) {
            while (n % d == 0) n /= d;
            while (ord % d == 0 && pow(x, ord / d) == one()) ord /= d;
        }
        if (n > 1)
            while (ord % n == 0 && pow(x, ord / n) == one()) ord /= n;
        return ord;
    }

    struct FiltrationGen {
        int depth;  // generates the layer 1 + pi^depth modulo deeper layers
        UnitElem g;
        std::vector<long> dlog;
    };
    /** Generators of the principal-unit filtration, depths 1..level-1. */
    const std::vector<FiltrationGen>& filtration_generators() const { return filt_; }

    /**
     * Numerator mod lcm_of_orders() of the additive character exponent
     * sum_i k_i * d_i / n_i, for a character's exponent vector k against a
     * discrete log d.  The value is the root of unity e^{2 pi i num/L}.
     */
    long pairing_numerator(const std::vector<long>& char_exps, const std::vector<long>& dl) const {
        __int128 acc = 0;
        for (size_t i = 0; i < orders_.size(); ++i)
            acc += static_cast<__int128>(char_exps[i]) * dl[i] * (lcm_ / orders_[i]);
        long r = static_cast<long>(acc % lcm_);
        return r < 0 ? r + lcm_ : r;
    }

    /** Conductor of the character given by an exponent vector. */
    int conductor_of(const std::vector<long>& char_exps) const {
        int deepest = 0;
        for (const auto& fg : filt_)
            if (fg.depth > deepest && pairing_numerator(char_exps, fg.dlog) != 0)
                deepest = fg.depth;
        if (deepest > 0) return deepest + 1;
        bool trivial = std::all_of(char_exps.begin(), char_exps.end(),
                                   [](long k) { return k == 0; });
        return trivial ? 0 : 1;
    }

private:
    RingKind kind_;
    long p_;
    int level_;
    long scale_;  // n (unram), n' (ram), 0 (base)
    long mod_a_, mod_b_;
    long order_;
    long lcm_;
    std::vector<UnitElem> gens_;
    std::vector<long> orders_;
    std::shared_ptr<const UnitGroup> base_;
    std::vector<FiltrationGen> filt_;
    std::unordered_map<long long, uint32_t> index_;
    std::vector<std::vector<long>> exps_;

    UnitGroup(RingKind kind, long p, int level, long scale)
        : kind_(kind), p_(p), level_(level), scale_(scale) {}

    void require_quadratic() const {
        if (kind_ == RingKind::Base)
            throw std::domain_error("operation requires a quadratic-extension ring");
    }

    long long key(UnitElem x) const {
        return static_cast<long long>(x.a) * mod_b_ + x.b;
    }

    long pow_long(long base, int e) const {
        long r = 1;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    }

    /** pi^d in (a, b) coordinates, for the ramified ring. */
    UnitElem pi_power_coords(int d) const {
        long c = 1;  // (p n')^{floor(d/2)}
        for (int i = 0; i < d / 2; ++i) c = c * (p_ * scale_) % mod_a_;
        if (d % 2 == 0) return UnitElem{c, 0};
        return UnitElem{0, c % mod_b_};
    }

    void add_filtration_gen(int depth, UnitElem g) {
        filt_.push_back(FiltrationGen{depth, g, dlog(g)});
    }

    void verify_generator_order(size_t i) const {
        if (pow(gens_[i], orders_[i]) != one())
            throw std::logic_error("generator order too small");
        long n = orders_[i];
        for (long d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                if (pow(gens_[i], orders_[i] / d) == one())
                    throw std::logic_error("generator order not minimal");
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1 && pow(gens_[i], orders_[i] / n) == one())
            throw std::logic_error("generator order not minimal");
    }

    void build_table() {
        long predicted = 1;
        for (long n : orders_) predicted *= n;
        if (predicted != order_)
            throw std::logic_error("generator orders do not multiply to the group order");
        for (size_t i = 0; i < gens_.size(); ++i) verify_generator_order(i);

        lcm_ = 1;
        for (long n : orders_) lcm_ = std::lcm(lcm_, n);

        size_t ng = gens_.size();
        std::vector<long> e(ng, 0);
        std::vector<UnitElem> partial(ng + 1, one());  // partial[i] = prod_{j<i} g_j^{e_j}
        index_.reserve(static_cast<size_t>(order_) * 2);
        exps_.reserve(order_);
        while (true) {
            UnitElem cur = partial[ng];
            auto [it, inserted] = index_.emplace(key(cur), static_cast<uint32_t>(exps_.size()));
            if (!inserted)
                throw std::logic_error("presentation is not a direct product basis (collision)");
            exps_.push_back(e);
            int i = static_cast<int>(ng) - 1;
            while (i >= 0 && e[i] + 1 == orders_[i]) {
                e[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++e[i];
            partial[i + 1] = mul(partial[i + 1], gens_[i]);
            for (size_t j = i + 1; j < ng; ++j) partial[j + 1] = partial[j];
        }
        if (exps_.size() != static_cast<size_t>(order_))
            throw std::logic_error("unit group enumeration incomplete");
    }

    static std::shared_ptr<const UnitGroup> get_or_build(RingKind k, long p, int level, long scale);
    void construct();
};

inline std::shared_ptr<const UnitGroup> UnitGroup::get_or_build(RingKind k, long p, int level,
                                                                long scale) {
    static std::map<std::tuple<int, long, int, long>, std::shared_ptr<const UnitGroup>> cache;
    static std::recursive_mutex m;  // recursive: quadratic rings build their base ring
    std::lock_guard<std::recursive_mutex> lock(m);
    auto& slot = cache[std::make_tuple(static_cast<int>(k), p, level, scale)];
    if (!slot) {
        auto g = std::shared_ptr<UnitGroup>(new UnitGroup(k, p, level, scale));
        g->construct();
        slot = g;
    }
    return slot;
}

inline void UnitGroup::construct() {
    switch (kind_) {
        case RingKind::Base: {
            mod_a_ = pow_long(p_, level_);
            mod_b_ = 1;
            order_ = euler_phi(mod_a_);
            gens_ = {UnitElem{primitive_root(p_, level_), 0}};
            orders_ = {order_};
            build_table();
            for (int d = 1; d < level_; ++d)
                add_filtration_gen(d, make(1 + pow_long(p_, d), 0));
            break;
        }
        case RingKind::UnramifiedQuadratic: {
            long pm = pow_long(p_, level_);
            mod_a_ = mod_b_ = pm;
            order_ = pow_long(p_, 2 * (level_ - 1)) * (p_ * p_ - 1);
            base_ = UnitGroup::base(p_, level_);
            // Lexicographically smallest element of maximal prime-to-p order
            // generates a complement of the principal units.
            long target = p_ * p_ - 1;
            UnitElem g1{0, 0};
            bool found = false;
            for (long a = 0; a < pm && !found; ++a)
                for (long b = 0; b < pm && !found; ++b) {
                    if (!is_unit(a, b)) continue;
                    UnitElem cand{a, b};
                    // cheap pre-filter before the full order computation
                    if (pow(cand, target) != one()) continue;
                    if (element_order(cand) == target) {
                        g1 = cand;
                        found = true;
                    }
                }
            if (!found) throw std::logic_error("no residue-field generator found");
            gens_ = {g1};
            orders_ = {target};
            for (int d = 1; d < level_; ++d) {
                gens_.push_back(make(1 + pow_long(p_, d), 0));
                orders_.push_back(pow_long(p_, level_ - d));
                gens_.push_back(make(1, pow_long(p_, d)));
                orders_.push_back(pow_long(p_, level_ - d));
            }
            build_table();
            for (int d = 1; d < level_; ++d) {
                add_filtration_gen(d, make(1 + pow_long(p_, d), 0));
                add_filtration_gen(d, make(1, pow_long(p_, d)));
            }
            break;
        }
        case RingKind::RamifiedQuadratic: {
            if (level_ % 2 != 0 || level_ < 2)
                throw std::invalid_argument("ramified truncation level must be even and >= 2");
            long ph = pow_long(p_, level_ / 2);
            mod_a_ = mod_b_ = ph;
            order_ = pow_long(p_, level_ - 1) * (p_ - 1);
            base_ = UnitGroup::base(p_, level_ / 2);
            // Teichmueller part: a base primitive root raised to p^{level-1}
            // kills the principal-unit component and leaves order p - 1.
            UnitElem teich = pow(make(primitive_root(p_, level_ / 2), 0), pow_long(p_, level_ - 1));
            gens_ = {teich};
            orders_ = {p_ - 1};
            // Principal units: successive 1 + pi^d until the order fills up.
            long want = pow_long(p_, level_ - 1);
            long have = 1;
            for (int d = 1; d < level_ && have < want; ++d) {
                UnitElem u = pi_power_coords(d);
                UnitElem g = make(1 + u.a, u.b);
                long ord = element_order(g);
                if (ord == 1) continue;
                gens_.push_back(g);
                orders_.push_back(ord);
                have *= ord;
            }
            if (have != want)
                throw std::logic_error("principal-unit generators incomplete for ramified ring");
            build_table();
            for (int d = 1; d < level_; ++d) {
                UnitElem u = pi_power_coords(d);
                add_filtration_gen(d, make(1 + u.a, u.b));
            }
            break;
        }
    }
}

inline std::shared_ptr<const UnitGroup> UnitGroup::base(long p, int level) {
    if (!is_prime(p) || p == 2 || level < 1) throw std::invalid_argument("need odd prime, level >= 1");
    return get_or_build(RingKind::Base, p, level, 0);
}

inline std::shared_ptr<const UnitGroup> UnitGroup::unramified_quadratic(long p, int level) {
    if (!is_prime(p) || p == 2 || level < 1) throw std::invalid_argument("need odd prime, level >= 1");
    return get_or_build(RingKind::UnramifiedQuadratic, p, level, smallest_nonresidue(p));
}

inline std::shared_ptr<const UnitGroup> UnitGroup::ramified_quadratic(long p, int pi_level,
                                                                      long unit_scale) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("need odd prime");
    if (unit_scale != 1 && unit_scale != smallest_nonresidue(p))
        throw std::invalid_argument("unit_scale must be 1 or the smallest non-residue");
    return get_or_build(RingKind::RamifiedQuadratic, p, pi_level, unit_scale);
}

class FiniteCharacter {
public:
    FiniteCharacter(std::shared_ptr<const UnitGroup> group, std::vector<long> exps)
        : group_(std::move(group)), k_(std::move(exps)) {
        if (k_.size() != group_->generator_count())
            throw std::invalid_argument("exponent count mismatch");
        const auto& n = group_->generator_orders();
        for (size_t i = 0; i < k_.size(); ++i) {
            k_[i] %= n[i];
            if (k_[i] < 0) k_[i] += n[i];
        }
    }

    static FiniteCharacter trivial(std::shared_ptr<const UnitGroup> group) {
        size_t ng = group->generator_count();
        return FiniteCharacter(std::move(group), std::vector<long>(ng, 0));
    }

    const std::shared_ptr<const UnitGroup>& group() const { return group_; }
    const std::vector<long>& exponents() const { return k_; }

    /** Exponent on generator i as a fraction k_i / n_i in [0, 1). */
    Rational exponent_fraction(size_t i) const {
        return Rational(k_[i], group_->generator_orders()[i]);
    }

    RootOfUnity operator()(UnitElem x) const {
        long numr = group_->pairing_numerator(k_, group_->dlog(x));
        return RootOfUnity::from(Rational(numr, group_->lcm_of_orders()));
    }

    bool is_trivial() const {
        return std::all_of(k_.begin(), k_.end(), [](long k) { return k == 0; });
    }

    long order() const {
        long o = 1;
        const auto& n = group_->generator_orders();
        for (size_t i = 0; i < k_.size(); ++i) o = std::lcm(o, n[i] / std::gcd(k_[i], n[i]));
        return o;
    }

    int conductor() const { return group_->conductor_of(k_); }

    FiniteCharacter operator*(const FiniteCharacter& o) const {
        require_same_group(o);
        std::vector<long> r(k_.size());
        const auto& n = group_->generator_orders();
        for (size_t i = 0; i < k_.size(); ++i) r[i] = (k_[i] + o.k_[i]) % n[i];
        return FiniteCharacter(group_, std::move(r));
    }

    FiniteCharacter inverse() const {
        std::vector<long> r(k_.size());
        const auto& n = group_->generator_orders();
        for (size_t i = 0; i < k_.size(); ++i) r[i] = k_[i] == 0 ? 0 : n[i] - k_[i];
        return FiniteCharacter(group_, std::move(r));
    }

    FiniteCharacter power(long e) const {
        std::vector<long> r(k_.size());
        const auto& n = group_->generator_orders();
        for (size_t i = 0; i < k_.size(); ++i) {
            long v = static_cast<long>(static_cast<__int128>(k_[i]) * (e % n[i]) % n[i]);
            r[i] = v < 0 ? v + n[i] : v;
        }
        return FiniteCharacter(group_, std::move(r));
    }

    FiniteCharacter square() const { return *this * *this; }

    /**
     * Transport through a homomorphism f: H -> G presented by the discrete
     * logs (in G) of H's generators: returns chi o f as a character of H.
     */
    FiniteCharacter transport(std::shared_ptr<const UnitGroup> target,
                              const std::vector<std::vector<long>>& gen_images) const {
        const auto& nH = target->generator_orders();
        if (gen_images.size() != nH.size()) throw std::invalid_argument("image count mismatch");
        long L = group_->lcm_of_orders();
        std::vector<long> r(nH.size());
        for (size_t i = 0; i < nH.size(); ++i) {
            long numr = group_->pairing_numerator(k_, gen_images[i]);
            __int128 scaled = static_cast<__int128>(numr) * nH[i];
            if (scaled % L != 0)
                throw std::logic_error("transported value is not an n-th root of unity");
            r[i] = static_cast<long>(scaled / L % nH[i]);
        }
        return FiniteCharacter(target, std::move(r));
    }

    /** chi o sigma for the nontrivial Galois automorphism of a quadratic ring. */
    FiniteCharacter galois_conjugate() const {
        if (group_->kind() == RingKind::Base)
            throw std::domain_error("galois conjugation needs a quadratic-extension character");
        std::vector<std::vector<long>> images;
        for (UnitElem g : group_->generators())
            images.push_back(group_->dlog(group_->galois_sigma(g)));
        return transport(group_, images);
    }

    /** Restriction of a quadratic-ring character to the embedded base units. */
    FiniteCharacter restrict_to_base() const {
        auto b = group_->base_group();
        if (!b) throw std::domain_error("restriction needs a quadratic-extension character");
        std::vector<std::vector<long>> images;
        for (UnitElem g : b->generators())
            images.push_back(group_->dlog(group_->embed_from_base(g)));
        return transport(b, images);
    }

    /** Re-present at a deeper truncation of the same ring. */
    FiniteCharacter lift_to(std::shared_ptr<const UnitGroup> higher) const {
        if (higher.get() == group_.get()) return *this;
        std::vector<std::vector<long>> images;
        for (UnitElem g : higher->generators())
            images.push_back(group_->dlog(group_->reduce_from_higher(*higher, g)));
        return transport(higher, images);
    }

    /** chi0 o Norm as a character of the quadratic-ring units. */
    static FiniteCharacter norm_pullback(const FiniteCharacter& base_char,
                                         std::shared_ptr<const UnitGroup> ext) {
        if (ext->base_group().get() != base_char.group().get())
            throw std::invalid_argument("norm pullback needs the matching base group");
        std::vector<std::vector<long>> images;
        for (UnitElem g : ext->generators())
            images.push_back(base_char.group()->dlog(ext->norm_to_base(g)));
        return base_char.transport(ext, images);
    }

    friend bool operator==(const FiniteCharacter& x, const FiniteCharacter& y) {
        return x.group_.get() == y.group_.get() && x.k_ == y.k_;
    }
    friend bool operator!=(const FiniteCharacter& x, const FiniteCharacter& y) {
        return !(x == y);
    }
    /** Lexicographic on exponent vectors; only meaningful within one group. */
    friend bool operator<(const FiniteCharacter& x, const FiniteCharacter& y) {
        return x.k_ < y.k_;
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<long> k_;

    void require_same_group(const FiniteCharacter& o) const {
        if (group_.get() != o.group_.get())
            throw std::invalid_argument("characters live on different groups");
    }
};

/** Visit every character of the group in lexicographic exponent order. */
inline void for_each_character(const std::shared_ptr<const UnitGroup>& g,
                               const std::function<void(const FiniteCharacter&)>& fn) {
    const auto& n = g->generator_orders();
    std::vector<long> e(n.size(), 0);
    while (true) {
        fn(FiniteCharacter(g, e));
        int i = static_cast<int>(n.size()) - 1;
        while (i >= 0 && e[i] + 1 == n[i]) {
            e[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++e[i];
    }
}

inline std::vector<FiniteCharacter> all_characters(const std::shared_ptr<const UnitGroup>& g) {
    std::vector<FiniteCharacter> out;
    out.reserve(g->order());
    for_each_character(g, [&](const FiniteCharacter& c) { out.push_back(c); });
    return out;
}

/** The order-2 character of (Z/p^m)^x (quadratic residue symbol lifted). */
inline FiniteCharacter quadratic_character(const std::shared_ptr<const UnitGroup>& g) {
    if (g->kind() != RingKind::Base) throw std::invalid_argument("base group expected");
    return FiniteCharacter(g, {g->generator_orders()[0] / 2});
}

}  // namespace gl2
