#include "quasivar/demorgan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "quasivar/canonical.hpp"
#include "quasivar/congruence.hpp"
#include "quasivar/formats.hpp"
#include "quasivar/morphisms.hpp"

namespace qv {

Signature const& dmm_signature() {
    static Signature const s({{"fuse", 2}, {"meet", 2}, {"join", 2}, {"neg", 1}, {"e", 0}});
    return s;
}

Signature const& dunn_signature() {
    static Signature const s({{"fuse", 2}, {"imp", 2}, {"meet", 2}, {"join", 2}, {"e", 0}});
    return s;
}

Signature const& brouwer_signature() {
    static Signature const s({{"imp", 2}, {"meet", 2}, {"join", 2}, {"e", 0}});
    return s;
}

Signature const& heyting_signature() {
    static Signature const s({{"imp", 2}, {"meet", 2}, {"join", 2}, {"e", 0}, {"bot", 0}});
    return s;
}

bool leq(FiniteAlgebra const& a, Elem x, Elem y) { return a.op("meet", x, y) == x; }

namespace {

struct Ops {
    FiniteAlgebra const& a;
    std::size_t meet, join;
    std::optional<std::size_t> fuse, imp, neg, e, bot;

    explicit Ops(FiniteAlgebra const& alg)
        : a(alg), meet(alg.signature().index_of("meet")), join(alg.signature().index_of("join")) {
        auto const& s = alg.signature();
        fuse = s.find("fuse");
        imp = s.find("imp");
        neg = s.find("neg");
        e = s.find("e");
        bot = s.find("bot");
    }
    Elem m(Elem x, Elem y) const { return a.binary(meet, x, y); }
    Elem j(Elem x, Elem y) const { return a.binary(join, x, y); }
    // fusion; meet when the signature has none
    Elem f(Elem x, Elem y) const { return fuse ? a.binary(*fuse, x, y) : m(x, y); }
    Elem r(Elem x, Elem y) const { return a.binary(*imp, x, y); }
    Elem n(Elem x) const { return a.unary(*neg, x); }
    Elem unit() const { return a.constant(*e); }
    bool le(Elem x, Elem y) const { return m(x, y) == x; }
    std::size_t size() const { return a.size(); }
};

AxiomReport fail(std::string what) { return {false, std::move(what)}; }

AxiomReport check_lattice(Ops const& o) {
    std::size_t n = o.size();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            if (o.m(x, y) != o.m(y, x)) return fail("meet commutativity");
            if (o.j(x, y) != o.j(y, x)) return fail("join commutativity");
            if (o.m(x, o.j(x, y)) != x || o.j(x, o.m(x, y)) != x) return fail("absorption");
            for (Elem z = 0; z < n; ++z) {
                if (o.m(o.m(x, y), z) != o.m(x, o.m(y, z))) return fail("meet associativity");
                if (o.j(o.j(x, y), z) != o.j(x, o.j(y, z))) return fail("join associativity");
                if (o.m(x, o.j(y, z)) != o.j(o.m(x, y), o.m(x, z))) return fail("distributivity");
            }
        }
    return {};
}

AxiomReport check_monoid(Ops const& o) {
    std::size_t n = o.size();
    Elem e = o.unit();
    for (Elem x = 0; x < n; ++x) {
        if (o.f(e, x) != x) return fail("fusion identity");
        if (!o.le(x, o.f(x, x))) return fail("square-increasing");
        for (Elem y = 0; y < n; ++y) {
            if (o.f(x, y) != o.f(y, x)) return fail("fusion commutativity");
            for (Elem z = 0; z < n; ++z)
                if (o.f(o.f(x, y), z) != o.f(x, o.f(y, z))) return fail("fusion associativity");
        }
    }
    return {};
}

AxiomReport check_residuation(Ops const& o) {
    std::size_t n = o.size();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (o.le(o.f(x, y), z) != o.le(y, o.r(x, z))) return fail("residuation");
    return {};
}

}  // namespace

AxiomReport check_demorgan_monoid(FiniteAlgebra const& a) {
    if (!(a.signature() == dmm_signature())) return fail("signature");
    Ops o(a);
    if (auto r = check_lattice(o); !r) return r;
    if (auto r = check_monoid(o); !r) return r;
    std::size_t n = a.size();
    for (Elem x = 0; x < n; ++x)
        if (o.n(o.n(x)) != x) return fail("double negation");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (o.le(o.f(x, y), z) != o.le(o.f(x, o.n(z)), o.n(y))) return fail("contraposition");
    return {};
}

AxiomReport check_dunn_monoid(FiniteAlgebra const& a) {
    if (!(a.signature() == dunn_signature())) return fail("signature");
    Ops o(a);
    if (auto r = check_lattice(o); !r) return r;
    if (auto r = check_monoid(o); !r) return r;
    return check_residuation(o);
}

AxiomReport check_brouwerian(FiniteAlgebra const& a) {
    auto const& s = a.signature();
    if (!(s == brouwer_signature()) && !(s == heyting_signature()) && !(s == dunn_signature()))
        return fail("signature");
    Ops o(a);
    if (auto r = check_lattice(o); !r) return r;
    for (Elem x = 0; x < a.size(); ++x)
        if (!o.le(x, o.unit())) return fail("x <= e");
    if (o.fuse)
        for (Elem x = 0; x < a.size(); ++x)
            for (Elem y = 0; y < a.size(); ++y)
                if (o.f(x, y) != o.m(x, y)) return fail("fusion is meet");
    return check_residuation(o);
}

AxiomReport check_heyting(FiniteAlgebra const& a) {
    if (!(a.signature() == heyting_signature())) return fail("signature");
    if (auto r = check_brouwerian(a); !r) return r;
    Elem b = a.op("bot");
    for (Elem x = 0; x < a.size(); ++x)
        if (!leq(a, b, x)) return fail("bot is least");
    return {};
}

bool is_demorgan_monoid(FiniteAlgebra const& a) { return check_demorgan_monoid(a).ok; }
bool is_dunn_monoid(FiniteAlgebra const& a) { return check_dunn_monoid(a).ok; }
bool is_brouwerian(FiniteAlgebra const& a) { return check_brouwerian(a).ok; }

// ---- catalog

namespace {

using BinFn = std::function<Elem(Elem, Elem)>;
using UnFn = std::function<Elem(Elem)>;

FiniteAlgebra build_dmm(std::size_t n, BinFn fuse, BinFn meet, BinFn join, UnFn neg, Elem e,
                        std::vector<std::string> names) {
    std::vector<std::vector<Elem>> t(5);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            t[0].push_back(fuse(x, y));
            t[1].push_back(meet(x, y));
            t[2].push_back(join(x, y));
        }
    for (Elem x = 0; x < n; ++x) t[3].push_back(neg(x));
    t[4].push_back(e);
    return FiniteAlgebra(dmm_signature(), n, std::move(t), std::move(names));
}

// Tables of a chain 0 < 1 < ... < n-1.
Elem cmin(Elem x, Elem y) { return std::min(x, y); }
Elem cmax(Elem x, Elem y) { return std::max(x, y); }

}  // namespace

FiniteAlgebra sugihara(unsigned n) {
    std::size_t size = 2 * n + 1;
    auto val = [n](Elem x) { return static_cast<int>(x) - static_cast<int>(n); };
    std::vector<std::string> names;
    for (Elem x = 0; x < size; ++x) names.push_back(std::to_string(val(x)));
    auto fuse = [&](Elem x, Elem y) {
        int a = std::abs(val(x)), b = std::abs(val(y));
        if (a != b) return a > b ? x : y;
        return std::min(x, y);
    };
    auto neg = [size](Elem x) { return static_cast<Elem>(size - 1 - x); };
    return build_dmm(size, fuse, cmin, cmax, neg, n, std::move(names));
}

FiniteAlgebra catalog(std::string const& name) {
    if (name == "two") {
        return build_dmm(2, cmin, cmin, cmax, [](Elem x) { return 1 - x; }, 1, {"f", "e"});
    }
    if (name == "c4") {
        // chain bot < e < f < top
        auto fuse = [](Elem x, Elem y) -> Elem {
            if (x == 0 || y == 0) return 0;
            if (x == 1) return y;
            if (y == 1) return x;
            return 3;
        };
        return build_dmm(4, fuse, cmin, cmax, [](Elem x) { return 3 - x; }, 1,
                         {"~f2", "e", "f", "f2"});
    }
    if (name == "d4") {
        // bot = 0, e = 1, f = 2, top = 3; e and f incomparable
        auto meet = [](Elem x, Elem y) -> Elem {
            if (x == y) return x;
            if (x == 3) return y;
            if (y == 3) return x;
            return 0;
        };
        auto join = [](Elem x, Elem y) -> Elem {
            if (x == y) return x;
            if (x == 0) return y;
            if (y == 0) return x;
            return 3;
        };
        auto fuse = [](Elem x, Elem y) -> Elem {
            if (x == 0 || y == 0) return 0;
            if (x == 1) return y;
            if (y == 1) return x;
            return 3;
        };
        return build_dmm(4, fuse, meet, join, [](Elem x) { return 3 - x; }, 1,
                         {"~f2", "e", "f", "f2"});
    }
    if (name == "x-trivial") return x_construction(FiniteAlgebra::trivial(dmm_signature()));
    if (name.size() >= 2 && name[0] == 's') {
        std::size_t pos = 0;
        unsigned m = 0;
        try {
            m = static_cast<unsigned>(std::stoul(name.substr(1), &pos));
        } catch (...) {
            pos = 0;
        }
        if (pos == name.size() - 1 && m % 2 == 1) return sugihara((m - 1) / 2);
    }
    throw Error("unknown catalog algebra '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"two", "s1", "s3", "s5", "s7", "c4", "d4", "x-trivial"};
}

FiniteAlgebra dunn_reduct(FiniteAlgebra const& dmm) {
    if (!(dmm.signature() == dmm_signature())) throw Error("dunn_reduct: not a De Morgan signature");
    Ops o(dmm);
    std::size_t n = dmm.size();
    std::vector<std::vector<Elem>> t(5);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            t[0].push_back(o.f(x, y));
            t[1].push_back(o.n(o.f(x, o.n(y))));
            t[2].push_back(o.m(x, y));
            t[3].push_back(o.j(x, y));
        }
    t[4].push_back(o.unit());
    return FiniteAlgebra(dunn_signature(), n, std::move(t), dmm.names());
}

FiniteAlgebra brouwer_as_dunn(FiniteAlgebra const& b) {
    if (!(b.signature() == brouwer_signature())) throw Error("brouwer_as_dunn: not Brouwerian");
    std::size_t n = b.size();
    std::vector<std::vector<Elem>> t(5);
    t[0] = b.table(1);
    t[1] = b.table(0);
    t[2] = b.table(1);
    t[3] = b.table(2);
    t[4] = b.table(3);
    (void)n;
    return FiniteAlgebra(dunn_signature(), b.size(), std::move(t), b.names());
}

// ---- reflection and X

FiniteAlgebra reflect(FiniteAlgebra const& dunn) {
    if (auto r = check_dunn_monoid(dunn); !r)
        throw Error("reflect: input is not a Dunn monoid (" + r.failed + ")");
    Ops o(dunn);
    Elem n = static_cast<Elem>(dunn.size());
    Elem bot = 2 * n, top = 2 * n + 1;
    std::size_t size = 2 * n + 2;
    auto is_a = [n](Elem x) { return x < n; };
    auto is_p = [n](Elem x) { return x >= n && x < 2 * n; };
    auto meet = [&](Elem x, Elem y) -> Elem {
        if (x == bot || y == bot) return bot;
        if (x == top) return y;
        if (y == top) return x;
        if (is_a(x) && is_a(y)) return o.m(x, y);
        if (is_p(x) && is_p(y)) return n + o.j(x - n, y - n);
        return is_a(x) ? x : y;
    };
    auto join = [&](Elem x, Elem y) -> Elem {
        if (x == top || y == top) return top;
        if (x == bot) return y;
        if (y == bot) return x;
        if (is_a(x) && is_a(y)) return o.j(x, y);
        if (is_p(x) && is_p(y)) return n + o.m(x - n, y - n);
        return is_p(x) ? x : y;
    };
    auto fuse = [&](Elem x, Elem y) -> Elem {
        if (x == bot || y == bot) return bot;
        if (x == top || y == top) return top;
        if (is_a(x) && is_a(y)) return o.f(x, y);
        if (is_p(x) && is_p(y)) return top;
        if (is_a(x)) return n + o.r(x, y - n);
        return n + o.r(y, x - n);
    };
    auto neg = [&](Elem x) -> Elem {
        if (x == bot) return top;
        if (x == top) return bot;
        return is_a(x) ? x + n : x - n;
    };
    std::vector<std::string> names;
    for (Elem x = 0; x < n; ++x) names.push_back(dunn.name(x));
    for (Elem x = 0; x < n; ++x) names.push_back(dunn.name(x) + "'");
    names.push_back("bot");
    names.push_back("top");
    FiniteAlgebra r = build_dmm(size, fuse, meet, join, neg, o.unit(), std::move(names));
    if (auto rep = check_demorgan_monoid(r); !rep)
        throw Error("reflect: internal error, result fails " + rep.failed);
    return r;
}

Congruence reflect_congruence(FiniteAlgebra const& dunn, Congruence const& theta) {
    if (!is_compatible(dunn, theta)) throw Error("reflect_congruence: not a congruence");
    Elem n = static_cast<Elem>(dunn.size());
    Elem k = static_cast<Elem>(theta.num_blocks());
    std::vector<Elem> ids(2 * n + 2);
    for (Elem x = 0; x < n; ++x) {
        ids[x] = theta.block(x);
        ids[n + x] = k + theta.block(x);
    }
    ids[2 * n] = 2 * k;
    ids[2 * n + 1] = 2 * k + 1;
    return Congruence(std::move(ids));
}

FiniteAlgebra x_construction(FiniteAlgebra const& dmm) {
    if (auto r = check_demorgan_monoid(dmm); !r)
        throw Error("x_construction: input is not a De Morgan monoid (" + r.failed + ")");
    FiniteAlgebra r = reflect(dunn_reduct(dmm));
    Ops o(r);
    Elem n = static_cast<Elem>(dmm.size());
    Elem bot = 2 * n, top = 2 * n + 1, x = 2 * n + 2;
    std::size_t size = 2 * n + 3;
    // A (and x) lie below x; A' and top lie above it
    auto low = [&](Elem y) { return y < n || y == bot; };
    auto meet = [&](Elem y, Elem z) -> Elem {
        if (y == x && z == x) return x;
        if (y == x) return low(z) ? z : x;
        if (z == x) return low(y) ? y : x;
        return o.m(y, z);
    };
    auto join = [&](Elem y, Elem z) -> Elem {
        if (y == x && z == x) return x;
        if (y == x) return low(z) ? x : z;
        if (z == x) return low(y) ? x : y;
        return o.j(y, z);
    };
    auto fuse = [&](Elem y, Elem z) -> Elem {
        if (y != x && z != x) return o.f(y, z);
        Elem other = y == x ? z : y;
        if (other == bot) return bot;
        if (other == x || other < n) return x;
        return top;
    };
    auto neg = [&](Elem y) -> Elem { return y == x ? x : o.n(y); };
    std::vector<std::string> names = r.names();
    names.push_back("x");
    FiniteAlgebra out = build_dmm(size, fuse, meet, join, neg, o.unit(), std::move(names));
    if (auto rep = check_demorgan_monoid(out); !rep)
        throw Error("x_construction: internal error, result fails " + rep.failed);
    return out;
}

// ---- M and N

bool in_M(FiniteAlgebra const& a) {
    if (!is_demorgan_monoid(a)) throw Error("in_M: not a De Morgan monoid");
    Ops o(a);
    Elem e = o.unit(), f = o.n(e), f2 = o.f(f, f);
    if (!o.le(e, f)) return false;
    for (Elem x = 0; x < a.size(); ++x) {
        if (!o.le(x, f2)) return false;
        if (o.f(f2, o.n(o.m(o.f(f, x), o.f(f, o.n(x))))) != f2) return false;
    }
    return true;
}

bool in_N(FiniteAlgebra const& a) {
    if (!is_demorgan_monoid(a)) throw Error("in_N: not a De Morgan monoid");
    return a.is_trivial() || is_retract(catalog("c4"), a).has_value();
}

// ---- facts

std::vector<FactResult> dmm_facts_suite(FiniteAlgebra const& a) {
    if (auto r = check_demorgan_monoid(a); !r)
        throw Error("dmm_facts_suite: not a De Morgan monoid (" + r.failed + ")");
    Ops o(a);
    std::size_t n = a.size();
    Elem e = o.unit(), f = o.n(e), f2 = o.f(f, f);
    Elem bottom = 0;
    for (Elem x = 0; x < n; ++x) bottom = o.m(bottom, x);
    Elem top = 0;
    for (Elem x = 0; x < n; ++x) top = o.j(top, x);
    auto all = [&](auto pred) {
        for (Elem x = 0; x < n; ++x)
            if (!pred(x)) return false;
        return true;
    };
    std::vector<FactResult> out;
    auto add = [&](std::string fact, bool lhs, bool rhs, std::string detail) {
        out.push_back({std::move(fact), lhs == rhs, std::move(detail) + (lhs ? " [holds]" : " [fails]")});
    };

    SiStatus si = si_status(a);
    bool nontrivial = n > 1;
    add("I", nontrivial, e != bottom, "nontrivial iff e is not least");

    std::size_t strict_below_e = 0;
    for (Elem x = 0; x < n; ++x) strict_below_e += (x != e && o.le(x, e)) ? 1 : 0;
    add("II", si == SiStatus::Simple, strict_below_e == 1, "simple iff e has one strict lower bound");

    bool join_irreducible = e != bottom;
    for (Elem x = 0; x < n && join_irreducible; ++x)
        for (Elem y = 0; y < n; ++y)
            if (x != e && y != e && o.j(x, y) == e) {
                join_irreducible = false;
                break;
            }
    add("III", si >= SiStatus::FSI, join_irreducible, "FSI iff e join-irreducible");

    Elem below = bottom;
    bool any_below = false;
    for (Elem x = 0; x < n; ++x)
        if (x != e && o.le(x, e)) {
            below = any_below ? o.j(below, x) : x;
            any_below = true;
        }
    bool completely = e != bottom && (!any_below || below != e);
    add("IV", si >= SiStatus::SI, completely, "SI iff e completely join-irreducible");

    out.push_back({"V", all([&](Elem x) { return o.f(x, bottom) == bottom; }), "x * bot = bot"});

    bool fsi = si >= SiStatus::FSI;
    bool split = all([&](Elem x) { return o.le(e, x) || o.le(x, f); });
    out.push_back({"5.5", !fsi || split, "FSI implies e <= a or a <= f"});

    bool idempotent = all([&](Elem x) { return o.f(x, x) == x; });
    add("VI", o.le(f, e), idempotent, "f <= e iff idempotent");

    bool below_f2 = all([&](Elem x) { return o.le(x, f2); });
    bool no_idempotent = true;
    for (auto const& b : hs_class(a)) {
        if (b.is_trivial()) continue;
        Ops ob(b);
        bool idem = true;
        for (Elem x = 0; x < b.size() && idem; ++x) idem = ob.f(x, x) == x;
        if (idem) {
            no_idempotent = false;
            break;
        }
    }
    add("VII", below_f2, no_idempotent, "x <= f^2 iff HS(A) has no nontrivial idempotent member");

    bool below_e = all([&](Elem x) { return o.le(x, e); });
    bool boolean = true;
    for (Elem x = 0; x < n && boolean; ++x) {
        if (o.m(x, o.n(x)) != bottom || o.j(x, o.n(x)) != top) boolean = false;
        for (Elem y = 0; y < n && boolean; ++y)
            if (o.f(x, y) != o.m(x, y)) boolean = false;
    }
    add("VIII", below_e, boolean, "x <= e iff Boolean with fusion = meet");

    out.push_back({"IX", o.f(f2, f) == f2, "f^3 = f^2"});
    return out;
}

// ---- classifications

char const* to_string(PscClass c) {
    switch (c) {
        case PscClass::Boolean: return "Boolean";
        case PscClass::D4: return "D4";
        case PscClass::OddSugihara: return "OddSugihara";
        case PscClass::SubM: return "SubM";
        case PscClass::NotPSC: return "NotPSC";
    }
    return "?";
}

PscClass classify_psc_variety(GeneratorSet const& gens) {
    for (auto const& a : gens.algebras())
        if (!is_demorgan_monoid(a)) throw Error("classify_psc_variety: non De Morgan generator");
    auto all = [&](auto pred) {
        return std::all_of(gens.algebras().begin(), gens.algebras().end(), pred);
    };
    bool nontrivial = !gens.all_trivial();
    bool boolean = all([](FiniteAlgebra const& a) {
        for (Elem x = 0; x < a.size(); ++x)
            if (!leq(a, x, a.op("e"))) return false;
        return true;
    });
    if (nontrivial && boolean) return PscClass::Boolean;
    FiniteAlgebra d4 = catalog("d4");
    if (nontrivial && v_membership(d4, gens) &&
        all([&](FiniteAlgebra const& a) { return v_membership(a, GeneratorSet({d4})); }))
        return PscClass::D4;
    bool odd = all([](FiniteAlgebra const& a) {
        if (a.op("neg", a.op("e")) != a.op("e")) return false;
        for (Elem x = 0; x < a.size(); ++x)
            if (a.op("fuse", x, x) != x) return false;
        return true;
    });
    if (odd) return PscClass::OddSugihara;
    if (nontrivial && all([](FiniteAlgebra const& a) { return in_M(a); })) return PscClass::SubM;
    return PscClass::NotPSC;
}

JepConditions jep_classification_conditions(GeneratorSet const& gens, Guards const& g) {
    JepConditions out;
    out.witnesses = json::object();
    PscClass c = classify_psc_variety(gens);
    out.psc = c != PscClass::NotPSC;
    out.witnesses["psc_class"] = to_string(c);

    AlgebraList si = si_members_of_hs(gens, g);
    AlgebraList simple;
    for (auto const& a : si)
        if (si_status(a) == SiStatus::Simple) simple.push_back(a);
    FiniteAlgebra d4 = catalog("d4"), c4 = catalog("c4");

    // (ii): V(G) = V(A) for a simple A properly containing D4
    for (auto const& a : simple) {
        if (a.size() <= d4.size() || !embedding_exists(d4, a)) continue;
        GeneratorSet single({a});
        bool same = std::all_of(gens.algebras().begin(), gens.algebras().end(),
                                [&](FiniteAlgebra const& b) { return v_membership(b, single, g); });
        if (same) {
            out.simple_over_d4 = true;
            out.witnesses["ii"] = algebra_to_json(a);
            break;
        }
    }

    // (iii): V(G) = Q(B) for some B with a simple subalgebra properly containing C4
    AlgebraList candidates = gens.algebras();
    if (gens.size() > 1) candidates.push_back(direct_product(gens.algebras()));
    for (std::size_t ci = 0; ci < candidates.size() && !out.simple_over_c4; ++ci) {
        auto const& b = candidates[ci];
        GeneratorSet single({b});
        bool same_variety =
            ci == gens.size() ||
            std::all_of(gens.algebras().begin(), gens.algebras().end(),
                        [&](FiniteAlgebra const& x) { return v_membership(x, single, g); });
        if (!same_variety) continue;
        bool quasi = std::all_of(si.begin(), si.end(), [&](FiniteAlgebra const& s) {
            return embedding_exists(s, b).has_value();
        });
        if (!quasi) continue;
        for (auto const& a : simple) {
            if (a.size() <= c4.size() || !embedding_exists(c4, a) || !embedding_exists(a, b))
                continue;
            out.simple_over_c4 = true;
            out.witnesses["iii"] = {{"A", algebra_to_json(a)}, {"B_index", ci}};
            break;
        }
    }
    return out;
}

// ---- Heyting examples

FiniteAlgebra heyting_from_order(std::vector<std::vector<bool>> const& le,
                                 std::vector<std::string> names) {
    std::size_t n = le.size();
    auto glb = [&](Elem x, Elem y) {
        std::optional<Elem> best;
        for (Elem z = 0; z < n; ++z)
            if (le[z][x] && le[z][y] && (!best || le[*best][z])) best = z;
        return *best;
    };
    auto lub = [&](Elem x, Elem y) {
        std::optional<Elem> best;
        for (Elem z = 0; z < n; ++z)
            if (le[x][z] && le[y][z] && (!best || le[z][*best])) best = z;
        return *best;
    };
    Elem top = 0, bottom = 0;
    for (Elem z = 0; z < n; ++z) {
        if (le[top][z]) top = z;
        if (le[z][bottom]) bottom = z;
    }
    std::vector<std::vector<Elem>> t(5);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            Elem best = bottom;
            for (Elem c = 0; c < n; ++c)
                if (le[glb(x, c)][y] && le[best][c]) best = c;
            t[0].push_back(best);
            t[1].push_back(glb(x, y));
            t[2].push_back(lub(x, y));
        }
    t[3].push_back(top);
    t[4].push_back(bottom);
    FiniteAlgebra h(heyting_signature(), n, std::move(t), std::move(names));
    if (auto r = check_heyting(h); !r) throw Error("heyting_from_order: " + r.failed);
    return h;
}

FiniteAlgebra heyting_chain5() {
    std::vector<std::vector<bool>> le(5, std::vector<bool>(5));
    for (Elem x = 0; x < 5; ++x)
        for (Elem y = 0; y < 5; ++y) le[x][y] = x <= y;
    return heyting_from_order(le, {"0", "a", "b", "c", "1"});
}

FiniteAlgebra heyting_square_plus_top() {
    // 0 < a, b < c < 1 with a, b incomparable
    std::vector<std::vector<bool>> le(5, std::vector<bool>(5, false));
    auto set = [&](Elem x, Elem y) { le[x][y] = true; };
    for (Elem x = 0; x < 5; ++x) {
        set(x, x);
        set(0, x);
        set(x, 4);
    }
    set(1, 3);
    set(2, 3);
    return heyting_from_order(le, {"0", "a", "b", "c", "1"});
}

// ---- amendment

Term amendment(Term const& t) {
    Term e = Term::apply("e");
    if (t.is_variable()) return Term::apply("meet", {t, e});
    auto const& s = t.symbol();
    if (s == "e" && t.args().empty()) return e;
    if ((s == "meet" || s == "join" || s == "fuse") && t.args().size() == 2)
        return Term::apply(s, {amendment(t.args()[0]), amendment(t.args()[1])});
    if (s == "imp" && t.args().size() == 2)
        return Term::apply("meet",
                           {Term::apply("imp", {amendment(t.args()[0]), amendment(t.args()[1])}), e});
    throw Error("amendment: unsupported symbol '" + s + "'");
}

QuasiEquation amendment(QuasiEquation const& q) {
    QuasiEquation out;
    for (auto const& p : q.premises) out.premises.push_back({amendment(p.lhs), amendment(p.rhs)});
    out.conclusion = {amendment(q.conclusion.lhs), amendment(q.conclusion.rhs)};
    return out;
}

// ---- random De Morgan monoids

namespace {

// Distributive lattice of down-sets of a random poset, as an order matrix.
std::vector<std::vector<bool>> random_distributive_lattice(std::mt19937_64& rng,
                                                           std::size_t max_size) {
    std::uniform_int_distribution<int> points(0, 4);
    for (;;) {
        int k = points(rng);
        std::vector<unsigned> below(k, 0);  // bitmask of strict predecessors
        std::bernoulli_distribution edge(0.4);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i)
                if (edge(rng)) below[j] |= (1u << i) | below[i];
        std::vector<unsigned> downs;
        for (unsigned m = 0; m < (1u << k); ++m) {
            bool closed = true;
            for (int j = 0; j < k && closed; ++j)
                if ((m >> j & 1) && (below[j] & ~m)) closed = false;
            if (closed) downs.push_back(m);
        }
        if (downs.size() > max_size) continue;
        std::size_t n = downs.size();
        std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) le[x][y] = (downs[x] & ~downs[y]) == 0;
        return le;
    }
}

std::optional<std::vector<Elem>> random_involution(std::mt19937_64& rng,
                                                   std::vector<std::vector<bool>> const& le) {
    std::size_t n = le.size();
    std::vector<Elem> inv(n, kUnset);
    std::function<bool(Elem)> rec = [&](Elem x) -> bool {
        while (x < n && inv[x] != kUnset) ++x;
        if (x == n) return true;
        std::vector<Elem> cand(n);
        std::iota(cand.begin(), cand.end(), 0);
        std::shuffle(cand.begin(), cand.end(), rng);
        for (Elem y : cand) {
            if (inv[y] != kUnset) continue;
            inv[x] = y;
            inv[y] = x;
            bool ok = true;
            for (Elem a = 0; a < n && ok; ++a)
                for (Elem b = 0; b < n && ok; ++b)
                    if (inv[a] != kUnset && inv[b] != kUnset && le[a][b] && !le[inv[b]][inv[a]])
                        ok = false;
            if (ok && rec(x + 1)) return true;
            inv[x] = kUnset;
            inv[y] = kUnset;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return inv;
}

}  // namespace

std::optional<FiniteAlgebra> random_demorgan_monoid(std::mt19937_64& rng,
                                                   RandomDmmOptions const& opt) {
    for (std::size_t attempt = 0; attempt < opt.attempts; ++attempt) {
        auto le = random_distributive_lattice(rng, opt.max_size);
        std::size_t n = le.size();
        auto inv = random_involution(rng, le);
        if (!inv) continue;
        auto glb = [&](Elem x, Elem y) {
            Elem best = kUnset;
            for (Elem z = 0; z < n; ++z)
                if (le[z][x] && le[z][y] && (best == kUnset || le[best][z])) best = z;
            return best;
        };
        auto lub = [&](Elem x, Elem y) {
            Elem best = kUnset;
            for (Elem z = 0; z < n; ++z)
                if (le[x][z] && le[y][z] && (best == kUnset || le[z][best])) best = z;
            return best;
        };
        Elem e = std::uniform_int_distribution<Elem>(0, static_cast<Elem>(n - 1))(rng);
        std::vector<Elem> fus(n * n, kUnset);
        for (Elem x = 0; x < n; ++x) {
            fus[e * n + x] = x;
            fus[x * n + e] = x;
        }
        std::vector<std::pair<Elem, Elem>> cells;
        for (Elem x = 0; x < n; ++x)
            for (Elem y = x; y < n; ++y)
                if (x != e && y != e) cells.emplace_back(x, y);
        auto F = [&](Elem x, Elem y) { return fus[x * n + y]; };
        auto consistent = [&]() {
            for (Elem x = 0; x < n; ++x) {
                if (F(x, x) != kUnset && !le[x][F(x, x)]) return false;
                for (Elem y = 0; y < n; ++y) {
                    Elem xy = F(x, y);
                    if (xy == kUnset) continue;
                    for (Elem z = 0; z < n; ++z) {
                        // monotone, contraposition, associativity where defined
                        Elem xz = F(x, z);
                        if (xz != kUnset && le[y][z] && !le[xy][xz]) return false;
                        Elem xnz = F(x, (*inv)[z]);
                        if (xnz != kUnset && le[xy][z] != le[xnz][(*inv)[y]]) return false;
                        Elem yz = F(y, z);
                        if (yz != kUnset && F(xy, z) != kUnset && F(x, yz) != kUnset &&
                            F(xy, z) != F(x, yz))
                            return false;
                        Elem jyz = lub(y, z);
                        if (xz != kUnset && F(x, jyz) != kUnset && F(x, jyz) != lub(xy, xz))
                            return false;
                    }
                }
            }
            return true;
        };
        std::size_t nodes = 0;
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
            if (++nodes > 20000) return false;
            if (i == cells.size()) return true;
            auto [x, y] = cells[i];
            std::vector<Elem> cand(n);
            std::iota(cand.begin(), cand.end(), 0);
            std::shuffle(cand.begin(), cand.end(), rng);
            for (Elem v : cand) {
                fus[x * n + y] = v;
                fus[y * n + x] = v;
                if (consistent() && rec(i + 1)) return true;
            }
            fus[x * n + y] = kUnset;
            fus[y * n + x] = kUnset;
            return false;
        };
        if (!rec(0)) continue;
        FiniteAlgebra a = build_dmm(
            n, [&](Elem x, Elem y) { return F(x, y); }, glb, lub,
            [&](Elem x) { return (*inv)[x]; }, e, {});
        if (is_demorgan_monoid(a)) return a;
    }
    return std::nullopt;
}

}  // namespace qv
