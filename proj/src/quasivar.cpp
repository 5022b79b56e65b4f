#include "quasivar/quasivar.hpp"

#include <algorithm>
#include <set>

#include "quasivar/canonical.hpp"
#include "quasivar/demorgan.hpp"
#include "quasivar/formats.hpp"

namespace qv {

GeneratorSet::GeneratorSet(AlgebraList algebras) : algebras_(std::move(algebras)) {
    if (algebras_.empty()) throw Error("generator set must be non-empty");
    for (auto const& a : algebras_) require_same_signature(algebras_.front(), a);
}

bool GeneratorSet::all_trivial() const {
    return std::all_of(algebras_.begin(), algebras_.end(),
                       [](auto const& a) { return a.is_trivial(); });
}

json map_json(Map const& m) { return json(m); }

char const* to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "Yes";
        case Answer::No: return "No";
        case Answer::CertifiedUpTo: return "CertifiedUpTo";
        case Answer::Unknown: return "Unknown";
    }
    return "?";
}

int Verdict::exit_code() const {
    switch (answer) {
        case Answer::Yes:
        case Answer::CertifiedUpTo: return 0;
        case Answer::No: return 1;
        case Answer::Unknown: return 2;
    }
    return 3;
}

json Verdict::to_json() const {
    json j{{"answer", to_string(answer)}, {"stage", stage}};
    if (answer == Answer::CertifiedUpTo || answer == Answer::Unknown || bound) j["bound"] = bound;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

// ---- free algebras

Map FreeAlgebra::projection(std::size_t coordinate) const {
    std::size_t w = coordinates.size();
    Map m(algebra.size());
    for (Elem x = 0; x < algebra.size(); ++x) m[x] = tuples[x * w + coordinate];
    return m;
}

std::vector<Congruence> FreeAlgebra::projection_kernels() const {
    std::set<Congruence> ks;
    for (std::size_t c = 0; c < coordinates.size(); ++c)
        ks.insert(kernel(projection(c), algebra.size()));
    return {ks.begin(), ks.end()};
}

FreeAlgebra free_algebra(GeneratorSet const& gens, std::size_t rank, Guards const& g,
                         Kernel kernel) {
    if (rank == 0 && !gens.signature().has_constant())
        throw Error("free_algebra: rank 0 needs a constant symbol");
    FreeAlgebra f;
    f.rank = rank;
    std::size_t total = 0;
    for (auto const& a : gens.algebras()) {
        std::size_t c = table_length(a.size(), static_cast<unsigned>(rank));
        total += c;
        if (c > g.free_coordinates || total > g.free_coordinates)
            throw GuardError("free_algebra: " + std::to_string(total) +
                             "+ coordinates exceed guard " + std::to_string(g.free_coordinates));
    }
    std::vector<FiniteAlgebra const*> coords;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        auto const& a = gens[gi];
        std::size_t c = table_length(a.size(), static_cast<unsigned>(rank));
        for (std::size_t t = 0; t < c; ++t) {
            std::vector<Elem> v(rank);
            std::size_t rest = t;
            for (std::size_t i = rank; i-- > 0;) {
                v[i] = static_cast<Elem>(rest % a.size());
                rest /= a.size();
            }
            f.coordinates.emplace_back(gi, std::move(v));
            coords.push_back(&a);
        }
    }
    std::vector<std::vector<Elem>> seeds(rank, std::vector<Elem>(coords.size()));
    for (std::size_t j = 0; j < rank; ++j)
        for (std::size_t c = 0; c < coords.size(); ++c) seeds[j][c] = f.coordinates[c].second[j];
    auto gp = generate_in_product(gens.signature(), coords, seeds, g.derived_carrier, kernel);
    f.algebra = std::move(gp.algebra);
    f.generators = std::move(gp.seed_index);
    f.tuples = std::move(gp.tuples);
    return f;
}

std::vector<Congruence> free_relative_congruences(FreeAlgebra const& f, Guards const& g) {
    auto kernels = f.projection_kernels();
    std::size_t n = f.algebra.size();
    std::set<Congruence> seen{Congruence::total(n)};
    std::vector<Congruence> queue{Congruence::total(n)};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (auto const& k : kernels) {
            Congruence m = meet(queue[i], k);
            if (seen.insert(m).second) {
                queue.push_back(m);
                if (queue.size() > g.derived_carrier)
                    throw GuardError("free_relative_congruences: lattice exceeds guard");
            }
        }
    return {seen.begin(), seen.end()};
}

std::vector<Term> element_terms(FreeAlgebra const& f) {
    auto const& a = f.algebra;
    auto const& sig = a.signature();
    std::vector<std::optional<Term>> found(a.size());
    std::vector<Elem> order;
    auto add = [&](Elem x, Term t) {
        if (found[x]) return;
        found[x] = std::move(t);
        order.push_back(x);
    };
    for (std::size_t j = 0; j < f.generators.size(); ++j)
        add(f.generators[j], Term::variable("x" + std::to_string(j + 1)));
    for (std::size_t op = 0; op < sig.size(); ++op)
        if (sig[op].arity == 0) add(a.constant(op), Term::apply(sig[op].name));
    std::size_t done = 0;
    while (done < order.size()) {
        std::size_t frontier = order.size();
        for (std::size_t op = 0; op < sig.size(); ++op) {
            unsigned k = sig[op].arity;
            if (k == 1) {
                for (std::size_t i = done; i < frontier; ++i)
                    add(a.unary(op, order[i]), Term::apply(sig[op].name, {*found[order[i]]}));
            } else if (k == 2) {
                for (std::size_t i = 0; i < frontier; ++i)
                    for (std::size_t j = 0; j < frontier; ++j) {
                        if (i < done && j < done) continue;
                        Elem x = order[i], y = order[j];
                        add(a.binary(op, x, y), Term::apply(sig[op].name, {*found[x], *found[y]}));
                    }
            }
        }
        done = frontier;
    }
    std::vector<Term> out;
    for (auto& t : found) out.push_back(t ? *t : Term::variable("?"));
    return out;
}

// ---- validity

namespace {

struct CompiledQE {
    std::vector<std::string> vars;
    std::vector<std::pair<CompiledTerm, CompiledTerm>> premises;
    std::pair<CompiledTerm, CompiledTerm> conclusion;

    CompiledQE(QuasiEquation const& q, Signature const& sig)
        : vars(q.variables()),
          conclusion(CompiledTerm(q.conclusion.lhs, sig, vars),
                     CompiledTerm(q.conclusion.rhs, sig, vars)) {
        for (auto const& p : q.premises)
            premises.emplace_back(CompiledTerm(p.lhs, sig, vars), CompiledTerm(p.rhs, sig, vars));
    }
};

void check_assignment_guard(std::size_t size, std::size_t vars, Guards const& g) {
    std::size_t space = 1;
    for (std::size_t i = 0; i < vars; ++i) {
        space *= size;
        if (space > g.assignment_space)
            throw GuardError("assignment space " + std::to_string(size) + "^" +
                             std::to_string(vars) + " exceeds guard");
    }
}

// Visits all assignments of `k` variables over a carrier of size n; stops when visit is false.
template <class F>
bool for_each_assignment(std::size_t n, std::size_t k, F&& visit) {
    std::vector<Elem> v(k, 0);
    for (;;) {
        if (!visit(v)) return false;
        std::size_t i = k;
        for (;;) {
            if (i == 0) return true;
            --i;
            if (++v[i] < n) break;
            v[i] = 0;
        }
    }
}

Assignment to_assignment(std::vector<std::string> const& vars, std::vector<Elem> const& v) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = v[i];
    return a;
}

json assignment_json(FiniteAlgebra const& a, Assignment const& v) {
    json j = json::object();
    for (auto const& [name, x] : v) j[name] = a.has_names() ? json(a.name(x)) : json(x);
    return j;
}

}  // namespace

bool holds_in(QuasiEquation const& q, FiniteAlgebra const& a, Guards const& g,
              Assignment* counterexample) {
    CompiledQE c(q, a.signature());
    check_assignment_guard(a.size(), c.vars.size(), g);
    bool ok = for_each_assignment(a.size(), c.vars.size(), [&](std::vector<Elem> const& v) {
        for (auto const& [l, r] : c.premises)
            if (l.eval(a, v) != r.eval(a, v)) return true;
        if (c.conclusion.first.eval(a, v) == c.conclusion.second.eval(a, v)) return true;
        if (counterexample) *counterexample = to_assignment(c.vars, v);
        return false;
    });
    return ok;
}

Verdict valid(QuasiEquation const& q, GeneratorSet const& gens, Guards const& g) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Assignment cx;
        if (!holds_in(q, gens[i], g, &cx))
            return {Answer::No, 0, "counterexample",
                    {{"generator", i}, {"assignment", assignment_json(gens[i], cx)}}};
    }
    return {Answer::Yes, 0, "exhaustive", {}};
}

Verdict unifiable(std::vector<Equation> const& eqs, GeneratorSet const& gens, Guards const& g) {
    auto vars = variables_of(eqs);
    if (vars.empty()) {
        QuasiEquation q;
        for (auto const& e : eqs) {
            q.conclusion = e;
            if (valid(q, gens, g).no())
                return {Answer::No, 0, "ground-equation-fails", {{"equation", e.to_string()}}};
        }
        return {Answer::Yes, 0, "ground", json::object()};
    }
    FreeAlgebra f = free_algebra(gens, 1, g);
    auto const& a = f.algebra;
    std::vector<std::pair<CompiledTerm, CompiledTerm>> compiled;
    for (auto const& e : eqs)
        compiled.emplace_back(CompiledTerm(e.lhs, a.signature(), vars),
                              CompiledTerm(e.rhs, a.signature(), vars));
    check_assignment_guard(a.size(), vars.size(), g);
    std::optional<std::vector<Elem>> sol;
    for_each_assignment(a.size(), vars.size(), [&](std::vector<Elem> const& v) {
        for (auto const& [l, r] : compiled)
            if (l.eval(a, v) != r.eval(a, v)) return true;
        sol = v;
        return false;
    });
    if (!sol)
        return {Answer::No, 0, "no-solution-in-F(1)",
                {{"free_algebra_size", a.size()}, {"exhaustive", true}}};
    auto terms = element_terms(f);
    json w = json::object();
    for (std::size_t i = 0; i < vars.size(); ++i)
        w[vars[i]] = {{"element", (*sol)[i]}, {"term", terms[(*sol)[i]].to_string()}};
    return {Answer::Yes, 0, "solution-in-F(1)", {{"unifier", w}}};
}

bool passive(QuasiEquation const& q, GeneratorSet const& gens, Guards const& g) {
    if (q.premises.empty()) return false;
    return unifiable(q.premises, gens, g).no();
}

bool kollar_check(GeneratorSet const& gens) {
    for (auto const& a : gens.algebras())
        if (a.size() >= 2 && !trivial_subalgebra_points(a).empty()) return false;
    return true;
}

// ---- classes of members

namespace {

AlgebraList subalgebras_of_generators(GeneratorSet const& gens, Guards const& g) {
    AlgebraList all;
    for (auto const& a : gens.algebras())
        for (auto& s : enumerate_subalgebras(a, true, g)) all.push_back(std::move(s));
    return dedupe_isomorphic(std::move(all));
}

// Meet of the kernels of all homomorphisms A -> G (total when there are none), found by one
// targeted search per pair not yet separated.
Congruence separation_kernel(FiniteAlgebra const& a, FiniteAlgebra const& target) {
    std::size_t n = a.size();
    Congruence acc = Congruence::total(n);
    std::vector<std::vector<Elem>> dom(n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = x + 1; y < n; ++y) {
            if (!acc.related(x, y)) continue;
            bool hit = false;
            for (Elem u = 0; u < target.size() && !hit; ++u) {
                dom[x] = {u};
                dom[y].clear();
                for (Elem w = 0; w < target.size(); ++w)
                    if (w != u) dom[y].push_back(w);
                if (dom[y].empty()) break;
                HomSearchOptions opt;
                opt.domains = &dom;
                opt.limit = 1;
                for_each_hom(a, target, opt, [&](Map const& h) {
                    acc = meet(acc, kernel(h, n));
                    hit = true;
                    return false;
                });
            }
            dom[x].clear();
            dom[y].clear();
        }
    return acc;
}

AlgebraList quotient_si_members(GeneratorSet const& gens) {
    AlgebraList out;
    for (auto const& a : gens.algebras()) {
        auto cons = all_congruences(a);
        std::stable_sort(cons.begin(), cons.end(), [](Congruence const& x, Congruence const& y) {
            return x.num_blocks() > y.num_blocks();
        });
        for (auto const& c : cons) {
            if (c.is_total()) continue;
            auto q = quotient(a, c).algebra;
            if (si_status(q) >= SiStatus::SI) out.push_back(std::move(q));
        }
    }
    return dedupe_isomorphic(std::move(out));
}

std::optional<std::size_t> embeds_in_some(FiniteAlgebra const& b, AlgebraList const& targets) {
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (embedding_exists(b, targets[i])) return i;
    return std::nullopt;
}

}  // namespace

AlgebraList hs_class(FiniteAlgebra const& a, Guards const& g) {
    AlgebraList out;
    for (auto const& s : enumerate_subalgebras(a, true, g))
        for (auto const& c : all_congruences(s, g)) out.push_back(quotient(s, c).algebra);
    return dedupe_isomorphic(std::move(out));
}

AlgebraList si_members_of_hs(GeneratorSet const& gens, Guards const& g) {
    AlgebraList out = quotient_si_members(gens);
    for (auto const& a : gens.algebras())
        for (auto& b : hs_class(a, g))
            if (si_status(b) >= SiStatus::SI) out.push_back(std::move(b));
    return dedupe_isomorphic(std::move(out));
}

AlgebraList rsi_members(GeneratorSet const& gens, Guards const& g) {
    AlgebraList out;
    for (auto& s : subalgebras_of_generators(gens, g))
        if (!s.is_trivial() && si_status(s, gens.algebras()) >= SiStatus::SI)
            out.push_back(std::move(s));
    return out;
}

AlgebraList relatively_simple_members(GeneratorSet const& gens, Guards const& g) {
    AlgebraList out;
    for (auto& s : subalgebras_of_generators(gens, g))
        if (!s.is_trivial() && si_status(s, gens.algebras()) == SiStatus::Simple)
            out.push_back(std::move(s));
    return out;
}

// ---- JEP

Verdict jep_check(GeneratorSet const& gens, Guards const& g) {
    AlgebraList r = rsi_members(gens, g);
    auto const& targets = gens.algebras();
    std::size_t m = r.size();
    // receives[i][t]: Hom(R_i, G_t) non-empty; sep[i][t]: meet of all kernels R_i -> G_t
    std::vector<std::vector<bool>> receives(m, std::vector<bool>(targets.size()));
    std::vector<std::vector<Congruence>> sep(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < targets.size(); ++t) {
            receives[i][t] = hom_exists(r[i], targets[t]).has_value();
            sep[i].push_back(receives[i][t] ? separation_kernel(r[i], targets[t])
                                            : Congruence::total(r[i].size()));
        }
    auto joint = [&](std::size_t i, std::size_t j) -> std::optional<std::pair<Elem, Elem>> {
        Congruence acc = Congruence::total(r[i].size());
        for (std::size_t t = 0; t < targets.size(); ++t)
            if (receives[j][t]) acc = meet(acc, sep[i][t]);
        for (Elem x = 0; x < r[i].size(); ++x)
            for (Elem y = x + 1; y < r[i].size(); ++y)
                if (acc.related(x, y)) return std::make_pair(x, y);
        return std::nullopt;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
                if (auto bad = joint(p, q))
                    return {Answer::No, 0, "coordinate-pair",
                            {{"A", algebra_to_json(r[p])},
                             {"B", algebra_to_json(r[q])},
                             {"unseparated", {r[p].name(bad->first), r[p].name(bad->second)}}}};
            }
    return {Answer::Yes, 0, "coordinate-pair", {{"rsi_members", m}}};
}

// ---- PSC

Verdict psc_check(GeneratorSet const& gens, Guards const& g) {
    if (gens.all_trivial()) return {Answer::Yes, 0, "trivial-quasivariety", {}};
    // F(1) maps onto every generator, so a generator without trivial points rules this stage out
    bool all_have_points = std::all_of(gens.algebras().begin(), gens.algebras().end(),
                                       [](FiniteAlgebra const& a) {
                                           return !trivial_subalgebra_points(a).empty();
                                       });
    std::optional<FreeAlgebra> f1;
    if (all_have_points) {
        f1 = free_algebra(gens, 1, g);
        auto points = trivial_subalgebra_points(f1->algebra);
        if (!points.empty()) {
            auto terms = element_terms(*f1);
            return {Answer::Yes, 0, "trivial-subalgebra-in-F(1)",
                    {{"element", points.front()}, {"term", terms[points.front()].to_string()}}};
        }
    }
    if (!kollar_check(gens)) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto pts = trivial_subalgebra_points(gens[i]);
            if (gens[i].size() >= 2 && !pts.empty())
                return {Answer::No, 0, "not-kollar",
                        {{"generator", i}, {"trivial_point", gens[i].name(pts.front())}}};
        }
    }
    AlgebraList rs = relatively_simple_members(gens, g);
    if (rs.size() != 1) {
        json w = json::array();
        for (auto const& a : rs) w.push_back(algebra_to_json(a));
        return {Answer::No, 0, "relatively-simple-not-unique", {{"relatively_simple", w}}};
    }
    FiniteAlgebra const& hub = rs.front();
    // nontrivial subalgebras of generators are members, so each must receive the hub
    for (auto const& s : subalgebras_of_generators(gens, g)) {
        if (s.is_trivial() || hom_exists(hub, s)) continue;
        return {Answer::No, 0, "hub-subalgebra",
                {{"relatively_simple", algebra_to_json(hub)}, {"subalgebra", algebra_to_json(s)}}};
    }
    if (!f1) f1 = free_algebra(gens, 1, g);
    for (auto const& theta : free_relative_congruences(*f1, g)) {
        if (theta.is_total()) continue;
        auto q = quotient(f1->algebra, theta).algebra;
        if (!hom_exists(hub, q))
            return {Answer::No, 0, "hub",
                    {{"relatively_simple", algebra_to_json(hub)},
                     {"quotient_of_F(1)", algebra_to_json(q)},
                     {"congruence", theta.to_string()}}};
    }
    return {Answer::Yes, 0, "hub", {{"relatively_simple", algebra_to_json(hub)}}};
}

// ---- minimality

Verdict minimal_quasivariety_check(GeneratorSet const& gens, Guards const& g) {
    if (gens.all_trivial()) return {Answer::No, 0, "trivial", {}};
    // a nontrivial subalgebra of a generator that fails to generate everything refutes minimality
    for (auto const& b : subalgebras_of_generators(gens, g)) {
        if (b.is_trivial()) continue;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto s = separates(gens[i], {b});
            if (!s.separated)
                return {Answer::No, 0, "proper-subquasivariety",
                        {{"generated_by", algebra_to_json(b)},
                         {"generator", i},
                         {"unseparated", {gens[i].name(s.failing_pair->first),
                                          gens[i].name(s.failing_pair->second)}}}};
        }
    }
    std::size_t rank = gens.signature().has_constant() ? 1 : 2;
    FreeAlgebra f = free_algebra(gens, rank, g);
    for (auto const& theta : free_relative_congruences(f, g)) {
        if (theta.is_total()) continue;
        auto b = quotient(f.algebra, theta).algebra;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto s = separates(gens[i], {b});
            if (!s.separated)
                return {Answer::No, 0, "proper-subquasivariety",
                        {{"generated_by", algebra_to_json(b)},
                         {"generator", i},
                         {"unseparated", {gens[i].name(s.failing_pair->first),
                                          gens[i].name(s.failing_pair->second)}}}};
        }
    }
    return {Answer::Yes, 0, "free-quotients", {{"free_rank", rank}}};
}

// ---- SC

Verdict sc_check(GeneratorSet const& gens, std::size_t bound, bool assume_cd, Guards const& g) {
    auto const& targets = gens.algebras();
    AlgebraList si = quotient_si_members(gens);
    for (auto const& b : si)
        if (!embeds_in_some(b, targets))
            return {Answer::No, 0, "si-quotient-outside-IS", {{"witness", algebra_to_json(b)}}};
    try {
        for (auto const& a : targets)
            for (auto& b : hs_class(a, g))
                if (si_status(b) >= SiStatus::SI) si.push_back(std::move(b));
        si = dedupe_isomorphic(std::move(si));
    } catch (GuardError const& e) {
        return {Answer::Unknown, bound, "guard", {{"reason", e.what()}}};
    }
    for (auto const& b : si)
        if (!embeds_in_some(b, targets))
            return {Answer::No, 0, "si-member-outside-IS", {{"witness", algebra_to_json(b)}}};
    if (!assume_cd) return {Answer::Unknown, bound, "needs-congruence-distributivity", {}};
    for (std::size_t m = 1; m <= bound; ++m) {
        FreeAlgebra f;
        try {
            f = free_algebra(gens, m, g);
        } catch (GuardError const& e) {
            return {Answer::Unknown, bound, "guard", {{"reason", e.what()}, {"rank", m}}};
        }
        bool all = std::all_of(si.begin(), si.end(), [&](FiniteAlgebra const& b) {
            return embedding_exists(b, f.algebra).has_value();
        });
        if (all)
            return {Answer::Yes, m, "si-members-embed-in-free",
                    {{"rank", m}, {"free_algebra_size", f.algebra.size()}, {"si_members", si.size()}}};
    }
    return {Answer::Unknown, bound, "bound-exhausted", {}};
}

// ---- admissibility

Verdict admissible_upto(QuasiEquation const& q, GeneratorSet const& gens, std::size_t max_rank,
                        Guards const& g) {
    json ranks = json::array();
    std::size_t start = gens.signature().has_constant() ? 0 : 1;
    for (std::size_t r = start; r <= max_rank; ++r) {
        FreeAlgebra f;
        try {
            f = free_algebra(gens, r, g);
        } catch (GuardError const& e) {
            return {Answer::Unknown, r == 0 ? 0 : r - 1, "guard",
                    {{"reason", e.what()}, {"ranks", ranks}}};
        }
        Assignment cx;
        if (!holds_in(q, f.algebra, g, &cx)) {
            auto terms = element_terms(f);
            json w = json::object();
            for (auto const& [v, x] : cx) w[v] = terms[x].to_string();
            return {Answer::No, r, "fails-in-free-algebra",
                    {{"rank", r}, {"assignment", w}, {"ranks", ranks}}};
        }
        ranks.push_back({{"rank", r}, {"free_algebra_size", f.algebra.size()}});
    }
    return {Answer::CertifiedUpTo, max_rank, "valid-in-free-algebras", {{"ranks", ranks}}};
}

// ---- membership

bool q_membership(FiniteAlgebra const& a, GeneratorSet const& gens) {
    return separates(a, gens.algebras()).separated;
}

bool has_lattice_reduct(FiniteAlgebra const& a) {
    auto const& sig = a.signature();
    auto m = sig.find("meet"), j = sig.find("join");
    if (!m || !j || sig[*m].arity != 2 || sig[*j].arity != 2) return false;
    std::size_t n = a.size();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            Elem mxy = a.binary(*m, x, y), jxy = a.binary(*j, x, y);
            if (mxy != a.binary(*m, y, x) || jxy != a.binary(*j, y, x)) return false;
            if (a.binary(*m, x, jxy) != x || a.binary(*j, x, mxy) != x) return false;
            for (Elem z = 0; z < n; ++z)
                if (a.binary(*m, mxy, z) != a.binary(*m, x, a.binary(*m, y, z)) ||
                    a.binary(*j, jxy, z) != a.binary(*j, x, a.binary(*j, y, z)))
                    return false;
        }
    return true;
}

bool has_edpc_signature(Signature const& sig) {
    return sig == dmm_signature() || sig == dunn_signature() || sig == brouwer_signature() ||
           sig == heyting_signature();
}

namespace {

std::vector<Elem> greedy_generating_set(FiniteAlgebra const& a) {
    std::vector<Elem> gen;
    ElementSet have = a.signature().has_constant() ? close_subset(a, ElementSet(a.size()))
                                                   : ElementSet(a.size());
    while (have.count() < a.size()) {
        Elem best = 0;
        std::size_t best_size = 0;
        for (Elem x = 0; x < a.size(); ++x) {
            if (have.contains(x)) continue;
            ElementSet s = have;
            s.insert(x);
            std::size_t c = close_subset(a, s).count();
            if (c > best_size) {
                best_size = c;
                best = x;
            }
        }
        gen.push_back(best);
        have.insert(best);
        have = close_subset(a, have);
    }
    return gen;
}

// A is a quotient of F(k) under x_i -> a_i, where a_1..a_k generate A.
std::optional<bool> v_membership_birkhoff(FiniteAlgebra const& a, GeneratorSet const& gens,
                                          Guards const& g) {
    auto gen = greedy_generating_set(a);
    std::size_t coords = 0;
    for (auto const& b : gens.algebras()) coords += table_length(b.size(), gen.size());
    if (coords > g.free_coordinates || coords * g.derived_carrier > (std::size_t{1} << 26))
        return std::nullopt;
    FreeAlgebra f;
    try {
        f = free_algebra(gens, gen.size(), g);
    } catch (GuardError const&) {
        return std::nullopt;
    }
    std::vector<std::vector<Elem>> dom(f.algebra.size());
    for (std::size_t i = 0; i < gen.size(); ++i) {
        auto& d = dom[f.generators[i]];
        if (!d.empty() && d.front() != gen[i]) return false;
        d = {gen[i]};
    }
    HomSearchOptions opt;
    opt.domains = &dom;
    opt.limit = 1;
    return for_each_hom(f.algebra, a, opt, [](Map const&) { return false; }) > 0;
}

}  // namespace

bool v_membership(FiniteAlgebra const& a, GeneratorSet const& gens, Guards const& g) {
    require_same_signature(a, gens[0]);
    if (a.is_trivial()) return true;
    if (auto r = v_membership_birkhoff(a, gens, g)) return *r;
    // Jonsson: every SI member of V lies in HS(G); with congruence extension HS = SH.
    std::vector<Quotient> si_quotients;
    for (auto const& c : all_congruences(a, g)) {
        if (c.is_total()) continue;
        auto q = quotient(a, c);
        if (si_status(q.algebra) >= SiStatus::SI) si_quotients.push_back(std::move(q));
    }
    bool lattice = std::all_of(gens.algebras().begin(), gens.algebras().end(), has_lattice_reduct);
    if (lattice && has_edpc_signature(a.signature())) {
        AlgebraList images;
        for (auto const& gen : gens.algebras())
            for (auto const& c : all_congruences(gen, g)) images.push_back(quotient(gen, c).algebra);
        for (auto const& q : si_quotients)
            if (!embeds_in_some(q.algebra, images)) return false;
        return true;
    }
    if (!std::all_of(gens.algebras().begin(), gens.algebras().end(), has_lattice_reduct))
        throw GuardError("v_membership: free algebra too large and no congruence distributive route");
    AlgebraList hs;
    for (auto const& gen : gens.algebras())
        for (auto& b : hs_class(gen, g)) hs.push_back(std::move(b));
    for (auto const& q : si_quotients)
        if (std::none_of(hs.begin(), hs.end(),
                         [&](FiniteAlgebra const& b) { return isomorphic(q.algebra, b); }))
            return false;
    return true;
}

bool ret_membership(FiniteAlgebra const& b, GeneratorSet const& gens, FiniteAlgebra const& a) {
    if (!q_membership(b, gens)) throw Error("ret_membership: algebra is not in the quasivariety");
    if (b.is_trivial()) return true;
    return is_retract(a, b).has_value();
}

bool excludes(FiniteAlgebra const& a, FiniteAlgebra const& b, Guards const& g) {
    require_same_signature(a, b);
    for (auto const& c : all_congruences(b, g))
        if (embedding_exists(a, quotient(b, c).algebra)) return false;
    return true;
}

}  // namespace qv
