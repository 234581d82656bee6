#include "lfdgf/fo.hpp"

#include <algorithm>

#include "lfdgf/error.hpp"

namespace lfdgf {
namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? ~std::uint64_t{0} : r;
}

Fo make(FoNode n) { return std::make_shared<const FoNode>(std::move(n)); }

FoVars atom_vars(const Fo& a) { return FoVars(a->args.begin(), a->args.end()); }

bool can_guard(const Fo& guard, const std::vector<std::string>& bound, const Fo& body) {
    if (guard->kind != FoKind::Atom)
        return false;
    FoVars gv = atom_vars(guard);
    for (const auto& y : bound)
        if (!gv.contains(y))
            return false;
    return std::includes(gv.begin(), gv.end(), body->free.begin(), body->free.end());
}

Fo make_exists(Fo guard, std::vector<std::string> bound, Fo body) {
    FoNode n{.kind = FoKind::Exists};
    n.free = body->free;
    n.size = sat_add(body->size, 1);
    if (guard) {
        n.free.insert(guard->free.begin(), guard->free.end());
        n.size = sat_add(n.size, guard->size);
    }
    for (const auto& y : bound)
        n.free.erase(y);
    n.bound = std::move(bound);
    n.guard = std::move(guard);
    n.lhs = std::move(body);
    return make(std::move(n));
}

} // namespace

namespace fo {

Fo top() {
    static const Fo t = make(FoNode{.kind = FoKind::Top});
    return t;
}

Fo bottom() { return neg(top()); }

Fo atom(std::string rel, std::vector<std::string> args) {
    FoNode n{.kind = FoKind::Atom, .rel = std::move(rel), .args = std::move(args)};
    n.free = FoVars(n.args.begin(), n.args.end());
    return make(std::move(n));
}

Fo eq(std::string x, std::string y) {
    FoNode n{.kind = FoKind::Eq, .args = {std::move(x), std::move(y)}};
    n.free = FoVars(n.args.begin(), n.args.end());
    return make(std::move(n));
}

Fo neg(Fo a) {
    FoNode n{.kind = FoKind::Not};
    n.free = a->free;
    n.size = sat_add(a->size, 1);
    n.lhs = std::move(a);
    return make(std::move(n));
}

Fo conj(Fo a, Fo b) {
    FoNode n{.kind = FoKind::And};
    n.free = a->free;
    n.free.insert(b->free.begin(), b->free.end());
    n.size = sat_add(sat_add(a->size, b->size), 1);
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make(std::move(n));
}

Fo conj_all(const std::vector<Fo>& items) {
    if (items.empty())
        return top();
    Fo acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i)
        acc = conj(acc, items[i]);
    return acc;
}

Fo disj(Fo a, Fo b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }

Fo implies(Fo a, Fo b) { return neg(conj(std::move(a), neg(std::move(b)))); }

Fo exists(std::vector<std::string> bound, Fo body) {
    if (bound.empty())
        return body;
    if (can_guard(body, bound, top()))
        return make_exists(body, std::move(bound), top());
    if (body->kind == FoKind::And && can_guard(body->lhs, bound, body->rhs))
        return make_exists(body->lhs, std::move(bound), body->rhs);
    return make_exists(nullptr, std::move(bound), std::move(body));
}

Fo forall(std::vector<std::string> bound, Fo body) {
    Fo inner = body->kind == FoKind::Not ? body->lhs : neg(body);
    return neg(exists(std::move(bound), std::move(inner)));
}

Fo guarded_exists(Fo guard, std::vector<std::string> bound, Fo body) {
    if (!can_guard(guard, bound, body))
        throw InputError("guard atom does not cover the quantified formula");
    if (bound.empty())
        return body->kind == FoKind::Top ? guard : conj(std::move(guard), std::move(body));
    return make_exists(std::move(guard), std::move(bound), std::move(body));
}

} // namespace fo

const FoVars& free_vars(const Fo& f) { return f->free; }

namespace {

bool all_guarded(const Fo& f) {
    switch (f->kind) {
    case FoKind::Top:
    case FoKind::Atom:
    case FoKind::Eq:
        return true;
    case FoKind::Not:
        return all_guarded(f->lhs);
    case FoKind::And:
        return all_guarded(f->lhs) && all_guarded(f->rhs);
    case FoKind::Exists:
        return f->guard != nullptr && all_guarded(f->lhs);
    }
    return false;
}

void top_conjuncts(const Fo& f, std::vector<Fo>& out) {
    if (f->kind == FoKind::And) {
        top_conjuncts(f->lhs, out);
        top_conjuncts(f->rhs, out);
    } else {
        out.push_back(f);
    }
}

} // namespace

Guardedness is_guarded(const Fo& f) {
    if (!all_guarded(f))
        return Guardedness::NotGF;
    if (f->free.empty())
        return Guardedness::GF;
    std::vector<Fo> cs;
    top_conjuncts(f, cs);
    for (const auto& c : cs)
        if (c->kind == FoKind::Atom &&
            std::includes(c->free.begin(), c->free.end(), f->free.begin(), f->free.end()))
            return Guardedness::SelfGuarded;
    return Guardedness::GF;
}

bool is_gf(const Fo& f) { return is_guarded(f) != Guardedness::NotGF; }

bool uses_equality(const Fo& f) {
    switch (f->kind) {
    case FoKind::Eq:
        return true;
    case FoKind::Not:
        return uses_equality(f->lhs);
    case FoKind::And:
        return uses_equality(f->lhs) || uses_equality(f->rhs);
    case FoKind::Exists:
        return uses_equality(f->lhs);
    default:
        return false;
    }
}

namespace {
void collect_relations(const Fo& f, std::set<std::string>& out, int& max_arity) {
    switch (f->kind) {
    case FoKind::Atom:
        out.insert(f->rel);
        max_arity = std::max(max_arity, static_cast<int>(f->args.size()));
        return;
    case FoKind::Not:
        collect_relations(f->lhs, out, max_arity);
        return;
    case FoKind::And:
        collect_relations(f->lhs, out, max_arity);
        collect_relations(f->rhs, out, max_arity);
        return;
    case FoKind::Exists:
        if (f->guard)
            collect_relations(f->guard, out, max_arity);
        collect_relations(f->lhs, out, max_arity);
        return;
    default:
        return;
    }
}
} // namespace

std::set<std::string> relations_of(const Fo& f) {
    std::set<std::string> out;
    int m = 0;
    collect_relations(f, out, m);
    return out;
}

int max_atom_arity(const Fo& f) {
    std::set<std::string> out;
    int m = 0;
    collect_relations(f, out, m);
    return m;
}

void validate(const Fo& f, const Signature& sig, bool equality_mode) {
    switch (f->kind) {
    case FoKind::Top:
        return;
    case FoKind::Atom: {
        auto ar = sig.arity(f->rel);
        if (!ar)
            throw InputError("unknown relation '" + f->rel + "'");
        if (*ar != static_cast<int>(f->args.size()))
            throw InputError("relation '" + f->rel + "' expects " + std::to_string(*ar) +
                             " arguments");
        return;
    }
    case FoKind::Eq:
        if (!equality_mode)
            throw InputError("equality atoms require equality mode (--eq)");
        return;
    case FoKind::Not:
        validate(f->lhs, sig, equality_mode);
        return;
    case FoKind::And:
        validate(f->lhs, sig, equality_mode);
        validate(f->rhs, sig, equality_mode);
        return;
    case FoKind::Exists:
        if (f->guard)
            validate(f->guard, sig, equality_mode);
        validate(f->lhs, sig, equality_mode);
        return;
    }
}

namespace {

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += sep;
        out += xs[i];
    }
    return out;
}

void print_into(const Fo& f, std::string& out) {
    switch (f->kind) {
    case FoKind::Top:
        out += "true";
        return;
    case FoKind::Atom:
        out += f->rel + "(" + join(f->args, ",") + ")";
        return;
    case FoKind::Eq:
        out += f->args[0] + " = " + f->args[1];
        return;
    case FoKind::And:
        out += '(';
        print_into(f->lhs, out);
        out += " & ";
        print_into(f->rhs, out);
        out += ')';
        return;
    case FoKind::Not: {
        const Fo& a = f->lhs;
        if (a->kind == FoKind::Top) {
            out += "false";
        } else if (a->kind == FoKind::And && a->lhs->kind == FoKind::Not &&
                   a->rhs->kind == FoKind::Not) {
            out += '(';
            print_into(a->lhs->lhs, out);
            out += " | ";
            print_into(a->rhs->lhs, out);
            out += ')';
        } else if (a->kind == FoKind::Exists && a->guard && a->lhs->kind == FoKind::Not) {
            out += "forall " + join(a->bound, " ") + " . (";
            print_into(a->guard, out);
            out += " -> ";
            print_into(a->lhs->lhs, out);
            out += ')';
        } else if (a->kind == FoKind::And && a->rhs->kind == FoKind::Not) {
            out += '(';
            print_into(a->lhs, out);
            out += " -> ";
            print_into(a->rhs->lhs, out);
            out += ')';
        } else {
            out += '~';
            print_into(a, out);
        }
        return;
    }
    case FoKind::Exists:
        out += "exists " + join(f->bound, " ") + " . ";
        if (f->guard) {
            if (f->lhs->kind == FoKind::Top) {
                print_into(f->guard, out);
            } else {
                out += '(';
                print_into(f->guard, out);
                out += " & ";
                print_into(f->lhs, out);
                out += ')';
            }
        } else {
            print_into(f->lhs, out);
        }
        return;
    }
}

} // namespace

std::string print(const Fo& f) {
    std::string out;
    print_into(f, out);
    return out;
}

} // namespace lfdgf
