#include "lfdgf/lfd.hpp"

#include <functional>

#include "lfdgf/error.hpp"

namespace lfdgf {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? ~std::uint64_t{0} : r;
}

Lfd finish(LfdNode n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
    h = mix(h, std::hash<std::string>{}(n.rel));
    for (Var v : n.args)
        h = mix(h, static_cast<std::size_t>(v));
    h = mix(h, n.vars);
    h = mix(h, static_cast<std::size_t>(n.dep + 1));
    if (n.lhs)
        h = mix(h, n.lhs->hash);
    if (n.rhs)
        h = mix(h, n.rhs->hash);
    n.hash = h;
    return std::make_shared<const LfdNode>(std::move(n));
}

} // namespace

namespace lfd {

Lfd top() {
    static const Lfd t = finish(LfdNode{.kind = LfdKind::Top});
    return t;
}

Lfd bottom() { return neg(top()); }

Lfd atom(std::string rel, std::vector<Var> args) {
    LfdNode n{.kind = LfdKind::Atom, .rel = std::move(rel), .args = std::move(args)};
    for (Var v : n.args)
        n.free |= singleton(v);
    return finish(std::move(n));
}

Lfd dep(VarSet v, Var u) {
    LfdNode n{.kind = LfdKind::Dep, .vars = v, .dep = u};
    n.free = v;
    return finish(std::move(n));
}

Lfd dep_set(VarSet v, VarSet u, int k) {
    std::vector<Lfd> parts;
    for (Var x = 0; x < k; ++x)
        if (contains(u, x))
            parts.push_back(dep(v, x));
    return conj_all(parts);
}

Lfd conj(Lfd a, Lfd b) {
    LfdNode n{.kind = LfdKind::And};
    n.free = a->free | b->free;
    n.size = sat_add(sat_add(a->size, b->size), 1);
    n.edepth = std::max(a->edepth, b->edepth);
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return finish(std::move(n));
}

Lfd neg(Lfd a) {
    LfdNode n{.kind = LfdKind::Not};
    n.free = a->free;
    n.size = sat_add(a->size, 1);
    n.edepth = a->edepth;
    n.lhs = std::move(a);
    return finish(std::move(n));
}

Lfd exists(VarSet v, Lfd body) {
    LfdNode n{.kind = LfdKind::Exists, .vars = v};
    n.free = v;
    n.size = sat_add(body->size, 1);
    n.edepth = body->edepth + 1;
    n.lhs = std::move(body);
    return finish(std::move(n));
}

Lfd disj(Lfd a, Lfd b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }

Lfd disj_all(const std::vector<Lfd>& items) {
    if (items.empty())
        return bottom();
    Lfd acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i)
        acc = disj(acc, items[i]);
    return acc;
}

Lfd conj_all(const std::vector<Lfd>& items) {
    if (items.empty())
        return top();
    Lfd acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i)
        acc = conj(acc, items[i]);
    return acc;
}

} // namespace lfd

int compare(const Lfd& a, const Lfd& b) {
    if (a.get() == b.get())
        return 0;
    if (a->kind != b->kind)
        return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
    case LfdKind::Top:
        return 0;
    case LfdKind::Atom:
        if (a->rel != b->rel)
            return a->rel < b->rel ? -1 : 1;
        if (a->args != b->args)
            return a->args < b->args ? -1 : 1;
        return 0;
    case LfdKind::Dep:
        if (a->vars != b->vars)
            return a->vars < b->vars ? -1 : 1;
        if (a->dep != b->dep)
            return a->dep < b->dep ? -1 : 1;
        return 0;
    case LfdKind::Exists:
        if (a->vars != b->vars)
            return a->vars < b->vars ? -1 : 1;
        return compare(a->lhs, b->lhs);
    case LfdKind::Not:
        return compare(a->lhs, b->lhs);
    case LfdKind::And:
        if (int c = compare(a->lhs, b->lhs); c != 0)
            return c;
        return compare(a->rhs, b->rhs);
    }
    return 0;
}

bool equal(const Lfd& a, const Lfd& b) {
    if (a.get() == b.get())
        return true;
    if (a->hash != b->hash || a->size != b->size)
        return false;
    return compare(a, b) == 0;
}

VarSet free_vars(const Lfd& f) { return f->free; }

Lfd single_negation(const Lfd& f) {
    if (f->kind == LfdKind::Not)
        return f->lhs;
    return lfd::neg(f);
}

bool has_dep(const Lfd& f) {
    switch (f->kind) {
    case LfdKind::Dep:
        return true;
    case LfdKind::And:
        return has_dep(f->lhs) || has_dep(f->rhs);
    case LfdKind::Not:
    case LfdKind::Exists:
        return has_dep(f->lhs);
    default:
        return false;
    }
}

void validate(const Lfd& f, const Signature& sig) {
    auto check_set = [&](VarSet s) {
        if (!subset(s, sig.all()))
            throw InputError("formula uses a variable outside V_LFD");
    };
    switch (f->kind) {
    case LfdKind::Top:
        return;
    case LfdKind::Atom: {
        auto ar = sig.arity(f->rel);
        if (!ar)
            throw InputError("unknown relation '" + f->rel + "'");
        if (*ar != static_cast<int>(f->args.size()))
            throw InputError("relation '" + f->rel + "' expects " + std::to_string(*ar) +
                             " arguments");
        for (Var v : f->args)
            if (v < 0 || v >= sig.k())
                throw InputError("formula uses a variable outside V_LFD");
        return;
    }
    case LfdKind::Dep:
        check_set(f->vars);
        if (f->dep < 0 || f->dep >= sig.k())
            throw InputError("formula uses a variable outside V_LFD");
        return;
    case LfdKind::And:
        validate(f->lhs, sig);
        validate(f->rhs, sig);
        return;
    case LfdKind::Not:
        validate(f->lhs, sig);
        return;
    case LfdKind::Exists:
        check_set(f->vars);
        validate(f->lhs, sig);
        return;
    }
}

namespace {

void print_into(const Lfd& f, const Signature& sig, std::string& out) {
    switch (f->kind) {
    case LfdKind::Top:
        out += "true";
        return;
    case LfdKind::Atom:
        out += f->rel;
        out += '(';
        for (std::size_t i = 0; i < f->args.size(); ++i) {
            if (i)
                out += ',';
            out += sig.vars().at(f->args[i]);
        }
        out += ')';
        return;
    case LfdKind::Dep:
        out += "D[" + sig.render_set(f->vars, " ") + "] " + sig.vars().at(f->dep);
        return;
    case LfdKind::And:
        out += '(';
        print_into(f->lhs, sig, out);
        out += " & ";
        print_into(f->rhs, sig, out);
        out += ')';
        return;
    case LfdKind::Not: {
        const Lfd& a = f->lhs;
        if (a->kind == LfdKind::Top) {
            out += "false";
            return;
        }
        if (a->kind == LfdKind::And && a->lhs->kind == LfdKind::Not &&
            a->rhs->kind == LfdKind::Not) {
            out += '(';
            print_into(a->lhs->lhs, sig, out);
            out += " | ";
            print_into(a->rhs->lhs, sig, out);
            out += ')';
            return;
        }
        out += '~';
        print_into(a, sig, out);
        return;
    }
    case LfdKind::Exists:
        out += "E[" + sig.render_set(f->vars, " ") + "] ";
        print_into(f->lhs, sig, out);
        return;
    }
}

} // namespace

std::string print(const Lfd& f, const Signature& sig) {
    std::string out;
    print_into(f, sig, out);
    return out;
}

} // namespace lfdgf
