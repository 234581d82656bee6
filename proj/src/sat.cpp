#include "lfdgf/sat.hpp"

#include <algorithm>

namespace lfdgf {

int SatSolver::new_var() {
    const int v = num_vars();
    assign_.push_back(-1);
    phase_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v + 1;
}

int SatSolver::attach(std::vector<Lit> c) {
    const int idx = static_cast<int>(clauses_.size());
    watches_[c[0]].push_back(idx);
    watches_[c[1]].push_back(idx);
    clauses_.push_back(std::move(c));
    return idx;
}

void SatSolver::add_clause(std::vector<int> lits) {
    if (unsat_)
        return;
    std::vector<Lit> c;
    for (int d : lits)
        c.push_back(enc(d));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i + 1 < c.size() && (c[i] ^ 1) == c[i + 1])
            return; // tautology
        int v = val(c[i]);
        if (v == 1)
            return;
        if (v < 0)
            kept.push_back(c[i]);
    }
    if (kept.empty()) {
        unsat_ = true;
    } else if (kept.size() == 1) {
        enqueue(kept[0], -1);
        if (propagate() >= 0)
            unsat_ = true;
    } else {
        attach(std::move(kept));
    }
}

void SatSolver::enqueue(Lit l, int reason) {
    const int v = l >> 1;
    assign_[v] = static_cast<signed char>((l & 1) ^ 1);
    level_[v] = static_cast<int>(trail_lim_.size());
    reason_[v] = reason;
    trail_.push_back(l);
}

int SatSolver::propagate() {
    while (qhead_ < trail_.size()) {
        const Lit falsified = trail_[qhead_++] ^ 1;
        auto& ws = watches_[falsified];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const int ci = ws[i];
            auto& c = clauses_[ci];
            if (c[0] == falsified)
                std::swap(c[0], c[1]);
            if (val(c[0]) == 1) {
                ws[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t j = 2; j < c.size(); ++j)
                if (val(c[j]) != 0) {
                    std::swap(c[1], c[j]);
                    watches_[c[1]].push_back(ci);
                    moved = true;
                    break;
                }
            if (moved)
                continue;
            ws[keep++] = ci;
            if (val(c[0]) == 0) {
                for (std::size_t j = i + 1; j < ws.size(); ++j)
                    ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        ws.resize(keep);
    }
    return -1;
}

void SatSolver::bump(int v) {
    activity_[v] += inc_;
    if (activity_[v] > 1e100) {
        for (auto& a : activity_)
            a *= 1e-100;
        inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0)
        heap_up(heap_pos_[v]);
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
    learnt.assign(1, 0);
    const int cur = static_cast<int>(trail_lim_.size());
    int pending = 0;
    Lit p = -1;
    std::size_t idx = trail_.size();
    int ci = conflict;
    do {
        for (Lit q : clauses_[ci]) {
            if (p >= 0 && q == p)
                continue;
            const int v = q >> 1;
            if (seen_[v] || level_[v] == 0)
                continue;
            seen_[v] = 1;
            bump(v);
            if (level_[v] == cur)
                ++pending;
            else
                learnt.push_back(q);
        }
        while (!seen_[trail_[--idx] >> 1]) {
        }
        p = trail_[idx];
        seen_[p >> 1] = 0;
        ci = reason_[p >> 1];
        --pending;
    } while (pending > 0);
    learnt[0] = p ^ 1;
    back_level = 0;
    std::size_t maxi = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        seen_[learnt[i] >> 1] = 0;
        if (level_[learnt[i] >> 1] > back_level) {
            back_level = level_[learnt[i] >> 1];
            maxi = i;
        }
    }
    if (learnt.size() > 1)
        std::swap(learnt[1], learnt[maxi]);
    inc_ /= 0.95;
}

void SatSolver::backtrack(int level) {
    if (static_cast<int>(trail_lim_.size()) <= level)
        return;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
        const int v = trail_[i] >> 1;
        phase_[v] = assign_[v];
        assign_[v] = -1;
        reason_[v] = -1;
        if (heap_pos_[v] < 0)
            heap_insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
}

int SatSolver::pick_branch() {
    while (!heap_.empty()) {
        int v = heap_pop();
        if (assign_[v] < 0)
            return v;
    }
    return -1;
}

namespace {

double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i)
        r *= y;
    return r;
}

} // namespace

bool SatSolver::solve() {
    if (unsat_)
        return false;
    if (propagate() >= 0) {
        unsat_ = true;
        return false;
    }
    std::vector<Lit> learnt;
    for (int restart = 0;; ++restart) {
        const std::uint64_t budget = static_cast<std::uint64_t>(100 * luby(2, restart));
        std::uint64_t local = 0;
        while (true) {
            const int conflict = propagate();
            if (conflict >= 0) {
                ++conflicts_;
                ++local;
                if (trail_lim_.empty()) {
                    unsat_ = true;
                    return false;
                }
                int back = 0;
                analyze(conflict, learnt, back);
                backtrack(back);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    const int ci = attach(learnt);
                    enqueue(learnt[0], ci);
                }
                continue;
            }
            if (local >= budget) {
                backtrack(0);
                break;
            }
            const int v = pick_branch();
            if (v < 0)
                return true;
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(2 * v + (phase_[v] == 1 ? 0 : 1), -1);
        }
    }
}

// Max-heap on activity.

void SatSolver::heap_insert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
}

int SatSolver::heap_pop() {
    const int top = heap_[0];
    heap_pos_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[last] = 0;
        heap_down(0);
    }
    return top;
}

void SatSolver::heap_up(int i) {
    const int v = heap_[i];
    while (i > 0) {
        const int parent = (i - 1) / 2;
        if (activity_[heap_[parent]] >= activity_[v])
            break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void SatSolver::heap_down(int i) {
    const int v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (true) {
        int child = 2 * i + 1;
        if (child >= n)
            break;
        if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]])
            ++child;
        if (activity_[heap_[child]] <= activity_[v])
            break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

} // namespace lfdgf
