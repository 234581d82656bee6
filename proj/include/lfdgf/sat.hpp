#pragma once

#include <cstdint>
#include <vector>

namespace lfdgf {

// Small CDCL solver: two watched literals, first-UIP learning, VSIDS,
// phase saving, Luby restarts. Literals are DIMACS style: +v / -v, v >= 1.
class SatSolver {
public:
    int new_var();
    int num_vars() const { return static_cast<int>(assign_.size()); }
    void add_clause(std::vector<int> lits);
    bool solve();
    // Model value after a successful solve.
    bool value(int var) const { return assign_[var - 1] == 1; }
    std::uint64_t conflicts() const { return conflicts_; }

private:
    using Lit = int; // 2*var + negated
    static Lit enc(int dimacs) { return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1; }
    int val(Lit l) const {
        int a = assign_[l >> 1];
        return a < 0 ? -1 : (a ^ (l & 1));
    }
    void enqueue(Lit l, int reason);
    int propagate(); // conflicting clause or -1
    void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
    void backtrack(int level);
    int pick_branch();
    void bump(int var);
    int attach(std::vector<Lit> c);

    void heap_insert(int v);
    int heap_pop();
    void heap_up(int i);
    void heap_down(int i);

    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<int>> watches_; // by literal
    std::vector<signed char> assign_;
    std::vector<signed char> phase_;
    std::vector<int> level_, reason_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<double> activity_;
    double inc_ = 1.0;
    std::vector<int> heap_, heap_pos_;
    std::vector<char> seen_;
    bool unsat_ = false;
    std::uint64_t conflicts_ = 0;
};

} // namespace lfdgf
