#pragma once

#include <memory>
#include <string>
#include <vector>

namespace rwp {

// Boolean formula over atoms "control position i carries symbol a".
enum class Op { True, False, Atom, And, Or, Not };

struct FNode;
using Formula = std::shared_ptr<const FNode>;

struct FNode {
  Op op;
  int pos = -1;
  int sym = -1;
  Formula a, b;
};

Formula f_true();
Formula f_false();
Formula atom(int pos, int sym);
// Constructors fold constant operands, so And(True, f) is f.
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_not(Formula a);
// Balanced fold, split at ceil(k/2). Empty all_of is True, empty any_of False.
Formula all_of(const std::vector<Formula>& fs);
Formula any_of(const std::vector<Formula>& fs);
// Position `pos` carries one of `syms`.
Formula in_set(int pos, const std::vector<int>& syms);

bool eval(const Formula& f, const std::vector<int>& u);
// Atoms and constants have depth 0.
int depth(const Formula& f);
long long formula_size(const Formula& f);
int max_position(const Formula& f);

// S-expression text: (and (atom 0 a) (not (atom 3 #))), also true / false / or.
// Symbol tokens are looked up in `names`; integers are taken literally.
Formula parse_formula(const std::string& text, const std::vector<std::string>& names = {});
std::string to_sexpr(const Formula& f, const std::vector<std::string>& names = {});

}  // namespace rwp
