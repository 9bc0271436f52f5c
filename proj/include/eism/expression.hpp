#pragma once

#include <optional>
#include <string>

#include "eism/function_space.hpp"

namespace eism {

struct ExpressionContext {
    FieldData field;
    int n = 1;
    // Weight used by const1; without one, const1 is the constant 1.
    std::optional<Weight> weight;
    // Precision of the function values; 0 means the field precision.
    int precision = 0;
};

// Sum of products of factors:
//   const1           N_{k,nu}(x) for the context weight, or 1
//   3, -2, 1/4       rational scalars
//   x^e, xs^e        sigma component of x (the only one in symplectic mode)
//   xb^e             sigma-bar component of x
//   Nx^e             N_{K/E}(x)
//   dety^e           det y
//   omega^e          Teichmueller character of the sigma component
//   omegab^e         Teichmueller character of the sigma-bar component
//   ind(x,r)         1 when the sigma component is r mod p
//   ind(dety,r)      1 when det y is r mod p
//   table:PATH       a JSON function table; PATH ends at whitespace
// Factors are joined by '*', terms by '+' or '-'.
ContinuousFunction parse_function(const std::string& text, const ExpressionContext& ctx);

// Elements of O_K such as "3", "-w", "1+2w" or "1/2-w".
KElt parse_k_element(const std::string& text);

}  // namespace eism
