#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thetarank/graph.hpp"
#include "thetarank/linalg.hpp"

namespace thetarank::detail {

// Linear form over entries P(u,v), u <= v, 0-based.
using Form = std::map<std::pair<int, int>, Rational>;

std::string rat(const Rational& r);
std::string entry_name(int u, int v);
std::string render_form(const Form& f, const Rational& c);
std::string render_vector(const RatVector& v);
std::string render_parts(const std::vector<std::vector<int>>& parts);

// sum_v r_v P(u,v).
Form row_form(const RatVector& r, int u);
void add_scaled(Form& acc, const Form& f, const Rational& c);

// Weights 1/|V_i| on each part, scaled to a primitive integer vector.
RatVector relation_vector(const std::vector<std::vector<int>>& parts, int n);
// Parts are disjoint nonempty vertex lists whose uniform zero x satisfies x^T M_G x = 0.
bool is_ms_zero(const Graph& g, int alpha_g, const std::vector<std::vector<int>>& parts);

std::vector<std::string> tokens(const std::string& line);

}  // namespace thetarank::detail
