#pragma once

#include <initializer_list>
#include <string>

#include "lsc/position.hpp"
#include "lsc/syntax.hpp"
#include "lsc/term.hpp"

inline lsc::TermPtr P(const std::string& s) { return lsc::parse(s); }

inline bool aeq(const lsc::TermPtr& t, const std::string& expected) {
    return lsc::alpha_eq(t, lsc::parse(expected));
}

inline lsc::Position pos(std::initializer_list<lsc::Step> steps) {
    return lsc::Position{std::vector<lsc::Step>(steps)};
}
