#pragma once

#include <string>

#include "supermech/graded_algebra.hpp"
#include "supermech/graded_forms.hpp"

namespace supermech {

// "-q[1]*q[3] + 1/2*q[2]^2". The output parses back to the same expression.
std::string format_expr(const SuperExpr& e, const Signature& signature);

// "dq[0]^dth[1]"
std::string format_differentials(const GradedForm::Differentials& key, const Signature& signature);

// "q[1]*dq[0] + (1/2*th[0])*dth[0]"
std::string format_form(const GradedForm& form, const Signature& signature);

std::string latex_expr(const SuperExpr& e, const Signature& signature);
std::string latex_form(const GradedForm& form, const Signature& signature);

}  // namespace supermech
