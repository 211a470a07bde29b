#ifndef ALWB_ALWB_HPP
#define ALWB_ALWB_HPP

#include "alwb/rational.hpp"
#include "alwb/formula.hpp"
#include "alwb/parser.hpp"
#include "alwb/model.hpp"
#include "alwb/linear.hpp"
#include "alwb/scenario.hpp"
#include "alwb/refute.hpp"
#include "alwb/decide.hpp"
#include "alwb/infinitary.hpp"
#include "alwb/translations.hpp"
#include "alwb/proof.hpp"

#endif  // ALWB_ALWB_HPP
