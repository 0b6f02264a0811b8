#pragma once

#include "formula.hpp"
#include "interp.hpp"
#include "parser.hpp"
#include "prover.hpp"
#include "random.hpp"
#include "rules.hpp"
#include "semantics.hpp"
#include "sequent.hpp"
#include "split.hpp"
#include "syntax.hpp"
#include "unfold.hpp"
