#pragma once

#include "coind_while/analysis.hpp"
#include "coind_while/codata.hpp"
#include "coind_while/evaluate.hpp"
#include "coind_while/format.hpp"
#include "coind_while/parser.hpp"
#include "coind_while/resumption.hpp"
#include "coind_while/run.hpp"
#include "coind_while/state.hpp"
#include "coind_while/syntax.hpp"
#include "coind_while/trace.hpp"
