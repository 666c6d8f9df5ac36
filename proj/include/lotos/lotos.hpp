#pragma once

// Umbrella header.

#include "lotos/adl/config.hpp"
#include "lotos/contracts/check.hpp"
#include "lotos/contracts/contract.hpp"
#include "lotos/contracts/facts.hpp"
#include "lotos/contracts/interface.hpp"
#include "lotos/contracts/query.hpp"
#include "lotos/io.hpp"
#include "lotos/semantics/action.hpp"
#include "lotos/semantics/lts.hpp"
#include "lotos/semantics/sos.hpp"
#include "lotos/syntax/adl_parser.hpp"
#include "lotos/syntax/asc_parser.hpp"
#include "lotos/syntax/ast.hpp"
#include "lotos/syntax/diagnostic.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/syntax/printer.hpp"
#include "lotos/syntax/transform.hpp"
#include "lotos/syntax/validate.hpp"
#include "lotos/verify/aut.hpp"
#include "lotos/verify/bisim.hpp"
#include "lotos/verify/checks.hpp"
#include "lotos/verify/monitor.hpp"
#include "lotos/verify/pattern.hpp"
#include "lotos/verify/result.hpp"
