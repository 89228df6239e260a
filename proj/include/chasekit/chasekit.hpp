#pragma once

#include "chasekit/analysis.hpp"
#include "chasekit/atom.hpp"
#include "chasekit/chase.hpp"
#include "chasekit/errors.hpp"
#include "chasekit/generators.hpp"
#include "chasekit/homomorphism.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/parser.hpp"
#include "chasekit/printer.hpp"
#include "chasekit/rewrite.hpp"
#include "chasekit/rule.hpp"
#include "chasekit/skolem.hpp"
#include "chasekit/substitution.hpp"
#include "chasekit/term.hpp"
