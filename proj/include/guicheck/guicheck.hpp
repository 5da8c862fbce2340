#pragma once

// Umbrella header for the guicheck library.

#include "guicheck/errors.hpp"
#include "guicheck/generate.hpp"
#include "guicheck/library.hpp"
#include "guicheck/oracle.hpp"
#include "guicheck/render.hpp"
#include "guicheck/resolve.hpp"
#include "guicheck/solver.hpp"
#include "guicheck/spec_ast.hpp"
#include "guicheck/spec_parse.hpp"
#include "guicheck/stdlib_data.hpp"
#include "guicheck/trace.hpp"
