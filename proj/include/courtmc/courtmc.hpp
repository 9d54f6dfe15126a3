#pragma once

#include "courtmc/core/error.hpp"
#include "courtmc/core/labels.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/result.hpp"
#include "courtmc/core/serialize.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/core/state_set.hpp"
#include "courtmc/engine/checker.hpp"
#include "courtmc/engine/experiment.hpp"
#include "courtmc/engine/graph.hpp"
#include "courtmc/engine/lifted.hpp"
#include "courtmc/engine/solver.hpp"
#include "courtmc/ingest/build.hpp"
#include "courtmc/ingest/classify.hpp"
#include "courtmc/ingest/corpus.hpp"
#include "courtmc/ingest/derive.hpp"
#include "courtmc/ingest/validation.hpp"
#include "courtmc/query/ast.hpp"
#include "courtmc/query/parser.hpp"
#include "courtmc/query/printer.hpp"
#include "courtmc/query/template.hpp"
