#pragma once

#include "ulrich_kit/bridgeland.hpp"
#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/cohomology.hpp"
#include "ulrich_kit/complexes.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/generators.hpp"
#include "ulrich_kit/grammar.hpp"
#include "ulrich_kit/io.hpp"
#include "ulrich_kit/num_class.hpp"
#include "ulrich_kit/rational.hpp"
#include "ulrich_kit/sheaf_ops.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/ulrich.hpp"
#include "ulrich_kit/variety.hpp"
