#pragma once

// Umbrella header for the locating-array toolkit.

#include "locarray/array_io.hpp"
#include "locarray/counting.hpp"
#include "locarray/coverage.hpp"
#include "locarray/deadline.hpp"
#include "locarray/ga.hpp"
#include "locarray/interaction.hpp"
#include "locarray/ipo.hpp"
#include "locarray/lll.hpp"
#include "locarray/nonloc.hpp"
#include "locarray/params.hpp"
#include "locarray/pipeline.hpp"
#include "locarray/report.hpp"
#include "locarray/rng.hpp"
#include "locarray/rowmap.hpp"
#include "locarray/rowset.hpp"
#include "locarray/search.hpp"
#include "locarray/test_array.hpp"
#include "locarray/verify_la.hpp"
