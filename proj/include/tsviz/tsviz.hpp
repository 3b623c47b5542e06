#pragma once

#include "tsviz/aggregation.hpp"
#include "tsviz/binning.hpp"
#include "tsviz/categories.hpp"
#include "tsviz/clean.hpp"
#include "tsviz/csv.hpp"
#include "tsviz/dataset.hpp"
#include "tsviz/error.hpp"
#include "tsviz/format.hpp"
#include "tsviz/pipeline.hpp"
#include "tsviz/plot.hpp"
#include "tsviz/report.hpp"
#include "tsviz/synth.hpp"
#include "tsviz/temporal.hpp"
#include "tsviz/timestamp.hpp"
#include "tsviz/units.hpp"
