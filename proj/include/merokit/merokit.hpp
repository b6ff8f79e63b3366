#pragma once

#include "merokit/bounds.hpp"
#include "merokit/generators.hpp"
#include "merokit/inclusion.hpp"
#include "merokit/membership.hpp"
#include "merokit/neighborhoods.hpp"
#include "merokit/operator.hpp"
#include "merokit/report.hpp"
#include "merokit/series.hpp"
