#pragma once

#include "fraccite/corpus.hpp"
#include "fraccite/error.hpp"
#include "fraccite/fractional.hpp"
#include "fraccite/indicators.hpp"
#include "fraccite/numeric.hpp"
#include "fraccite/report.hpp"
#include "fraccite/statlab/anova.hpp"
#include "fraccite/statlab/correlation.hpp"
#include "fraccite/statlab/descriptive.hpp"
#include "fraccite/statlab/distributions.hpp"
#include "fraccite/statlab/posthoc.hpp"
#include "fraccite/statlab/special.hpp"
