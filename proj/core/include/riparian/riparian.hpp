#pragma once

#include "riparian/analysis.hpp"
#include "riparian/axioms.hpp"
#include "riparian/case_study.hpp"
#include "riparian/dataset.hpp"
#include "riparian/rules.hpp"
#include "riparian/types.hpp"
