#pragma once

#include "hkint/classify.hpp"
#include "hkint/compensated.hpp"
#include "hkint/corpus.hpp"
#include "hkint/errors.hpp"
#include "hkint/expression.hpp"
#include "hkint/gauge.hpp"
#include "hkint/integrate.hpp"
#include "hkint/nets.hpp"
#include "hkint/partition.hpp"
