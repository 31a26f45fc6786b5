#pragma once

#include "qsective/arith.hpp"
#include "qsective/classifier.hpp"
#include "qsective/covering.hpp"
#include "qsective/errors.hpp"
#include "qsective/generate.hpp"
#include "qsective/json_io.hpp"
#include "qsective/oracle.hpp"
#include "qsective/qfree.hpp"
#include "qsective/residue.hpp"
