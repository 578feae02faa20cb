#pragma once

#include "errors.hpp"
#include "intlinalg.hpp"
#include "contfrac.hpp"
#include "rodmodel.hpp"
#include "dehnfill.hpp"
#include "volbounds.hpp"
#include "report.hpp"
#include "tables.hpp"
