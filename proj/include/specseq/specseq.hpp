#pragma once

#include "specseq/gfp.hpp"
#include "specseq/matrix.hpp"
#include "specseq/linalg.hpp"
#include "specseq/complex.hpp"
#include "specseq/persistence.hpp"
#include "specseq/page_table.hpp"
#include "specseq/pages.hpp"
#include "specseq/formulas.hpp"
#include "specseq/report.hpp"
#include "specseq/couple.hpp"
#include "specseq/verify.hpp"
