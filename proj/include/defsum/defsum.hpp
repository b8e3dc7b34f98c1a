#pragma once

#include "defsum/characters.hpp"
#include "defsum/decomp.hpp"
#include "defsum/defset.hpp"
#include "defsum/density.hpp"
#include "defsum/desugar.hpp"
#include "defsum/error.hpp"
#include "defsum/eval_term.hpp"
#include "defsum/expsum.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/gf/fp_poly.hpp"
#include "defsum/interpret.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/lab/corpus.hpp"
#include "defsum/lab/equidist.hpp"
#include "defsum/lab/interval.hpp"
#include "defsum/lab/kloosterman.hpp"
#include "defsum/lab/paper_examples.hpp"
#include "defsum/lab/report.hpp"
#include "defsum/numeric.hpp"
#include "defsum/pairwise_sum.hpp"
#include "defsum/parallel.hpp"
#include "defsum/parser.hpp"
#include "defsum/spectrum.hpp"
#include "defsum/substitute.hpp"
#include "defsum/term.hpp"
