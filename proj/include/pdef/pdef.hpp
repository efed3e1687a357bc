#pragma once

#include "pdef/abelianization.hpp"
#include "pdef/certificate.hpp"
#include "pdef/certify.hpp"
#include "pdef/coset_table.hpp"
#include "pdef/error.hpp"
#include "pdef/low_index.hpp"
#include "pdef/numeric.hpp"
#include "pdef/parser.hpp"
#include "pdef/presentation.hpp"
#include "pdef/rewriting.hpp"
#include "pdef/smith.hpp"
#include "pdef/tietze.hpp"
#include "pdef/todd_coxeter.hpp"
#include "pdef/word.hpp"
