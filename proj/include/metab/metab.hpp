#ifndef METAB_METAB_HPP
#define METAB_METAB_HPP

#include <metab/rational.hpp>
#include <metab/monomial.hpp>
#include <metab/polynomial.hpp>
#include <metab/exact_linalg.hpp>
#include <metab/derivation.hpp>
#include <metab/metabelian.hpp>
#include <metab/wreath.hpp>
#include <metab/series.hpp>
#include <metab/known_series.hpp>
#include <metab/constants.hpp>
#include <metab/parse.hpp>
#include <metab/cases.hpp>

#endif
