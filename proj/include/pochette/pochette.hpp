#ifndef POCHETTE_POCHETTE_HPP
#define POCHETTE_POCHETTE_HPP

#include "pochette/errors.hpp"
#include "pochette/words.hpp"
#include "pochette/presentation.hpp"
#include "pochette/abelian.hpp"
#include "pochette/coset_enum.hpp"
#include "pochette/quotient_search.hpp"
#include "pochette/surgery.hpp"
#include "pochette/ribbon.hpp"

#endif
