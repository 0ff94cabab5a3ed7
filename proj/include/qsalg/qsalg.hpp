#ifndef QSALG_QSALG_HPP
#define QSALG_QSALG_HPP

#include "alphabet.hpp"
#include "bracket_table.hpp"
#include "hoffman.hpp"
#include "hopf.hpp"
#include "levy.hpp"
#include "linear_span.hpp"
#include "matrix.hpp"
#include "orthogonalize.hpp"
#include "pathsim.hpp"
#include "poly.hpp"
#include "quasi_shuffle.hpp"
#include "rational.hpp"
#include "render.hpp"
#include "word.hpp"

#endif
