#ifndef LEAVITT_LEAVITT_HPP
#define LEAVITT_LEAVITT_HPP

#include "leavitt/algebra.hpp"
#include "leavitt/certificate.hpp"
#include "leavitt/classifier.hpp"
#include "leavitt/element.hpp"
#include "leavitt/error.hpp"
#include "leavitt/expr.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/graph_io.hpp"
#include "leavitt/laurent.hpp"
#include "leavitt/rational.hpp"
#include "leavitt/shift.hpp"

#endif  // LEAVITT_LEAVITT_HPP
